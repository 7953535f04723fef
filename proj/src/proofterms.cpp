#include "tva/proofterms.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

namespace tva {

// ----------------------------------------------------------------- parsing

namespace {

struct PTok {
  std::string text;
  size_t begin = 0, end = 0;  // offsets into the source text
  int line = 1, col = 1;
};

std::vector<PTok> lex(const std::string& s) {
  std::vector<PTok> out;
  size_t i = 0;
  int line = 1, col = 1;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      advance(1);
      continue;
    }
    if (s[i] == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    PTok t;
    t.begin = i;
    t.line = line;
    t.col = col;
    bool sym = false;
    for (const char* two : {"=>", "/\\", "\\/", "->"})
      if (s.compare(i, 2, two) == 0) {
        t.text = two;
        advance(2);
        sym = true;
        break;
      }
    if (!sym && std::strchr("(),:.|@", s[i])) {
      t.text = s[i];
      advance(1);
      sym = true;
    }
    if (!sym) {
      size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\''))
        ++j;
      if (j == i) throw SyntaxError(line, col, std::string("stray character '") + s[i] + "'");
      t.text = s.substr(i, j - i);
      advance(j - i);
    }
    t.end = i;
    out.push_back(t);
  }
  return out;
}

struct ProofParser {
  const Signature& sig;
  const std::string& src;
  const std::vector<PTok>& toks;
  size_t pos = 0;
  std::map<std::string, std::string> tvars;  // term variables in scope

  [[noreturn]] void fail(const std::string& msg) {
    if (pos < toks.size()) throw SyntaxError(toks[pos].line, toks[pos].col, msg);
    throw SyntaxError(toks.empty() ? 1 : toks.back().line,
                      toks.empty() ? 1 : toks.back().col, msg + " (at end of input)");
  }
  bool done() const { return pos >= toks.size(); }
  const PTok& peek() {
    if (done()) fail("unexpected end of input");
    return toks[pos];
  }
  PTok next() {
    const PTok& t = peek();
    ++pos;
    return t;
  }
  void expect(const std::string& text) {
    if (done() || toks[pos].text != text) fail("expected '" + text + "'");
    ++pos;
  }
  bool at(const std::string& text) const { return pos < toks.size() && toks[pos].text == text; }

  static bool is_name(const std::string& t) {
    return !t.empty() && (std::isalnum(static_cast<unsigned char>(t[0])) || t[0] == '_');
  }

  // Extract a formula span ending at the first '.' at parenthesis depth
  // zero, skipping the '.' that closes each quantifier binder.
  Formula parse_formula_until_dot() {
    size_t start = pos;
    int depth = 0;
    while (true) {
      if (done()) fail("annotation formula is missing its closing '.'");
      const std::string& t = toks[pos].text;
      if (t == "(") ++depth;
      if (t == ")") --depth;
      if ((t == "forall" || t == "exists")) {
        // consume 'forall x : s .'
        pos += 1;
        while (!done() && toks[pos].text != ".") ++pos;
        if (done()) fail("quantifier binder is missing its '.'");
        ++pos;
        continue;
      }
      if (t == "." && depth == 0) break;
      ++pos;
    }
    if (pos == start) fail("empty annotation formula");
    std::string text = src.substr(toks[start].begin, toks[pos - 1].end - toks[start].begin);
    Formula f = parse_formula(sig, text, tvars);
    expect(".");
    return f;
  }

  // formula span ending at the matching close parenthesis (not consumed)
  Formula parse_formula_until_close() {
    size_t start = pos;
    int depth = 0;
    while (true) {
      if (done()) fail("formula is missing its closing ')'");
      const std::string& t = toks[pos].text;
      if (t == "(") ++depth;
      if (t == ")") {
        if (depth == 0) break;
        --depth;
      }
      ++pos;
    }
    if (pos == start) fail("empty formula");
    std::string text = src.substr(toks[start].begin, toks[pos - 1].end - toks[start].begin);
    return parse_formula(sig, text, tvars);
  }

  Term parse_term_atom() {
    PTok head = next();
    if (!is_name(head.text)) fail("expected a term");
    Term t;
    if (sig.funs.count(head.text)) {
      const FunDecl& d = sig.funs.at(head.text);
      t.name = head.text;
      t.sort = d.result;
      if (!d.args.empty()) {
        expect("(");
        for (size_t i = 0; i < d.args.size(); ++i) {
          if (i) expect(",");
          Term a = parse_term_atom();
          if (a.sort != d.args[i]) fail("argument sort mismatch for '" + head.text + "'");
          t.args.push_back(std::move(a));
        }
        expect(")");
      }
      return t;
    }
    auto it = tvars.find(head.text);
    if (it == tvars.end()) fail("unknown term '" + head.text + "'");
    t.is_var = true;
    t.name = head.text;
    t.sort = it->second;
    return t;
  }

  bool atom_starts() {
    if (done()) return false;
    const std::string& t = toks[pos].text;
    if (t == ")" || t == "," || t == "|" || t == "." || t == ":" || t == "@") return false;
    if (t == "of" || t == "as") return false;
    return true;
  }

  ProofTerm parse(bool stop_at_bar = false) {
    const std::string& t = peek().text;
    if (t == "lam") {
      next();
      ProofTerm p;
      p.kind = PKind::Lam;
      p.name = next().text;
      expect(":");
      p.ann = parse_formula_until_dot();
      p.kids.push_back(parse(stop_at_bar));
      return p;
    }
    if (t == "Lam") {
      next();
      ProofTerm p;
      p.kind = PKind::TLam;
      p.bvar = next().text;
      expect(":");
      p.bsort = next().text;
      if (!sig.has_sort(p.bsort)) fail("unknown sort '" + p.bsort + "'");
      expect(".");
      auto saved = tvars;
      tvars[p.bvar] = p.bsort;
      p.kids.push_back(parse(stop_at_bar));
      tvars = saved;
      return p;
    }
    if (t == "case") {
      next();
      ProofTerm p;
      p.kind = PKind::Case;
      p.kids.push_back(parse_app(false));
      expect("of");
      p.name = next().text;
      expect(".");
      p.kids.push_back(parse(true));
      expect("|");
      p.var2 = next().text;
      expect(".");
      p.kids.push_back(parse(stop_at_bar));
      return p;
    }
    if (t == "dest") {
      next();
      ProofTerm p;
      p.kind = PKind::Dest;
      p.kids.push_back(parse_app(false));
      expect("as");
      p.bvar = next().text;
      expect(".");
      p.name = next().text;
      expect(".");
      auto saved = tvars;
      tvars[p.bvar] = "?";  // sort resolved during checking
      p.kids.push_back(parse(stop_at_bar));
      tvars = saved;
      return p;
    }
    return parse_app(stop_at_bar);
  }

  ProofTerm parse_app(bool stop_at_bar) {
    ProofTerm p = parse_prefix();
    while (!done()) {
      if (stop_at_bar && at("|")) break;
      if (at("@")) {
        next();
        ProofTerm q;
        q.kind = PKind::TApp;
        q.t = parse_term_atom();
        q.kids.push_back(std::move(p));
        p = std::move(q);
        continue;
      }
      if (!atom_starts()) break;
      // binders extend to the right: an application argument may not open one
      const std::string& t = peek().text;
      if (t == "lam" || t == "Lam" || t == "case" || t == "dest") {
        ProofTerm q;
        q.kind = PKind::App;
        q.kids.push_back(std::move(p));
        q.kids.push_back(parse(stop_at_bar));
        return q;
      }
      ProofTerm q;
      q.kind = PKind::App;
      q.kids.push_back(std::move(p));
      q.kids.push_back(parse_prefix());
      p = std::move(q);
    }
    return p;
  }

  ProofTerm parse_prefix() {
    const std::string& t = peek().text;
    PKind k = t == "fst"   ? PKind::Fst
              : t == "snd" ? PKind::Snd
              : t == "inl" ? PKind::Inl
              : t == "inr" ? PKind::Inr
                           : PKind::Var;
    if (k != PKind::Var) {
      next();
      ProofTerm p;
      p.kind = k;
      p.kids.push_back(parse_atom());
      return p;
    }
    return parse_atom();
  }

  ProofTerm parse_atom() {
    PTok head = next();
    if (head.text == "(") {
      ProofTerm p = parse(false);
      expect(")");
      return p;
    }
    if (head.text == "unit") return ProofTerm{};
    if (head.text == "pair") {
      expect("(");
      ProofTerm p;
      p.kind = PKind::Pair;
      p.kids.push_back(parse(false));
      expect(",");
      p.kids.push_back(parse(false));
      expect(")");
      return p;
    }
    if (head.text == "exfalso") {
      expect("(");
      ProofTerm p;
      p.kind = PKind::Exfalso;
      p.kids.push_back(parse(false));
      expect(",");
      p.ann = parse_formula_until_close();
      expect(")");
      return p;
    }
    if (head.text == "wit") {
      expect("(");
      ProofTerm p;
      p.kind = PKind::Wit;
      p.t = parse_term_atom();
      expect(",");
      p.kids.push_back(parse(false));
      expect(")");
      return p;
    }
    if (!is_name(head.text)) {
      --pos;
      fail("expected a proof term");
    }
    ProofTerm p;
    p.kind = PKind::Var;
    p.name = head.text;
    return p;
  }
};

}  // namespace

ProofTerm parse_proof(const Signature& sig, const std::string& text,
                      const std::map<std::string, std::string>& term_vars) {
  auto toks = lex(text);
  ProofParser pp{sig, text, toks, 0, term_vars};
  ProofTerm p = pp.parse(false);
  if (!pp.done()) pp.fail("trailing tokens after the proof term");
  return p;
}

ProofFile parse_proof_file(const std::string& path, const Signature& sig) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  ProofFile out;
  std::istringstream lines(text);
  std::string line, proof_text;
  bool in_proof = false;
  while (std::getline(lines, line)) {
    std::string stripped = line.substr(0, line.find('#'));
    std::istringstream ls(stripped);
    std::string key;
    if (in_proof) {
      proof_text += "\n" + stripped;
      continue;
    }
    if (!(ls >> key)) continue;
    std::string rest = stripped.substr(stripped.find(key) + key.size());
    if (key == "goal") {
      out.goal = parse_formula(sig, rest);
    } else if (key == "proof") {
      proof_text = rest;
      in_proof = true;
    } else {
      throw SyntaxError(1, 1, "unknown key '" + key + "' in proof file");
    }
  }
  if (!in_proof) throw SyntaxError(1, 1, "proof file lacks a 'proof' entry");
  out.proof = parse_proof(sig, proof_text);
  return out;
}

// ---------------------------------------------------------------- printing

std::string to_string(const ProofTerm& p) {
  auto paren = [](const ProofTerm& q, std::string s) {
    switch (q.kind) {
      case PKind::Var:
      case PKind::Unit:
      case PKind::Pair:
      case PKind::Exfalso:
      case PKind::Wit:
        return s;
      default:
        return "(" + s + ")";
    }
  };
  switch (p.kind) {
    case PKind::Var:
      return p.name;
    case PKind::Lam:
      return "lam " + p.name + ":" + to_string(p.ann) + ". " + to_string(p.kids[0]);
    case PKind::App: {
      std::string f = to_string(p.kids[0]);
      if (p.kids[0].kind != PKind::App) f = paren(p.kids[0], f);
      return f + " " + paren(p.kids[1], to_string(p.kids[1]));
    }
    case PKind::Pair:
      return "pair(" + to_string(p.kids[0]) + ", " + to_string(p.kids[1]) + ")";
    case PKind::Fst:
      return "fst " + paren(p.kids[0], to_string(p.kids[0]));
    case PKind::Snd:
      return "snd " + paren(p.kids[0], to_string(p.kids[0]));
    case PKind::Inl:
      return "inl " + paren(p.kids[0], to_string(p.kids[0]));
    case PKind::Inr:
      return "inr " + paren(p.kids[0], to_string(p.kids[0]));
    case PKind::Case:
      return "case " + paren(p.kids[0], to_string(p.kids[0])) + " of " + p.name + "." +
             to_string(p.kids[1]) + " | " + p.var2 + "." + to_string(p.kids[2]);
    case PKind::Unit:
      return "unit";
    case PKind::Exfalso:
      return "exfalso(" + to_string(p.kids[0]) + ", " + to_string(p.ann) + ")";
    case PKind::TLam:
      return "Lam " + p.bvar + ":" + p.bsort + ". " + to_string(p.kids[0]);
    case PKind::TApp: {
      std::string f = to_string(p.kids[0]);
      if (p.kids[0].kind != PKind::App && p.kids[0].kind != PKind::TApp)
        f = paren(p.kids[0], f);
      return f + " @ " + to_string(p.t);
    }
    case PKind::Wit:
      return "wit(" + to_string(p.t) + ", " + to_string(p.kids[0]) + ")";
    case PKind::Dest:
      return "dest " + paren(p.kids[0], to_string(p.kids[0])) + " as " + p.bvar + "." + p.name +
             "." + to_string(p.kids[1]);
  }
  return "?";
}

// ----------------------------------------------------------- substitutions

namespace {

void free_proof_vars(const ProofTerm& p, std::set<std::string>& bound,
                     std::set<std::string>& out) {
  switch (p.kind) {
    case PKind::Var:
      if (!bound.count(p.name)) out.insert(p.name);
      return;
    case PKind::Lam: {
      bool added = bound.insert(p.name).second;
      free_proof_vars(p.kids[0], bound, out);
      if (added) bound.erase(p.name);
      return;
    }
    case PKind::Case: {
      free_proof_vars(p.kids[0], bound, out);
      bool a1 = bound.insert(p.name).second;
      free_proof_vars(p.kids[1], bound, out);
      if (a1) bound.erase(p.name);
      bool a2 = bound.insert(p.var2).second;
      free_proof_vars(p.kids[2], bound, out);
      if (a2) bound.erase(p.var2);
      return;
    }
    case PKind::Dest: {
      free_proof_vars(p.kids[0], bound, out);
      bool added = bound.insert(p.name).second;
      free_proof_vars(p.kids[1], bound, out);
      if (added) bound.erase(p.name);
      return;
    }
    default:
      for (const auto& k : p.kids) free_proof_vars(k, bound, out);
  }
}

std::set<std::string> free_proof_vars(const ProofTerm& p) {
  std::set<std::string> bound, out;
  free_proof_vars(p, bound, out);
  return out;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string n = base;
  while (avoid.count(n)) n += "'";
  return n;
}

ProofTerm rename_proof_binder(const ProofTerm& p, size_t kid, const std::string& binder,
                              const std::string& fresh);

}  // namespace

ProofTerm substitute_proof(const ProofTerm& p, const std::string& var, const ProofTerm& by) {
  switch (p.kind) {
    case PKind::Var:
      return p.name == var ? by : p;
    case PKind::Lam:
    case PKind::Case:
    case PKind::Dest: {
      ProofTerm out = p;
      auto handle_binder = [&](std::string& binder, size_t kid) {
        if (binder == var) return;  // shadowed
        auto fv = free_proof_vars(by);
        if (fv.count(binder)) {
          std::set<std::string> avoid = fv;
          for (const auto& v : free_proof_vars(out.kids[kid])) avoid.insert(v);
          std::string nn = fresh_name(binder, avoid);
          ProofTerm v;
          v.kind = PKind::Var;
          v.name = nn;
          out.kids[kid] = substitute_proof(out.kids[kid], binder, v);
          binder = nn;
        }
        out.kids[kid] = substitute_proof(out.kids[kid], var, by);
      };
      if (p.kind == PKind::Lam) {
        handle_binder(out.name, 0);
      } else if (p.kind == PKind::Case) {
        out.kids[0] = substitute_proof(out.kids[0], var, by);
        handle_binder(out.name, 1);
        std::string& b2 = out.var2;
        if (b2 != var) {
          auto fv = free_proof_vars(by);
          if (fv.count(b2)) {
            std::set<std::string> avoid = fv;
            for (const auto& v : free_proof_vars(out.kids[2])) avoid.insert(v);
            std::string nn = fresh_name(b2, avoid);
            ProofTerm v;
            v.kind = PKind::Var;
            v.name = nn;
            out.kids[2] = substitute_proof(out.kids[2], b2, v);
            b2 = nn;
          }
          out.kids[2] = substitute_proof(out.kids[2], var, by);
        }
      } else {  // Dest
        out.kids[0] = substitute_proof(out.kids[0], var, by);
        handle_binder(out.name, 1);
      }
      return out;
    }
    default: {
      ProofTerm out = p;
      for (auto& k : out.kids) k = substitute_proof(k, var, by);
      return out;
    }
  }
}

ProofTerm substitute_term(const ProofTerm& p, const std::map<std::string, Term>& sub) {
  if (sub.empty()) return p;
  ProofTerm out = p;
  auto drop = [&](const std::string& binder) {
    auto s = sub;
    s.erase(binder);
    return s;
  };
  switch (p.kind) {
    case PKind::Lam:
      out.ann = substitute(p.ann, sub);
      out.kids[0] = substitute_term(p.kids[0], sub);
      return out;
    case PKind::Exfalso:
      out.ann = substitute(p.ann, sub);
      out.kids[0] = substitute_term(p.kids[0], sub);
      return out;
    case PKind::TApp:
    case PKind::Wit:
      out.t = substitute(p.t, sub);
      out.kids[0] = substitute_term(p.kids[0], sub);
      return out;
    case PKind::TLam: {
      auto s = drop(p.bvar);
      out.kids[0] = substitute_term(p.kids[0], s);
      return out;
    }
    case PKind::Dest: {
      out.kids[0] = substitute_term(p.kids[0], sub);
      auto s = drop(p.bvar);
      out.kids[1] = substitute_term(p.kids[1], s);
      return out;
    }
    default:
      for (auto& k : out.kids) k = substitute_term(k, sub);
      return out;
  }
}

namespace {

ProofTerm rename_proof_binder(const ProofTerm& p, size_t kid, const std::string& binder,
                              const std::string& fresh) {
  ProofTerm v;
  v.kind = PKind::Var;
  v.name = fresh;
  ProofTerm out = p;
  out.kids[kid] = substitute_proof(out.kids[kid], binder, v);
  return out;
}

// canonical renaming: binders are renamed to $0, $1, ... in traversal order
void canonicalize(ProofTerm& p, int& next_pv, int& next_tv) {
  switch (p.kind) {
    case PKind::Lam: {
      std::string nn = "$" + std::to_string(next_pv++);
      p = rename_proof_binder(p, 0, p.name, nn);
      p.name = nn;
      break;
    }
    case PKind::Case: {
      std::string n1 = "$" + std::to_string(next_pv++);
      p = rename_proof_binder(p, 1, p.name, n1);
      p.name = n1;
      std::string n2 = "$" + std::to_string(next_pv++);
      p = rename_proof_binder(p, 2, p.var2, n2);
      p.var2 = n2;
      break;
    }
    case PKind::Dest: {
      std::string np = "$" + std::to_string(next_pv++);
      p = rename_proof_binder(p, 1, p.name, np);
      p.name = np;
      std::string nt = "$t" + std::to_string(next_tv++);
      Term v;
      v.is_var = true;
      v.name = nt;
      p.kids[1] = substitute_term(p.kids[1], {{p.bvar, v}});
      p.bvar = nt;
      break;
    }
    case PKind::TLam: {
      std::string nt = "$t" + std::to_string(next_tv++);
      Term v;
      v.is_var = true;
      v.name = nt;
      v.sort = p.bsort;
      p.kids[0] = substitute_term(p.kids[0], {{p.bvar, v}});
      p.bvar = nt;
      break;
    }
    default:
      break;
  }
  for (auto& k : p.kids) canonicalize(k, next_pv, next_tv);
}

// formulas inside annotations also need canonical bound-variable names
std::string key_string(const ProofTerm& p) {
  std::string s = std::to_string(int(p.kind)) + "[";
  if (!p.name.empty()) s += "n:" + p.name;
  if (!p.var2.empty()) s += ";v:" + p.var2;
  if (!p.bvar.empty()) s += ";b:" + p.bvar + ":" + p.bsort;
  if (p.kind == PKind::Lam || p.kind == PKind::Exfalso) s += ";a:" + canonical_key(p.ann);
  if (p.kind == PKind::TApp || p.kind == PKind::Wit) s += ";t:" + to_string(p.t);
  for (const auto& k : p.kids) s += "(" + key_string(k) + ")";
  return s + "]";
}

}  // namespace

std::string canonical_key(const ProofTerm& p) {
  ProofTerm q = p;
  int pv = 0, tv = 0;
  canonicalize(q, pv, tv);
  return key_string(q);
}

bool alpha_equal(const ProofTerm& a, const ProofTerm& b) {
  return canonical_key(a) == canonical_key(b);
}

// ---------------------------------------------------------------- reduction

std::vector<ProofTerm> reduce_step(const ProofTerm& p) {
  std::vector<ProofTerm> out;
  // head redexes first
  switch (p.kind) {
    case PKind::App:
      if (p.kids[0].kind == PKind::Lam)
        out.push_back(substitute_proof(p.kids[0].kids[0], p.kids[0].name, p.kids[1]));
      break;
    case PKind::Fst:
      if (p.kids[0].kind == PKind::Pair) out.push_back(p.kids[0].kids[0]);
      break;
    case PKind::Snd:
      if (p.kids[0].kind == PKind::Pair) out.push_back(p.kids[0].kids[1]);
      break;
    case PKind::Case:
      if (p.kids[0].kind == PKind::Inl)
        out.push_back(substitute_proof(p.kids[1], p.name, p.kids[0].kids[0]));
      else if (p.kids[0].kind == PKind::Inr)
        out.push_back(substitute_proof(p.kids[2], p.var2, p.kids[0].kids[0]));
      break;
    case PKind::TApp:
      if (p.kids[0].kind == PKind::TLam)
        out.push_back(substitute_term(p.kids[0].kids[0], {{p.kids[0].bvar, p.t}}));
      break;
    case PKind::Dest:
      if (p.kids[0].kind == PKind::Wit) {
        ProofTerm body = substitute_term(p.kids[1], {{p.bvar, p.kids[0].t}});
        out.push_back(substitute_proof(body, p.name, p.kids[0].kids[0]));
      }
      break;
    default:
      break;
  }
  // then positions inside each child, left to right
  for (size_t i = 0; i < p.kids.size(); ++i)
    for (const ProofTerm& r : reduce_step(p.kids[i])) {
      ProofTerm q = p;
      q.kids[i] = r;
      out.push_back(std::move(q));
    }
  return out;
}

bool is_neutral(const ProofTerm& p) {
  switch (p.kind) {
    case PKind::Lam:
    case PKind::Pair:
    case PKind::Inl:
    case PKind::Inr:
    case PKind::Unit:
    case PKind::TLam:
    case PKind::Wit:
      return false;
    default:
      return true;
  }
}

namespace {

struct SnExplorer {
  int fuel;
  int visited = 0;
  std::map<std::string, int> memo;  // key -> longest path; -1 while on the stack
  std::vector<ProofTerm> stack;
  std::vector<std::string> stack_keys;
  ReductionOutcome out;
  bool aborted = false;

  int dfs(const ProofTerm& p) {
    std::string key = canonical_key(p);
    auto it = memo.find(key);
    if (it != memo.end()) {
      if (it->second >= 0) return it->second;
      // on the current path: a genuine cycle
      size_t i = 0;
      while (stack_keys[i] != key) ++i;
      out.kind = RedKind::Loop;
      out.trace.assign(stack.begin() + i, stack.end());
      out.trace.push_back(p);
      aborted = true;
      return 0;
    }
    if (++visited > fuel) {
      out.kind = RedKind::FuelExhausted;
      out.frontier = visited;
      aborted = true;
      return 0;
    }
    memo[key] = -1;
    stack.push_back(p);
    stack_keys.push_back(key);
    int longest = 0;
    for (const ProofTerm& r : reduce_step(p)) {
      int len = 1 + dfs(r);
      if (aborted) return 0;
      longest = std::max(longest, len);
    }
    stack.pop_back();
    stack_keys.pop_back();
    memo[key] = longest;
    return longest;
  }
};

}  // namespace

ReductionOutcome sn_status(const ProofTerm& p, int fuel) {
  SnExplorer ex;
  ex.fuel = fuel;
  int longest = ex.dfs(p);
  if (ex.aborted) return ex.out;
  ReductionOutcome out;
  out.kind = RedKind::Normal;
  out.steps = longest;
  out.normal_form = p;
  while (true) {
    auto rs = reduce_step(out.normal_form);
    if (rs.empty()) break;
    out.normal_form = rs.front();
  }
  return out;
}

// ------------------------------------------------------------------ typing

namespace {

struct Checker {
  const Theory& thy;
  int fuel;
  ProofCheckResult res{ProofVerdict::Valid, "", ""};

  void invalid(const std::string& pos, const std::string& what) {
    if (res.verdict == ProofVerdict::Valid) res = {ProofVerdict::Invalid, pos, what};
  }
  void unknown(const std::string& pos, const std::string& what) {
    if (res.verdict == ProofVerdict::Valid) res = {ProofVerdict::Unknown, pos, what};
  }
  bool ok() const { return res.verdict == ProofVerdict::Valid; }

  // Search the reduction graph of f breadth-first for a formula with the
  // requested head connective. Exhausting the graph is a definite failure;
  // exhausting the budget is not.
  std::optional<Formula> expose(const Formula& f, FKind want, const std::string& pos) {
    if (f.kind == want) return f;
    std::deque<Formula> frontier{f};
    std::set<std::string> seen{canonical_key(f)};
    int budget = fuel;
    while (!frontier.empty()) {
      Formula cur = frontier.front();
      frontier.pop_front();
      for (Formula& r : all_one_step(thy, cur)) {
        if (r.kind == want) return r;
        if (--budget <= 0) {
          unknown(pos, "ran out of fuel searching for a " + head_name(want) + " form");
          return std::nullopt;
        }
        if (seen.insert(canonical_key(r)).second) frontier.push_back(std::move(r));
      }
    }
    invalid(pos, "no congruent formula has a " + head_name(want) + " head");
    return std::nullopt;
  }

  static std::string head_name(FKind k) {
    switch (k) {
      case FKind::Imp: return "implication";
      case FKind::And: return "conjunction";
      case FKind::Or: return "disjunction";
      case FKind::Forall: return "universal";
      case FKind::Exists: return "existential";
      case FKind::Top: return "truth";
      case FKind::Bot: return "absurdity";
      default: return "atomic";
    }
  }

  bool conv(const Formula& a, const Formula& b, const std::string& pos) {
    switch (congruent(thy, a, b, fuel)) {
      case TriState::Yes:
        return true;
      case TriState::No:
        invalid(pos, to_string(a) + " is not congruent to " + to_string(b));
        return false;
      default:
        unknown(pos, "congruence of " + to_string(a) + " and " + to_string(b) + " undecided");
        return false;
    }
  }

  using Hyps = std::map<std::string, Formula>;
  using TVars = std::map<std::string, std::string>;

  // variable sorts inside witness/application terms may be placeholders
  // until the corresponding binder's sort is known (dest binders)
  static Term resolve(Term t, const TVars& tvars) {
    if (t.is_var) {
      auto it = tvars.find(t.name);
      if (it != tvars.end()) t.sort = it->second;
      return t;
    }
    for (auto& a : t.args) a = resolve(std::move(a), tvars);
    return t;
  }

  std::optional<Formula> infer(const Hyps& hyps, const TVars& tvars, const ProofTerm& p,
                               const std::string& pos) {
    switch (p.kind) {
      case PKind::Var: {
        auto it = hyps.find(p.name);
        if (it == hyps.end()) {
          invalid(pos, "unbound hypothesis '" + p.name + "'");
          return std::nullopt;
        }
        return it->second;
      }
      case PKind::Unit: {
        Formula f;
        f.kind = FKind::Top;
        return f;
      }
      case PKind::Lam: {
        Hyps h = hyps;
        h[p.name] = p.ann;
        auto b = infer(h, tvars, p.kids[0], pos + ".body");
        if (!b) return std::nullopt;
        Formula f;
        f.kind = FKind::Imp;
        f.kids = {p.ann, *b};
        return f;
      }
      case PKind::TLam: {
        TVars tv = tvars;
        tv[p.bvar] = p.bsort;
        auto b = infer(hyps, tv, p.kids[0], pos + ".body");
        if (!b) return std::nullopt;
        Formula f;
        f.kind = FKind::Forall;
        f.bvar = p.bvar;
        f.bsort = p.bsort;
        f.kids = {*b};
        return f;
      }
      case PKind::App: {
        auto c = infer(hyps, tvars, p.kids[0], pos + ".fun");
        if (!c) return std::nullopt;
        auto imp = expose(*c, FKind::Imp, pos + ".fun");
        if (!imp) return std::nullopt;
        if (!check(hyps, tvars, p.kids[1], imp->kids[0], pos + ".arg")) return std::nullopt;
        return imp->kids[1];
      }
      case PKind::TApp: {
        auto c = infer(hyps, tvars, p.kids[0], pos + ".fun");
        if (!c) return std::nullopt;
        auto fa = expose(*c, FKind::Forall, pos + ".fun");
        if (!fa) return std::nullopt;
        Term t = resolve(p.t, tvars);
        if (t.sort != fa->bsort) {
          invalid(pos, "term argument has sort " + t.sort + ", expected " + fa->bsort);
          return std::nullopt;
        }
        return substitute(fa->kids[0], {{fa->bvar, t}});
      }
      case PKind::Fst:
      case PKind::Snd: {
        auto c = infer(hyps, tvars, p.kids[0], pos + ".of");
        if (!c) return std::nullopt;
        auto conj = expose(*c, FKind::And, pos + ".of");
        if (!conj) return std::nullopt;
        return conj->kids[p.kind == PKind::Fst ? 0 : 1];
      }
      case PKind::Pair: {
        auto a = infer(hyps, tvars, p.kids[0], pos + ".fst");
        if (!a) return std::nullopt;
        auto b = infer(hyps, tvars, p.kids[1], pos + ".snd");
        if (!b) return std::nullopt;
        Formula f;
        f.kind = FKind::And;
        f.kids = {*a, *b};
        return f;
      }
      case PKind::Exfalso:
        if (!check(hyps, tvars, p.kids[0], Formula{FKind::Bot, {}, {}, {}, {}, {}},
                   pos + ".of"))
          return std::nullopt;
        return p.ann;
      case PKind::Case: {
        auto c = infer(hyps, tvars, p.kids[0], pos + ".scrutinee");
        if (!c) return std::nullopt;
        auto disj = expose(*c, FKind::Or, pos + ".scrutinee");
        if (!disj) return std::nullopt;
        Hyps h1 = hyps;
        h1[p.name] = disj->kids[0];
        auto g = infer(h1, tvars, p.kids[1], pos + ".left");
        if (!g) return std::nullopt;
        Hyps h2 = hyps;
        h2[p.var2] = disj->kids[1];
        if (!check(h2, tvars, p.kids[2], *g, pos + ".right")) return std::nullopt;
        return g;
      }
      default:
        invalid(pos, "this form needs a goal to check against");
        return std::nullopt;
    }
  }

  bool check(const Hyps& hyps, const TVars& tvars, const ProofTerm& p, const Formula& goal,
             const std::string& pos) {
    switch (p.kind) {
      case PKind::Lam: {
        auto imp = expose(goal, FKind::Imp, pos);
        if (!imp) return false;
        if (!conv(p.ann, imp->kids[0], pos)) return false;
        Hyps h = hyps;
        h[p.name] = p.ann;
        return check(h, tvars, p.kids[0], imp->kids[1], pos + ".body");
      }
      case PKind::TLam: {
        auto fa = expose(goal, FKind::Forall, pos);
        if (!fa) return false;
        if (p.bsort != fa->bsort) {
          invalid(pos, "binder sort " + p.bsort + " does not match " + fa->bsort);
          return false;
        }
        Term v;
        v.is_var = true;
        v.name = p.bvar;
        v.sort = p.bsort;
        Formula body_goal = substitute(fa->kids[0], {{fa->bvar, v}});
        TVars tv = tvars;
        tv[p.bvar] = p.bsort;
        return check(hyps, tv, p.kids[0], body_goal, pos + ".body");
      }
      case PKind::Pair: {
        auto conj = expose(goal, FKind::And, pos);
        if (!conj) return false;
        return check(hyps, tvars, p.kids[0], conj->kids[0], pos + ".fst") &&
               check(hyps, tvars, p.kids[1], conj->kids[1], pos + ".snd");
      }
      case PKind::Inl:
      case PKind::Inr: {
        auto disj = expose(goal, FKind::Or, pos);
        if (!disj) return false;
        return check(hyps, tvars, p.kids[0], disj->kids[p.kind == PKind::Inl ? 0 : 1],
                     pos + ".of");
      }
      case PKind::Unit:
        return expose(goal, FKind::Top, pos).has_value();
      case PKind::Wit: {
        auto ex = expose(goal, FKind::Exists, pos);
        if (!ex) return false;
        Term t = resolve(p.t, tvars);
        if (t.sort != ex->bsort) {
          invalid(pos, "witness has sort " + t.sort + ", expected " + ex->bsort);
          return false;
        }
        return check(hyps, tvars, p.kids[0], substitute(ex->kids[0], {{ex->bvar, t}}),
                     pos + ".of");
      }
      case PKind::Case: {
        auto c = infer(hyps, tvars, p.kids[0], pos + ".scrutinee");
        if (!c) return false;
        auto disj = expose(*c, FKind::Or, pos + ".scrutinee");
        if (!disj) return false;
        Hyps h1 = hyps;
        h1[p.name] = disj->kids[0];
        if (!check(h1, tvars, p.kids[1], goal, pos + ".left")) return false;
        Hyps h2 = hyps;
        h2[p.var2] = disj->kids[1];
        return check(h2, tvars, p.kids[2], goal, pos + ".right");
      }
      case PKind::Dest: {
        auto c = infer(hyps, tvars, p.kids[0], pos + ".scrutinee");
        if (!c) return false;
        auto ex = expose(*c, FKind::Exists, pos + ".scrutinee");
        if (!ex) return false;
        if (free_vars(goal).count(p.bvar)) {
          invalid(pos, "term binder '" + p.bvar + "' escapes into the goal");
          return false;
        }
        Term v;
        v.is_var = true;
        v.name = p.bvar;
        v.sort = ex->bsort;
        Hyps h = hyps;
        h[p.name] = substitute(ex->kids[0], {{ex->bvar, v}});
        TVars tv = tvars;
        tv[p.bvar] = ex->bsort;
        return check(h, tv, p.kids[1], goal, pos + ".body");
      }
      case PKind::Exfalso:
        if (!check(hyps, tvars, p.kids[0], Formula{FKind::Bot, {}, {}, {}, {}, {}},
                   pos + ".of"))
          return false;
        return conv(p.ann, goal, pos);
      default: {
        auto c = infer(hyps, tvars, p, pos);
        if (!c) return false;
        return conv(*c, goal, pos);
      }
    }
  }
};

}  // namespace

ProofCheckResult check_proof(const Theory& thy, const Sequent& seq, const ProofTerm& p,
                             int fuel) {
  Checker ck{thy, fuel};
  Checker::Hyps hyps;
  for (const auto& [name, f] : seq.context) hyps[name] = f;
  ck.check(hyps, {}, p, seq.conclusion, "root");
  return ck.res;
}

}  // namespace tva
