#include "tva/logic.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace tva {

namespace {

// ---------------------------------------------------------------- lexer

struct Token {
  std::string text;
  int line, col;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(const std::string& text, int line) {
  std::vector<Token> toks;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    int col = static_cast<int>(i) + 1;
    if (ident_char(c)) {
      size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      toks.push_back({text.substr(i, j - i), line, col});
      i = j;
      continue;
    }
    auto starts = [&](const char* s) {
      return text.compare(i, std::strlen(s), s) == 0;
    };
    for (const char* sym : {"-->", "->", "=>", "/\\", "\\/", "(", ")", ",", ":", "."}) {
      if (starts(sym)) {
        toks.push_back({sym, line, col});
        i += std::strlen(sym);
        goto next;
      }
    }
    throw SyntaxError(line, col, std::string("unexpected character '") + c + "'");
  next:;
  }
  return toks;
}

// ------------------------------------------------------------- parsing

struct TokenStream {
  const std::vector<Token>& toks;
  size_t pos = 0;
  int line;

  bool done() const { return pos >= toks.size(); }
  const Token& peek() const {
    if (done()) throw SyntaxError(line, 0, "unexpected end of input");
    return toks[pos];
  }
  Token next() {
    Token t = peek();
    ++pos;
    return t;
  }
  bool accept(const std::string& s) {
    if (!done() && toks[pos].text == s) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(const std::string& s) {
    if (done() || toks[pos].text != s) {
      const Token& t = done() ? toks.back() : toks[pos];
      throw SyntaxError(line, done() ? t.col + 1 : t.col, "expected '" + s + "'");
    }
    ++pos;
  }
};

struct FormulaParser {
  const Signature& sig;
  TokenStream& ts;
  // free-variable sorts, shared across the whole rule; bound variables are
  // pushed and popped around quantifier bodies
  std::map<std::string, std::string>& vars;
  std::vector<std::pair<std::string, std::string>> bound;

  std::optional<std::string> bound_sort(const std::string& name) const {
    for (auto it = bound.rbegin(); it != bound.rend(); ++it)
      if (it->first == name) return it->second;
    return std::nullopt;
  }

  Term parse_term(const std::string& expected_sort) {
    Token t = ts.next();
    if (!ident_char(t.text[0]))
      throw SyntaxError(t.line, t.col, "expected a term, got '" + t.text + "'");
    auto fit = sig.funs.find(t.text);
    if (fit != sig.funs.end()) {
      const FunDecl& d = fit->second;
      Term out;
      out.name = t.text;
      out.sort = d.result;
      if (!d.args.empty()) {
        ts.expect("(");
        for (size_t k = 0; k < d.args.size(); ++k) {
          if (k) ts.expect(",");
          out.args.push_back(parse_term(d.args[k]));
        }
        ts.expect(")");
      }
      if (out.sort != expected_sort)
        throw SyntaxError(t.line, t.col,
                          "'" + t.text + "' has sort " + out.sort + ", expected " + expected_sort);
      return out;
    }
    // a variable
    Term out;
    out.is_var = true;
    out.name = t.text;
    if (auto bs = bound_sort(t.text)) {
      out.sort = *bs;
    } else {
      auto vit = vars.find(t.text);
      if (vit == vars.end()) vit = vars.emplace(t.text, expected_sort).first;
      out.sort = vit->second;
    }
    if (out.sort != expected_sort)
      throw SyntaxError(t.line, t.col, "variable '" + t.text + "' has sort " + out.sort +
                                           ", expected " + expected_sort);
    return out;
  }

  Formula parse_atom_or_paren() {
    Token t = ts.peek();
    if (ts.accept("(")) {
      Formula f = parse();
      ts.expect(")");
      return f;
    }
    ts.next();
    if (t.text == "top") return Formula{FKind::Top, {}, {}, {}, {}, {}};
    if (t.text == "bot") return Formula{FKind::Bot, {}, {}, {}, {}, {}};
    auto pit = sig.preds.find(t.text);
    if (pit == sig.preds.end())
      throw SyntaxError(t.line, t.col, "unknown predicate '" + t.text + "'");
    Formula f;
    f.kind = FKind::Atom;
    f.pred = t.text;
    if (!pit->second.empty()) {
      ts.expect("(");
      for (size_t k = 0; k < pit->second.size(); ++k) {
        if (k) ts.expect(",");
        f.args.push_back(parse_term(pit->second[k]));
      }
      ts.expect(")");
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_atom_or_paren();
    while (ts.accept("/\\")) {
      Formula g = parse_atom_or_paren();
      Formula h;
      h.kind = FKind::And;
      h.kids = {std::move(f), std::move(g)};
      f = std::move(h);
    }
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (ts.accept("\\/")) {
      Formula g = parse_and();
      Formula h;
      h.kind = FKind::Or;
      h.kids = {std::move(f), std::move(g)};
      f = std::move(h);
    }
    return f;
  }

  Formula parse_imp() {
    Formula f = parse_or();
    if (ts.accept("=>")) {
      // right operand may itself be a quantified formula
      Formula g = parse();
      Formula h;
      h.kind = FKind::Imp;
      h.kids = {std::move(f), std::move(g)};
      return h;
    }
    return f;
  }

  Formula parse() {
    if (!ts.done() && (ts.peek().text == "forall" || ts.peek().text == "exists")) {
      Token q = ts.next();
      Token v = ts.next();
      if (!ident_char(v.text[0]))
        throw SyntaxError(v.line, v.col, "expected a variable name");
      ts.expect(":");
      Token s = ts.next();
      if (!sig.has_sort(s.text))
        throw SyntaxError(s.line, s.col, "unknown sort '" + s.text + "'");
      ts.expect(".");
      bound.emplace_back(v.text, s.text);
      Formula body = parse();
      bound.pop_back();
      Formula f;
      f.kind = (q.text == "forall") ? FKind::Forall : FKind::Exists;
      f.bvar = v.text;
      f.bsort = s.text;
      f.kids.push_back(std::move(body));
      return f;
    }
    return parse_imp();
  }
};

// --------------------------------------------------------- substitution

void collect_free(const Term& t, const std::vector<std::string>& bound,
                  std::map<std::string, std::string>& out) {
  if (t.is_var) {
    if (std::find(bound.begin(), bound.end(), t.name) == bound.end()) out[t.name] = t.sort;
    return;
  }
  for (const Term& a : t.args) collect_free(a, bound, out);
}

void collect_free(const Formula& f, std::vector<std::string>& bound,
                  std::map<std::string, std::string>& out) {
  for (const Term& a : f.args) collect_free(a, bound, out);
  if (f.kind == FKind::Forall || f.kind == FKind::Exists) {
    bound.push_back(f.bvar);
    collect_free(f.kids[0], bound, out);
    bound.pop_back();
    return;
  }
  for (const Formula& k : f.kids) collect_free(k, bound, out);
}

bool occurs_in_term(const std::string& name, const Term& t) {
  if (t.is_var) return t.name == name;
  for (const Term& a : t.args)
    if (occurs_in_term(name, a)) return true;
  return false;
}

}  // namespace

bool Signature::has_sort(const std::string& s) const {
  return std::find(sorts.begin(), sorts.end(), s) != sorts.end();
}

bool Theory::has_term_rules() const {
  for (const auto& r : rules)
    if (r.is_term_rule) return true;
  return false;
}

bool Theory::has_prop_rules() const {
  for (const auto& r : rules)
    if (!r.is_term_rule) return true;
  return false;
}

std::map<std::string, std::string> free_vars(const Term& t) {
  std::map<std::string, std::string> out;
  collect_free(t, {}, out);
  return out;
}

std::map<std::string, std::string> free_vars(const Formula& f) {
  std::map<std::string, std::string> out;
  std::vector<std::string> bound;
  collect_free(f, bound, out);
  return out;
}

Term substitute(const Term& t, const std::map<std::string, Term>& sub) {
  if (t.is_var) {
    auto it = sub.find(t.name);
    return it == sub.end() ? t : it->second;
  }
  Term out = t;
  for (Term& a : out.args) a = substitute(a, sub);
  return out;
}

Formula substitute(const Formula& f, const std::map<std::string, Term>& sub) {
  Formula out = f;
  if (f.kind == FKind::Atom) {
    for (Term& a : out.args) a = substitute(a, sub);
    return out;
  }
  if (f.kind == FKind::Forall || f.kind == FKind::Exists) {
    std::map<std::string, Term> inner = sub;
    inner.erase(f.bvar);
    bool capture = false;
    for (const auto& [_, rep] : inner)
      if (occurs_in_term(f.bvar, rep)) capture = true;
    if (capture) {
      std::string fresh = f.bvar;
      auto clashes = [&](const std::string& n) {
        if (inner.count(n)) return true;
        for (const auto& [_, rep] : inner)
          if (occurs_in_term(n, rep)) return true;
        return free_vars(f.kids[0]).count(n) != 0;
      };
      do fresh += "'";
      while (clashes(fresh));
      Term v;
      v.is_var = true;
      v.name = fresh;
      v.sort = f.bsort;
      inner[f.bvar] = v;
      out.bvar = fresh;
    }
    out.kids[0] = substitute(f.kids[0], inner);
    return out;
  }
  for (Formula& k : out.kids) k = substitute(k, sub);
  return out;
}

// ------------------------------------------------------------- printing

std::string to_string(const Term& t) {
  std::string s = t.name;
  if (!t.args.empty()) {
    s += "(";
    for (size_t i = 0; i < t.args.size(); ++i) {
      if (i) s += ", ";
      s += to_string(t.args[i]);
    }
    s += ")";
  }
  return s;
}

namespace {

// precedence: quantifier 0, => 1, \/ 2, /\ 3, atoms 4
std::string print_formula(const Formula& f, int min_prec) {
  auto wrap = [&](int prec, std::string s) {
    return prec < min_prec ? "(" + s + ")" : s;
  };
  switch (f.kind) {
    case FKind::Atom: {
      std::string s = f.pred;
      if (!f.args.empty()) {
        s += "(";
        for (size_t i = 0; i < f.args.size(); ++i) {
          if (i) s += ", ";
          s += to_string(f.args[i]);
        }
        s += ")";
      }
      return s;
    }
    case FKind::Top:
      return "top";
    case FKind::Bot:
      return "bot";
    case FKind::Imp:
      return wrap(1, print_formula(f.kids[0], 2) + " => " + print_formula(f.kids[1], 1));
    case FKind::Or:
      return wrap(2, print_formula(f.kids[0], 2) + " \\/ " + print_formula(f.kids[1], 3));
    case FKind::And:
      return wrap(3, print_formula(f.kids[0], 3) + " /\\ " + print_formula(f.kids[1], 4));
    case FKind::Forall:
    case FKind::Exists:
      return wrap(1, std::string(f.kind == FKind::Forall ? "forall " : "exists ") + f.bvar +
                         ":" + f.bsort + ". " + print_formula(f.kids[0], 0));
  }
  return "?";
}

}  // namespace

std::string to_string(const Formula& f) { return print_formula(f, 0); }

// ------------------------------------------------------ alpha equality

namespace {

bool alpha_term(const Term& a, const Term& b, const std::vector<std::string>& ea,
                const std::vector<std::string>& eb) {
  if (a.is_var != b.is_var || a.sort != b.sort) return false;
  if (a.is_var) {
    auto ia = std::find(ea.rbegin(), ea.rend(), a.name);
    auto ib = std::find(eb.rbegin(), eb.rend(), b.name);
    if ((ia == ea.rend()) != (ib == eb.rend())) return false;
    if (ia == ea.rend()) return a.name == b.name;  // both free
    return (ia - ea.rbegin()) == (ib - eb.rbegin());
  }
  if (a.name != b.name || a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!alpha_term(a.args[i], b.args[i], ea, eb)) return false;
  return true;
}

bool alpha_formula(const Formula& a, const Formula& b, std::vector<std::string>& ea,
                   std::vector<std::string>& eb) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case FKind::Atom:
      if (a.pred != b.pred || a.args.size() != b.args.size()) return false;
      for (size_t i = 0; i < a.args.size(); ++i)
        if (!alpha_term(a.args[i], b.args[i], ea, eb)) return false;
      return true;
    case FKind::Top:
    case FKind::Bot:
      return true;
    case FKind::Forall:
    case FKind::Exists: {
      if (a.bsort != b.bsort) return false;
      ea.push_back(a.bvar);
      eb.push_back(b.bvar);
      bool ok = alpha_formula(a.kids[0], b.kids[0], ea, eb);
      ea.pop_back();
      eb.pop_back();
      return ok;
    }
    default:
      for (size_t i = 0; i < a.kids.size(); ++i) {
        std::vector<std::string>& xa = ea;
        std::vector<std::string>& xb = eb;
        if (!alpha_formula(a.kids[i], b.kids[i], xa, xb)) return false;
      }
      return true;
  }
}

// canonical string with de Bruijn levels, used as a memo/visited key
void canon_term(const Term& t, const std::vector<std::string>& env, std::string& out) {
  if (t.is_var) {
    auto it = std::find(env.rbegin(), env.rend(), t.name);
    if (it == env.rend())
      out += "f:" + t.name;
    else
      out += "b:" + std::to_string(it - env.rbegin());
    out += ";";
    return;
  }
  out += t.name + "(";
  for (const Term& a : t.args) canon_term(a, env, out);
  out += ")";
}

void canon_formula(const Formula& f, std::vector<std::string>& env, std::string& out) {
  switch (f.kind) {
    case FKind::Atom:
      out += f.pred + "[";
      for (const Term& a : f.args) canon_term(a, env, out);
      out += "]";
      return;
    case FKind::Top:
      out += "T";
      return;
    case FKind::Bot:
      out += "F";
      return;
    case FKind::Imp:
    case FKind::And:
    case FKind::Or:
      out += f.kind == FKind::Imp ? "I(" : f.kind == FKind::And ? "A(" : "O(";
      canon_formula(f.kids[0], env, out);
      out += ",";
      canon_formula(f.kids[1], env, out);
      out += ")";
      return;
    case FKind::Forall:
    case FKind::Exists:
      out += (f.kind == FKind::Forall ? "Q" : "E") + f.bsort + ".";
      env.push_back(f.bvar);
      canon_formula(f.kids[0], env, out);
      env.pop_back();
      return;
  }
}

}  // namespace

bool alpha_equal(const Formula& a, const Formula& b) {
  std::vector<std::string> ea, eb;
  return alpha_formula(a, b, ea, eb);
}

std::string canonical_key(const Formula& f);
std::string canonical_key(const Formula& f) {
  std::string out;
  std::vector<std::string> env;
  canon_formula(f, env, out);
  return out;
}

// -------------------------------------------------------------- parser

Theory parse_theory(const std::string& text) {
  Theory thy;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = lex(line, lineno);
    if (toks.empty()) continue;
    TokenStream ts{toks, 0, lineno};
    Token head = ts.next();

    if (head.text == "sort") {
      Token s = ts.next();
      if (thy.sig.has_sort(s.text)) throw SyntaxError(lineno, s.col, "duplicate sort");
      thy.sig.sorts.push_back(s.text);
    } else if (head.text == "fun") {
      Token name = ts.next();
      if (thy.sig.funs.count(name.text) || thy.sig.preds.count(name.text))
        throw SyntaxError(lineno, name.col, "duplicate symbol '" + name.text + "'");
      ts.expect(":");
      FunDecl d;
      while (!ts.done() && ts.peek().text != "->") {
        Token s = ts.next();
        if (!thy.sig.has_sort(s.text))
          throw SyntaxError(lineno, s.col, "unknown sort '" + s.text + "'");
        d.args.push_back(s.text);
      }
      ts.expect("->");
      Token r = ts.next();
      if (!thy.sig.has_sort(r.text))
        throw SyntaxError(lineno, r.col, "unknown sort '" + r.text + "'");
      d.result = r.text;
      thy.sig.funs[name.text] = d;
    } else if (head.text == "pred") {
      Token name = ts.next();
      if (thy.sig.funs.count(name.text) || thy.sig.preds.count(name.text))
        throw SyntaxError(lineno, name.col, "duplicate symbol '" + name.text + "'");
      ts.expect(":");
      std::vector<std::string> args;
      while (!ts.done()) {
        Token s = ts.next();
        if (!thy.sig.has_sort(s.text))
          throw SyntaxError(lineno, s.col, "unknown sort '" + s.text + "'");
        args.push_back(s.text);
      }
      thy.sig.preds[name.text] = args;
    } else if (head.text == "rule") {
      size_t arrow = 0;
      for (size_t i = 0; i < toks.size(); ++i)
        if (toks[i].text == "-->") arrow = i;
      if (arrow == 0) throw SyntaxError(lineno, 1, "rule needs '-->'");
      std::vector<Token> ltoks(toks.begin() + 1, toks.begin() + arrow);
      std::vector<Token> rtoks(toks.begin() + arrow + 1, toks.end());
      if (ltoks.empty() || rtoks.empty())
        throw SyntaxError(lineno, toks[arrow].col, "rule needs both sides");

      std::map<std::string, std::string> vars;
      RewriteRule rule;
      const std::string& headsym = ltoks[0].text;
      if (thy.sig.preds.count(headsym)) {
        rule.is_term_rule = false;
        TokenStream ls{ltoks, 0, lineno};
        FormulaParser lp{thy.sig, ls, vars, {}};
        rule.prop_lhs = lp.parse();
        if (!ls.done()) throw SyntaxError(lineno, ls.peek().col, "trailing tokens");
        if (rule.prop_lhs.kind != FKind::Atom)
          throw SyntaxError(lineno, ltoks[0].col, "rule left side must be atomic");
        TokenStream rs{rtoks, 0, lineno};
        FormulaParser rp{thy.sig, rs, vars, {}};
        rule.prop_rhs = rp.parse();
        if (!rs.done()) throw SyntaxError(lineno, rs.peek().col, "trailing tokens");
        auto lv = free_vars(rule.prop_lhs);
        for (const auto& [v, s] : free_vars(rule.prop_rhs))
          if (!lv.count(v))
            throw SyntaxError(lineno, rtoks[0].col,
                              "variable '" + v + "' of the right side is not on the left");
      } else if (thy.sig.funs.count(headsym)) {
        rule.is_term_rule = true;
        const std::string sort = thy.sig.funs.at(headsym).result;
        TokenStream ls{ltoks, 0, lineno};
        FormulaParser lp{thy.sig, ls, vars, {}};
        rule.term_lhs = lp.parse_term(sort);
        if (!ls.done()) throw SyntaxError(lineno, ls.peek().col, "trailing tokens");
        TokenStream rs{rtoks, 0, lineno};
        FormulaParser rp{thy.sig, rs, vars, {}};
        rule.term_rhs = rp.parse_term(sort);
        if (!rs.done()) throw SyntaxError(lineno, rs.peek().col, "trailing tokens");
        auto lv = free_vars(rule.term_lhs);
        for (const auto& [v, s] : free_vars(rule.term_rhs))
          if (!lv.count(v))
            throw SyntaxError(lineno, rtoks[0].col,
                              "variable '" + v + "' of the right side is not on the left");
      } else {
        throw SyntaxError(lineno, ltoks[0].col, "unknown symbol '" + headsym + "'");
      }
      thy.rules.push_back(std::move(rule));
    } else if (head.text == "axiom") {
      std::vector<Token> ftoks(toks.begin() + 1, toks.end());
      std::map<std::string, std::string> vars;
      TokenStream fs{ftoks, 0, lineno};
      FormulaParser fp{thy.sig, fs, vars, {}};
      Formula f = fp.parse();
      if (!fs.done()) throw SyntaxError(lineno, fs.peek().col, "trailing tokens");
      if (!vars.empty())
        throw SyntaxError(lineno, 1, "axiom has free variable '" + vars.begin()->first + "'");
      thy.axioms.push_back(std::move(f));
    } else if (head.text == "flags") {
      while (!ts.done()) {
        Token f = ts.next();
        if (f.text == "terminating")
          thy.claimed_terminating = true;
        else if (f.text == "confluent")
          thy.claimed_confluent = true;
        else
          throw SyntaxError(lineno, f.col, "unknown flag '" + f.text + "'");
      }
    } else {
      throw SyntaxError(lineno, head.col, "unknown directive '" + head.text + "'");
    }
  }
  return thy;
}

Theory parse_theory_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_theory(buf.str());
}

std::string serialize_theory(const Theory& thy) {
  std::ostringstream out;
  for (const auto& s : thy.sig.sorts) out << "sort " << s << "\n";
  for (const auto& [name, d] : thy.sig.funs) {
    out << "fun " << name << " :";
    for (const auto& a : d.args) out << " " << a;
    out << " -> " << d.result << "\n";
  }
  for (const auto& [name, args] : thy.sig.preds) {
    out << "pred " << name << " :";
    for (const auto& a : args) out << " " << a;
    out << "\n";
  }
  for (const auto& r : thy.rules) {
    if (r.is_term_rule)
      out << "rule " << to_string(r.term_lhs) << " --> " << to_string(r.term_rhs) << "\n";
    else
      out << "rule " << to_string(r.prop_lhs) << " --> " << to_string(r.prop_rhs) << "\n";
  }
  for (const auto& a : thy.axioms) out << "axiom " << to_string(a) << "\n";
  if (thy.claimed_terminating || thy.claimed_confluent) {
    out << "flags";
    if (thy.claimed_terminating) out << " terminating";
    if (thy.claimed_confluent) out << " confluent";
    out << "\n";
  }
  return out.str();
}

Formula parse_formula(const Signature& sig, const std::string& text,
                      const std::map<std::string, std::string>& vars) {
  auto toks = lex(text, 1);
  std::map<std::string, std::string> v = vars;
  TokenStream ts{toks, 0, 1};
  FormulaParser fp{sig, ts, v, {}};
  Formula f = fp.parse();
  if (!ts.done()) throw SyntaxError(1, ts.peek().col, "trailing tokens");
  return f;
}

Term parse_term(const Signature& sig, const std::string& text, const std::string& sort,
                const std::map<std::string, std::string>& vars) {
  auto toks = lex(text, 1);
  std::map<std::string, std::string> v = vars;
  TokenStream ts{toks, 0, 1};
  FormulaParser fp{sig, ts, v, {}};
  Term t = fp.parse_term(sort);
  if (!ts.done()) throw SyntaxError(1, ts.peek().col, "trailing tokens");
  return t;
}

// ------------------------------------------------------------ matching

namespace {

bool match_term(const Term& pat, const Term& sub, std::map<std::string, Term>& binds) {
  if (pat.is_var) {
    auto it = binds.find(pat.name);
    if (it != binds.end()) return it->second == sub;
    if (pat.sort != sub.sort) return false;
    binds[pat.name] = sub;
    return true;
  }
  if (sub.is_var || pat.name != sub.name || pat.args.size() != sub.args.size()) return false;
  for (size_t i = 0; i < pat.args.size(); ++i)
    if (!match_term(pat.args[i], sub.args[i], binds)) return false;
  return true;
}

std::optional<Term> head_term_step(const Theory& thy, const Term& t) {
  if (t.is_var) return std::nullopt;
  for (const auto& rule : thy.rules) {
    if (!rule.is_term_rule) continue;
    std::map<std::string, Term> binds;
    if (match_term(rule.term_lhs, t, binds)) return substitute(rule.term_rhs, binds);
  }
  return std::nullopt;
}

// one term rewrite step; nullopt when t is term-normal
std::optional<Term> term_step(const Theory& thy, const Term& t, Strategy strat) {
  if (strat == Strategy::Outermost)
    if (auto r = head_term_step(thy, t)) return r;
  for (size_t i = 0; i < t.args.size(); ++i) {
    if (auto r = term_step(thy, t.args[i], strat)) {
      Term out = t;
      out.args[i] = std::move(*r);
      return out;
    }
  }
  if (strat == Strategy::Innermost) return head_term_step(thy, t);
  return std::nullopt;
}

std::optional<Formula> head_atom_step(const Theory& thy, const Formula& f) {
  for (const auto& rule : thy.rules) {
    if (rule.is_term_rule) continue;
    if (rule.prop_lhs.pred != f.pred) continue;
    std::map<std::string, Term> binds;
    bool ok = true;
    for (size_t i = 0; i < f.args.size(); ++i)
      if (!match_term(rule.prop_lhs.args[i], f.args[i], binds)) {
        ok = false;
        break;
      }
    if (ok) return substitute(rule.prop_rhs, binds);
  }
  return std::nullopt;
}

// one rewrite step in a formula. Innermost: term steps inside atoms first
// (leftmost), then head rewriting of the atom; outermost tries the atom
// head first. Both recurse into subformulas including under binders.
std::optional<Formula> formula_step(const Theory& thy, const Formula& f, Strategy strat) {
  if (f.kind == FKind::Atom) {
    if (strat == Strategy::Outermost)
      if (auto r = head_atom_step(thy, f)) return r;
    for (size_t i = 0; i < f.args.size(); ++i)
      if (auto r = term_step(thy, f.args[i], strat)) {
        Formula out = f;
        out.args[i] = std::move(*r);
        return out;
      }
    if (strat == Strategy::Innermost) return head_atom_step(thy, f);
    return std::nullopt;
  }
  for (size_t i = 0; i < f.kids.size(); ++i)
    if (auto r = formula_step(thy, f.kids[i], strat)) {
      Formula out = f;
      out.kids[i] = std::move(*r);
      return out;
    }
  return std::nullopt;
}

}  // namespace

NormalizeResult normalize(const Theory& thy, const Formula& f, int fuel, Strategy strat) {
  NormalizeResult out;
  out.value = f;
  while (out.steps < fuel) {
    auto r = formula_step(thy, out.value, strat);
    if (!r) {
      out.normal = true;
      return out;
    }
    out.value = std::move(*r);
    ++out.steps;
  }
  out.normal = !formula_step(thy, out.value, strat).has_value();
  return out;
}

TermNormalizeResult normalize(const Theory& thy, const Term& t, int fuel, Strategy strat) {
  TermNormalizeResult out;
  out.value = t;
  while (out.steps < fuel) {
    auto r = term_step(thy, out.value, strat);
    if (!r) {
      out.normal = true;
      return out;
    }
    out.value = std::move(*r);
    ++out.steps;
  }
  out.normal = !term_step(thy, out.value, strat).has_value();
  return out;
}

bool is_normal(const Theory& thy, const Formula& f) {
  return !formula_step(thy, f, Strategy::Innermost).has_value();
}

std::vector<Term> all_one_step(const Theory& thy, const Term& t) {
  std::vector<Term> out;
  if (!t.is_var)
    for (const auto& rule : thy.rules) {
      if (!rule.is_term_rule) continue;
      std::map<std::string, Term> binds;
      if (match_term(rule.term_lhs, t, binds)) out.push_back(substitute(rule.term_rhs, binds));
    }
  for (size_t i = 0; i < t.args.size(); ++i)
    for (const Term& r : all_one_step(thy, t.args[i])) {
      Term copy = t;
      copy.args[i] = r;
      out.push_back(std::move(copy));
    }
  return out;
}

std::vector<Formula> all_one_step(const Theory& thy, const Formula& f) {
  std::vector<Formula> out;
  if (f.kind == FKind::Atom) {
    for (const auto& rule : thy.rules) {
      if (rule.is_term_rule) continue;
      if (rule.prop_lhs.pred != f.pred) continue;
      std::map<std::string, Term> binds;
      bool ok = true;
      for (size_t i = 0; i < f.args.size(); ++i)
        if (!match_term(rule.prop_lhs.args[i], f.args[i], binds)) {
          ok = false;
          break;
        }
      if (ok) out.push_back(substitute(rule.prop_rhs, binds));
    }
    for (size_t i = 0; i < f.args.size(); ++i)
      for (const Term& r : all_one_step(thy, f.args[i])) {
        Formula copy = f;
        copy.args[i] = r;
        out.push_back(std::move(copy));
      }
    return out;
  }
  for (size_t i = 0; i < f.kids.size(); ++i)
    for (const Formula& r : all_one_step(thy, f.kids[i])) {
      Formula copy = f;
      copy.kids[i] = r;
      out.push_back(std::move(copy));
    }
  return out;
}

TriState congruent(const Theory& thy, const Formula& a, const Formula& b, int fuel) {
  if (alpha_equal(a, b)) return TriState::Yes;
  NormalizeResult na = normalize(thy, a, fuel);
  NormalizeResult nb = normalize(thy, b, fuel);
  if (na.normal && nb.normal)
    return alpha_equal(na.value, nb.value) ? TriState::Yes : TriState::No;

  // bounded joinability: breadth-first reduction graphs from both sides,
  // answering Yes on any common reduct
  auto explore = [&](const Formula& start) {
    std::set<std::string> seen;
    std::vector<Formula> frontier{start};
    seen.insert(canonical_key(start));
    int budget = fuel;
    for (size_t i = 0; i < frontier.size() && budget > 0; ++i) {
      for (Formula& r : all_one_step(thy, frontier[i])) {
        if (--budget < 0) break;
        if (seen.insert(canonical_key(r)).second) frontier.push_back(std::move(r));
      }
    }
    return seen;
  };
  std::set<std::string> ra = explore(a), rb = explore(b);
  for (const auto& k : ra)
    if (rb.count(k)) return TriState::Yes;
  return TriState::Unknown;
}

// ------------------------------------------------------- rule analyses

namespace {

void scan_polarity(const Formula& f, bool positive, CheckReport& r, const std::string& where) {
  switch (f.kind) {
    case FKind::Atom:
      if (!positive) r.add("positive", f.pred + " at negative position in " + where);
      return;
    case FKind::Imp:
      scan_polarity(f.kids[0], !positive, r, where);
      scan_polarity(f.kids[1], positive, r, where);
      return;
    case FKind::Top:
    case FKind::Bot:
      return;
    default:
      for (const Formula& k : f.kids) scan_polarity(k, positive, r, where);
      return;
  }
}

bool has_quantifier(const Formula& f) {
  if (f.kind == FKind::Forall || f.kind == FKind::Exists) return true;
  for (const Formula& k : f.kids)
    if (has_quantifier(k)) return true;
  return false;
}

bool linear_atom(const Formula& atom) {
  std::set<std::string> seen;
  for (const Term& a : atom.args) {
    // lhs arguments of proposition rules are first-order patterns
    std::vector<const Term*> stack{&a};
    while (!stack.empty()) {
      const Term* t = stack.back();
      stack.pop_back();
      if (t->is_var) {
        if (!seen.insert(t->name).second) return false;
      } else {
        for (const Term& x : t->args) stack.push_back(&x);
      }
    }
  }
  return true;
}

bool unify_terms(Term a, Term b, std::map<std::string, Term>& s);

Term walk(const Term& t, const std::map<std::string, Term>& s) {
  if (t.is_var) {
    auto it = s.find(t.name);
    if (it != s.end()) return walk(it->second, s);
  }
  return t;
}

bool occurs_after_walk(const std::string& v, const Term& t, const std::map<std::string, Term>& s) {
  Term w = walk(t, s);
  if (w.is_var) return w.name == v;
  for (const Term& a : w.args)
    if (occurs_after_walk(v, a, s)) return true;
  return false;
}

bool unify_terms(Term a, Term b, std::map<std::string, Term>& s) {
  a = walk(a, s);
  b = walk(b, s);
  if (a.is_var && b.is_var && a.name == b.name) return true;
  if (a.is_var) {
    if (a.sort != b.sort || occurs_after_walk(a.name, b, s)) return false;
    s[a.name] = b;
    return true;
  }
  if (b.is_var) return unify_terms(b, a, s);
  if (a.name != b.name || a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!unify_terms(a.args[i], b.args[i], s)) return false;
  return true;
}

Term rename_vars(const Term& t, const std::string& suffix) {
  Term out = t;
  if (out.is_var) {
    out.name += suffix;
    return out;
  }
  for (Term& a : out.args) a = rename_vars(a, suffix);
  return out;
}

}  // namespace

CheckReport check_positive(const Theory& thy) {
  CheckReport r;
  for (size_t i = 0; i < thy.rules.size(); ++i) {
    if (thy.rules[i].is_term_rule) continue;
    scan_polarity(thy.rules[i].prop_rhs, true, r, "rule " + std::to_string(i + 1));
  }
  return r;
}

bool check_quantifier_free(const Theory& thy) {
  for (const auto& rule : thy.rules)
    if (!rule.is_term_rule && has_quantifier(rule.prop_rhs)) return false;
  return true;
}

bool check_deterministic(const Theory& thy) {
  std::vector<const RewriteRule*> props;
  for (const auto& rule : thy.rules)
    if (!rule.is_term_rule) props.push_back(&rule);
  for (const auto* rule : props)
    if (!linear_atom(rule->prop_lhs)) return false;
  for (size_t i = 0; i < props.size(); ++i)
    for (size_t j = i + 1; j < props.size(); ++j) {
      const Formula& a = props[i]->prop_lhs;
      const Formula& b = props[j]->prop_lhs;
      if (a.pred != b.pred) continue;
      std::map<std::string, Term> s;
      bool unifiable = true;
      for (size_t k = 0; k < a.args.size() && unifiable; ++k)
        unifiable = unify_terms(rename_vars(a.args[k], "#l"), rename_vars(b.args[k], "#r"), s);
      if (unifiable) return false;
    }
  return true;
}

}  // namespace tva
