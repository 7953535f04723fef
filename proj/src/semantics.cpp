#include "tva/semantics.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tva/algebra_io.hpp"

namespace tva {

namespace {

uint64_t table_size(const BStructure& st, const std::vector<std::string>& arg_sorts) {
  uint64_t n = 1;
  for (const auto& s : arg_sorts) n *= static_cast<uint64_t>(st.domain(s));
  return n;
}

uint64_t tuple_index(const BStructure& st, const std::vector<std::string>& arg_sorts,
                     const std::vector<int>& tuple) {
  uint64_t idx = 0;
  for (size_t i = 0; i < arg_sorts.size(); ++i)
    idx = idx * st.domain(arg_sorts[i]) + tuple[i];
  return idx;
}

// advance a mixed-radix tuple; false when it wraps around
bool next_tuple(const BStructure& st, const std::vector<std::string>& arg_sorts,
                std::vector<int>& tuple) {
  for (size_t i = tuple.size(); i-- > 0;) {
    if (++tuple[i] < st.domain(arg_sorts[i])) return true;
    tuple[i] = 0;
  }
  return false;
}

}  // namespace

int denote(const Signature& sig, const BStructure& st, const Term& t, const Assignment& phi) {
  if (t.is_var) {
    auto it = phi.find(t.name);
    if (it == phi.end()) throw std::runtime_error("unassigned variable " + t.name);
    return it->second;
  }
  const FunDecl& d = sig.funs.at(t.name);
  std::vector<int> args;
  args.reserve(t.args.size());
  for (const Term& a : t.args) args.push_back(denote(sig, st, a, phi));
  return st.fun_interp.at(t.name)[tuple_index(st, d.args, args)];
}

Denot denote(const Signature& sig, const BStructure& st, const Formula& f, const Assignment& phi) {
  const TruthValueAlgebra& B = st.algebra;
  switch (f.kind) {
    case FKind::Atom: {
      std::vector<int> args;
      for (const Term& a : f.args) args.push_back(denote(sig, st, a, phi));
      return {true, st.pred_interp.at(f.pred)[tuple_index(st, sig.preds.at(f.pred), args)], {}};
    }
    case FKind::Top:
      return {true, B.top, {}};
    case FKind::Bot:
      return {true, B.bot, {}};
    case FKind::Imp:
    case FKind::And:
    case FKind::Or: {
      Denot l = denote(sig, st, f.kids[0], phi);
      if (!l.defined) return l;
      Denot r = denote(sig, st, f.kids[1], phi);
      if (!r.defined) return r;
      int v = f.kind == FKind::Imp  ? B.imp_at(l.value, r.value)
              : f.kind == FKind::And ? B.meet_at(l.value, r.value)
                                     : B.join_at(l.value, r.value);
      return {true, v, {}};
    }
    case FKind::Forall:
    case FKind::Exists: {
      Mask values = 0;
      Assignment inner = phi;
      for (int e = 0; e < st.domain(f.bsort); ++e) {
        inner[f.bvar] = e;
        Denot d = denote(sig, st, f.kids[0], inner);
        if (!d.defined) return d;
        values |= Mask(1) << d.value;
      }
      const auto& dom = (f.kind == FKind::Forall) ? B.forall : B.exists;
      auto it = dom.find(values);
      if (it == dom.end()) return {false, 0, to_string(f)};
      return {true, it->second, {}};
    }
  }
  return {false, 0, "?"};
}

CheckReport check_model(const Theory& thy, const BStructure& st) {
  CheckReport r;
  r.notes.push_back(
      "congruence checked on rule instances; the congruence is generated by them and "
      "denotation is compositional, so instance equality extends to all congruent pairs");
  for (size_t i = 0; i < thy.axioms.size(); ++i) {
    Denot d = denote(thy.sig, st, thy.axioms[i], {});
    if (!d.defined)
      r.add("model.axiom-undefined", d.offending);
    else if (!st.algebra.positive(d.value))
      r.add("model.axiom", "axiom " + std::to_string(i + 1) + " denotes " +
                               st.algebra.carrier[d.value]);
  }
  for (size_t i = 0; i < thy.rules.size(); ++i) {
    const RewriteRule& rule = thy.rules[i];
    std::map<std::string, std::string> fv =
        rule.is_term_rule ? free_vars(rule.term_lhs) : free_vars(rule.prop_lhs);
    std::vector<std::string> names, sorts;
    for (const auto& [n, s] : fv) {
      names.push_back(n);
      sorts.push_back(s);
    }
    std::vector<int> tuple(names.size(), 0);
    bool empty_domain = false;
    for (const auto& s : sorts)
      if (st.domain(s) == 0) empty_domain = true;
    if (empty_domain) continue;  // no instances
    do {
      Assignment phi;
      for (size_t k = 0; k < names.size(); ++k) phi[names[k]] = tuple[k];
      std::string where = "rule " + std::to_string(i + 1);
      if (!names.empty()) {
        where += " [";
        for (size_t k = 0; k < names.size(); ++k) {
          if (k) where += ",";
          where += names[k] + "=" + sorts[k] + std::to_string(tuple[k]);
        }
        where += "]";
      }
      if (rule.is_term_rule) {
        int l = denote(thy.sig, st, rule.term_lhs, phi);
        int rr = denote(thy.sig, st, rule.term_rhs, phi);
        if (l != rr) {
          r.add("model.rule", where);
          break;
        }
      } else {
        Denot l = denote(thy.sig, st, rule.prop_lhs, phi);
        Denot rr = denote(thy.sig, st, rule.prop_rhs, phi);
        if (!l.defined || !rr.defined) {
          r.add("model.rule-undefined", where + " at " + (l.defined ? rr : l).offending);
          break;
        }
        if (l.value != rr.value) {
          r.add("model.rule", where + ": " + st.algebra.carrier[l.value] +
                                  " != " + st.algebra.carrier[rr.value]);
          break;
        }
      }
    } while (next_tuple(st, sorts, tuple));
  }
  return r;
}

std::optional<BStructure> find_model(const Theory& thy, const TruthValueAlgebra& alg,
                                     const std::map<std::string, int>& domain_sizes,
                                     const SearchLimits& limits) {
  BStructure st;
  st.algebra = alg;
  st.domain_sizes = domain_sizes;

  // the flattened cells of all tables form one big odometer
  struct Cell {
    std::vector<int>* table;
    size_t index;
    int radix;
  };
  std::vector<Cell> cells;
  uint64_t space = 1;
  for (const auto& [name, d] : thy.sig.funs) {
    uint64_t sz = table_size(st, d.args);
    int radix = st.domain(d.result);
    if (radix == 0 && sz > 0)
      throw std::runtime_error("sort " + d.result + " has an empty domain but " + name +
                               " needs a value");
    st.fun_interp[name].assign(sz, 0);
    for (size_t i = 0; i < sz; ++i) {
      cells.push_back({&st.fun_interp[name], i, radix});
      space *= radix;
      if (space > limits.max_structures)
        throw std::runtime_error("search space exceeds the structure limit");
    }
  }
  for (const auto& [name, args] : thy.sig.preds) {
    uint64_t sz = table_size(st, args);
    st.pred_interp[name].assign(sz, 0);
    for (size_t i = 0; i < sz; ++i) {
      cells.push_back({&st.pred_interp[name], i, alg.size()});
      space *= alg.size();
      if (space > limits.max_structures)
        throw std::runtime_error("search space exceeds the structure limit");
    }
  }

  while (true) {
    if (check_model(thy, st).pass()) return st;
    // lexicographic increment: last cell fastest
    size_t i = cells.size();
    while (i-- > 0) {
      auto& c = cells[i];
      if (++(*c.table)[c.index] < c.radix) break;
      (*c.table)[c.index] = 0;
      if (i == 0) return std::nullopt;
    }
    if (cells.empty()) return std::nullopt;
  }
}

std::map<std::string, std::vector<Term>> closed_normal_terms(const Theory& thy, int per_sort,
                                                             int fuel) {
  std::map<std::string, std::vector<Term>> out;
  for (const auto& s : thy.sig.sorts) out[s] = {};
  // grow by term size, seeding with constants
  bool grew = true;
  for (int round = 0; round < per_sort && grew; ++round) {
    grew = false;
    for (const auto& [name, d] : thy.sig.funs) {
      if (static_cast<int>(out[d.result].size()) >= per_sort) continue;
      // all argument combinations from what is known so far
      std::vector<size_t> idx(d.args.size(), 0);
      bool any = true;
      for (const auto& a : d.args)
        if (out[a].empty()) any = false;
      if (!any && !d.args.empty()) continue;
      while (true) {
        Term t;
        t.name = name;
        t.sort = d.result;
        for (size_t i = 0; i < d.args.size(); ++i) t.args.push_back(out[d.args[i]][idx[i]]);
        auto nf = normalize(thy, t, fuel);
        if (nf.normal) {
          auto& list = out[d.result];
          if (std::find(list.begin(), list.end(), nf.value) == list.end() &&
              static_cast<int>(list.size()) < per_sort) {
            list.push_back(nf.value);
            grew = true;
          }
        }
        size_t k = idx.size();
        bool done = idx.empty();
        while (k-- > 0) {
          if (++idx[k] < out[d.args[k]].size()) break;
          idx[k] = 0;
          if (k == 0) done = true;
        }
        if (done) break;
      }
    }
  }
  return out;
}

namespace {

FixpointResult fixpoint_impl(const Theory& thy, const TruthValueAlgebra& alg,
                             const OrderSpec& ord,
                             const std::map<std::string, int>& domain_sizes, int fuel,
                             bool one_step_functional) {
  FixpointResult out;
  out.report.merge(check_positive(thy));
  auto cc = check_complete(alg, ord);
  out.report.merge(check_ordered(alg, ord));
  out.report.merge(cc.report);
  if (!out.report.pass()) return out;

  BStructure& st = out.structure;
  st.algebra = alg;
  st.domain_sizes = domain_sizes;

  // domain elements are closed normal terms
  out.representatives = closed_normal_terms(thy, 64, fuel);
  for (const auto& [sort, size] : domain_sizes)
    if (static_cast<int>(out.representatives[sort].size()) < size) {
      out.report.add("fixpoint.universe",
                     "sort " + sort + " has fewer closed normal terms than requested");
      return out;
    }

  // function tables follow the syntax: f applied to representatives,
  // normalized, looked up among the representatives
  for (const auto& [name, d] : thy.sig.funs) {
    auto& table = st.fun_interp[name];
    table.assign(table_size(st, d.args), 0);
    std::vector<int> tuple(d.args.size(), 0);
    if (table.empty()) continue;
    do {
      Term t;
      t.name = name;
      t.sort = d.result;
      for (size_t i = 0; i < d.args.size(); ++i)
        t.args.push_back(out.representatives[d.args[i]][tuple[i]]);
      auto nf = normalize(thy, t, fuel);
      const auto& reps = out.representatives[d.result];
      auto it = std::find(reps.begin(), reps.end(), nf.value);
      if (!nf.normal || it == reps.end() ||
          (it - reps.begin()) >= st.domain(d.result)) {
        out.report.add("fixpoint.universe", "the universe is not closed under " + name);
        return out;
      }
      table[tuple_index(st, d.args, tuple)] = static_cast<int>(it - reps.begin());
    } while (next_tuple(st, d.args, tuple));
  }

  // bottom interpretation: pointwise glb of the whole carrier
  const int bottom = cc.glb[alg.all_mask()];
  for (const auto& [name, args] : thy.sig.preds)
    st.pred_interp[name].assign(table_size(st, args), bottom);

  uint64_t cell_count = 0;
  for (const auto& [name, table] : st.pred_interp) cell_count += table.size();
  const int max_rounds = static_cast<int>(cell_count * alg.size() + 4);
  for (int round = 0;; ++round) {
    if (round > max_rounds) {
      out.report.add("fixpoint.divergence", "no fixed point after iteration bound");
      return out;
    }
    std::map<std::string, std::vector<int>> next;
    for (const auto& [name, args] : thy.sig.preds) {
      auto& table = next[name];
      table.assign(st.pred_interp.at(name).size(), bottom);
      if (table.empty()) continue;
      std::vector<int> tuple(args.size(), 0);
      do {
        Formula atom;
        atom.kind = FKind::Atom;
        atom.pred = name;
        for (size_t i = 0; i < args.size(); ++i)
          atom.args.push_back(out.representatives[args[i]][tuple[i]]);
        Formula rhs;
        if (one_step_functional || !thy.claimed_terminating) {
          // A+ : the unique one-step reduct if any, else A itself
          auto reducts = all_one_step(thy, atom);
          rhs = reducts.empty() ? atom : reducts.front();
        } else {
          auto nf = normalize(thy, atom, fuel);
          if (!nf.normal) {
            out.report.add("fixpoint.fuel", to_string(atom));
            return out;
          }
          rhs = nf.value;
        }
        Denot d = denote(thy.sig, st, rhs, {});
        if (!d.defined) {
          out.report.add("fixpoint.undefined", d.offending);
          return out;
        }
        table[tuple_index(st, args, tuple)] = d.value;
      } while (next_tuple(st, args, tuple));
    }
    bool same = true, increased = true;
    for (const auto& [name, table] : next) {
      const auto& old = st.pred_interp.at(name);
      for (size_t i = 0; i < table.size(); ++i) {
        if (table[i] != old[i]) same = false;
        if (!ord.leq(old[i], table[i])) increased = false;
      }
    }
    if (!increased) out.monotone = false;
    if (same) {
      out.iterations = round;
      break;
    }
    for (auto& [name, table] : next) st.pred_interp[name] = std::move(table);
  }
  return out;
}

}  // namespace

FixpointResult fixpoint_model(const Theory& thy, const TruthValueAlgebra& alg,
                              const OrderSpec& ord,
                              const std::map<std::string, int>& domain_sizes, int fuel) {
  return fixpoint_impl(thy, alg, ord, domain_sizes, fuel, false);
}

FixpointResult fixpoint_model_deterministic(const Theory& thy, const TruthValueAlgebra& alg,
                                            const OrderSpec& ord,
                                            const std::map<std::string, int>& domain_sizes,
                                            int fuel) {
  FixpointResult out;
  if (!check_deterministic(thy)) {
    out.report.add("fixpoint.deterministic", "some atom has two one-step reducts");
    return out;
  }
  return fixpoint_impl(thy, alg, ord, domain_sizes, fuel, true);
}

namespace {

// |A|: atoms and top map to the top value, connectives are evaluated in
// the algebra; only defined for quantifier-free formulas
int flat_value(const TruthValueAlgebra& alg, const Formula& f) {
  switch (f.kind) {
    case FKind::Atom:
    case FKind::Top:
      return alg.top;
    case FKind::Bot:
      return alg.bot;
    case FKind::Imp:
      return alg.imp_at(flat_value(alg, f.kids[0]), flat_value(alg, f.kids[1]));
    case FKind::And:
      return alg.meet_at(flat_value(alg, f.kids[0]), flat_value(alg, f.kids[1]));
    case FKind::Or:
      return alg.join_at(flat_value(alg, f.kids[0]), flat_value(alg, f.kids[1]));
    default:
      throw std::runtime_error("quantifier in a quantifier-free interpretation");
  }
}

}  // namespace

UniverseModel quantifier_free_model(const Theory& thy, const TruthValueAlgebra& alg,
                                    int term_bound, int fuel) {
  UniverseModel out;
  if (!check_quantifier_free(thy)) {
    out.report.add("qf.quantifier", "a rewrite rule mentions a quantifier");
    return out;
  }
  if (!thy.claimed_terminating || !thy.claimed_confluent) {
    out.report.add("qf.flags", "theory must claim terminating and confluent");
    return out;
  }
  BStructure& st = out.structure;
  st.algebra = alg;
  out.representatives = closed_normal_terms(thy, term_bound, fuel);
  for (const auto& [sort, reps] : out.representatives) {
    if (static_cast<int>(reps.size()) >= term_bound) {
      out.report.add("qf.universe", "sort " + sort + " exceeds the term universe bound");
      return out;
    }
    st.domain_sizes[sort] = static_cast<int>(reps.size());
  }
  for (const auto& [name, d] : thy.sig.funs) {
    auto& table = st.fun_interp[name];
    table.assign(table_size(st, d.args), 0);
    if (table.empty()) continue;
    std::vector<int> tuple(d.args.size(), 0);
    do {
      Term t;
      t.name = name;
      t.sort = d.result;
      for (size_t i = 0; i < d.args.size(); ++i)
        t.args.push_back(out.representatives[d.args[i]][tuple[i]]);
      auto nf = normalize(thy, t, fuel);
      const auto& reps = out.representatives[d.result];
      auto it = std::find(reps.begin(), reps.end(), nf.value);
      if (!nf.normal || it == reps.end()) {
        out.report.add("qf.universe", "the universe is not closed under " + name);
        return out;
      }
      table[tuple_index(st, d.args, tuple)] = static_cast<int>(it - reps.begin());
    } while (next_tuple(st, d.args, tuple));
  }
  for (const auto& [name, args] : thy.sig.preds) {
    auto& table = st.pred_interp[name];
    table.assign(table_size(st, args), alg.top);
    if (table.empty()) continue;
    std::vector<int> tuple(args.size(), 0);
    do {
      Formula atom;
      atom.kind = FKind::Atom;
      atom.pred = name;
      for (size_t i = 0; i < args.size(); ++i)
        atom.args.push_back(out.representatives[args[i]][tuple[i]]);
      auto nf = normalize(thy, atom, fuel);
      if (!nf.normal) {
        out.report.add("qf.fuel", to_string(atom));
        return out;
      }
      table[tuple_index(st, args, tuple)] = flat_value(alg, nf.value);
    } while (next_tuple(st, args, tuple));
  }
  out.report.merge(check_model(thy, st));
  return out;
}

std::vector<ProbeEntry> probe_super_consistency(
    const Theory& thy, const std::vector<std::pair<std::string, TruthValueAlgebra>>& library,
    const SearchLimits& limits) {
  std::vector<ProbeEntry> out;
  // default domain: one element per sort when closed terms exist, else empty
  std::map<std::string, int> domain_sizes;
  auto reps = closed_normal_terms(thy, 1);
  for (const auto& s : thy.sig.sorts)
    domain_sizes[s] = reps[s].empty() ? 0 : 1;
  for (const auto& [name, alg] : library) {
    ProbeEntry e;
    e.name = name;
    try {
      auto m = find_model(thy, alg, domain_sizes, limits);
      if (m) {
        e.outcome = ProbeOutcome::ModelFound;
        e.model = std::move(m);
      } else {
        e.outcome = ProbeOutcome::NoModel;
      }
    } catch (const std::runtime_error&) {
      e.outcome = ProbeOutcome::Inconclusive;
    }
    out.push_back(std::move(e));
  }
  return out;
}

// ---------------------------------------------------------- structure io

namespace {

int parse_elem(const std::string& tok, const std::string& sort, const BStructure& st, int line) {
  if (tok.size() <= sort.size() || tok.compare(0, sort.size(), sort) != 0)
    throw ParseError(line, "element '" + tok + "' does not belong to sort " + sort);
  int idx = std::stoi(tok.substr(sort.size()));
  if (idx < 0 || idx >= st.domain(sort))
    throw ParseError(line, "element '" + tok + "' outside the domain of " + sort);
  return idx;
}

}  // namespace

BStructure parse_structure(const std::string& text, const Theory& thy,
                           const TruthValueAlgebra& alg) {
  BStructure st;
  st.algebra = alg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::vector<std::pair<std::vector<std::string>, int>> pending;  // unused
  (void)pending;
  std::map<std::string, std::map<uint64_t, bool>> seen;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line.substr(0, line.find('#')));
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (toks.empty()) continue;
    if (toks[0] == "algebra") continue;  // resolved by the caller
    if (toks[0] == "domain") {
      if (toks.size() != 4 || toks[2] != "=")
        throw ParseError(lineno, "expected 'domain <sort> = <n>'");
      if (!thy.sig.has_sort(toks[1])) throw ParseError(lineno, "unknown sort " + toks[1]);
      st.domain_sizes[toks[1]] = std::stoi(toks[3]);
      continue;
    }
    if (toks[0] == "fun" || toks[0] == "pred") {
      bool is_fun = toks[0] == "fun";
      if (toks.size() < 5 || toks[2] != ":")
        throw ParseError(lineno, "expected '" + toks[0] + " <name> : <elems> -> <value>'");
      const std::string& name = toks[1];
      std::vector<std::string> arg_sorts;
      if (is_fun) {
        auto it = thy.sig.funs.find(name);
        if (it == thy.sig.funs.end()) throw ParseError(lineno, "unknown function " + name);
        arg_sorts = it->second.args;
      } else {
        auto it = thy.sig.preds.find(name);
        if (it == thy.sig.preds.end()) throw ParseError(lineno, "unknown predicate " + name);
        arg_sorts = it->second;
      }
      size_t arrow = 0;
      for (size_t i = 3; i < toks.size(); ++i)
        if (toks[i] == "->") arrow = i;
      if (arrow != toks.size() - 2 || arrow - 3 != arg_sorts.size())
        throw ParseError(lineno, "wrong arity for " + name);
      std::vector<int> tuple;
      for (size_t i = 0; i < arg_sorts.size(); ++i)
        tuple.push_back(parse_elem(toks[3 + i], arg_sorts[i], st, lineno));
      auto& table = is_fun ? st.fun_interp[name] : st.pred_interp[name];
      if (table.empty()) table.assign(table_size(st, arg_sorts), -1);
      int value;
      if (is_fun) {
        value = parse_elem(toks.back(), thy.sig.funs.at(name).result, st, lineno);
      } else {
        value = alg.index_of(toks.back());
        if (value < 0) throw ParseError(lineno, "unknown truth value " + toks.back());
      }
      table[tuple_index(st, arg_sorts, tuple)] = value;
      continue;
    }
    throw ParseError(lineno, "unknown key '" + toks[0] + "'");
  }
  // totality
  for (const auto& [name, d] : thy.sig.funs) {
    auto& table = st.fun_interp[name];
    if (table.empty()) table.assign(table_size(st, d.args), -1);
    for (int v : table)
      if (v < 0) throw ParseError(lineno, "function " + name + " is not total");
  }
  for (const auto& [name, args] : thy.sig.preds) {
    auto& table = st.pred_interp[name];
    if (table.empty()) table.assign(table_size(st, args), -1);
    for (int v : table)
      if (v < 0) throw ParseError(lineno, "predicate " + name + " is not total");
  }
  return st;
}

BStructure parse_structure_file(const std::string& path, const Theory& thy) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  // locate the algebra reference
  std::istringstream scan(text);
  std::string line, alg_path;
  int lineno = 0;
  while (std::getline(scan, line)) {
    ++lineno;
    std::istringstream ls(line.substr(0, line.find('#')));
    std::string key, value;
    if (ls >> key >> value && key == "algebra") {
      alg_path = value;
      break;
    }
  }
  if (alg_path.empty()) throw ParseError(1, "structure file lacks an algebra reference");
  std::filesystem::path p = std::filesystem::path(path).parent_path() / alg_path;
  TruthValueAlgebra alg = parse_algebra_file(p.string());
  return parse_structure(text, thy, alg);
}

std::string serialize_structure(const Theory& thy, const BStructure& st,
                                const std::string& algebra_ref) {
  std::ostringstream out;
  out << "algebra " << algebra_ref << "\n";
  for (const auto& [sort, n] : st.domain_sizes) out << "domain " << sort << " = " << n << "\n";
  auto rows = [&](const std::string& kind, const std::string& name,
                  const std::vector<std::string>& arg_sorts, const std::vector<int>& table,
                  bool fun_value, const std::string& result_sort) {
    std::vector<int> tuple(arg_sorts.size(), 0);
    if (table.empty()) return;
    BStructure tmp = st;
    do {
      out << kind << " " << name << " :";
      for (size_t i = 0; i < arg_sorts.size(); ++i)
        out << " " << arg_sorts[i] << tuple[i];
      int v = table[tuple_index(st, arg_sorts, tuple)];
      out << " -> " << (fun_value ? result_sort + std::to_string(v) : st.algebra.carrier[v]);
      out << "\n";
    } while (next_tuple(tmp, arg_sorts, tuple));
  };
  for (const auto& [name, d] : thy.sig.funs)
    rows("fun", name, d.args, st.fun_interp.at(name), true, d.result);
  for (const auto& [name, args] : thy.sig.preds)
    rows("pred", name, args, st.pred_interp.at(name), false, "");
  return out.str();
}

}  // namespace tva
