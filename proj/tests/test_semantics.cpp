#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tva/algebra_io.hpp"
#include "tva/semantics.hpp"

using namespace tva;

namespace {

std::string data(const std::string& name) { return std::string(TVA_DATA_DIR) + "/" + name; }

TruthValueAlgebra load_alg(const std::string& name) { return parse_algebra_file(data(name)); }
Theory load_thy(const std::string& name) { return parse_theory_file(data(name)); }

BStructure prop_structure(const Theory& thy, const TruthValueAlgebra& alg,
                          const std::map<std::string, int>& preds) {
  BStructure st;
  st.algebra = alg;
  for (const auto& [name, v] : preds) st.pred_interp[name] = {v};
  return st;
}

// Naive independent model finder: recursive table fill plus a from-scratch
// recursive evaluator, sharing no code with find_model/denote.
int naive_eval_term(const Theory& thy, const BStructure& st, const Term& t,
                    const std::map<std::string, int>& env) {
  if (t.is_var) return env.at(t.name);
  const auto& d = thy.sig.funs.at(t.name);
  uint64_t idx = 0;
  for (size_t i = 0; i < t.args.size(); ++i)
    idx = idx * st.domain(d.args[i]) + naive_eval_term(thy, st, t.args[i], env);
  return st.fun_interp.at(t.name)[idx];
}

std::optional<int> naive_eval(const Theory& thy, const BStructure& st, const Formula& f,
                              std::map<std::string, int> env) {
  const auto& B = st.algebra;
  if (f.kind == FKind::Top) return B.top;
  if (f.kind == FKind::Bot) return B.bot;
  if (f.kind == FKind::Atom) {
    uint64_t idx = 0;
    const auto& sorts = thy.sig.preds.at(f.pred);
    for (size_t i = 0; i < f.args.size(); ++i)
      idx = idx * st.domain(sorts[i]) + naive_eval_term(thy, st, f.args[i], env);
    return st.pred_interp.at(f.pred)[idx];
  }
  if (f.kind == FKind::Forall || f.kind == FKind::Exists) {
    Mask set = 0;
    for (int e = 0; e < st.domain(f.bsort); ++e) {
      env[f.bvar] = e;
      auto v = naive_eval(thy, st, f.kids[0], env);
      if (!v) return std::nullopt;
      set |= Mask(1) << *v;
    }
    const auto& dom = f.kind == FKind::Forall ? B.forall : B.exists;
    auto it = dom.find(set);
    if (it == dom.end()) return std::nullopt;
    return it->second;
  }
  auto l = naive_eval(thy, st, f.kids[0], env);
  auto r = naive_eval(thy, st, f.kids[1], env);
  if (!l || !r) return std::nullopt;
  if (f.kind == FKind::Imp) return B.imp_at(*l, *r);
  if (f.kind == FKind::And) return B.meet_at(*l, *r);
  return B.join_at(*l, *r);
}

bool naive_is_model(const Theory& thy, const BStructure& st) {
  for (const auto& ax : thy.axioms) {
    auto v = naive_eval(thy, st, ax, {});
    if (!v || !st.algebra.positive(*v)) return false;
  }
  for (const auto& rule : thy.rules) {
    auto fv = rule.is_term_rule ? free_vars(rule.term_lhs) : free_vars(rule.prop_lhs);
    std::vector<std::pair<std::string, std::string>> vars(fv.begin(), fv.end());
    std::vector<int> tuple(vars.size(), 0);
    while (true) {
      std::map<std::string, int> env;
      for (size_t i = 0; i < vars.size(); ++i) env[vars[i].first] = tuple[i];
      if (rule.is_term_rule) {
        if (naive_eval_term(thy, st, rule.term_lhs, env) !=
            naive_eval_term(thy, st, rule.term_rhs, env))
          return false;
      } else {
        auto l = naive_eval(thy, st, rule.prop_lhs, env);
        auto r = naive_eval(thy, st, rule.prop_rhs, env);
        if (!l || !r || *l != *r) return false;
      }
      size_t k = vars.size();
      bool done = vars.empty();
      while (k-- > 0) {
        if (++tuple[k] < st.domain(vars[k].second)) break;
        tuple[k] = 0;
        if (k == 0) done = true;
      }
      if (done) break;
    }
  }
  return true;
}

bool naive_has_model(const Theory& thy, const TruthValueAlgebra& alg) {
  // propositional theories only: every predicate nullary
  std::vector<std::string> preds;
  for (const auto& [name, args] : thy.sig.preds) {
    REQUIRE(args.empty());
    preds.push_back(name);
  }
  std::vector<int> vals(preds.size(), 0);
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (i == preds.size()) {
      BStructure st;
      st.algebra = alg;
      for (size_t k = 0; k < preds.size(); ++k) st.pred_interp[preds[k]] = {vals[k]};
      return naive_is_model(thy, st);
    }
    for (vals[i] = 0; vals[i] < alg.size(); ++vals[i])
      if (rec(i + 1)) return true;
    return false;
  };
  return rec(0);
}

// random terms/formulas over: sort nat, fun 0/s/plus, preds P(nat), Q(nat,nat)
Signature arith_sig() {
  Signature sig;
  sig.sorts = {"nat"};
  sig.funs["0"] = {{}, "nat"};
  sig.funs["s"] = {{"nat"}, "nat"};
  sig.funs["plus"] = {{"nat", "nat"}, "nat"};
  sig.preds["P"] = {"nat"};
  sig.preds["Q"] = {"nat", "nat"};
  return sig;
}

Term rand_term(std::mt19937& rng, int depth, const std::vector<std::string>& vars) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? (vars.empty() ? 0 : 1) : 3);
  int c = pick(rng);
  Term t;
  t.sort = "nat";
  if (c == 1 && !vars.empty()) {
    t.is_var = true;
    t.name = vars[rng() % vars.size()];
    return t;
  }
  if (c == 2) {
    t.name = "s";
    t.args = {rand_term(rng, depth - 1, vars)};
    return t;
  }
  if (c == 3) {
    t.name = "plus";
    t.args = {rand_term(rng, depth - 1, vars), rand_term(rng, depth - 1, vars)};
    return t;
  }
  t.name = "0";
  return t;
}

Formula rand_formula(std::mt19937& rng, int depth, std::vector<std::string> vars) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 6);
  int c = pick(rng);
  Formula f;
  if (c == 0) {
    f.kind = FKind::Atom;
    f.pred = "P";
    f.args = {rand_term(rng, 2, vars)};
    return f;
  }
  if (c == 1) {
    f.kind = FKind::Atom;
    f.pred = "Q";
    f.args = {rand_term(rng, 2, vars), rand_term(rng, 2, vars)};
    return f;
  }
  if (c <= 4) {
    f.kind = c == 2 ? FKind::Imp : c == 3 ? FKind::And : FKind::Or;
    f.kids = {rand_formula(rng, depth - 1, vars), rand_formula(rng, depth - 1, vars)};
    return f;
  }
  f.kind = c == 5 ? FKind::Forall : FKind::Exists;
  f.bvar = "v" + std::to_string(vars.size());
  f.bsort = "nat";
  vars.push_back(f.bvar);
  f.kids = {rand_formula(rng, depth - 1, vars)};
  return f;
}

BStructure rand_structure(std::mt19937& rng, const Signature& sig, const TruthValueAlgebra& alg,
                          int dom) {
  BStructure st;
  st.algebra = alg;
  st.domain_sizes["nat"] = dom;
  auto fill = [&](std::vector<int>& table, size_t sz, int radix) {
    table.resize(sz);
    for (auto& v : table) v = int(rng() % radix);
  };
  fill(st.fun_interp["0"], 1, dom);
  fill(st.fun_interp["s"], dom, dom);
  fill(st.fun_interp["plus"], size_t(dom) * dom, dom);
  fill(st.pred_interp["P"], dom, alg.size());
  fill(st.pred_interp["Q"], size_t(dom) * dom, alg.size());
  return st;
}

}  // namespace

TEST_CASE("denotation of connectives and quantifiers") {
  auto boolean = load_alg("bool.alg");
  auto t1 = load_alg("t1.alg");
  Theory pq = load_thy("p_imp_pq.thy");

  auto st = prop_structure(pq, boolean, {{"P", 1}, {"Q", 0}});
  CHECK(denote(pq.sig, st, parse_formula(pq.sig, "top"), {}).value == 1);
  CHECK(denote(pq.sig, st, parse_formula(pq.sig, "bot"), {}).value == 0);
  auto d = denote(pq.sig, st, parse_formula(pq.sig, "P => Q"), {});
  CHECK(d.defined);
  CHECK(d.value == 0);
  CHECK(denote(pq.sig, st, parse_formula(pq.sig, "P \\/ Q"), {}).value == 1);
  CHECK(denote(pq.sig, st, parse_formula(pq.sig, "P /\\ Q"), {}).value == 0);

  // one-element domain, P constantly I: the value set {I} maps to 1
  Theory p0 = load_thy("p0_forall.thy");
  BStructure t1st;
  t1st.algebra = t1;
  t1st.domain_sizes["iota"] = 1;
  t1st.fun_interp["0"] = {0};
  t1st.pred_interp["P"] = {t1.index_of("I")};
  auto q = denote(p0.sig, t1st, parse_formula(p0.sig, "forall x:iota. P(x)"), {});
  CHECK(q.defined);
  CHECK(q.value == t1.index_of("1"));
}

TEST_CASE("denotation undefined outside the quantifier domains") {
  auto t1 = load_alg("t1.alg");
  t1.full = false;
  t1.forall.erase(Mask(1) << t1.index_of("I"));  // {I} no longer in domA
  Theory p0 = load_thy("p0_forall.thy");
  BStructure st;
  st.algebra = t1;
  st.domain_sizes["iota"] = 1;
  st.fun_interp["0"] = {0};
  st.pred_interp["P"] = {t1.index_of("I")};
  auto q = denote(p0.sig, st, parse_formula(p0.sig, "forall x:iota. P(x)"), {});
  CHECK(!q.defined);
  CHECK(q.offending == "forall x:iota. P(x)");
}

TEST_CASE("model checks on the bundled structures") {
  Theory qr = load_thy("p_imp_qr.thy");
  for (const char* f : {"p_imp_qr_bool.str", "p_imp_qr_t1.str", "p_imp_qr_t2c.str"}) {
    auto st = parse_structure_file(data(f), qr);
    INFO(f);
    CHECK(check_model(qr, st).pass());
    // the bundled tables are exactly top => top, top, top
    const auto& B = st.algebra;
    CHECK(st.pred_interp.at("P")[0] == B.imp_at(B.top, B.top));
    CHECK(st.pred_interp.at("Q")[0] == B.top);
    CHECK(st.pred_interp.at("R")[0] == B.top);
  }

  Theory pq = load_thy("p_imp_pq.thy");
  auto boolean = load_alg("bool.alg");
  auto t1 = load_alg("t1.alg");
  CHECK(check_model(pq, prop_structure(pq, boolean, {{"P", 1}, {"Q", 1}})).pass());
  auto bad = check_model(pq, prop_structure(pq, t1, {{"P", 2}, {"Q", 2}}));
  CHECK(!bad.pass());  // 1 != (1 => 1) = I in this algebra
  REQUIRE(bad.violations.size() == 1);
  CHECK(bad.violations[0].condition == "model.rule");
}

TEST_CASE("structure files round-trip and reject malformed input") {
  Theory qr = load_thy("p_imp_qr.thy");
  auto st = parse_structure_file(data("p_imp_qr_t1.str"), qr);
  auto text = serialize_structure(qr, st, "t1.alg");
  auto again = parse_structure(text, qr, st.algebra);
  CHECK(st == again);

  auto t1 = load_alg("t1.alg");
  CHECK_THROWS_AS(parse_structure("pred P : -> nonsense\n", qr, t1), ParseError);
  CHECK_THROWS_AS(parse_structure("pred P : -> 1\n", qr, t1), ParseError);  // Q, R missing
  CHECK_THROWS_AS(parse_structure("pred Z : -> 1\n", qr, t1), ParseError);
  CHECK_THROWS_AS(parse_structure("domain bogus = 2\n", qr, t1), ParseError);
}

TEST_CASE("exhaustive search finds the boolean model and refutes the three-valued one") {
  Theory pq = load_thy("p_imp_pq.thy");
  auto boolean = load_alg("bool.alg");
  auto t1 = load_alg("t1.alg");

  auto m = find_model(pq, boolean, {});
  REQUIRE(m.has_value());
  CHECK(m->pred_interp.at("P")[0] == 1);
  CHECK(m->pred_interp.at("Q")[0] == 1);

  CHECK(!find_model(pq, t1, {}).has_value());

  Theory empty;
  auto trivial = find_model(empty, boolean, {});
  CHECK(trivial.has_value());

  SearchLimits tight;
  tight.max_structures = 2;
  CHECK_THROWS_AS(find_model(pq, t1, {}, tight), std::runtime_error);
}

TEST_CASE("fixpoint iteration on the non-terminating positive theory") {
  Theory thy = load_thy("p_imp_bot_imp_p.thy");
  auto t1 = load_alg("t1.alg");
  auto ord = find_complete_order(t1);
  REQUIRE(ord.has_value());

  auto fp = fixpoint_model(thy, t1, *ord, {});
  REQUIRE(fp.report.pass());
  CHECK(fp.iterations <= 3);
  CHECK(fp.monotone);
  int p = fp.structure.pred_interp.at("P")[0];
  CHECK(p == t1.index_of("1"));
  // the fixed-point equation, exactly
  CHECK(p == t1.imp_at(t1.bot, p));
  CHECK(check_model(thy, fp.structure).pass());

  // T2 admits no complete order, so the precondition fails...
  auto t2 = load_alg("t2.alg");
  CHECK(!find_complete_order(t2).has_value());
  // ...and exhaustive search confirms there is no model at all
  CHECK(!find_model(thy, t2, {}).has_value());
}

TEST_CASE("fixpoint with a quantified right side stabilizes at the bottom value") {
  Theory thy = load_thy("p0_forall.thy");
  auto boolean = load_alg("bool.alg");
  auto ord = find_complete_order(boolean);
  REQUIRE(ord.has_value());
  auto fp = fixpoint_model(thy, boolean, *ord, {{"iota", 1}});
  REQUIRE(fp.report.pass());
  CHECK(fp.structure.pred_interp.at("P") == std::vector<int>{0});
  CHECK(fp.iterations <= 2);
  CHECK(check_model(thy, fp.structure).pass());
  REQUIRE(fp.representatives.at("iota").size() >= 1);
  CHECK(to_string(fp.representatives.at("iota")[0]) == "0");
}

TEST_CASE("one-step-reduct fixpoint for deterministic theories") {
  Theory thy = load_thy("p_and_p.thy");
  auto boolean = load_alg("bool.alg");
  auto t1 = load_alg("t1.alg");
  auto bord = find_complete_order(boolean);
  auto t1ord = find_complete_order(t1);
  REQUIRE(bord.has_value());
  REQUIRE(t1ord.has_value());

  auto fb = fixpoint_model_deterministic(thy, boolean, *bord, {});
  REQUIRE(fb.report.pass());
  CHECK(fb.structure.pred_interp.at("P") == std::vector<int>{0});
  CHECK(check_model(thy, fb.structure).pass());

  auto ft = fixpoint_model_deterministic(thy, t1, *t1ord, {});
  REQUIRE(ft.report.pass());
  CHECK(ft.structure.pred_interp.at("P") == std::vector<int>{0});

  // non-deterministic input is rejected
  Theory nondet = parse_theory("pred P :\nrule P --> top\nrule P --> bot\n");
  CHECK(!fixpoint_model_deterministic(nondet, boolean, *bord, {}).report.pass());

  // empty rule set: the functional is the identity on the bottom structure
  Theory empty = parse_theory("pred P :\n");
  auto fe = fixpoint_model_deterministic(empty, boolean, *bord, {});
  REQUIRE(fe.report.pass());
  CHECK(fe.iterations == 0);
  CHECK(fe.structure.pred_interp.at("P") == std::vector<int>{0});
}

TEST_CASE("normal-closed-term model for quantifier-free theories") {
  Theory qr = load_thy("p_imp_qr.thy");
  auto boolean = load_alg("bool.alg");
  auto t1 = load_alg("t1.alg");
  auto t2c = load_alg("t2c.alg");

  for (const auto* alg : {&boolean, &t1, &t2c}) {
    auto um = quantifier_free_model(qr, *alg);
    REQUIRE(um.report.pass());
    CHECK(um.structure.pred_interp.at("P")[0] == alg->imp_at(alg->top, alg->top));
    CHECK(um.structure.pred_interp.at("Q")[0] == alg->top);
    CHECK(um.structure.pred_interp.at("R")[0] == alg->top);
  }

  Theory conj = parse_theory(
      "pred P :\npred Q :\npred R :\nrule P --> Q /\\ R\nflags terminating confluent\n");
  auto um = quantifier_free_model(conj, boolean);
  REQUIRE(um.report.pass());
  CHECK(um.structure.pred_interp.at("P")[0] == 1);

  Theory plain = parse_theory("pred P :\nflags terminating confluent\n");
  auto up = quantifier_free_model(plain, t1);
  REQUIRE(up.report.pass());
  CHECK(up.structure.pred_interp.at("P")[0] == t1.top);

  // preconditions: flags required, quantified rules rejected
  Theory nf = load_thy("p_imp_qr.thy");
  nf.claimed_terminating = false;
  CHECK(!quantifier_free_model(nf, boolean).report.pass());
  CHECK(!quantifier_free_model(load_thy("p0_forall.thy"), boolean).report.pass());
}

TEST_CASE("super-consistency probe over the bundled library") {
  std::vector<std::pair<std::string, TruthValueAlgebra>> lib = {
      {"bool", load_alg("bool.alg")}, {"t1", load_alg("t1.alg")}, {"t2c", load_alg("t2c.alg")}};

  auto refute = probe_super_consistency(load_thy("p_imp_pq.thy"), {{"t1", load_alg("t1.alg")}});
  REQUIRE(refute.size() == 1);
  CHECK(refute[0].outcome == ProbeOutcome::NoModel);

  for (const auto& e : probe_super_consistency(load_thy("p_imp_qr.thy"), lib)) {
    INFO(e.name);
    CHECK(e.outcome == ProbeOutcome::ModelFound);
    REQUIRE(e.model.has_value());
    CHECK(check_model(load_thy("p_imp_qr.thy"), *e.model).pass());
  }

  for (const auto& e : probe_super_consistency(Theory{}, lib))
    CHECK(e.outcome == ProbeOutcome::ModelFound);

  SearchLimits tight;
  tight.max_structures = 1;
  auto inc = probe_super_consistency(load_thy("p_imp_pq.thy"), lib, tight);
  CHECK(inc[1].outcome == ProbeOutcome::Inconclusive);
}

TEST_CASE("substitution lemma on a random corpus") {
  Signature sig = arith_sig();
  Theory thy;
  thy.sig = sig;
  auto t1 = load_alg("t1.alg");
  std::mt19937 rng(91101);
  for (int iter = 0; iter < 300; ++iter) {
    auto st = rand_structure(rng, sig, t1, 2 + int(rng() % 2));
    Formula a = rand_formula(rng, 3, {"x"});
    Term t = rand_term(rng, 2, {});
    Assignment phi{{"x", int(rng() % st.domain("nat"))}};
    Formula substituted = substitute(a, {{"x", t}});
    auto lhs = denote(sig, st, substituted, phi);
    Assignment ext = phi;
    ext["x"] = denote(sig, st, t, phi);
    auto rhs = denote(sig, st, a, ext);
    CHECK(lhs.defined == rhs.defined);
    if (lhs.defined) CHECK(lhs.value == rhs.value);
  }
}

TEST_CASE("morphisms transport denotations") {
  Signature sig = arith_sig();
  auto t1 = load_alg("t1.alg");
  auto q = quotient_by_equiv(t1);
  REQUIRE(q.errors.empty());
  REQUIRE(check_morphism(t1, q.algebra, q.map).pass());

  std::mt19937 rng(1777);
  for (int iter = 0; iter < 200; ++iter) {
    auto st = rand_structure(rng, sig, t1, 2);
    BStructure img = st;
    img.algebra = q.algebra;
    for (auto& [name, table] : img.pred_interp)
      for (auto& v : table) v = q.map[v];
    Formula a = rand_formula(rng, 3, {"x"});
    Assignment phi{{"x", int(rng() % 2)}};
    auto d1 = denote(sig, st, a, phi);
    auto d2 = denote(sig, img, a, phi);
    REQUIRE(d1.defined);
    REQUIRE(d2.defined);
    CHECK(q.map[d1.value] == d2.value);
  }
}

TEST_CASE("independent oracle agrees with the search on every bundled pair") {
  std::vector<std::string> theories = {"p_imp_pq.thy", "p_imp_q_imp_p.thy",
                                       "p_imp_bot_imp_p.thy", "p_and_p.thy"};
  std::vector<std::string> algebras = {"bool.alg", "t1.alg", "t2.alg", "t2c.alg"};
  for (const auto& tn : theories)
    for (const auto& an : algebras) {
      Theory thy = load_thy(tn);
      auto alg = load_alg(an);
      INFO(tn << " over " << an);
      auto found = find_model(thy, alg, {});
      bool naive = naive_has_model(thy, alg);
      CHECK(found.has_value() == naive);
      if (found) CHECK(naive_is_model(thy, *found));
    }
}

TEST_CASE("term universes enumerate closed normal forms") {
  Theory thy = parse_theory(
      "sort nat\n"
      "fun 0 : -> nat\n"
      "fun s : nat -> nat\n"
      "fun plus : nat nat -> nat\n"
      "pred P : nat\n"
      "rule plus(0, n) --> n\n"
      "rule plus(s(m), n) --> s(plus(m, n))\n"
      "flags terminating confluent\n");
  auto reps = closed_normal_terms(thy, 5);
  REQUIRE(reps.at("nat").size() == 5);
  for (int i = 0; i < 5; ++i) {
    std::string expect = "0";
    for (int k = 0; k < i; ++k) expect = "s(" + expect + ")";
    CHECK(to_string(reps.at("nat")[i]) == expect);
  }
}
