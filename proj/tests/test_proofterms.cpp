#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tva/proofterms.hpp"

using namespace tva;

namespace {

std::string data(const std::string& name) { return std::string(TVA_DATA_DIR) + "/" + name; }

Theory loop_theory() { return parse_theory_file(data("p_imp_pq.thy")); }
Theory sn_theory() { return parse_theory_file(data("p_imp_q_imp_p.thy")); }

Formula F(const Signature& sig, const std::string& s) { return parse_formula(sig, s); }

ProofTerm P(const Signature& sig, const std::string& s) { return parse_proof(sig, s); }

bool valid(const Theory& thy, const Sequent& seq, const ProofTerm& p) {
  return check_proof(thy, seq, p).verdict == ProofVerdict::Valid;
}

// a reduct must be reachable in one step, up to renaming of bound variables
bool one_step_reachable(const ProofTerm& from, const ProofTerm& to) {
  for (const ProofTerm& r : reduce_step(from))
    if (alpha_equal(r, to)) return true;
  return false;
}

}  // namespace

TEST_CASE("parsing and printing round-trip") {
  Theory thy = loop_theory();
  for (const char* s : {
           "lam a:P. a a",
           "(lam a:P. a a) (lam a:P. a a)",
           "pair(unit, lam a:P. a)",
           "fst pair(unit, unit)",
           "case inl unit of a.a | b.unit",
           "exfalso(a, P => Q)",
           "lam a:P /\\ Q. pair(snd a, fst a)",
       }) {
    ProofTerm p = P(thy.sig, s);
    CHECK(P(thy.sig, to_string(p)) == p);
  }
  // application is left-associative; fst binds to the next atom only
  CHECK(P(thy.sig, "a b c") == P(thy.sig, "(a b) c"));
  CHECK(P(thy.sig, "fst a b") == P(thy.sig, "(fst a) b"));

  CHECK_THROWS_AS(P(thy.sig, "lam a:P a"), SyntaxError);
  CHECK_THROWS_AS(P(thy.sig, "pair(a)"), SyntaxError);
  CHECK_THROWS_AS(P(thy.sig, "case a of b.c"), SyntaxError);
  CHECK_THROWS_AS(P(thy.sig, ""), SyntaxError);
  CHECK_THROWS_AS(P(thy.sig, "lam a:R. a"), SyntaxError);  // unknown predicate
}

TEST_CASE("quantifier forms parse and round-trip") {
  Theory thy = parse_theory(
      "sort s\nfun c : -> s\npred P : s\nflags terminating confluent\n");
  for (const char* s : {
           "Lam x:s. lam a:P(x). a",
           "wit(c, a)",
           "dest h as x.a.wit(x, a)",
           "(Lam x:s. lam a:P(x). a) @ c",
       }) {
    ProofTerm p = parse_proof(thy.sig, s, {{"x", "s"}});
    CHECK(parse_proof(thy.sig, to_string(p), {{"x", "s"}}) == p);
  }
}

TEST_CASE("the non-normalizing proof checks but loops") {
  Theory thy = loop_theory();
  ProofFile pf = parse_proof_file(data("loopproof.prf"), thy.sig);
  REQUIRE(pf.goal.has_value());
  CHECK(*pf.goal == F(thy.sig, "Q"));

  // the hypothesis a : P converts to P => Q for the self-application
  Sequent half{{}, F(thy.sig, "P => Q")};
  CHECK(valid(thy, half, P(thy.sig, "lam a:P. a a")));

  Sequent full{{}, *pf.goal};
  CHECK(valid(thy, full, pf.proof));

  auto out = sn_status(pf.proof);
  REQUIRE(out.kind == RedKind::Loop);
  REQUIRE(out.trace.size() >= 2);
  CHECK(alpha_equal(out.trace.front(), out.trace.back()));
  for (size_t i = 0; i + 1 < out.trace.size(); ++i)
    CHECK(one_step_reachable(out.trace[i], out.trace[i + 1]));
  // the cycle here has length one: the proof reduces to itself
  CHECK(alpha_equal(out.trace[0], pf.proof));
}

TEST_CASE("basic typing rules") {
  Theory thy = loop_theory();
  auto Pf = F(thy.sig, "P");
  auto Qf = F(thy.sig, "Q");

  CHECK(valid(thy, {{}, F(thy.sig, "top")}, P(thy.sig, "unit")));
  CHECK(valid(thy, {{{"h", Pf}}, Pf}, P(thy.sig, "h")));
  CHECK(valid(thy, {{{"h", F(thy.sig, "P /\\ Q")}}, Qf}, P(thy.sig, "snd h")));
  CHECK(valid(thy, {{}, F(thy.sig, "P => P")}, P(thy.sig, "lam a:P. a")));
  CHECK(valid(thy, {{{"h", F(thy.sig, "P \\/ Q")}, {"i", F(thy.sig, "P => Q")}}, Qf},
              P(thy.sig, "case h of a.i a | b.b")));
  CHECK(valid(thy, {{{"h", F(thy.sig, "bot")}}, Qf}, P(thy.sig, "exfalso(h, Q)")));
  CHECK(valid(thy, {{}, F(thy.sig, "Q \\/ top")}, P(thy.sig, "inr unit")));

  auto r = check_proof(thy, {{}, Qf}, P(thy.sig, "unit"));
  CHECK(r.verdict == ProofVerdict::Invalid);
  r = check_proof(thy, {{}, Pf}, P(thy.sig, "h"));
  CHECK(r.verdict == ProofVerdict::Invalid);
  CHECK(r.position == "root");
  r = check_proof(thy, {{{"h", Pf}}, Qf}, P(thy.sig, "pair(h, h)"));
  CHECK(r.verdict == ProofVerdict::Invalid);
}

TEST_CASE("typing with quantifiers") {
  Theory thy = parse_theory(
      "sort s\nfun c : -> s\npred P : s\nflags terminating confluent\n");
  Sequent s1{{}, F(thy.sig, "forall x:s. P(x) => P(x)")};
  CHECK(valid(thy, s1, parse_proof(thy.sig, "Lam x:s. lam a:P(x). a", {{"x", "s"}})));

  Sequent s2{{{"h", F(thy.sig, "P(c)")}}, F(thy.sig, "exists x:s. P(x)")};
  CHECK(valid(thy, s2, P(thy.sig, "wit(c, h)")));

  Sequent s3{{{"h", F(thy.sig, "exists x:s. P(x)")}}, F(thy.sig, "exists y:s. P(y)")};
  CHECK(valid(thy, s3, P(thy.sig, "dest h as x.a.wit(x, a)")));

  Sequent s4{{{"h", F(thy.sig, "forall x:s. P(x)")}}, F(thy.sig, "P(c)")};
  CHECK(valid(thy, s4, P(thy.sig, "h @ c")));

  // the witness variable must not escape into the goal
  Sequent s5{{{"h", F(thy.sig, "exists x:s. P(x)")}},
             parse_formula(thy.sig, "P(x)", {{"x", "s"}})};
  CHECK(check_proof(thy, s5, P(thy.sig, "dest h as x.a.a")).verdict ==
        ProofVerdict::Invalid);
}

TEST_CASE("one-step reduction") {
  Theory thy = loop_theory();
  auto rs = reduce_step(P(thy.sig, "(lam a:P. a) unit"));
  REQUIRE(rs.size() == 1);
  CHECK(rs[0] == P(thy.sig, "unit"));

  rs = reduce_step(P(thy.sig, "fst pair(unit, lam a:P. a)"));
  REQUIRE(rs.size() == 1);
  CHECK(rs[0] == P(thy.sig, "unit"));

  rs = reduce_step(P(thy.sig, "case inr unit of a.a | b.pair(b, b)"));
  REQUIRE(rs.size() == 1);
  CHECK(rs[0] == P(thy.sig, "pair(unit, unit)"));

  // substitution avoids capture: the bound b must be renamed
  ProofTerm tricky = P(thy.sig, "(lam a:P. lam b:Q. a) b");
  rs = reduce_step(tricky);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].kind == PKind::Lam);
  CHECK(rs[0].name != "b");
  CHECK(rs[0].kids[0] == ProofTerm{PKind::Var, "b", "", "", "", {}, {}, {}});

  Theory qthy = parse_theory(
      "sort s\nfun c : -> s\npred P : s\nflags terminating confluent\n");
  rs = reduce_step(parse_proof(qthy.sig, "(Lam x:s. wit(x, a)) @ c"));
  REQUIRE(rs.size() == 1);
  CHECK(rs[0] == parse_proof(qthy.sig, "wit(c, a)"));

  rs = reduce_step(parse_proof(qthy.sig, "dest wit(c, a) as x.h.pair(h, h)"));
  REQUIRE(rs.size() == 1);
  CHECK(rs[0] == parse_proof(qthy.sig, "pair(a, a)"));

  CHECK(reduce_step(P(thy.sig, "lam a:P. a")).empty());
}

TEST_CASE("neutral terms are exactly the non-introductions") {
  Theory thy = loop_theory();
  CHECK(is_neutral(P(thy.sig, "a")));
  CHECK(is_neutral(P(thy.sig, "fst pair(a, b)")));
  CHECK(is_neutral(P(thy.sig, "a b")));
  CHECK(is_neutral(P(thy.sig, "exfalso(a, P)")));
  CHECK(!is_neutral(P(thy.sig, "lam a:P. a")));
  CHECK(!is_neutral(P(thy.sig, "pair(a, b)")));
  CHECK(!is_neutral(P(thy.sig, "inl a")));
  CHECK(!is_neutral(P(thy.sig, "unit")));
}

TEST_CASE("strong-normalization analysis") {
  Theory thy = loop_theory();
  auto out = sn_status(P(thy.sig, "unit"));
  CHECK(out.kind == RedKind::Normal);
  CHECK(out.steps == 0);

  out = sn_status(P(thy.sig, "(lam a:P. unit) unit"));
  CHECK(out.kind == RedKind::Normal);
  CHECK(out.steps == 1);
  CHECK(out.normal_form == P(thy.sig, "unit"));

  // two redexes, both orders explored: longest path has two steps
  out = sn_status(P(thy.sig, "pair((lam a:P. a) unit, (lam a:P. a) unit)"));
  CHECK(out.kind == RedKind::Normal);
  CHECK(out.steps == 2);
  CHECK(out.normal_form == P(thy.sig, "pair(unit, unit)"));

  out = sn_status(P(thy.sig, "(lam a:P. a a) (lam a:P. a a)"), 3);
  CHECK(out.kind == RedKind::Loop);

  // fuel exhaustion is reported as such, not as a verdict
  ProofTerm big = P(thy.sig,
                    "(lam a:P. pair(a, a)) ((lam a:P. pair(a, a)) ((lam a:P. pair(a, a)) b))");
  out = sn_status(big, 2);
  CHECK(out.kind == RedKind::FuelExhausted);
  CHECK(out.frontier > 2);
}

// ------------------------------------------------------------------ corpus

namespace {

// Random well-typed sequents and proofs in the theory P --> (Q => P).
// Goals are built top-down so that a proof exists by construction; the
// atom P is provable through the congruence (a proof of Q => P converts).
struct Corpus {
  Theory thy = sn_theory();
  std::mt19937 rng{20250819};
  int fresh = 0;

  Formula atom(const char* p) { return F(thy.sig, p); }

  Formula random_formula(int depth) {
    int c = int(rng() % (depth <= 0 ? 3 : 6));
    Formula f;
    switch (c) {
      case 0:
        return atom("P");
      case 1:
        return atom("Q");
      case 2:
        f.kind = FKind::Top;
        return f;
      case 3:
        f.kind = FKind::Imp;
        break;
      case 4:
        f.kind = FKind::And;
        break;
      default:
        f.kind = FKind::Or;
        break;
    }
    f.kids = {random_formula(depth - 1), random_formula(depth - 1)};
    return f;
  }

  // returns a goal provable from ctx together with its proof
  std::optional<std::pair<Formula, ProofTerm>> provable(
      const std::vector<std::pair<std::string, Formula>>& ctx, int depth) {
    int c = int(rng() % 6);
    if (depth <= 0) c = c % 2;  // bottom out at hypotheses or top
    if (c == 0 && !ctx.empty()) {
      const auto& [name, f] = ctx[rng() % ctx.size()];
      ProofTerm v;
      v.kind = PKind::Var;
      v.name = name;
      return std::make_pair(f, v);
    }
    if (c <= 1) {
      Formula top;
      top.kind = FKind::Top;
      return std::make_pair(top, ProofTerm{});
    }
    if (c == 2) {  // conjunction of two provable parts
      auto a = provable(ctx, depth - 1);
      auto b = provable(ctx, depth - 1);
      if (!a || !b) return std::nullopt;
      Formula f;
      f.kind = FKind::And;
      f.kids = {a->first, b->first};
      ProofTerm p;
      p.kind = PKind::Pair;
      p.kids = {a->second, b->second};
      return std::make_pair(f, p);
    }
    if (c == 3) {  // disjunction with one provable side
      auto a = provable(ctx, depth - 1);
      if (!a) return std::nullopt;
      bool left = rng() % 2 == 0;
      Formula f;
      f.kind = FKind::Or;
      f.kids = left ? std::vector<Formula>{a->first, random_formula(depth - 1)}
                    : std::vector<Formula>{random_formula(depth - 1), a->first};
      ProofTerm p;
      p.kind = left ? PKind::Inl : PKind::Inr;
      p.kids = {a->second};
      return std::make_pair(f, p);
    }
    if (c == 4) {  // implication: assume and prove under the hypothesis
      Formula hyp = random_formula(depth - 1);
      auto ctx2 = ctx;
      std::string name = "h" + std::to_string(fresh++);
      ctx2.emplace_back(name, hyp);
      auto b = provable(ctx2, depth - 1);
      if (!b) return std::nullopt;
      Formula f;
      f.kind = FKind::Imp;
      f.kids = {hyp, b->first};
      ProofTerm p;
      p.kind = PKind::Lam;
      p.name = name;
      p.ann = hyp;
      p.kids = {b->second};
      return std::make_pair(f, p);
    }
    // the congruence case: prove the atom P as lam q:Q. <proof of P>,
    // which only checks because P rewrites to Q => P
    auto ctx2 = ctx;
    std::string name = "h" + std::to_string(fresh++);
    ctx2.emplace_back(name, atom("Q"));
    std::optional<std::pair<Formula, ProofTerm>> inner;
    for (const auto& [n, f] : ctx2)
      if (f == atom("P")) {
        ProofTerm v;
        v.kind = PKind::Var;
        v.name = n;
        inner = std::make_pair(atom("P"), v);
      }
    if (!inner && depth > 0) {
      // no hypothesis of P available: nest one level deeper
      auto deeper = provable(ctx2, 0);
      (void)deeper;
      return std::nullopt;
    }
    if (!inner) return std::nullopt;
    ProofTerm p;
    p.kind = PKind::Lam;
    p.name = name;
    p.ann = atom("Q");
    p.kids = {inner->second};
    return std::make_pair(atom("P"), p);
  }
};

}  // namespace

TEST_CASE("generated corpus: validity, normalization, subject reduction, closure") {
  Corpus gen;
  int made = 0, with_reducts = 0;
  while (made < 500) {
    // random ambient context
    std::vector<std::pair<std::string, Formula>> ctx;
    int nh = int(gen.rng() % 3);
    for (int i = 0; i < nh; ++i)
      ctx.emplace_back("g" + std::to_string(gen.fresh++), gen.random_formula(2));
    auto got = gen.provable(ctx, 3);
    if (!got) continue;
    Sequent seq{ctx, got->first};
    ProofTerm proof = got->second;
    // sprinkle identity redexes so the reduction properties have bite
    for (int w = int(gen.rng() % 3); w > 0; --w) {
      ProofTerm id;
      id.kind = PKind::Lam;
      id.name = "w" + std::to_string(gen.fresh++);
      id.ann = got->first;
      id.kids = {ProofTerm{PKind::Var, id.name, "", "", "", {}, {}, {}}};
      ProofTerm app;
      app.kind = PKind::App;
      app.kids = {std::move(id), std::move(proof)};
      proof = std::move(app);
    }
    ++made;

    auto r = check_proof(gen.thy, seq, proof, 400);
    REQUIRE_MESSAGE(r.verdict == ProofVerdict::Valid,
                    to_string(proof) << " : " << to_string(got->first) << " @ " << r.position
                                     << " " << r.detail);

    auto sn = sn_status(proof, 2000);
    REQUIRE(sn.kind == RedKind::Normal);

    // subject reduction and closure-under-reduction on the whole graph
    for (const ProofTerm& red : reduce_step(proof)) {
      ++with_reducts;
      CHECK(check_proof(gen.thy, seq, red, 400).verdict == ProofVerdict::Valid);
      CHECK(sn_status(red, 2000).kind == RedKind::Normal);
    }

    // neutral expansion: neutral with all reducts normalizing is normalizing
    if (is_neutral(proof)) {
      bool all = true;
      for (const ProofTerm& red : reduce_step(proof))
        all = all && sn_status(red, 2000).kind == RedKind::Normal;
      if (all) CHECK(sn_status(proof, 2000).kind == RedKind::Normal);
    }
  }
  CHECK(made == 500);
}
