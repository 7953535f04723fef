#include "tva/algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace tva {

namespace {

std::string elem(const TruthValueAlgebra& alg, int i) { return alg.carrier[i]; }

std::string pair_witness(const TruthValueAlgebra& alg, int a, int b) {
  return "a=" + elem(alg, a) + ",b=" + elem(alg, b);
}

}  // namespace

int TruthValueAlgebra::index_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (carrier[i] == name) return i;
  return -1;
}

std::vector<Mask> TruthValueAlgebra::domA() const {
  std::vector<Mask> out;
  out.reserve(forall.size());
  for (const auto& [m, _] : forall) out.push_back(m);
  return out;
}

std::vector<Mask> TruthValueAlgebra::domE() const {
  std::vector<Mask> out;
  out.reserve(exists.size());
  for (const auto& [m, _] : exists) out.push_back(m);
  return out;
}

std::vector<std::string> TruthValueAlgebra::structural_errors() const {
  std::vector<std::string> errs;
  const int n = size();
  if (n < 1) {
    errs.push_back("carrier is empty");
    return errs;
  }
  if (n > kMaxCarrier) errs.push_back("carrier exceeds supported size " + std::to_string(kMaxCarrier));
  auto in_range = [n](int v) { return v >= 0 && v < n; };
  if (!in_range(top)) errs.push_back("top outside carrier");
  if (!in_range(bot)) errs.push_back("bot outside carrier");
  if (positives & ~all_mask()) errs.push_back("positives outside carrier");
  auto check_table = [&](const std::vector<int>& t, const char* name) {
    if (static_cast<int>(t.size()) != n * n) {
      errs.push_back(std::string(name) + " table is not " + std::to_string(n) + "x" + std::to_string(n));
      return;
    }
    for (int v : t)
      if (!in_range(v)) {
        errs.push_back(std::string(name) + " table entry outside carrier");
        return;
      }
  };
  check_table(imp, "imp");
  check_table(meet, "and");
  check_table(join, "or");
  for (const auto& [m, v] : forall) {
    if (m & ~all_mask()) errs.push_back("forall domain subset outside carrier");
    if (!in_range(v)) errs.push_back("forall value outside carrier");
  }
  for (const auto& [m, v] : exists) {
    if (m & ~all_mask()) errs.push_back("exists domain subset outside carrier");
    if (!in_range(v)) errs.push_back("exists value outside carrier");
  }
  if (full) {
    size_t want = size_t(1) << n;
    if (forall.size() != want || exists.size() != want)
      errs.push_back("full flag set but quantifier maps are not defined on the powerset");
  }
  return errs;
}

bool Preorder::reflexive() const {
  for (int a = 0; a < n; ++a)
    if (!leq(a, a)) return false;
  return true;
}

bool Preorder::transitive() const {
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (leq(a, b) && leq(b, c) && !leq(a, c)) return false;
  return true;
}

bool OrderSpec::is_partial_order() const {
  for (int a = 0; a < n; ++a)
    if (!leq(a, a)) return false;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a != b && leq(a, b) && leq(b, a)) return false;
      for (int c = 0; c < n; ++c)
        if (leq(a, b) && leq(b, c) && !leq(a, c)) return false;
    }
  return true;
}

std::string mask_to_string(const TruthValueAlgebra& alg, Mask m) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < alg.size(); ++i)
    if ((m >> i) & 1u) {
      if (!first) s += ",";
      s += alg.carrier[i];
      first = false;
    }
  return s + "}";
}

CheckReport check_tva(const TruthValueAlgebra& alg) {
  CheckReport r;
  auto errs = alg.structural_errors();
  for (const auto& e : errs) r.add("structural", e);
  if (!errs.empty()) return r;

  const int n = alg.size();
  auto pos = [&](int v) { return alg.positive(v); };
  auto I = [&](int a, int b) { return alg.imp_at(a, b); };

  // 1. modus ponens
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (pos(I(a, b)) && pos(a) && !pos(b)) {
        r.add("tva.1", pair_witness(alg, a, b));
        goto c2;
      }
c2:
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!pos(I(a, I(b, a)))) {
        r.add("tva.2", pair_witness(alg, a, b));
        goto c3;
      }
c3:
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (!pos(I(I(a, I(b, c)), I(I(a, b), I(a, c))))) {
          r.add("tva.3", pair_witness(alg, a, b) + ",c=" + elem(alg, c));
          goto c4;
        }
c4:
  if (!pos(alg.top)) r.add("tva.4", "top=" + elem(alg, alg.top));

  for (int a = 0; a < n; ++a)
    if (!pos(I(alg.bot, a))) {
      r.add("tva.5", "a=" + elem(alg, a));
      break;
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!pos(I(a, I(b, alg.meet_at(a, b))))) {
        r.add("tva.6", pair_witness(alg, a, b));
        goto c7;
      }
c7:
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!pos(I(alg.meet_at(a, b), a))) {
        r.add("tva.7", pair_witness(alg, a, b));
        goto c8;
      }
c8:
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!pos(I(alg.meet_at(a, b), b))) {
        r.add("tva.8", pair_witness(alg, a, b));
        goto c9;
      }
c9:
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!pos(I(a, alg.join_at(a, b)))) {
        r.add("tva.9", pair_witness(alg, a, b));
        goto c10;
      }
c10:
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!pos(I(b, alg.join_at(a, b)))) {
        r.add("tva.10", pair_witness(alg, a, b));
        goto c11;
      }
c11:
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (!pos(I(alg.join_at(a, b), I(I(a, c), I(I(b, c), c))))) {
          r.add("tva.11", pair_witness(alg, a, b) + ",c=" + elem(alg, c));
          goto c12;
        }
c12:
  // 12. closure of domA under a => A and E => a. Vacuous for full algebras.
  if (!alg.full) {
    const auto domA = alg.domA();
    const auto domE = alg.domE();
    bool done = false;
    for (int a = 0; a < n && !done; ++a) {
      for (Mask A : domA) {
        Mask img = 0;
        for (int e = 0; e < n; ++e)
          if ((A >> e) & 1u) img |= Mask(1) << I(a, e);
        if (!alg.forall.count(img)) {
          r.add("tva.12", "a=" + elem(alg, a) + ",A=" + mask_to_string(alg, A));
          done = true;
          break;
        }
      }
      if (done) break;
      for (Mask E : domE) {
        Mask img = 0;
        for (int e = 0; e < n; ++e)
          if ((E >> e) & 1u) img |= Mask(1) << I(e, a);
        if (!alg.forall.count(img)) {
          r.add("tva.12", "a=" + elem(alg, a) + ",E=" + mask_to_string(alg, E));
          done = true;
          break;
        }
      }
    }
  }

  // 13. if all elements of A positive then forall A positive
  for (const auto& [A, fa] : alg.forall) {
    bool all_pos = true;
    for (int e = 0; e < n; ++e)
      if (((A >> e) & 1u) && !pos(e)) {
        all_pos = false;
        break;
      }
    if (all_pos && !pos(fa)) {
      r.add("tva.13", "A=" + mask_to_string(alg, A));
      break;
    }
  }

  // 14. forall (a => A) => a => forall A positive
  {
    bool done = false;
    for (int a = 0; a < n && !done; ++a)
      for (const auto& [A, fa] : alg.forall) {
        Mask img = 0;
        for (int e = 0; e < n; ++e)
          if ((A >> e) & 1u) img |= Mask(1) << I(a, e);
        auto it = alg.forall.find(img);
        if (it == alg.forall.end()) continue;  // reported under tva.12
        if (!pos(I(it->second, I(a, fa)))) {
          r.add("tva.14", "a=" + elem(alg, a) + ",A=" + mask_to_string(alg, A));
          done = true;
          break;
        }
      }
  }

  // 15. a in A implies forall A => a positive
  {
    bool done = false;
    for (const auto& [A, fa] : alg.forall) {
      for (int a = 0; a < n; ++a)
        if (((A >> a) & 1u) && !pos(I(fa, a))) {
          r.add("tva.15", "A=" + mask_to_string(alg, A) + ",a=" + elem(alg, a));
          done = true;
          break;
        }
      if (done) break;
    }
  }

  // 16. a in E implies a => exists E positive
  {
    bool done = false;
    for (const auto& [E, ex] : alg.exists) {
      for (int a = 0; a < n; ++a)
        if (((E >> a) & 1u) && !pos(I(a, ex))) {
          r.add("tva.16", "E=" + mask_to_string(alg, E) + ",a=" + elem(alg, a));
          done = true;
          break;
        }
      if (done) break;
    }
  }

  // 17. exists E => forall (E => a) => a positive
  {
    bool done = false;
    for (int a = 0; a < n && !done; ++a)
      for (const auto& [E, ex] : alg.exists) {
        Mask img = 0;
        for (int e = 0; e < n; ++e)
          if ((E >> e) & 1u) img |= Mask(1) << I(e, a);
        auto it = alg.forall.find(img);
        if (it == alg.forall.end()) continue;  // reported under tva.12
        if (!pos(I(ex, I(it->second, a)))) {
          r.add("tva.17", "a=" + elem(alg, a) + ",E=" + mask_to_string(alg, E));
          done = true;
          break;
        }
      }
  }

  return r;
}

Preorder derive_preorder(const TruthValueAlgebra& alg) {
  const int n = alg.size();
  Preorder p;
  p.n = n;
  p.rel.assign(size_t(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      p.rel[a * n + b] = alg.positive(alg.imp_at(a, b)) ? 1 : 0;
  return p;
}

Mask positives_from_preorder(const TruthValueAlgebra& alg, const Preorder& rel) {
  Mask m = 0;
  for (int x = 0; x < alg.size(); ++x)
    if (rel.leq(alg.top, x)) m |= Mask(1) << x;
  return m;
}

CheckReport check_pseudo_heyting(const TruthValueAlgebra& alg, const Preorder& rel) {
  CheckReport r;
  auto errs = alg.structural_errors();
  for (const auto& e : errs) r.add("structural", e);
  if (!errs.empty()) return r;

  const int n = alg.size();
  auto leq = [&](int a, int b) { return rel.leq(a, b); };

  for (int a = 0; a < n; ++a)
    if (!leq(a, a)) {
      r.add("ph.refl", "a=" + elem(alg, a));
      break;
    }
  {
    bool done = false;
    for (int a = 0; a < n && !done; ++a)
      for (int b = 0; b < n && !done; ++b)
        for (int c = 0; c < n; ++c)
          if (leq(a, b) && leq(b, c) && !leq(a, c)) {
            r.add("ph.trans", pair_witness(alg, a, b) + ",c=" + elem(alg, c));
            done = true;
            break;
          }
  }
  for (int a = 0; a < n; ++a)
    if (!leq(a, alg.top)) {
      r.add("ph.top-max", "a=" + elem(alg, a));
      break;
    }
  for (int a = 0; a < n; ++a)
    if (!leq(alg.bot, a)) {
      r.add("ph.bot-min", "a=" + elem(alg, a));
      break;
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!leq(alg.meet_at(a, b), a)) {
        r.add("ph.and-lb1", pair_witness(alg, a, b));
        goto and_lb2;
      }
    }
and_lb2:
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!leq(alg.meet_at(a, b), b)) {
        r.add("ph.and-lb2", pair_witness(alg, a, b));
        goto and_glb;
      }
and_glb:
  {
    bool done = false;
    for (int a = 0; a < n && !done; ++a)
      for (int b = 0; b < n && !done; ++b)
        for (int c = 0; c < n; ++c)
          if (leq(c, a) && leq(c, b) && !leq(c, alg.meet_at(a, b))) {
            r.add("ph.and-glb", pair_witness(alg, a, b) + ",c=" + elem(alg, c));
            done = true;
            break;
          }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!leq(a, alg.join_at(a, b))) {
        r.add("ph.or-ub1", pair_witness(alg, a, b));
        goto or_ub2;
      }
or_ub2:
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!leq(b, alg.join_at(a, b))) {
        r.add("ph.or-ub2", pair_witness(alg, a, b));
        goto or_lub;
      }
or_lub:
  {
    bool done = false;
    for (int a = 0; a < n && !done; ++a)
      for (int b = 0; b < n && !done; ++b)
        for (int c = 0; c < n; ++c)
          if (leq(a, c) && leq(b, c) && !leq(alg.join_at(a, b), c)) {
            r.add("ph.or-lub", pair_witness(alg, a, b) + ",c=" + elem(alg, c));
            done = true;
            break;
          }
  }

  // closure of domA under a => A and E => a (vacuous when full)
  if (!alg.full) {
    bool done = false;
    for (int a = 0; a < n && !done; ++a) {
      for (const auto& [A, _] : alg.forall) {
        Mask img = 0;
        for (int e = 0; e < n; ++e)
          if ((A >> e) & 1u) img |= Mask(1) << alg.imp_at(a, e);
        if (!alg.forall.count(img)) {
          r.add("ph.closure", "a=" + elem(alg, a) + ",A=" + mask_to_string(alg, A));
          done = true;
          break;
        }
      }
      if (done) break;
      for (const auto& [E, _] : alg.exists) {
        Mask img = 0;
        for (int e = 0; e < n; ++e)
          if ((E >> e) & 1u) img |= Mask(1) << alg.imp_at(e, a);
        if (!alg.forall.count(img)) {
          r.add("ph.closure", "a=" + elem(alg, a) + ",E=" + mask_to_string(alg, E));
          done = true;
          break;
        }
      }
    }
  }

  // forall is an infinite glb, exists an infinite lub
  {
    bool done = false;
    for (const auto& [A, fa] : alg.forall) {
      for (int a = 0; a < n; ++a)
        if (((A >> a) & 1u) && !leq(fa, a)) {
          r.add("ph.forall-lb", "A=" + mask_to_string(alg, A) + ",a=" + elem(alg, a));
          done = true;
          break;
        }
      if (done) break;
    }
  }
  {
    bool done = false;
    for (const auto& [A, fa] : alg.forall) {
      for (int b = 0; b < n && !done; ++b) {
        bool below_all = true;
        for (int a = 0; a < n; ++a)
          if (((A >> a) & 1u) && !leq(b, a)) {
            below_all = false;
            break;
          }
        if (below_all && !leq(b, fa)) {
          r.add("ph.forall-glb", "A=" + mask_to_string(alg, A) + ",b=" + elem(alg, b));
          done = true;
        }
      }
      if (done) break;
    }
  }
  {
    bool done = false;
    for (const auto& [E, ex] : alg.exists) {
      for (int a = 0; a < n; ++a)
        if (((E >> a) & 1u) && !leq(a, ex)) {
          r.add("ph.exists-ub", "E=" + mask_to_string(alg, E) + ",a=" + elem(alg, a));
          done = true;
          break;
        }
      if (done) break;
    }
  }
  {
    bool done = false;
    for (const auto& [E, ex] : alg.exists) {
      for (int b = 0; b < n && !done; ++b) {
        bool above_all = true;
        for (int a = 0; a < n; ++a)
          if (((E >> a) & 1u) && !leq(a, b)) {
            above_all = false;
            break;
          }
        if (above_all && !leq(ex, b)) {
          r.add("ph.exists-lub", "E=" + mask_to_string(alg, E) + ",b=" + elem(alg, b));
          done = true;
        }
      }
      if (done) break;
    }
  }

  // adjunction
  {
    bool done = false;
    for (int a = 0; a < n && !done; ++a)
      for (int b = 0; b < n && !done; ++b)
        for (int c = 0; c < n; ++c)
          if (leq(a, alg.imp_at(b, c)) != leq(alg.meet_at(a, b), c)) {
            r.add("ph.adjunction", pair_witness(alg, a, b) + ",c=" + elem(alg, c));
            done = true;
            break;
          }
  }

  // the positive set must be the one the pre-order induces: {x | top <= x}.
  // Without this clause the laws above never look at the positives at all
  // and the equivalence with the deduction-closure conditions breaks.
  for (int x = 0; x < n; ++x)
    if (alg.positive(x) != leq(alg.top, x)) {
      r.add("ph.positives", "x=" + elem(alg, x));
      break;
    }

  return r;
}

HeytingResult is_heyting(const TruthValueAlgebra& alg) {
  const Preorder p = derive_preorder(alg);
  for (int a = 0; a < alg.size(); ++a)
    for (int b = 0; b < alg.size(); ++b)
      if (a != b && p.leq(a, b) && p.leq(b, a)) return {false, a, b};
  return {true, -1, -1};
}

QuotientResult quotient_by_equiv(const TruthValueAlgebra& alg) {
  const int n = alg.size();
  const Preorder p = derive_preorder(alg);
  QuotientResult out;
  out.map.assign(n, -1);

  std::vector<int> rep;  // representative (smallest index) per class
  for (int a = 0; a < n; ++a) {
    int cls = -1;
    for (size_t c = 0; c < rep.size(); ++c)
      if (p.leq(a, rep[c]) && p.leq(rep[c], a)) {
        cls = static_cast<int>(c);
        break;
      }
    if (cls < 0) {
      cls = static_cast<int>(rep.size());
      rep.push_back(a);
    }
    out.map[a] = cls;
  }
  const int q = static_cast<int>(rep.size());

  TruthValueAlgebra& Q = out.algebra;
  for (int c = 0; c < q; ++c) Q.carrier.push_back(alg.carrier[rep[c]]);
  Q.top = out.map[alg.top];
  Q.bot = out.map[alg.bot];
  for (int a = 0; a < n; ++a)
    if (alg.positive(a)) Q.positives |= Mask(1) << out.map[a];
  // compatibility of positives with the equivalence
  for (int a = 0; a < n; ++a)
    if (Q.positives >> out.map[a] & 1u)
      if (!alg.positive(a)) {
        bool any_pos = false;
        for (int b = 0; b < n; ++b)
          if (out.map[b] == out.map[a] && alg.positive(b)) any_pos = true;
        if (any_pos)
          out.errors.push_back("positives not a union of equivalence classes at " + elem(alg, a));
      }

  Q.imp.assign(size_t(q) * q, 0);
  Q.meet.assign(size_t(q) * q, 0);
  Q.join.assign(size_t(q) * q, 0);
  auto fill_table = [&](std::vector<int>& qt, const std::vector<int>& bt, const char* name) {
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < q; ++j) qt[i * q + j] = out.map[bt[rep[i] * n + rep[j]]];
    // well-definedness: any pair of representatives of the same classes must agree
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (out.map[bt[a * n + b]] != qt[out.map[a] * q + out.map[b]]) {
          out.errors.push_back(std::string(name) + " not compatible with the equivalence at " +
                               pair_witness(alg, a, b));
          return;
        }
  };
  fill_table(Q.imp, alg.imp, "imp");
  fill_table(Q.meet, alg.meet, "and");
  fill_table(Q.join, alg.join, "or");

  auto image_mask = [&](Mask A) {
    Mask m = 0;
    for (int e = 0; e < n; ++e)
      if ((A >> e) & 1u) m |= Mask(1) << out.map[e];
    return m;
  };
  for (const auto& [A, fa] : alg.forall) {
    Mask img = image_mask(A);
    int v = out.map[fa];
    auto it = Q.forall.find(img);
    if (it != Q.forall.end() && it->second != v)
      out.errors.push_back("forall not compatible with the equivalence at A=" + mask_to_string(alg, A));
    Q.forall[img] = v;
  }
  for (const auto& [E, ex] : alg.exists) {
    Mask img = image_mask(E);
    int v = out.map[ex];
    auto it = Q.exists.find(img);
    if (it != Q.exists.end() && it->second != v)
      out.errors.push_back("exists not compatible with the equivalence at E=" + mask_to_string(alg, E));
    Q.exists[img] = v;
  }
  size_t want = size_t(1) << q;
  Q.full = (Q.forall.size() == want && Q.exists.size() == want);
  return out;
}

CheckReport check_morphism(const TruthValueAlgebra& src, const TruthValueAlgebra& dst,
                           const std::vector<int>& map, MorphismKind kind) {
  CheckReport r;
  const int n = src.size();
  if (static_cast<int>(map.size()) != n) {
    r.add("structural", "map is not total on the source carrier");
    return r;
  }
  for (int v : map)
    if (v < 0 || v >= dst.size()) {
      r.add("structural", "map value outside target carrier");
      return r;
    }
  auto F = [&](int a) { return map[a]; };
  auto Fmask = [&](Mask A) {
    Mask m = 0;
    for (int e = 0; e < n; ++e)
      if ((A >> e) & 1u) m |= Mask(1) << F(e);
    return m;
  };

  if (kind == MorphismKind::Tva) {
    for (int x = 0; x < n; ++x)
      if (src.positive(x) != dst.positive(F(x))) {
        r.add("mor.positives", "x=" + elem(src, x));
        break;
      }
  } else {
    const Preorder p1 = derive_preorder(src);
    const Preorder p2 = derive_preorder(dst);
    bool done = false;
    for (int x = 0; x < n && !done; ++x)
      for (int y = 0; y < n; ++y)
        if (p1.leq(x, y) != p2.leq(F(x), F(y))) {
          r.add("mor.order", "x=" + elem(src, x) + ",y=" + elem(src, y));
          done = true;
          break;
        }
  }

  if (F(src.top) != dst.top) r.add("mor.top", "");
  if (F(src.bot) != dst.bot) r.add("mor.bot", "");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (F(src.imp_at(a, b)) != dst.imp_at(F(a), F(b))) {
        r.add("mor.imp", pair_witness(src, a, b));
        goto meet_clause;
      }
meet_clause:
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (F(src.meet_at(a, b)) != dst.meet_at(F(a), F(b))) {
        r.add("mor.and", pair_witness(src, a, b));
        goto join_clause;
      }
join_clause:
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (F(src.join_at(a, b)) != dst.join_at(F(a), F(b))) {
        r.add("mor.or", pair_witness(src, a, b));
        goto quant_clause;
      }
quant_clause:
  for (const auto& [A, fa] : src.forall) {
    Mask img = Fmask(A);
    auto it = dst.forall.find(img);
    if (it == dst.forall.end()) {
      r.add("mor.domA", "A=" + mask_to_string(src, A));
      break;
    }
    if (it->second != F(fa)) {
      r.add("mor.forall", "A=" + mask_to_string(src, A));
      break;
    }
  }
  for (const auto& [E, ex] : src.exists) {
    Mask img = Fmask(E);
    auto it = dst.exists.find(img);
    if (it == dst.exists.end()) {
      r.add("mor.domE", "E=" + mask_to_string(src, E));
      break;
    }
    if (it->second != F(ex)) {
      r.add("mor.exists", "E=" + mask_to_string(src, E));
      break;
    }
  }
  return r;
}

namespace {

// Hoare lifting: every x in A lies below some y in B.
bool set_leq_hoare(const TruthValueAlgebra& alg, const OrderSpec& ord, Mask A, Mask B) {
  for (int x = 0; x < alg.size(); ++x) {
    if (!((A >> x) & 1u)) continue;
    bool found = false;
    for (int y = 0; y < alg.size(); ++y)
      if (((B >> y) & 1u) && ord.leq(x, y)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

// Smyth lifting: every y in B lies above some x in A.
bool set_leq_smyth(const TruthValueAlgebra& alg, const OrderSpec& ord, Mask A, Mask B) {
  for (int y = 0; y < alg.size(); ++y) {
    if (!((B >> y) & 1u)) continue;
    bool found = false;
    for (int x = 0; x < alg.size(); ++x)
      if (((A >> x) & 1u) && ord.leq(x, y)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

}  // namespace

CheckReport check_ordered(const TruthValueAlgebra& alg, const OrderSpec& ord) {
  CheckReport r;
  const int n = alg.size();
  if (ord.n != n) {
    r.add("structural", "order relation size mismatch");
    return r;
  }
  if (!ord.is_partial_order()) {
    r.add("ord.partial-order", "");
    return r;
  }
  auto leq = [&](int a, int b) { return ord.leq(a, b); };

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (alg.positive(a) && leq(a, b) && !alg.positive(b)) {
        r.add("ord.upward-closed", pair_witness(alg, a, b));
        goto top_max;
      }
top_max:
  for (int a = 0; a < n; ++a)
    if (leq(alg.top, a) && a != alg.top) {
      r.add("ord.top-maximal", "a=" + elem(alg, a));
      break;
    }

  {
    bool done = false;
    for (int a = 0; a < n && !done; ++a)
      for (int b = 0; b < n && !done; ++b) {
        if (!leq(a, b)) continue;
        for (int c = 0; c < n; ++c) {
          if (!leq(alg.meet_at(a, c), alg.meet_at(b, c)) ||
              !leq(alg.meet_at(c, a), alg.meet_at(c, b))) {
            r.add("ord.and-monotone", pair_witness(alg, a, b) + ",c=" + elem(alg, c));
            done = true;
            break;
          }
        }
      }
  }
  {
    bool done = false;
    for (int a = 0; a < n && !done; ++a)
      for (int b = 0; b < n && !done; ++b) {
        if (!leq(a, b)) continue;
        for (int c = 0; c < n; ++c) {
          if (!leq(alg.join_at(a, c), alg.join_at(b, c)) ||
              !leq(alg.join_at(c, a), alg.join_at(c, b))) {
            r.add("ord.or-monotone", pair_witness(alg, a, b) + ",c=" + elem(alg, c));
            done = true;
            break;
          }
        }
      }
  }
  {
    bool done = false;
    for (int a = 0; a < n && !done; ++a)
      for (int b = 0; b < n && !done; ++b) {
        if (!leq(a, b)) continue;
        for (int c = 0; c < n; ++c) {
          if (!leq(alg.imp_at(b, c), alg.imp_at(a, c))) {
            r.add("ord.imp-left-antimonotone", pair_witness(alg, a, b) + ",c=" + elem(alg, c));
            done = true;
            break;
          }
          if (!leq(alg.imp_at(c, a), alg.imp_at(c, b))) {
            r.add("ord.imp-right-monotone", pair_witness(alg, a, b) + ",c=" + elem(alg, c));
            done = true;
            break;
          }
        }
      }
  }

  // Quantifier monotonicity under the subset-order extension. The glb-like
  // operation uses the lower (Smyth) lifting and the lub-like operation the
  // upper (Hoare) lifting; pointwise-related value families are related in
  // both, which is what the fixed-point construction relies on.
  for (const auto& [A, fa] : alg.forall) {
    bool done = false;
    for (const auto& [B, fb] : alg.forall)
      if (set_leq_smyth(alg, ord, A, B) && !ord.leq(fa, fb)) {
        r.add("ord.forall-monotone",
              "A=" + mask_to_string(alg, A) + ",B=" + mask_to_string(alg, B));
        done = true;
        break;
      }
    if (done) break;
  }
  for (const auto& [A, ea] : alg.exists) {
    bool done = false;
    for (const auto& [B, eb] : alg.exists)
      if (set_leq_hoare(alg, ord, A, B) && !ord.leq(ea, eb)) {
        r.add("ord.exists-monotone",
              "A=" + mask_to_string(alg, A) + ",B=" + mask_to_string(alg, B));
        done = true;
        break;
      }
    if (done) break;
  }
  return r;
}

CompleteCheck check_complete(const TruthValueAlgebra& alg, const OrderSpec& ord) {
  CompleteCheck out;
  const int n = alg.size();
  const Mask all = alg.all_mask();
  out.glb.assign(size_t(1) << n, -1);
  out.lub.assign(size_t(1) << n, -1);
  for (Mask S = 0; S <= all; ++S) {
    // greatest lower bound
    for (int g = 0; g < n; ++g) {
      bool lower = true;
      for (int s = 0; s < n; ++s)
        if (((S >> s) & 1u) && !ord.leq(g, s)) {
          lower = false;
          break;
        }
      if (!lower) continue;
      bool greatest = true;
      for (int x = 0; x < n; ++x) {
        bool xlower = true;
        for (int s = 0; s < n; ++s)
          if (((S >> s) & 1u) && !ord.leq(x, s)) {
            xlower = false;
            break;
          }
        if (xlower && !ord.leq(x, g)) {
          greatest = false;
          break;
        }
      }
      if (greatest) {
        out.glb[S] = g;
        break;
      }
    }
    // least upper bound
    for (int l = 0; l < n; ++l) {
      bool upper = true;
      for (int s = 0; s < n; ++s)
        if (((S >> s) & 1u) && !ord.leq(s, l)) {
          upper = false;
          break;
        }
      if (!upper) continue;
      bool least = true;
      for (int x = 0; x < n; ++x) {
        bool xupper = true;
        for (int s = 0; s < n; ++s)
          if (((S >> s) & 1u) && !ord.leq(s, x)) {
            xupper = false;
            break;
          }
        if (xupper && !ord.leq(l, x)) {
          least = false;
          break;
        }
      }
      if (least) {
        out.lub[S] = l;
        break;
      }
    }
    if (out.glb[S] < 0) {
      out.report.add("cpl.glb", "S=" + mask_to_string(alg, S));
    }
    if (out.lub[S] < 0) {
      out.report.add("cpl.lub", "S=" + mask_to_string(alg, S));
    }
  }
  return out;
}

OrderSpec order_from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
  OrderSpec o;
  o.n = n;
  o.rel.assign(size_t(n) * n, 0);
  for (int i = 0; i < n; ++i) o.set(i, i);
  for (auto [a, b] : pairs) o.set(a, b);
  // transitive closure
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (o.leq(i, k) && o.leq(k, j)) o.set(i, j);
  return o;
}

std::optional<OrderSpec> find_complete_order(const TruthValueAlgebra& alg, int max_n) {
  const int n = alg.size();
  if (n > max_n)
    throw std::runtime_error("find_complete_order: carrier size " + std::to_string(n) +
                             " exceeds search bound " + std::to_string(max_n));
  // bits index the off-diagonal pairs in lexicographic order
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) pairs.emplace_back(a, b);
  const uint64_t limit = uint64_t(1) << pairs.size();
  for (uint64_t bits = 0; bits < limit; ++bits) {
    OrderSpec o;
    o.n = n;
    o.rel.assign(size_t(n) * n, 0);
    for (int i = 0; i < n; ++i) o.set(i, i);
    for (size_t k = 0; k < pairs.size(); ++k)
      if ((bits >> k) & 1u) o.set(pairs[k].first, pairs[k].second);
    if (!o.is_partial_order()) continue;
    if (!check_ordered(alg, o).pass()) continue;
    if (!check_complete(alg, o).report.pass()) continue;
    return o;
  }
  return std::nullopt;
}

}  // namespace tva
