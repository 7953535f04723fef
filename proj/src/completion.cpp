#include "tva/completion.hpp"

#include <algorithm>
#include <stdexcept>

namespace tva {

namespace {

Mask upper_set_rel(const TruthValueAlgebra& alg, const Preorder& p, Mask x) {
  Mask out = 0;
  for (int y = 0; y < alg.size(); ++y) {
    bool ok = true;
    for (int e = 0; e < alg.size(); ++e)
      if (((x >> e) & 1u) && !p.leq(e, y)) {
        ok = false;
        break;
      }
    if (ok) out |= Mask(1) << y;
  }
  return out;
}

Mask lower_set_rel(const TruthValueAlgebra& alg, const Preorder& p, Mask x) {
  Mask out = 0;
  for (int y = 0; y < alg.size(); ++y) {
    bool ok = true;
    for (int e = 0; e < alg.size(); ++e)
      if (((x >> e) & 1u) && !p.leq(y, e)) {
        ok = false;
        break;
      }
    if (ok) out |= Mask(1) << y;
  }
  return out;
}

}  // namespace

int ClosedSetAlgebra::index_of_set(Mask m) const {
  auto it = std::lower_bound(closed_sets.begin(), closed_sets.end(), m);
  if (it == closed_sets.end() || *it != m) return -1;
  return static_cast<int>(it - closed_sets.begin());
}

Mask upper_set(const TruthValueAlgebra& alg, Mask x) {
  return upper_set_rel(alg, derive_preorder(alg), x);
}

Mask lower_set(const TruthValueAlgebra& alg, Mask x) {
  return lower_set_rel(alg, derive_preorder(alg), x);
}

Mask closure(const TruthValueAlgebra& alg, Mask x) {
  const Preorder p = derive_preorder(alg);
  return lower_set_rel(alg, p, upper_set_rel(alg, p, x));
}

CompletionResult complete_algebra(const TruthValueAlgebra& alg) {
  CompletionResult out;
  ClosedSetAlgebra& cs = out.closed;
  cs.base = alg;
  const int n = alg.size();
  const Preorder p = derive_preorder(alg);
  auto close = [&](Mask x) { return lower_set_rel(alg, p, upper_set_rel(alg, p, x)); };

  for (Mask x = 0; x <= alg.all_mask(); ++x) {
    Mask c = close(x);
    if (!std::binary_search(cs.closed_sets.begin(), cs.closed_sets.end(), c)) {
      cs.closed_sets.insert(
          std::upper_bound(cs.closed_sets.begin(), cs.closed_sets.end(), c), c);
    }
  }
  const int m = static_cast<int>(cs.closed_sets.size());
  if (m > kMaxCarrier)
    throw std::runtime_error("completion has " + std::to_string(m) +
                             " closed sets, beyond the supported carrier size");

  TruthValueAlgebra& C = cs.algebra;
  for (Mask s : cs.closed_sets) C.carrier.push_back(mask_to_string(alg, s));
  C.top = cs.index_of_set(close(Mask(1) << alg.top));
  C.bot = cs.index_of_set(close(Mask(1) << alg.bot));
  C.full = true;

  cs.inclusion.n = m;
  cs.inclusion.rel.assign(size_t(m) * m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if ((cs.closed_sets[i] & ~cs.closed_sets[j]) == 0) cs.inclusion.set(i, j);

  // positives: closed sets containing the closure of the top singleton
  Mask topset = cs.closed_sets[C.top];
  for (int i = 0; i < m; ++i)
    if ((topset & ~cs.closed_sets[i]) == 0) C.positives |= Mask(1) << i;

  // conjunction is intersection, disjunction the closure of the union
  C.meet.assign(size_t(m) * m, 0);
  C.join.assign(size_t(m) * m, 0);
  C.imp.assign(size_t(m) * m, 0);
  std::vector<Mask> singleton_closure(n);
  for (int a = 0; a < n; ++a) singleton_closure[a] = close(Mask(1) << a);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Mask X = cs.closed_sets[i], Y = cs.closed_sets[j];
      C.meet[i * m + j] = cs.index_of_set(X & Y);
      C.join[i * m + j] = cs.index_of_set(close(X | Y));
      // intersection over x with C({x}) in X and y with Y in C({y})
      Mask acc = alg.all_mask();
      for (int x = 0; x < n; ++x) {
        if (singleton_closure[x] & ~X) continue;
        for (int y = 0; y < n; ++y) {
          if (Y & ~singleton_closure[y]) continue;
          acc &= singleton_closure[alg.imp_at(x, y)];
        }
      }
      C.imp[i * m + j] = cs.index_of_set(acc);
    }

  // quantifiers over every family of closed sets: intersection / closed union
  for (Mask fam = 0; fam < (Mask(1) << m); ++fam) {
    Mask inter = alg.all_mask(), uni = 0;
    for (int i = 0; i < m; ++i)
      if ((fam >> i) & 1u) {
        inter &= cs.closed_sets[i];
        uni |= cs.closed_sets[i];
      }
    C.forall[fam] = cs.index_of_set(inter);
    C.exists[fam] = cs.index_of_set(close(uni));
  }
  for (auto [k, v] : C.forall)
    if (v < 0) out.verification.add("completion.forall-closed", "family " + std::to_string(k));
  for (int i = 0; i < m * m; ++i)
    if (C.meet[i] < 0 || C.join[i] < 0 || C.imp[i] < 0) {
      out.verification.add("completion.table-closed", "");
      break;
    }

  out.embedding.resize(n);
  for (int a = 0; a < n; ++a) out.embedding[a] = cs.index_of_set(singleton_closure[a]);

  // verify rather than assume the advertised structure
  for (Mask s : cs.closed_sets)
    if (close(s) != s) {
      out.verification.add("completion.idempotent", mask_to_string(alg, s));
      break;
    }
  out.verification.merge(check_tva(C));
  auto h = is_heyting(C);
  if (!h.heyting) out.verification.add("completion.heyting", "");
  out.verification.merge(check_ordered(C, cs.inclusion));
  out.verification.merge(check_complete(C, cs.inclusion).report);
  out.verification.merge(check_morphism(alg, C, out.embedding, MorphismKind::PseudoHeyting));
  // adjunction in the completed algebra
  {
    bool done = false;
    for (int x = 0; x < m && !done; ++x)
      for (int a = 0; a < m && !done; ++a)
        for (int b = 0; b < m; ++b)
          if (cs.inclusion.leq(x, C.imp_at(a, b)) !=
              cs.inclusion.leq(C.meet_at(x, a), b)) {
            out.verification.add("completion.adjunction", C.carrier[x] + "," + C.carrier[a] +
                                                              "," + C.carrier[b]);
            done = true;
            break;
          }
  }
  return out;
}

}  // namespace tva
