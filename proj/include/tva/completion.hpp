#pragma once

#include "tva/algebra.hpp"

namespace tva {

// The algebra of closed subsets C(X) = l(u(X)) of a base algebra,
// ordered by inclusion.
struct ClosedSetAlgebra {
  TruthValueAlgebra base;
  std::vector<Mask> closed_sets;  // ascending mask order; indexes the carrier
  TruthValueAlgebra algebra;      // carrier element i is closed_sets[i]
  OrderSpec inclusion;

  int index_of_set(Mask m) const;
};

struct CompletionResult {
  ClosedSetAlgebra closed;
  std::vector<int> embedding;  // base element a -> index of C({a})
  // Invariants verified after construction: the result is a full ordered
  // complete Heyting algebra and the embedding is an order-reflecting
  // morphism. Empty means everything holds.
  CheckReport verification;
};

// u(X), l(X) and C(X) = l(u(X)) under the pre-order derived from imp.
Mask upper_set(const TruthValueAlgebra& alg, Mask x);
Mask lower_set(const TruthValueAlgebra& alg, Mask x);
Mask closure(const TruthValueAlgebra& alg, Mask x);

// Throws std::runtime_error when the closed-set count exceeds kMaxCarrier.
CompletionResult complete_algebra(const TruthValueAlgebra& alg);

}  // namespace tva
