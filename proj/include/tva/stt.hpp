#pragma once

#include "tva/semantics.hpp"

namespace tva {

// Higher-order logic presented as a first-order rewrite theory: combinator
// sorts are generated bottom-up from the base sorts i (individuals) and o
// (propositions), closed under the arrow encoding enc(T -> U) = "A" +
// enc(T) + enc(U), up to maxDepth arrow nesting and a per-sort domain cap.
// Function-space domains are explicit finite tables: the element of sort
// T -> U encoding f is sum over arguments of f(a) * |U|^(|T|-1-a), so the
// first argument is the most significant digit.
struct SttSortInfo {
  bool arrow = false;
  int from = -1, to = -1;  // indices for arrow sorts
  std::string enc;
  uint64_t size = 0;
};

struct SttResult {
  Theory theory;        // sorts, alpha/combinator/connective symbols, eps, nine rule families
  BStructure structure;
  std::vector<SttSortInfo> sorts;
  CheckReport report;   // check_model over every constructible rule instance
};

// Symbols and rules are only emitted when every sort they mention survived
// the depth and cap filters, so the nine rule families are checked on all
// constructible instances and on nothing else. Requires a full algebra.
SttResult build_stt_model(const TruthValueAlgebra& alg, int max_depth,
                          uint64_t domain_cap = 20000);

// function application on encoded elements: f of sort from -> to
uint64_t stt_apply(const std::vector<SttSortInfo>& sorts, int arrow_sort, uint64_t f,
                   uint64_t arg);

}  // namespace tva
