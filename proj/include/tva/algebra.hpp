#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tva/report.hpp"

namespace tva {

// Subsets of the carrier are bit masks keyed by carrier index.
using Mask = uint32_t;

constexpr int kMaxCarrier = 12;

// A finite truth values algebra: carrier with a positive subset, the
// propositional operation tables, and quantifier maps defined on the
// subset families domA (keys of `forall`) and domE (keys of `exists`).
struct TruthValueAlgebra {
  std::vector<std::string> carrier;
  Mask positives = 0;
  int top = 0;
  int bot = 0;
  bool full = false;
  std::vector<int> imp;   // n*n row-major, row = left argument
  std::vector<int> meet;  // conjunction table
  std::vector<int> join;  // disjunction table
  std::map<Mask, int> forall;
  std::map<Mask, int> exists;

  // Optional order relation seed loaded from a file (pairs a <= b).
  std::optional<std::vector<std::pair<int, int>>> order_pairs;

  int size() const { return static_cast<int>(carrier.size()); }
  int imp_at(int a, int b) const { return imp[a * size() + b]; }
  int meet_at(int a, int b) const { return meet[a * size() + b]; }
  int join_at(int a, int b) const { return join[a * size() + b]; }
  bool positive(int a) const { return (positives >> a) & 1u; }
  Mask all_mask() const { return (Mask(1) << size()) - 1; }

  int index_of(const std::string& name) const;

  // domA / domE as sorted lists of masks.
  std::vector<Mask> domA() const;
  std::vector<Mask> domE() const;

  // Well-formedness independent of the TVA conditions: indices in range,
  // tables total, full flag consistent with the quantifier maps.
  std::vector<std::string> structural_errors() const;

  bool operator==(const TruthValueAlgebra&) const = default;
};

// Pre-order derived from implication: leq(a,b) iff imp(a,b) positive.
struct Preorder {
  int n = 0;
  std::vector<uint8_t> rel;  // n*n
  bool leq(int a, int b) const { return rel[a * n + b] != 0; }
  bool reflexive() const;
  bool transitive() const;
};

// A candidate partial order on the carrier.
struct OrderSpec {
  int n = 0;
  std::vector<uint8_t> rel;  // n*n
  bool leq(int a, int b) const { return rel[a * n + b] != 0; }
  void set(int a, int b) { rel[a * n + b] = 1; }
  bool is_partial_order() const;
};

struct HeytingResult {
  bool heyting = false;
  int a = -1, b = -1;  // witness pair with a <= b, b <= a, a != b
};

struct QuotientResult {
  TruthValueAlgebra algebra;
  std::vector<int> map;  // base carrier index -> quotient carrier index
  std::vector<std::string> errors;  // operations incompatible with the equivalence
};

enum class MorphismKind { Tva, PseudoHeyting };

struct CompleteCheck {
  CheckReport report;
  // glb/lub per subset mask; -1 where the bound does not exist.
  std::vector<int> glb, lub;
};

CheckReport check_tva(const TruthValueAlgebra& alg);

Preorder derive_preorder(const TruthValueAlgebra& alg);

// The pseudo-Heyting laws for the given relation; positives are not read.
CheckReport check_pseudo_heyting(const TruthValueAlgebra& alg, const Preorder& rel);

// The positive set a pseudo-Heyting structure induces: {x | top <= x}.
Mask positives_from_preorder(const TruthValueAlgebra& alg, const Preorder& rel);

HeytingResult is_heyting(const TruthValueAlgebra& alg);

QuotientResult quotient_by_equiv(const TruthValueAlgebra& alg);

CheckReport check_morphism(const TruthValueAlgebra& src, const TruthValueAlgebra& dst,
                           const std::vector<int>& map,
                           MorphismKind kind = MorphismKind::Tva);

CheckReport check_ordered(const TruthValueAlgebra& alg, const OrderSpec& ord);

CompleteCheck check_complete(const TruthValueAlgebra& alg, const OrderSpec& ord);

// Exhaustive search over all partial orders on the carrier. Throws
// std::runtime_error when the carrier exceeds max_n.
std::optional<OrderSpec> find_complete_order(const TruthValueAlgebra& alg, int max_n = 6);

OrderSpec order_from_pairs(int n, const std::vector<std::pair<int, int>>& pairs);

std::string mask_to_string(const TruthValueAlgebra& alg, Mask m);

}  // namespace tva
