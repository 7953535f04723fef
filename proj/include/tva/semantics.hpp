#pragma once

#include <cstdint>
#include <optional>

#include "tva/algebra.hpp"
#include "tva/logic.hpp"

namespace tva {

// Interpretation of a signature into a truth values algebra over finite
// per-sort domains. Domain elements are 0..size-1, named "<sort><index>"
// in files. Tables are total, indexed lexicographically over argument
// tuples (first argument most significant).
struct BStructure {
  TruthValueAlgebra algebra;
  std::map<std::string, int> domain_sizes;
  std::map<std::string, std::vector<int>> fun_interp;
  std::map<std::string, std::vector<int>> pred_interp;

  int domain(const std::string& sort) const {
    auto it = domain_sizes.find(sort);
    return it == domain_sizes.end() ? 0 : it->second;
  }

  bool operator==(const BStructure&) const = default;
};

using Assignment = std::map<std::string, int>;

struct Denot {
  bool defined = true;
  int value = 0;
  std::string offending;  // quantified subformula whose value set is outside the domain
};

int denote(const Signature& sig, const BStructure& st, const Term& t, const Assignment& phi);
Denot denote(const Signature& sig, const BStructure& st, const Formula& f, const Assignment& phi);

// Model check: every axiom positive under all assignments, and for every
// rewrite rule and every assignment of domain elements to its variables,
// both sides denote the same (defined) value. The congruence is generated
// by rule instances and denotation is compositional, so this instance
// check covers the full congruence condition; the report notes this.
CheckReport check_model(const Theory& thy, const BStructure& st);

struct SearchLimits {
  uint64_t max_structures = 50'000'000;
};

// Exhaustive search in lexicographic order (function tables first, then
// predicate tables, symbols alphabetically, carrier values in carrier
// order). Throws std::runtime_error when the space exceeds the limit.
std::optional<BStructure> find_model(const Theory& thy, const TruthValueAlgebra& alg,
                                     const std::map<std::string, int>& domain_sizes,
                                     const SearchLimits& limits = {});

// Closed normal terms per sort, enumerated by increasing size, at most
// `per_sort` each. The basis for term-universe domains.
std::map<std::string, std::vector<Term>> closed_normal_terms(const Theory& thy, int per_sort,
                                                             int fuel = 10000);

struct FixpointResult {
  BStructure structure;
  int iterations = 0;
  bool monotone = true;  // iteration increased pointwise in the order at every step
  CheckReport report;    // precondition or convergence failures
  std::map<std::string, std::vector<Term>> representatives;
};

// Least fixed point of the rule functional, iterated synchronously from
// the pointwise-glb bottom interpretation. Domain elements are closed
// normal terms (representatives). The functional evaluates the full
// normal form when the theory claims termination and the unique one-step
// head reduct otherwise.
FixpointResult fixpoint_model(const Theory& thy, const TruthValueAlgebra& alg,
                              const OrderSpec& ord,
                              const std::map<std::string, int>& domain_sizes, int fuel = 10000);

// Same construction but always with the one-step reduct functional;
// requires check_deterministic.
FixpointResult fixpoint_model_deterministic(const Theory& thy, const TruthValueAlgebra& alg,
                                            const OrderSpec& ord,
                                            const std::map<std::string, int>& domain_sizes,
                                            int fuel = 10000);

struct UniverseModel {
  BStructure structure;
  std::map<std::string, std::vector<Term>> representatives;
  CheckReport report;
};

// The normal-closed-term model for quantifier-free terminating confluent
// theories: every atom in normal form is interpreted as top.
UniverseModel quantifier_free_model(const Theory& thy, const TruthValueAlgebra& alg,
                                    int term_bound = 64, int fuel = 10000);

enum class ProbeOutcome { ModelFound, NoModel, Inconclusive };

struct ProbeEntry {
  std::string name;
  ProbeOutcome outcome = ProbeOutcome::Inconclusive;
  std::optional<BStructure> model;
};

// Falsification-only probe: NoModel for any full ordered complete algebra
// refutes super-consistency; ModelFound everywhere is mere evidence.
std::vector<ProbeEntry> probe_super_consistency(
    const Theory& thy, const std::vector<std::pair<std::string, TruthValueAlgebra>>& library,
    const SearchLimits& limits = {});

// Structure files: `algebra <path>` (relative to the structure file),
// `domain <sort> = n`, exhaustive `fun f : <elem>* -> <elem>` and
// `pred P : <elem>* -> <truthvalue>` lines.
BStructure parse_structure_file(const std::string& path, const Theory& thy);
BStructure parse_structure(const std::string& text, const Theory& thy,
                           const TruthValueAlgebra& alg);
std::string serialize_structure(const Theory& thy, const BStructure& st,
                                const std::string& algebra_ref);

}  // namespace tva
