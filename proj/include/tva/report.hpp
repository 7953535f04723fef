#pragma once

#include <string>
#include <vector>

namespace tva {

struct Violation {
  std::string condition;  // stable identifier, e.g. "tva.5" or "ord.upward-closed"
  std::string witness;    // concrete elements/subsets exhibiting the failure
};

// Outcome of an exhaustive check. Every condition is always evaluated;
// per condition only the first (lexicographic) witness is kept.
struct CheckReport {
  std::vector<Violation> violations;
  std::vector<std::string> notes;

  bool pass() const { return violations.empty(); }

  void add(std::string condition, std::string witness) {
    for (const auto& v : violations)
      if (v.condition == condition) return;
    violations.push_back({std::move(condition), std::move(witness)});
  }

  void merge(const CheckReport& other) {
    for (const auto& v : other.violations) add(v.condition, v.witness);
    for (const auto& n : other.notes) notes.push_back(n);
  }

  std::string summary() const {
    if (pass()) return "pass";
    std::string s = "fail:";
    for (const auto& v : violations) {
      s += " [" + v.condition;
      if (!v.witness.empty()) s += " @ " + v.witness;
      s += "]";
    }
    return s;
  }
};

}  // namespace tva
