#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tva/report.hpp"

namespace tva {

struct SyntaxError : std::runtime_error {
  int line, col;
  SyntaxError(int line_, int col_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ", col " + std::to_string(col_) +
                           ": " + msg),
        line(line_),
        col(col_) {}
};

struct FunDecl {
  std::vector<std::string> args;
  std::string result;
};

struct Signature {
  std::vector<std::string> sorts;
  std::map<std::string, FunDecl> funs;
  std::map<std::string, std::vector<std::string>> preds;  // argument sorts

  bool has_sort(const std::string& s) const;
};

struct Term {
  bool is_var = false;
  std::string name;  // variable name or function symbol
  std::string sort;  // sort of the whole term
  std::vector<Term> args;

  bool operator==(const Term&) const = default;
};

enum class FKind { Atom, Top, Bot, Imp, And, Or, Forall, Exists };

struct Formula {
  FKind kind = FKind::Top;
  std::string pred;        // Atom
  std::vector<Term> args;  // Atom
  std::vector<Formula> kids;  // Imp/And/Or: 2; Forall/Exists: 1
  std::string bvar, bsort;    // binders

  bool operator==(const Formula&) const = default;
};

struct RewriteRule {
  bool is_term_rule = false;
  Term term_lhs, term_rhs;        // term rules
  Formula prop_lhs, prop_rhs;     // proposition rules; lhs atomic
};

struct Theory {
  Signature sig;
  std::vector<RewriteRule> rules;
  std::vector<Formula> axioms;
  bool claimed_terminating = false;
  bool claimed_confluent = false;

  bool has_term_rules() const;
  bool has_prop_rules() const;
};

Theory parse_theory(const std::string& text);
Theory parse_theory_file(const std::string& path);
std::string serialize_theory(const Theory& thy);

// Standalone formula/term parsing against a signature. Free variables are
// only admitted when their sort can be inferred from context; `vars` can
// pre-declare sorts for them.
Formula parse_formula(const Signature& sig, const std::string& text,
                      const std::map<std::string, std::string>& vars = {});
Term parse_term(const Signature& sig, const std::string& text, const std::string& sort,
                const std::map<std::string, std::string>& vars = {});

std::string to_string(const Term& t);
std::string to_string(const Formula& f);

// Syntactic equality up to renaming of bound variables.
bool alpha_equal(const Formula& a, const Formula& b);

// Stable identification key: equal for alpha-equal formulas.
std::string canonical_key(const Formula& f);

std::map<std::string, std::string> free_vars(const Term& t);    // name -> sort
std::map<std::string, std::string> free_vars(const Formula& f);

// Capture-avoiding substitution of free variables.
Term substitute(const Term& t, const std::map<std::string, Term>& sub);
Formula substitute(const Formula& f, const std::map<std::string, Term>& sub);

struct NormalizeResult {
  bool normal = false;  // false means the fuel ran out
  Formula value;        // normal form, or the partial reduct
  int steps = 0;
};

struct TermNormalizeResult {
  bool normal = false;
  Term value;
  int steps = 0;
};

// Innermost: leftmost-innermost term rewriting, then head rewriting of
// atomic formulas, at every position including under binders. Outermost
// exists for differential testing under the confluence assumption.
enum class Strategy { Innermost, Outermost };

NormalizeResult normalize(const Theory& thy, const Formula& f, int fuel,
                          Strategy strategy = Strategy::Innermost);
TermNormalizeResult normalize(const Theory& thy, const Term& t, int fuel,
                              Strategy strategy = Strategy::Innermost);

bool is_normal(const Theory& thy, const Formula& f);

// Every one-step reduct, at every position, deterministically ordered.
std::vector<Formula> all_one_step(const Theory& thy, const Formula& f);
std::vector<Term> all_one_step(const Theory& thy, const Term& t);

enum class TriState { Yes, No, Unknown };

// Congruence test. Alpha-equal inputs are always Yes; otherwise both sides
// are normalized within fuel and compared; if either side fails to reach a
// normal form a bounded joinability search still may answer Yes, else
// Unknown.
TriState congruent(const Theory& thy, const Formula& a, const Formula& b, int fuel);

// Every atomic subformula of every proposition-rule rhs occurs at a
// positive position (left of => flips polarity).
CheckReport check_positive(const Theory& thy);

bool check_quantifier_free(const Theory& thy);

// Each atomic formula has at most one one-step reduct at the head: all
// proposition-rule lhs are linear and pairwise non-unifiable.
bool check_deterministic(const Theory& thy);

}  // namespace tva
