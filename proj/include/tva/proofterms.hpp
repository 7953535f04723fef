#pragma once

#include <optional>

#include "tva/logic.hpp"

namespace tva {

// Natural-deduction proof terms. Text syntax:
//   variable a | lam a:A. p | p q | pair(p, q) | fst p | snd p
//   inl p | inr p | case p of a.p1 | b.p2 | unit | exfalso(p, A)
//   Lam x:s. p | p @ t | wit(t, p) | dest p as x.a.q
// Application is left-associative; lam/Lam/case/dest bodies extend as far
// right as possible; fst/snd/inl/inr apply to the next atom.
enum class PKind {
  Var,      // name
  Lam,      // name : ann . kids[0]
  App,      // kids[0] kids[1]
  Pair,     // kids[0], kids[1]
  Fst,      // kids[0]
  Snd,      // kids[0]
  Inl,      // kids[0]
  Inr,      // kids[0]
  Case,     // kids[0] of name.kids[1] | var2.kids[2]
  Unit,
  Exfalso,  // kids[0], ann
  TLam,     // bvar : bsort . kids[0]
  TApp,     // kids[0] @ t
  Wit,      // t, kids[0]
  Dest      // kids[0] as bvar . name . kids[1]
};

struct ProofTerm {
  PKind kind = PKind::Unit;
  std::string name;   // Var; Lam/Case/Dest proof binder
  std::string var2;   // Case second proof binder
  std::string bvar;   // TLam/Dest term binder
  std::string bsort;  // TLam binder sort
  Formula ann;        // Lam hypothesis; Exfalso target formula
  Term t;             // TApp argument; Wit witness
  std::vector<ProofTerm> kids;

  bool operator==(const ProofTerm&) const = default;
};

struct Sequent {
  std::vector<std::pair<std::string, Formula>> context;
  Formula conclusion;
};

ProofTerm parse_proof(const Signature& sig, const std::string& text,
                      const std::map<std::string, std::string>& term_vars = {});
std::string to_string(const ProofTerm& p);

// Proof files: optional `goal <formula>` line, then `proof <term>`
// (possibly spanning the rest of the file).
struct ProofFile {
  std::optional<Formula> goal;
  ProofTerm proof;
};
ProofFile parse_proof_file(const std::string& path, const Signature& sig);

bool alpha_equal(const ProofTerm& a, const ProofTerm& b);
std::string canonical_key(const ProofTerm& p);

// capture-avoiding substitutions
ProofTerm substitute_proof(const ProofTerm& p, const std::string& var, const ProofTerm& by);
ProofTerm substitute_term(const ProofTerm& p, const std::map<std::string, Term>& sub);

enum class ProofVerdict { Valid, Invalid, Unknown };

struct ProofCheckResult {
  ProofVerdict verdict = ProofVerdict::Invalid;
  std::string position;  // path to the offending subterm when Invalid
  std::string detail;
};

// Bidirectional typing with conversion: at every rule boundary the active
// formula may be replaced by a congruent one (decided by `congruent`, with
// head connectives exposed by normalization). Unknown whenever a needed
// congruence or normalization runs out of fuel.
ProofCheckResult check_proof(const Theory& thy, const Sequent& seq, const ProofTerm& p,
                             int fuel = 10000);

// Every one-step beta reduct at every position, deterministically ordered:
// (lam a:A. p) q, fst/snd of pair, case of inl/inr, (Lam x:s. p) @ t,
// dest of wit.
std::vector<ProofTerm> reduce_step(const ProofTerm& p);

bool is_neutral(const ProofTerm& p);  // not an introduction form

enum class RedKind { Normal, Loop, FuelExhausted };

struct ReductionOutcome {
  RedKind kind = RedKind::FuelExhausted;
  ProofTerm normal_form;         // Normal
  int steps = 0;                 // Normal: longest reduction path length
  std::vector<ProofTerm> trace;  // Loop: cycle; consecutive one-step reducts,
                                 // first and last entries alpha-equal
  int frontier = 0;              // FuelExhausted: distinct terms explored
};

// Full reduction-graph exploration memoized on alpha-equivalence classes;
// fuel bounds the number of distinct terms visited.
ReductionOutcome sn_status(const ProofTerm& p, int fuel = 10000);

}  // namespace tva
