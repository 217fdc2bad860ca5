#pragma once

// The rewrite engine: beta-steps, rule steps, equation steps, enumeration of
// equivalence classes modulo the equations, matching modulo, normal forms for
// beta-reduction combined with rewriting modulo, joinability, and the
// cap/aliens decomposition.

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cac/signature.hpp"
#include "cac/term.hpp"

namespace cac {

struct Limits {
  std::size_t max_class_size = 10000;
  std::size_t fuel = 100000;
};

struct Step {
  enum class Kind : std::uint8_t { Beta, Rule, Eq };

  Kind kind = Kind::Beta;
  std::size_t id = 0;  // index into rules() or equations()
  std::string label;
  Direction direction = Direction::LeftToRight;
  Position position;
  Substitution matched;
};

struct ReductionTrace {
  std::vector<Step> steps;

  bool empty() const { return steps.empty(); }
  void append(const ReductionTrace& other);
  // Copy of this trace with every position prefixed by `prefix`.
  ReductionTrace shifted(const Position& prefix) const;
};

// Syntactic one-way matching. Free variables of `pattern` are the pattern
// variables; repeated ones must match equal subterms.
std::optional<Substitution> match(const Term& pattern, const Term& subject);

// ---------------------------------------------------------------------------
// Single steps at every position.

std::vector<Term> beta_step(const Term& t);
std::vector<std::pair<Term, Step>> beta_steps(const Term& t);

// Every E-step, each equation used in both orientations. An orientation whose
// target has variables its source lacks is never applied.
std::vector<std::pair<Term, Step>> e_steps(const Term& t, const Signature& sig);

// Syntactic rule steps (no equations).
std::vector<std::pair<Term, Step>> rule_steps(const Term& t, const Signature& sig);

// ---------------------------------------------------------------------------

struct EClass {
  Term representative;
  std::vector<Term> members;  // breadth-first order; members[0] is the representative
  bool truncated = false;

  bool contains(const Term& t) const { return index_.contains(t); }
  std::optional<std::size_t> index_of(const Term& t) const;
  // E-steps leading from the representative to members[i].
  ReductionTrace path_to(std::size_t i) const;
  // Smallest member under term_less.
  const Term& canonical() const;

 private:
  friend EClass e_class(const Term& t, const Signature& sig, std::size_t bound);
  std::unordered_map<Term, std::size_t, TermHash> index_;
  std::vector<std::size_t> parent_;
  std::vector<Step> via_;
};

// Breadth-first closure under single E-steps. Sets `truncated` instead of
// throwing when the bound is exceeded.
EClass e_class(const Term& t, const Signature& sig, std::size_t bound);

// Throws ClassBoundExceeded.
bool equivalent_modulo(const Term& t, const Term& u, const Signature& sig, const Limits& limits);

// All sigma with pattern.sigma ~ subject. Throws ClassBoundExceeded.
std::vector<Substitution> match_modulo(const Term& pattern, const Term& subject,
                                       const Signature& sig, const Limits& limits);

struct Reduct {
  Term term;
  ReductionTrace trace;
};

// One step of beta-reduction or rewriting modulo: every beta-reduct of t, and
// every rule reduct of every member of the class of t.
std::vector<Reduct> rel_step(const Term& t, const Signature& sig, const Limits& limits);

// A normal form by leftmost-innermost reduction, rules tried in declaration
// order. Throws FuelExhausted or ClassBoundExceeded.
Term normalize(const Term& t, const Signature& sig, const Limits& limits,
               ReductionTrace* trace = nullptr);

struct Joinability {
  bool joinable = false;
  Term left_nf;
  Term right_nf;
};

Joinability join(const Term& t, const Term& u, const Signature& sig, const Limits& limits);
bool joinable_modulo(const Term& t, const Term& u, const Signature& sig, const Limits& limits);

// Normal form under beta and the rules whose head is strictly below f in the
// precedence, matched syntactically.
Term restricted_normalize(const Term& t, SymbolId f, const Signature& sig, const Limits& limits);

struct CapAliens {
  Term cap;
  std::vector<std::pair<Position, Term>> aliens;
  std::vector<std::string> alien_vars;  // variable standing for each alien
  // Set when a joinability test between aliens ran out of fuel or class
  // budget; those aliens then received distinct variables.
  bool approximate = false;
};

CapAliens cap_aliens(const Term& t, const Signature& sig, const Limits& limits);

// Re-applies a trace. Throws Error when a step does not apply.
Term replay(const Term& t, const ReductionTrace& trace, const Signature& sig);

}  // namespace cac
