#pragma once

// Critical pairs between rules, and between rules and equations in both
// directions, their joinability modulo the equations, and the confluence
// verdict derived from them.

#include <optional>
#include <string>
#include <vector>

#include "cac/reduction.hpp"
#include "cac/signature.hpp"
#include "cac/term.hpp"

namespace cac {

// Syntactic most general unifier of two algebraic terms with disjoint
// variables. When two variables meet, the one from `t` is bound to the one
// from `s`.
std::optional<Substitution> unify_algebraic(const Term& s, const Term& t);

struct CriticalPair {
  // RR: rule into rule. RE: rule into an equation side. ER: equation side
  // into a rule.
  enum class Kind : std::uint8_t { RR, RE, ER };

  Kind kind = Kind::RR;
  std::size_t outer_id = 0;
  std::size_t inner_id = 0;
  std::string outer_label;
  std::string inner_label;
  Direction outer_direction = Direction::LeftToRight;  // meaningful for equations
  Direction inner_direction = Direction::LeftToRight;
  Position position;  // in the outer left-hand side
  Substitution mgu;
  Term peak;
  // For RR the outer then the inner reduct; otherwise the rule reduct first.
  Term left;
  Term right;
};

const char* to_string(CriticalPair::Kind k);

// Inner variables are renamed apart by priming.
std::vector<CriticalPair> critical_pairs(const Signature& sig);

struct PairJoin {
  bool joinable = false;
  bool error = false;  // fuel or class bound ran out
  std::string message;
  Term left_nf;
  Term right_nf;
};

PairJoin cp_joinable(const CriticalPair& cp, const Signature& sig, const Limits& limits = {});

enum class ConfluenceOutcome : std::uint8_t { Confluent, NotConfluent, Unknown };

const char* to_string(ConfluenceOutcome o);

struct ConfluenceReport {
  std::vector<CriticalPair> pairs;
  std::vector<PairJoin> joins;
  ConfluenceOutcome outcome = ConfluenceOutcome::Unknown;
  std::string verdict;
  std::string theorem_used;
  std::vector<std::string> blocking_conditions;
  std::vector<std::string> notes;
  bool e_linear = false;
  bool left_linear = false;
};

// `sn_passed`: the combined relation was shown strongly normalizing.
// `algebraic_sn`: rewriting modulo on algebraic terms alone is known to
// terminate, which lets the left-linear combination theorem apply without
// the combined relation's termination.
ConfluenceReport confluence_verdict(const Signature& sig, bool sn_passed, bool algebraic_sn = false,
                                    const Limits& limits = {});

}  // namespace cac
