#pragma once

// Type inference and checking for the calculus: the sorts * and box with
// * : box, all four product rules, the symbol rule, and conversion up to
// joinability by beta, the rules and the equations.

#include <string>
#include <vector>

#include "cac/env.hpp"
#include "cac/reduction.hpp"
#include "cac/signature.hpp"
#include "cac/term.hpp"

namespace cac {

struct Judgment {
  TypingEnv env;
  Term subject;
  Term type;
};

// Successful sub-judgments in the order they were concluded.
using JudgmentTrace = std::vector<Judgment>;

// Throws TypeError naming the failing sub-judgment. FuelExhausted and
// ClassBoundExceeded from conversion tests propagate unchanged.
Term infer(const TypingEnv& env, const Term& t, const Signature& sig, const Limits& limits = {},
           JudgmentTrace* trace = nullptr);

// Identical, or joinable modulo the equations.
bool convertible(const Term& a, const Term& b, const Signature& sig, const Limits& limits);

struct CheckOutcome {
  bool ok = false;
  std::string detail;  // reason for failure
  explicit operator bool() const { return ok; }
};

// Gamma |- t : T with T itself a sort or typed by a sort.
CheckOutcome check(const TypingEnv& env, const Term& t, const Term& type, const Signature& sig,
                   const Limits& limits = {}, JudgmentTrace* trace = nullptr);

// Every declared type is typed by a sort in the prefix before it.
CheckOutcome check_env(const TypingEnv& env, const Signature& sig, const Limits& limits = {});

// U{x1 := a1, ..., xk := ak} for tau_f = (x1:T1)...(xk:Tk)U, k = |args|.
Term instantiate_type(const Term& type, const std::vector<Term>& args);

struct RuleTyping {
  CheckOutcome env;
  CheckOutcome lhs;  // Gamma |- f l rho : U gamma rho
  CheckOutcome rhs;  // Gamma |- r : U gamma rho
  Term expected;     // U gamma rho, when computable
  bool ok() const { return env.ok && lhs.ok && rhs.ok; }
};

RuleTyping check_rule_typing(const RewriteRule& rule, const Signature& sig,
                             const Limits& limits = {});

// Both sides, after rho, checked against the instantiated output type of the
// chosen side's head.
RuleTyping check_equation_typing(const Equation& eq, Direction d, const Signature& sig,
                                 const Limits& limits = {});

// theta : Gamma ~> Delta, that is Delta |- x theta : (x Gamma) theta for every
// x declared in Gamma.
bool substitution_preserves_typing(const Substitution& theta, const TypingEnv& gamma,
                                   const TypingEnv& delta, const Signature& sig,
                                   const Limits& limits = {});

}  // namespace cac
