#pragma once

// The computability closure of a rule's left-hand side arguments, and the
// termination schema built on it for rules and for equations.

#include <optional>
#include <string>
#include <vector>

#include "cac/env.hpp"
#include "cac/reduction.hpp"
#include "cac/signature.hpp"
#include "cac/term.hpp"

namespace cac {

enum class Occurrence : std::uint8_t { OnlyPositive, HasNegative, Absent };

const char* to_string(Occurrence o);

// Polarity of the occurrences of C in T. The domain of a product flips the
// polarity; everything else keeps it.
Occurrence positive_occurrence(SymbolId c, const Term& t, bool positive = true);

// Variables accessible in the arguments of f l1 ... ln. Variables in dom(rho)
// are never reported: they are eliminated by rho, not matched.
NameSet accessible_vars(SymbolId f, const std::vector<Term>& args, const Signature& sig,
                        const Substitution& rho = {});

// big |> small: small is a proper algebraic subterm of big.
bool strict_subterm(const Term& big, const Term& small);

// u <_f l for the multiset or lexicographic extension of the strict subterm
// order.
bool status_less(const std::vector<Term>& u, const std::vector<Term>& l, Status status);

struct ClosureContext {
  SymbolId head;
  std::vector<Term> lhs_args;  // after rho; the arguments calls must decrease against
  TypingEnv env;               // its variables act as symbols below head
  Substitution rho;
};

struct ClosureResult {
  bool ok = true;
  std::string failed_rule;  // "symb<", "symb=", "var", "app", "abs", "prod", "ax", "conv"
  std::string detail;
  explicit operator bool() const { return ok; }
};

// Decides |-c t : T. Throws FuelExhausted from the restricted conversion.
ClosureResult closure_check(const ClosureContext& ctx, const Term& t, const Term& type,
                            const Signature& sig, const Limits& limits = {});

struct SchemaVerdict {
  std::string label;
  std::string direction;  // for equations
  bool pass = false;
  // The failure involves a constructor with a functional argument, where the
  // plain subterm order is known to be weaker than necessary.
  bool conservative = false;
  std::string failed_rule;
  std::string detail;
  std::vector<std::string> inaccessible;
};

SchemaVerdict general_schema_rule(const RewriteRule& rule, const Signature& sig,
                                  const Limits& limits = {});

struct EquationSchema {
  std::string label;
  SchemaVerdict left_to_right;
  SchemaVerdict right_to_left;
  bool pass() const { return left_to_right.pass && right_to_left.pass; }
};

EquationSchema general_schema_equation(const Equation& eq, const Signature& sig,
                                       const Limits& limits = {});

// Notes on how the closure reads the underspecified parts of its definition;
// printed with schema reports.
const std::vector<std::string>& closure_interpretation_notes();

}  // namespace cac
