#pragma once

// Symbols, rewrite rules, equations, and the classifications derived from
// them: constant versus defined symbols, primitive predicates, first-order
// versus higher-order symbols, constructors, and the precedence.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cac/env.hpp"
#include "cac/term.hpp"

namespace cac {

enum class Status : std::uint8_t { Mul, Lex };
enum class SymbolKind : std::uint8_t { FirstOrder, HigherOrder };

const char* to_string(Status s);
const char* to_string(SymbolKind k);

struct SymbolDecl {
  std::string name;
  Sort sort = Sort::Star;  // Box for predicate symbols
  std::size_t arity = 0;
  Term type;  // closed, with at least `arity` leading products
  Status status = Status::Mul;
  std::optional<SymbolKind> declared_kind;
  bool declared_constant = false;
  int line = 0;
};

struct RewriteRule {
  std::string label;
  SymbolId head;
  std::vector<Term> lhs_args;
  Term rhs;
  TypingEnv env;
  Substitution rho;
  int line = 0;

  Term lhs() const { return Term::apps(Term::symb(head), lhs_args); }
};

enum class Direction : std::uint8_t { LeftToRight, RightToLeft };

const char* to_string(Direction d);

// Stored once, used in both orientations.
struct Equation {
  std::string label;
  Term lhs;
  Term rhs;
  TypingEnv env;
  Substitution rho;
  int line = 0;

  const Term& source(Direction d) const { return d == Direction::LeftToRight ? lhs : rhs; }
  const Term& target(Direction d) const { return d == Direction::LeftToRight ? rhs : lhs; }
};

// Quasi-order on symbols given by the strongly connected components of a
// dependency graph. f >= g iff g is reachable from f.
class Precedence {
 public:
  Precedence() = default;
  // `edges[f]` lists the g with f >= g.
  explicit Precedence(const std::vector<std::vector<SymbolId>>& edges);

  bool greater_or_equal(SymbolId f, SymbolId g) const;
  bool equivalent(SymbolId f, SymbolId g) const;
  bool greater(SymbolId f, SymbolId g) const;
  bool less(SymbolId f, SymbolId g) const { return greater(g, f); }

  std::size_t component(SymbolId f) const { return component_.at(f.value); }
  std::size_t component_count() const { return reach_.size(); }

 private:
  std::vector<std::size_t> component_;
  std::vector<std::vector<bool>> reach_;  // over components, reflexive
};

class Signature {
 public:
  SymbolId add_symbol(SymbolDecl decl);
  std::size_t add_rule(RewriteRule rule);
  std::size_t add_equation(Equation eq);
  void declare_precedence(SymbolId greater, SymbolId lesser);
  void set_status(SymbolId f, Status s);

  // Recomputes every derived classification. Must be called after the last
  // mutation and before classification queries.
  void finalize();
  bool finalized() const { return finalized_; }

  std::size_t symbol_count() const { return symbols_.size(); }
  const SymbolDecl& symbol(SymbolId f) const { return symbols_.at(f.value); }
  const std::vector<SymbolDecl>& symbols() const { return symbols_; }
  std::optional<SymbolId> find(const std::string& name) const;
  const std::string& name_of(SymbolId f) const { return symbol(f).name; }

  const std::vector<RewriteRule>& rules() const { return rules_; }
  const std::vector<Equation>& equations() const { return equations_; }
  const std::vector<std::pair<SymbolId, SymbolId>>& declared_precedences() const {
    return declared_precedence_;
  }

  bool is_predicate(SymbolId f) const { return symbol(f).sort == Sort::Box; }
  bool is_constant(SymbolId f) const;
  bool is_first_order(SymbolId f) const;
  SymbolKind kind(SymbolId f) const { return is_first_order(f) ? SymbolKind::FirstOrder : SymbolKind::HigherOrder; }
  const Precedence& precedence() const;

  // R_1 / R_omega and E_1 / E_omega, as indices. Equations are assigned by the
  // head of their left-hand side.
  const std::vector<std::size_t>& first_order_rules() const { return fo_rules_; }
  const std::vector<std::size_t>& higher_order_rules() const { return ho_rules_; }
  const std::vector<std::size_t>& first_order_equations() const { return fo_eqs_; }
  const std::vector<std::size_t>& higher_order_equations() const { return ho_eqs_; }

  // A copy keeping the symbols and precedence declarations but only the
  // selected rules and equations.
  Signature restricted(const std::function<bool(const RewriteRule&)>& keep_rule,
                       const std::function<bool(const Equation&)>& keep_eq) const;

 private:
  void require_finalized() const;

  std::vector<SymbolDecl> symbols_;
  std::map<std::string, SymbolId> by_name_;
  std::vector<RewriteRule> rules_;
  std::vector<Equation> equations_;
  std::vector<std::pair<SymbolId, SymbolId>> declared_precedence_;

  bool finalized_ = false;
  std::vector<bool> constant_;
  std::vector<SymbolKind> kind_;
  Precedence precedence_;
  std::vector<std::size_t> fo_rules_, ho_rules_, fo_eqs_, ho_eqs_;
};

// ---------------------------------------------------------------------------
// Classification. These compute from the raw declarations and do not need
// a finalized signature.

// True iff t is * or a product ending in *.
bool is_kind(const Term& t);

// Codomain of the symbol type after `arity` products (may contain dangling
// indices referring to the arguments) and the argument types in order (each
// under the binders of the previous ones).
Term output_type(const SymbolDecl& decl);
std::vector<Term> argument_types(const SymbolDecl& decl);

// Per symbol: true when no rule or equation side is headed by it.
std::vector<bool> classify_constant_defined(const Signature& sig);

// Throws Error when C is not a constant predicate symbol.
bool is_primitive(SymbolId c, const Signature& sig);

// Honors a declared HigherOrder kind; a declared FirstOrder kind is not
// consulted here (the loader checks it against the computed class).
std::vector<SymbolKind> classify_first_order(const Signature& sig);

// Constant function symbols whose output type is headed by C.
std::vector<SymbolId> constructors_of(SymbolId c, const Signature& sig);

Precedence precedence_infer(const Signature& sig);

// Head symbol of a term's spine, if it is a symbol.
std::optional<SymbolId> head_symbol(const Term& t);

// Variables only, and symbols applied to exactly their arity.
bool is_algebraic(const Term& t, const Signature& sig);

// Algebraic and every symbol first-order.
bool is_first_order_algebraic(const Term& t, const Signature& sig);

// No variable occurs more often in rhs than in lhs.
bool non_duplicating(const Term& lhs, const Term& rhs);

}  // namespace cac
