#pragma once

// Terms of the calculus.
//
// Binders are locally nameless: bound occurrences are de Bruijn indices
// (BVar), free occurrences are named (FVar). Abstractions and products keep
// the user's binder name only as a printing hint, so alpha-equivalent terms
// are structurally equal and hash identically.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace cac {

enum class Sort : std::uint8_t { Star, Box };

struct SymbolId {
  std::uint32_t value = 0;
  auto operator<=>(const SymbolId&) const = default;
};

enum class TermKind : std::uint8_t { Sort, BVar, FVar, Symb, Abs, App, Prod };

class Term {
 public:
  static Term sort(Sort s);
  static Term star() { return sort(Sort::Star); }
  static Term box() { return sort(Sort::Box); }
  static Term bvar(std::uint32_t index);
  static Term fvar(std::string name);
  static Term symb(SymbolId id);
  // `body` refers to the bound variable as BVar 0.
  static Term abs(std::string hint, Term domain, Term body);
  static Term prod(std::string hint, Term domain, Term body);
  static Term app(Term fun, Term arg);
  static Term apps(Term head, std::span<const Term> args);
  // Non-dependent product `domain => codomain`.
  static Term arrow(Term domain, Term codomain);

  // Default-constructed terms are the sort `*`.
  Term();

  TermKind kind() const;
  bool is(TermKind k) const { return kind() == k; }

  Sort sort_value() const;
  std::uint32_t index() const;
  const std::string& name() const;
  SymbolId symbol() const;
  const Term& fun() const;
  const Term& arg() const;
  const Term& domain() const;
  const Term& body() const;
  const std::string& hint() const;

  std::size_t hash() const;
  // Number of nodes.
  std::size_t size() const;
  std::size_t depth() const;
  // One more than the largest dangling de Bruijn index; 0 when locally closed.
  std::uint32_t loose_bound() const;
  bool locally_closed() const { return loose_bound() == 0; }

  bool same_node(const Term& other) const { return node_ == other.node_; }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Total order used for deterministic output (sets, canonical class members).
bool term_less(const Term& a, const Term& b);

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

struct TermLess {
  bool operator()(const Term& a, const Term& b) const { return term_less(a, b); }
};

// ---------------------------------------------------------------------------
// Spine view: f t1 ... tn.

struct Spine {
  Term head;
  std::vector<Term> args;
};

Spine spine(const Term& t);

// ---------------------------------------------------------------------------
// Positions. A step 1 selects the function of an application or the domain of
// a binder, a step 2 the argument or the body.

class Position {
 public:
  Position() = default;
  Position(std::initializer_list<std::uint8_t> steps) : steps_(steps) {}
  explicit Position(std::vector<std::uint8_t> steps) : steps_(std::move(steps)) {}

  const std::vector<std::uint8_t>& steps() const { return steps_; }
  bool is_root() const { return steps_.empty(); }
  std::size_t length() const { return steps_.size(); }

  Position child(std::uint8_t step) const;
  Position concat(const Position& suffix) const;
  bool is_prefix_of(const Position& other) const;

  // Dotted form of the internal binary path, "root" when empty.
  std::string to_string() const;

  auto operator<=>(const Position&) const = default;

 private:
  std::vector<std::uint8_t> steps_;
};

// Position of the i-th argument (1-based) of an application spine with n
// arguments, relative to the spine root.
Position argument_position(std::size_t n_args, std::size_t i);

// Re-expresses a binary position in spine-relative form: through application
// spines, k means the k-th argument and 0 the head; through binders, 1 is the
// domain and 2 the body. Used for report output.
std::vector<int> spine_path(const Term& t, const Position& p);
std::string spine_path_string(const Term& t, const Position& p);

bool valid_position(const Term& t, const Position& p);
// Throws InvalidPosition.
Term subterm_at(const Term& t, const Position& p);
Term replace_at(const Term& t, const Position& p, const Term& u);

// Every position of t in post-order (children before parents, function
// before argument). The root comes last.
std::vector<Position> positions(const Term& t);

// Positions of t that hold a complete application spine or an atom that is
// not itself the function part of an application. These are the positions
// of the algebraic reading of a term.
std::vector<Position> spine_positions(const Term& t);

// ---------------------------------------------------------------------------
// Variables and substitutions.

using NameSet = std::set<std::string>;

NameSet free_vars(const Term& t);
bool occurs_free(const std::string& x, const Term& t);
// Free variables with multiplicity, in left-to-right order of occurrence.
std::vector<std::string> free_var_occurrences(const Term& t);
std::map<std::string, std::size_t> var_counts(const Term& t);

class Substitution {
 public:
  Substitution() = default;
  Substitution(std::initializer_list<std::pair<const std::string, Term>> init) : map_(init) {}

  void bind(const std::string& x, Term t) { map_.insert_or_assign(x, std::move(t)); }
  const Term* find(const std::string& x) const;
  bool contains(const std::string& x) const { return map_.contains(x); }
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  NameSet domain() const;
  const std::map<std::string, Term>& entries() const { return map_; }

  bool operator==(const Substitution&) const = default;

 private:
  std::map<std::string, Term> map_;
};

// Capture-avoiding simultaneous substitution. Values may contain dangling
// de Bruijn indices; they are shifted when pushed under binders.
Term apply_subst(const Term& t, const Substitution& theta);

// Shifts every dangling index >= cutoff by `amount`.
Term lift(const Term& t, std::uint32_t amount, std::uint32_t cutoff = 0);
// Replaces BVar 0 of a binder body by `value`, lowering the other dangling
// indices. This is the contractum of a beta-redex.
Term instantiate(const Term& body, const Term& value);
// Opens a binder body with a free variable.
Term open(const Term& body, const std::string& name);
// Turns free occurrences of `name` into the variable bound by a new binder.
Term close(const Term& t, const std::string& name);

// A name based on `hint` that is not in `avoid` (appends primes).
std::string fresh_name(const std::string& hint, const NameSet& avoid);

// Symbols occurring in t.
std::set<SymbolId> symbols_of(const Term& t);

// Non-dependent product test: the body does not use its bound variable.
bool is_arrow(const Term& t);

// Every free variable occurs exactly once.
bool linear(const Term& t);

// Debug rendering without symbol names (symbols print as #id).
std::string debug_string(const Term& t);

}  // namespace cac

template <>
struct std::hash<cac::Term> {
  std::size_t operator()(const cac::Term& t) const { return t.hash(); }
};
