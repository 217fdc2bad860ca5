#include "cac/signature.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "cac/errors.hpp"

namespace cac {

const char* to_string(Status s) { return s == Status::Mul ? "mul" : "lex"; }

const char* to_string(SymbolKind k) {
  return k == SymbolKind::FirstOrder ? "first-order" : "higher-order";
}

const char* to_string(Direction d) { return d == Direction::LeftToRight ? "l2r" : "r2l"; }

// ---------------------------------------------------------------------------

Precedence::Precedence(const std::vector<std::vector<SymbolId>>& edges) {
  const std::size_t n = edges.size();
  // Tarjan's SCC.
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  component_.assign(n, 0);
  std::size_t n_comp = 0;
  int counter = 0;

  std::function<void(std::size_t)> strong = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (SymbolId w : edges[v]) {
      if (index[w.value] < 0) {
        strong(w.value);
        low[v] = std::min(low[v], low[w.value]);
      } else if (on_stack[w.value]) {
        low[v] = std::min(low[v], index[w.value]);
      }
    }
    if (low[v] == index[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        component_[w] = n_comp;
      } while (w != v);
      ++n_comp;
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] < 0) strong(v);

  reach_.assign(n_comp, std::vector<bool>(n_comp, false));
  for (std::size_t c = 0; c < n_comp; ++c) reach_[c][c] = true;
  for (std::size_t v = 0; v < n; ++v)
    for (SymbolId w : edges[v]) reach_[component_[v]][component_[w.value]] = true;
  // Transitive closure.
  for (std::size_t k = 0; k < n_comp; ++k)
    for (std::size_t i = 0; i < n_comp; ++i)
      if (reach_[i][k])
        for (std::size_t j = 0; j < n_comp; ++j)
          if (reach_[k][j]) reach_[i][j] = true;
}

bool Precedence::greater_or_equal(SymbolId f, SymbolId g) const {
  return reach_[component_.at(f.value)][component_.at(g.value)];
}

bool Precedence::equivalent(SymbolId f, SymbolId g) const {
  return component_.at(f.value) == component_.at(g.value);
}

bool Precedence::greater(SymbolId f, SymbolId g) const {
  return greater_or_equal(f, g) && !greater_or_equal(g, f);
}

// ---------------------------------------------------------------------------

SymbolId Signature::add_symbol(SymbolDecl decl) {
  if (by_name_.contains(decl.name)) throw Error("symbol '" + decl.name + "' declared twice");
  SymbolId id{static_cast<std::uint32_t>(symbols_.size())};
  by_name_.emplace(decl.name, id);
  symbols_.push_back(std::move(decl));
  finalized_ = false;
  return id;
}

std::size_t Signature::add_rule(RewriteRule rule) {
  if (rule.label.empty()) rule.label = "R" + std::to_string(rules_.size() + 1);
  rules_.push_back(std::move(rule));
  finalized_ = false;
  return rules_.size() - 1;
}

std::size_t Signature::add_equation(Equation eq) {
  if (eq.label.empty()) eq.label = "E" + std::to_string(equations_.size() + 1);
  equations_.push_back(std::move(eq));
  finalized_ = false;
  return equations_.size() - 1;
}

void Signature::declare_precedence(SymbolId greater, SymbolId lesser) {
  declared_precedence_.emplace_back(greater, lesser);
  finalized_ = false;
}

void Signature::set_status(SymbolId f, Status s) {
  symbols_.at(f.value).status = s;
  finalized_ = false;
}

std::optional<SymbolId> Signature::find(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

void Signature::finalize() {
  constant_ = classify_constant_defined(*this);
  kind_ = classify_first_order(*this);
  precedence_ = precedence_infer(*this);
  fo_rules_.clear();
  ho_rules_.clear();
  fo_eqs_.clear();
  ho_eqs_.clear();
  for (std::size_t i = 0; i < rules_.size(); ++i)
    (kind_[rules_[i].head.value] == SymbolKind::FirstOrder ? fo_rules_ : ho_rules_).push_back(i);
  for (std::size_t i = 0; i < equations_.size(); ++i) {
    auto h = head_symbol(equations_[i].lhs);
    bool fo = h && kind_[h->value] == SymbolKind::FirstOrder;
    (fo ? fo_eqs_ : ho_eqs_).push_back(i);
  }
  finalized_ = true;
}

void Signature::require_finalized() const {
  if (!finalized_) throw std::logic_error("signature queried before finalize()");
}

bool Signature::is_constant(SymbolId f) const {
  require_finalized();
  return constant_.at(f.value);
}

bool Signature::is_first_order(SymbolId f) const {
  require_finalized();
  return kind_.at(f.value) == SymbolKind::FirstOrder;
}

const Precedence& Signature::precedence() const {
  require_finalized();
  return precedence_;
}

Signature Signature::restricted(const std::function<bool(const RewriteRule&)>& keep_rule,
                                const std::function<bool(const Equation&)>& keep_eq) const {
  Signature out;
  out.symbols_ = symbols_;
  out.by_name_ = by_name_;
  out.declared_precedence_ = declared_precedence_;
  for (const auto& r : rules_)
    if (keep_rule(r)) out.rules_.push_back(r);
  for (const auto& e : equations_)
    if (keep_eq(e)) out.equations_.push_back(e);
  out.finalize();
  return out;
}

// ---------------------------------------------------------------------------

bool is_kind(const Term& t) {
  Term cur = t;
  while (cur.is(TermKind::Prod)) cur = cur.body();
  return cur.is(TermKind::Sort) && cur.sort_value() == Sort::Star;
}

Term output_type(const SymbolDecl& decl) {
  Term cur = decl.type;
  for (std::size_t i = 0; i < decl.arity && cur.is(TermKind::Prod); ++i) cur = cur.body();
  return cur;
}

std::vector<Term> argument_types(const SymbolDecl& decl) {
  std::vector<Term> out;
  Term cur = decl.type;
  for (std::size_t i = 0; i < decl.arity && cur.is(TermKind::Prod); ++i) {
    out.push_back(cur.domain());
    cur = cur.body();
  }
  return out;
}

std::optional<SymbolId> head_symbol(const Term& t) {
  Term cur = t;
  while (cur.is(TermKind::App)) cur = cur.fun();
  if (cur.is(TermKind::Symb)) return cur.symbol();
  return std::nullopt;
}

std::vector<bool> classify_constant_defined(const Signature& sig) {
  std::vector<bool> constant(sig.symbol_count(), true);
  for (const auto& r : sig.rules()) constant[r.head.value] = false;
  for (const auto& e : sig.equations()) {
    if (auto h = head_symbol(e.lhs)) constant[h->value] = false;
    if (auto h = head_symbol(e.rhs)) constant[h->value] = false;
  }
  return constant;
}

namespace {

bool is_constant_raw(SymbolId f, const Signature& sig) {
  return classify_constant_defined(sig)[f.value];
}

}  // namespace

std::vector<SymbolId> constructors_of(SymbolId c, const Signature& sig) {
  auto constant = classify_constant_defined(sig);
  std::vector<SymbolId> out;
  for (std::uint32_t i = 0; i < sig.symbol_count(); ++i) {
    const auto& d = sig.symbols()[i];
    if (d.sort != Sort::Star || !constant[i]) continue;
    auto h = head_symbol(output_type(d));
    if (h && *h == c) out.push_back(SymbolId{i});
  }
  return out;
}

bool is_primitive(SymbolId c, const Signature& sig) {
  const auto& decl = sig.symbol(c);
  if (decl.sort != Sort::Box || !is_constant_raw(c, sig))
    throw Error("'" + decl.name + "' is not a constant predicate symbol");
  for (const Term& t : argument_types(decl))
    if (is_kind(t)) return false;
  for (SymbolId k : constructors_of(c, sig))
    for (const Term& t : argument_types(sig.symbol(k)))
      if (is_kind(t) || t.is(TermKind::Prod)) return false;
  return true;
}

std::vector<SymbolKind> classify_first_order(const Signature& sig) {
  auto constant = classify_constant_defined(sig);
  std::vector<SymbolKind> out(sig.symbol_count(), SymbolKind::HigherOrder);
  std::vector<std::optional<bool>> primitive(sig.symbol_count());
  auto primitive_pred = [&](SymbolId c) {
    auto& slot = primitive[c.value];
    if (!slot) {
      const auto& d = sig.symbol(c);
      slot = d.sort == Sort::Box && constant[c.value] && is_primitive(c, sig);
    }
    return *slot;
  };
  for (std::uint32_t i = 0; i < sig.symbol_count(); ++i) {
    const auto& d = sig.symbols()[i];
    if (d.declared_kind == SymbolKind::HigherOrder) continue;
    Term out_ty = output_type(d);
    bool fo = false;
    if (d.sort == Sort::Box) {
      fo = out_ty.is(TermKind::Sort) && out_ty.sort_value() == Sort::Star;
    } else if (auto h = head_symbol(out_ty)) {
      fo = primitive_pred(*h);
    }
    if (fo) out[i] = SymbolKind::FirstOrder;
  }
  return out;
}

Precedence precedence_infer(const Signature& sig) {
  std::vector<std::vector<SymbolId>> edges(sig.symbol_count());
  auto add_all = [&](SymbolId f, const Term& t) {
    for (SymbolId g : symbols_of(t)) edges[f.value].push_back(g);
  };
  for (std::uint32_t i = 0; i < sig.symbol_count(); ++i)
    add_all(SymbolId{i}, sig.symbols()[i].type);
  for (const auto& r : sig.rules()) {
    for (const auto& a : r.lhs_args) add_all(r.head, a);
    add_all(r.head, r.rhs);
  }
  for (const auto& e : sig.equations()) {
    for (const Term* side : {&e.lhs, &e.rhs}) {
      if (auto h = head_symbol(*side)) {
        add_all(*h, e.lhs);
        add_all(*h, e.rhs);
      }
    }
  }
  for (const auto& [f, g] : sig.declared_precedences()) edges[f.value].push_back(g);
  for (auto& v : edges) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return Precedence(edges);
}

bool is_algebraic(const Term& t, const Signature& sig) {
  if (t.is(TermKind::FVar)) return true;
  auto s = spine(t);
  if (!s.head.is(TermKind::Symb)) return false;
  if (s.args.size() != sig.symbol(s.head.symbol()).arity) return false;
  for (const auto& a : s.args)
    if (!is_algebraic(a, sig)) return false;
  return true;
}

bool is_first_order_algebraic(const Term& t, const Signature& sig) {
  if (t.is(TermKind::FVar)) return true;
  auto s = spine(t);
  if (!s.head.is(TermKind::Symb)) return false;
  SymbolId f = s.head.symbol();
  if (!sig.is_first_order(f) || s.args.size() != sig.symbol(f).arity) return false;
  for (const auto& a : s.args)
    if (!is_first_order_algebraic(a, sig)) return false;
  return true;
}

bool non_duplicating(const Term& lhs, const Term& rhs) {
  auto l = var_counts(lhs);
  for (const auto& [x, n] : var_counts(rhs)) {
    auto it = l.find(x);
    if (it == l.end() || it->second < n) return false;
  }
  return true;
}

}  // namespace cac
