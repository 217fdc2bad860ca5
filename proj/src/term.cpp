#include "cac/term.hpp"

#include <algorithm>
#include <sstream>

#include "cac/errors.hpp"

namespace cac {

struct Term::Node {
  TermKind kind = TermKind::Sort;
  Sort sort = Sort::Star;
  std::uint32_t index = 0;
  SymbolId symbol{};
  std::string text;  // free-variable name or binder hint
  Term a;            // App: function; Abs/Prod: domain
  Term b;            // App: argument; Abs/Prod: body
  std::size_t hash = 0;
  std::size_t size = 1;
  std::size_t depth = 1;
  std::uint32_t lbv = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term::Term() = default;

Term Term::sort(Sort s) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Sort;
  n->sort = s;
  n->hash = mix(1, static_cast<std::size_t>(s));
  return Term(std::move(n));
}

Term Term::bvar(std::uint32_t index) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::BVar;
  n->index = index;
  n->lbv = index + 1;
  n->hash = mix(2, index);
  return Term(std::move(n));
}

Term Term::fvar(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::FVar;
  n->hash = mix(3, std::hash<std::string>{}(name));
  n->text = std::move(name);
  return Term(std::move(n));
}

Term Term::symb(SymbolId id) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Symb;
  n->symbol = id;
  n->hash = mix(4, id.value);
  return Term(std::move(n));
}

namespace {

template <class Node>
void fill_binary(Node& n, std::size_t tag, bool binder) {
  n.hash = mix(mix(tag, n.a.hash()), n.b.hash());
  n.size = 1 + n.a.size() + n.b.size();
  n.depth = 1 + std::max(n.a.depth(), n.b.depth());
  std::uint32_t body_lbv = n.b.loose_bound();
  if (binder) body_lbv = body_lbv > 0 ? body_lbv - 1 : 0;
  n.lbv = std::max(n.a.loose_bound(), body_lbv);
}

}  // namespace

Term Term::abs(std::string hint, Term domain, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Abs;
  n->text = std::move(hint);
  n->a = std::move(domain);
  n->b = std::move(body);
  fill_binary(*n, 5, true);
  return Term(std::move(n));
}

Term Term::prod(std::string hint, Term domain, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Prod;
  n->text = std::move(hint);
  n->a = std::move(domain);
  n->b = std::move(body);
  fill_binary(*n, 6, true);
  return Term(std::move(n));
}

Term Term::app(Term fun, Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::App;
  n->a = std::move(fun);
  n->b = std::move(arg);
  fill_binary(*n, 7, false);
  return Term(std::move(n));
}

Term Term::apps(Term head, std::span<const Term> args) {
  for (const auto& a : args) head = app(std::move(head), a);
  return head;
}

Term Term::arrow(Term domain, Term codomain) {
  return prod("_", std::move(domain), lift(codomain, 1));
}

TermKind Term::kind() const { return node_->kind; }
Sort Term::sort_value() const { return node_->sort; }
std::uint32_t Term::index() const { return node_->index; }
const std::string& Term::name() const { return node_->text; }
SymbolId Term::symbol() const { return node_->symbol; }
const Term& Term::fun() const { return node_->a; }
const Term& Term::arg() const { return node_->b; }
const Term& Term::domain() const { return node_->a; }
const Term& Term::body() const { return node_->b; }
const std::string& Term::hint() const { return node_->text; }
std::size_t Term::hash() const { return node_ ? node_->hash : 0; }
std::size_t Term::size() const { return node_ ? node_->size : 0; }
std::size_t Term::depth() const { return node_ ? node_->depth : 0; }
std::uint32_t Term::loose_bound() const { return node_ ? node_->lbv : 0; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.node_->hash != b.node_->hash || a.node_->kind != b.node_->kind) return false;
  switch (a.kind()) {
    case TermKind::Sort:
      return a.sort_value() == b.sort_value();
    case TermKind::BVar:
      return a.index() == b.index();
    case TermKind::FVar:
      return a.name() == b.name();
    case TermKind::Symb:
      return a.symbol() == b.symbol();
    case TermKind::Abs:
    case TermKind::Prod:
    case TermKind::App:
      return a.node_->a == b.node_->a && a.node_->b == b.node_->b;
  }
  return false;
}

namespace {

int compare(const Term& a, const Term& b) {
  if (a.same_node(b)) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case TermKind::Sort:
      return a.sort_value() == b.sort_value() ? 0 : (a.sort_value() < b.sort_value() ? -1 : 1);
    case TermKind::BVar:
      return a.index() == b.index() ? 0 : (a.index() < b.index() ? -1 : 1);
    case TermKind::FVar:
      return a.name().compare(b.name());
    case TermKind::Symb:
      return a.symbol() == b.symbol() ? 0 : (a.symbol() < b.symbol() ? -1 : 1);
    case TermKind::App:
      if (int c = compare(a.fun(), b.fun())) return c;
      return compare(a.arg(), b.arg());
    case TermKind::Abs:
    case TermKind::Prod:
      if (int c = compare(a.domain(), b.domain())) return c;
      return compare(a.body(), b.body());
  }
  return 0;
}

}  // namespace

bool term_less(const Term& a, const Term& b) { return compare(a, b) < 0; }

Spine spine(const Term& t) {
  Spine s;
  Term cur = t;
  while (cur.is(TermKind::App)) {
    s.args.push_back(cur.arg());
    cur = cur.fun();
  }
  std::reverse(s.args.begin(), s.args.end());
  s.head = cur;
  return s;
}

// ---------------------------------------------------------------------------

Position Position::child(std::uint8_t step) const {
  auto steps = steps_;
  steps.push_back(step);
  return Position(std::move(steps));
}

Position Position::concat(const Position& suffix) const {
  auto steps = steps_;
  steps.insert(steps.end(), suffix.steps_.begin(), suffix.steps_.end());
  return Position(std::move(steps));
}

bool Position::is_prefix_of(const Position& other) const {
  return steps_.size() <= other.steps_.size() &&
         std::equal(steps_.begin(), steps_.end(), other.steps_.begin());
}

std::string Position::to_string() const {
  if (steps_.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(steps_[i]);
  }
  return out;
}

Position argument_position(std::size_t n_args, std::size_t i) {
  std::vector<std::uint8_t> steps(n_args - i, 1);
  steps.push_back(2);
  return Position(std::move(steps));
}

std::vector<int> spine_path(const Term& t, const Position& p) {
  std::vector<int> out;
  Term cur = t;
  const auto& steps = p.steps();
  std::size_t i = 0;
  while (i < steps.size()) {
    if (cur.is(TermKind::App)) {
      std::size_t n = spine(cur).args.size();
      std::size_t ones = 0;
      while (i < steps.size() && steps[i] == 1 && ones < n) {
        ++ones;
        ++i;
        cur = cur.fun();
      }
      if (ones == n) {
        out.push_back(0);
        continue;
      }
      if (i == steps.size()) {
        // A partial application: the spine with its last `ones` args removed.
        out.push_back(-static_cast<int>(ones));
        break;
      }
      out.push_back(static_cast<int>(n - ones));
      cur = cur.arg();
      ++i;
    } else if (cur.is(TermKind::Abs) || cur.is(TermKind::Prod)) {
      out.push_back(steps[i]);
      cur = steps[i] == 1 ? cur.domain() : cur.body();
      ++i;
    } else {
      throw InvalidPosition("position " + p.to_string() + " is not valid");
    }
  }
  return out;
}

std::string spine_path_string(const Term& t, const Position& p) {
  auto path = spine_path(t, p);
  if (path.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(path[i]);
  }
  return out;
}

bool valid_position(const Term& t, const Position& p) {
  Term cur = t;
  for (auto step : p.steps()) {
    if (step != 1 && step != 2) return false;
    switch (cur.kind()) {
      case TermKind::App:
        cur = step == 1 ? cur.fun() : cur.arg();
        break;
      case TermKind::Abs:
      case TermKind::Prod:
        cur = step == 1 ? cur.domain() : cur.body();
        break;
      default:
        return false;
    }
  }
  return true;
}

Term subterm_at(const Term& t, const Position& p) {
  Term cur = t;
  for (auto step : p.steps()) {
    if (step == 1 && (cur.is(TermKind::App) || cur.is(TermKind::Abs) || cur.is(TermKind::Prod))) {
      cur = cur.is(TermKind::App) ? cur.fun() : cur.domain();
    } else if (step == 2 &&
               (cur.is(TermKind::App) || cur.is(TermKind::Abs) || cur.is(TermKind::Prod))) {
      cur = cur.is(TermKind::App) ? cur.arg() : cur.body();
    } else {
      throw InvalidPosition("position " + p.to_string() + " is not valid in " + debug_string(t));
    }
  }
  return cur;
}

namespace {

Term replace_rec(const Term& t, const std::vector<std::uint8_t>& steps, std::size_t i,
                 const Term& u, const Position& p) {
  if (i == steps.size()) return u;
  auto step = steps[i];
  if (step != 1 && step != 2) throw InvalidPosition("bad step in position " + p.to_string());
  switch (t.kind()) {
    case TermKind::App:
      return step == 1 ? Term::app(replace_rec(t.fun(), steps, i + 1, u, p), t.arg())
                       : Term::app(t.fun(), replace_rec(t.arg(), steps, i + 1, u, p));
    case TermKind::Abs:
      return step == 1 ? Term::abs(t.hint(), replace_rec(t.domain(), steps, i + 1, u, p), t.body())
                       : Term::abs(t.hint(), t.domain(), replace_rec(t.body(), steps, i + 1, u, p));
    case TermKind::Prod:
      return step == 1
                 ? Term::prod(t.hint(), replace_rec(t.domain(), steps, i + 1, u, p), t.body())
                 : Term::prod(t.hint(), t.domain(), replace_rec(t.body(), steps, i + 1, u, p));
    default:
      throw InvalidPosition("position " + p.to_string() + " is not valid");
  }
}

void positions_rec(const Term& t, std::vector<std::uint8_t>& path, std::vector<Position>& out) {
  if (t.is(TermKind::App)) {
    path.push_back(1);
    positions_rec(t.fun(), path, out);
    path.back() = 2;
    positions_rec(t.arg(), path, out);
    path.pop_back();
  } else if (t.is(TermKind::Abs) || t.is(TermKind::Prod)) {
    path.push_back(1);
    positions_rec(t.domain(), path, out);
    path.back() = 2;
    positions_rec(t.body(), path, out);
    path.pop_back();
  }
  out.emplace_back(path);
}

void spine_positions_rec(const Term& t, std::vector<std::uint8_t>& path,
                         std::vector<Position>& out) {
  if (t.is(TermKind::App)) {
    auto s = spine(t);
    const std::size_t n = s.args.size();
    if (!s.head.is(TermKind::Symb) && !s.head.is(TermKind::FVar) && !s.head.is(TermKind::BVar)) {
      path.insert(path.end(), n, 1);
      spine_positions_rec(s.head, path, out);
      path.resize(path.size() - n);
    }
    for (std::size_t i = 1; i <= n; ++i) {
      std::size_t base = path.size();
      path.insert(path.end(), n - i, 1);
      path.push_back(2);
      spine_positions_rec(s.args[i - 1], path, out);
      path.resize(base);
    }
  } else if (t.is(TermKind::Abs) || t.is(TermKind::Prod)) {
    path.push_back(1);
    spine_positions_rec(t.domain(), path, out);
    path.back() = 2;
    spine_positions_rec(t.body(), path, out);
    path.pop_back();
  }
  out.emplace_back(path);
}

}  // namespace

Term replace_at(const Term& t, const Position& p, const Term& u) {
  return replace_rec(t, p.steps(), 0, u, p);
}

std::vector<Position> positions(const Term& t) {
  std::vector<Position> out;
  std::vector<std::uint8_t> path;
  positions_rec(t, path, out);
  return out;
}

std::vector<Position> spine_positions(const Term& t) {
  std::vector<Position> out;
  std::vector<std::uint8_t> path;
  spine_positions_rec(t, path, out);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

template <class F>
void visit_fvars(const Term& t, F&& f) {
  switch (t.kind()) {
    case TermKind::FVar:
      f(t.name());
      break;
    case TermKind::App:
      visit_fvars(t.fun(), f);
      visit_fvars(t.arg(), f);
      break;
    case TermKind::Abs:
    case TermKind::Prod:
      visit_fvars(t.domain(), f);
      visit_fvars(t.body(), f);
      break;
    default:
      break;
  }
}

}  // namespace

NameSet free_vars(const Term& t) {
  NameSet out;
  visit_fvars(t, [&](const std::string& x) { out.insert(x); });
  return out;
}

bool occurs_free(const std::string& x, const Term& t) {
  bool found = false;
  visit_fvars(t, [&](const std::string& y) { found = found || y == x; });
  return found;
}

std::vector<std::string> free_var_occurrences(const Term& t) {
  std::vector<std::string> out;
  visit_fvars(t, [&](const std::string& x) { out.push_back(x); });
  return out;
}

std::map<std::string, std::size_t> var_counts(const Term& t) {
  std::map<std::string, std::size_t> out;
  visit_fvars(t, [&](const std::string& x) { ++out[x]; });
  return out;
}

const Term* Substitution::find(const std::string& x) const {
  auto it = map_.find(x);
  return it == map_.end() ? nullptr : &it->second;
}

NameSet Substitution::domain() const {
  NameSet out;
  for (const auto& [k, v] : map_) out.insert(k);
  return out;
}

namespace {

Term rebuild(const Term& t, Term a, Term b) {
  if (a.same_node(t.kind() == TermKind::App ? t.fun() : t.domain()) &&
      b.same_node(t.kind() == TermKind::App ? t.arg() : t.body()))
    return t;
  switch (t.kind()) {
    case TermKind::App:
      return Term::app(std::move(a), std::move(b));
    case TermKind::Abs:
      return Term::abs(t.hint(), std::move(a), std::move(b));
    case TermKind::Prod:
      return Term::prod(t.hint(), std::move(a), std::move(b));
    default:
      return t;
  }
}

Term subst_rec(const Term& t, const Substitution& theta, std::uint32_t depth) {
  switch (t.kind()) {
    case TermKind::FVar:
      if (const Term* v = theta.find(t.name())) return depth ? lift(*v, depth) : *v;
      return t;
    case TermKind::App:
      return rebuild(t, subst_rec(t.fun(), theta, depth), subst_rec(t.arg(), theta, depth));
    case TermKind::Abs:
    case TermKind::Prod:
      return rebuild(t, subst_rec(t.domain(), theta, depth),
                     subst_rec(t.body(), theta, depth + 1));
    default:
      return t;
  }
}

Term lift_rec(const Term& t, std::uint32_t amount, std::uint32_t cutoff) {
  if (t.loose_bound() <= cutoff) return t;
  switch (t.kind()) {
    case TermKind::BVar:
      return Term::bvar(t.index() + amount);
    case TermKind::App:
      return rebuild(t, lift_rec(t.fun(), amount, cutoff), lift_rec(t.arg(), amount, cutoff));
    case TermKind::Abs:
    case TermKind::Prod:
      return rebuild(t, lift_rec(t.domain(), amount, cutoff),
                     lift_rec(t.body(), amount, cutoff + 1));
    default:
      return t;
  }
}

Term inst_rec(const Term& t, const Term& value, std::uint32_t depth) {
  if (t.loose_bound() <= depth) return t;
  switch (t.kind()) {
    case TermKind::BVar:
      if (t.index() == depth) return depth ? lift(value, depth) : value;
      return Term::bvar(t.index() - 1);  // index > depth here
    case TermKind::App:
      return rebuild(t, inst_rec(t.fun(), value, depth), inst_rec(t.arg(), value, depth));
    case TermKind::Abs:
    case TermKind::Prod:
      return rebuild(t, inst_rec(t.domain(), value, depth), inst_rec(t.body(), value, depth + 1));
    default:
      return t;
  }
}

Term close_rec(const Term& t, const std::string& name, std::uint32_t depth) {
  switch (t.kind()) {
    case TermKind::FVar:
      return t.name() == name ? Term::bvar(depth) : t;
    case TermKind::BVar:
      return t.index() >= depth ? Term::bvar(t.index() + 1) : t;
    case TermKind::App:
      return rebuild(t, close_rec(t.fun(), name, depth), close_rec(t.arg(), name, depth));
    case TermKind::Abs:
    case TermKind::Prod:
      return rebuild(t, close_rec(t.domain(), name, depth), close_rec(t.body(), name, depth + 1));
    default:
      return t;
  }
}

}  // namespace

Term apply_subst(const Term& t, const Substitution& theta) {
  if (theta.empty()) return t;
  return subst_rec(t, theta, 0);
}

Term lift(const Term& t, std::uint32_t amount, std::uint32_t cutoff) {
  if (amount == 0) return t;
  return lift_rec(t, amount, cutoff);
}

Term instantiate(const Term& body, const Term& value) { return inst_rec(body, value, 0); }

Term open(const Term& body, const std::string& name) {
  return inst_rec(body, Term::fvar(name), 0);
}

Term close(const Term& t, const std::string& name) { return close_rec(t, name, 0); }

std::string fresh_name(const std::string& hint, const NameSet& avoid) {
  std::string name = hint.empty() || hint == "_" ? "x" : hint;
  while (avoid.contains(name)) name += '\'';
  return name;
}

std::set<SymbolId> symbols_of(const Term& t) {
  std::set<SymbolId> out;
  std::vector<Term> stack{t};
  while (!stack.empty()) {
    Term cur = stack.back();
    stack.pop_back();
    switch (cur.kind()) {
      case TermKind::Symb:
        out.insert(cur.symbol());
        break;
      case TermKind::App:
        stack.push_back(cur.fun());
        stack.push_back(cur.arg());
        break;
      case TermKind::Abs:
      case TermKind::Prod:
        stack.push_back(cur.domain());
        stack.push_back(cur.body());
        break;
      default:
        break;
    }
  }
  return out;
}

namespace {

bool uses_bvar(const Term& t, std::uint32_t depth) {
  if (t.loose_bound() <= depth) return false;
  switch (t.kind()) {
    case TermKind::BVar:
      return t.index() == depth;
    case TermKind::App:
      return uses_bvar(t.fun(), depth) || uses_bvar(t.arg(), depth);
    case TermKind::Abs:
    case TermKind::Prod:
      return uses_bvar(t.domain(), depth) || uses_bvar(t.body(), depth + 1);
    default:
      return false;
  }
}

}  // namespace

bool is_arrow(const Term& t) { return t.is(TermKind::Prod) && !uses_bvar(t.body(), 0); }

bool linear(const Term& t) {
  for (const auto& [x, n] : var_counts(t))
    if (n > 1) return false;
  return true;
}

namespace {

void debug_rec(const Term& t, std::ostringstream& os) {
  switch (t.kind()) {
    case TermKind::Sort:
      os << (t.sort_value() == Sort::Star ? "*" : "box");
      break;
    case TermKind::BVar:
      os << '^' << t.index();
      break;
    case TermKind::FVar:
      os << t.name();
      break;
    case TermKind::Symb:
      os << '#' << t.symbol().value;
      break;
    case TermKind::App:
      os << '(';
      debug_rec(t.fun(), os);
      os << ' ';
      debug_rec(t.arg(), os);
      os << ')';
      break;
    case TermKind::Abs:
    case TermKind::Prod:
      os << (t.is(TermKind::Abs) ? '[' : '(') << t.hint() << ':';
      debug_rec(t.domain(), os);
      os << (t.is(TermKind::Abs) ? "] " : ") ");
      debug_rec(t.body(), os);
      break;
  }
}

}  // namespace

std::string debug_string(const Term& t) {
  std::ostringstream os;
  debug_rec(t, os);
  return os.str();
}

}  // namespace cac
