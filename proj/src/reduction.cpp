#include "cac/reduction.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_set>

#include "cac/errors.hpp"
#include "cac/print.hpp"

namespace cac {

void ReductionTrace::append(const ReductionTrace& other) {
  steps.insert(steps.end(), other.steps.begin(), other.steps.end());
}

ReductionTrace ReductionTrace::shifted(const Position& prefix) const {
  ReductionTrace out;
  out.steps.reserve(steps.size());
  for (const auto& s : steps) {
    Step copy = s;
    copy.position = prefix.concat(s.position);
    out.steps.push_back(std::move(copy));
  }
  return out;
}

namespace {

bool match_rec(const Term& p, const Term& s, Substitution& sigma) {
  switch (p.kind()) {
    case TermKind::FVar:
      if (const Term* bound = sigma.find(p.name())) return *bound == s;
      sigma.bind(p.name(), s);
      return true;
    case TermKind::App:
      return s.is(TermKind::App) && match_rec(p.fun(), s.fun(), sigma) &&
             match_rec(p.arg(), s.arg(), sigma);
    case TermKind::Abs:
    case TermKind::Prod:
      // Only locally closed patterns reach here; bodies are compared as is.
      return s.kind() == p.kind() && match_rec(p.domain(), s.domain(), sigma) &&
             match_rec(p.body(), s.body(), sigma);
    default:
      return p == s;
  }
}

struct Orientation {
  std::size_t eq;
  Direction dir;
};

// Orientations usable as rewrite steps: the target's variables must all be
// bound by matching the source.
std::vector<Orientation> usable_orientations(const Signature& sig) {
  std::vector<Orientation> out;
  const auto& eqs = sig.equations();
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    for (Direction d : {Direction::LeftToRight, Direction::RightToLeft}) {
      auto src = free_vars(eqs[i].source(d));
      bool ok = true;
      for (const auto& x : free_vars(eqs[i].target(d))) ok = ok && src.contains(x);
      if (ok) out.push_back({i, d});
    }
  }
  return out;
}

std::vector<std::pair<Term, Step>> e_steps_with(const Term& t, const Signature& sig,
                                                 const std::vector<Orientation>& dirs) {
  std::vector<std::pair<Term, Step>> out;
  if (dirs.empty()) return out;
  for (const Position& p : spine_positions(t)) {
    Term sub = subterm_at(t, p);
    for (const auto& o : dirs) {
      const Equation& e = sig.equations()[o.eq];
      auto sigma = match(e.source(o.dir), sub);
      if (!sigma) continue;
      Term result = replace_at(t, p, apply_subst(e.target(o.dir), *sigma));
      out.emplace_back(std::move(result), Step{Step::Kind::Eq, o.eq, e.label, o.dir, p, *sigma});
    }
  }
  return out;
}

// Whether some equation could possibly apply inside t.
class EquationFilter {
 public:
  explicit EquationFilter(const Signature& sig) {
    for (const auto& e : sig.equations()) {
      for (const Term* side : {&e.lhs, &e.rhs}) {
        if (auto h = head_symbol(*side))
          heads_.insert(*h);
        else
          any_ = true;
      }
    }
    empty_ = sig.equations().empty();
  }

  bool may_apply(const Term& t) const {
    if (empty_) return false;
    if (any_) return true;
    for (SymbolId f : symbols_of(t))
      if (heads_.contains(f)) return true;
    return false;
  }

 private:
  std::set<SymbolId> heads_;
  bool any_ = false;
  bool empty_ = true;
};

}  // namespace

std::optional<Substitution> match(const Term& pattern, const Term& subject) {
  Substitution sigma;
  if (!match_rec(pattern, subject, sigma)) return std::nullopt;
  return sigma;
}

std::vector<std::pair<Term, Step>> beta_steps(const Term& t) {
  std::vector<std::pair<Term, Step>> out;
  for (const Position& p : positions(t)) {
    Term sub = subterm_at(t, p);
    if (sub.is(TermKind::App) && sub.fun().is(TermKind::Abs)) {
      Step s;
      s.kind = Step::Kind::Beta;
      s.label = "beta";
      s.position = p;
      out.emplace_back(replace_at(t, p, instantiate(sub.fun().body(), sub.arg())), std::move(s));
    }
  }
  return out;
}

std::vector<Term> beta_step(const Term& t) {
  std::vector<Term> out;
  for (auto& [u, s] : beta_steps(t))
    if (std::find(out.begin(), out.end(), u) == out.end()) out.push_back(u);
  return out;
}

std::vector<std::pair<Term, Step>> e_steps(const Term& t, const Signature& sig) {
  return e_steps_with(t, sig, usable_orientations(sig));
}

std::vector<std::pair<Term, Step>> rule_steps(const Term& t, const Signature& sig) {
  std::vector<std::pair<Term, Step>> out;
  const auto& rules = sig.rules();
  if (rules.empty()) return out;
  for (const Position& p : spine_positions(t)) {
    Term sub = subterm_at(t, p);
    for (std::size_t i = 0; i < rules.size(); ++i) {
      auto sigma = match(rules[i].lhs(), sub);
      if (!sigma) continue;
      Term result = replace_at(t, p, apply_subst(rules[i].rhs, *sigma));
      out.emplace_back(std::move(result),
                       Step{Step::Kind::Rule, i, rules[i].label, Direction::LeftToRight, p, *sigma});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> EClass::index_of(const Term& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ReductionTrace EClass::path_to(std::size_t i) const {
  ReductionTrace out;
  while (i != 0) {
    out.steps.push_back(via_.at(i));
    i = parent_.at(i);
  }
  std::reverse(out.steps.begin(), out.steps.end());
  return out;
}

const Term& EClass::canonical() const {
  return *std::min_element(members.begin(), members.end(), TermLess{});
}

EClass e_class(const Term& t, const Signature& sig, std::size_t bound) {
  EClass c;
  c.representative = t;
  c.members.push_back(t);
  c.index_.emplace(t, 0);
  c.parent_.push_back(0);
  c.via_.emplace_back();
  auto dirs = usable_orientations(sig);
  for (std::size_t next = 0; next < c.members.size(); ++next) {
    Term cur = c.members[next];
    for (auto& [u, step] : e_steps_with(cur, sig, dirs)) {
      if (c.index_.contains(u)) continue;
      if (c.members.size() >= bound) {
        c.truncated = true;
        return c;
      }
      c.index_.emplace(u, c.members.size());
      c.members.push_back(u);
      c.parent_.push_back(next);
      c.via_.push_back(std::move(step));
    }
  }
  return c;
}

namespace {

EClass checked_class(const Term& t, const Signature& sig, const Limits& limits) {
  EClass c = e_class(t, sig, limits.max_class_size);
  if (c.truncated) throw ClassBoundExceeded(to_string(t, sig), limits.max_class_size);
  return c;
}

}  // namespace

bool equivalent_modulo(const Term& t, const Term& u, const Signature& sig, const Limits& limits) {
  if (t == u) return true;
  return checked_class(t, sig, limits).contains(u);
}

std::vector<Substitution> match_modulo(const Term& pattern, const Term& subject,
                                       const Signature& sig, const Limits& limits) {
  std::vector<Substitution> out;
  EClass c = checked_class(subject, sig, limits);
  for (const Term& m : c.members) {
    auto sigma = match(pattern, m);
    if (sigma && std::find(out.begin(), out.end(), *sigma) == out.end()) out.push_back(*sigma);
  }
  return out;
}

std::vector<Reduct> rel_step(const Term& t, const Signature& sig, const Limits& limits) {
  std::vector<Reduct> out;
  std::unordered_set<Term, TermHash> seen;
  for (auto& [u, step] : beta_steps(t)) {
    if (!seen.insert(u).second) continue;
    out.push_back({u, ReductionTrace{{step}}});
  }
  if (sig.rules().empty()) return out;
  EClass c = checked_class(t, sig, limits);
  for (std::size_t i = 0; i < c.members.size(); ++i) {
    for (auto& [u, step] : rule_steps(c.members[i], sig)) {
      if (!seen.insert(u).second) continue;
      ReductionTrace tr = c.path_to(i);
      tr.steps.push_back(step);
      out.push_back({u, std::move(tr)});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

class Normalizer {
 public:
  Normalizer(const Signature& sig, const Limits& limits,
             std::function<bool(const RewriteRule&)> allow, bool modulo)
      : sig_(sig), limits_(limits), filter_(sig), modulo_(modulo && !sig.equations().empty()) {
    for (std::size_t i = 0; i < sig.rules().size(); ++i)
      if (!allow || allow(sig.rules()[i])) rules_.push_back(i);
  }

  Term run(const Term& t, ReductionTrace* trace) {
    origin_ = &t;
    trace_ = trace;
    return nf(t, Position{});
  }

 private:
  void spend() {
    if (++used_ > limits_.fuel) throw FuelExhausted(to_string(*origin_, sig_), limits_.fuel);
  }

  void record(const Step& s) {
    if (trace_) trace_->steps.push_back(s);
  }

  Term nf(const Term& t, const Position& at) {
    Term cur = t;
    while (true) {
      if (normal_.contains(cur)) return cur;
      switch (cur.kind()) {
        case TermKind::App: {
          Term f = nf(cur.fun(), at.child(1));
          Term a = nf(cur.arg(), at.child(2));
          if (!f.same_node(cur.fun()) || !a.same_node(cur.arg())) cur = Term::app(f, a);
          break;
        }
        case TermKind::Abs:
        case TermKind::Prod: {
          Term d = nf(cur.domain(), at.child(1));
          Term b = nf(cur.body(), at.child(2));
          if (!d.same_node(cur.domain()) || !b.same_node(cur.body()))
            cur = cur.is(TermKind::Abs) ? Term::abs(cur.hint(), d, b) : Term::prod(cur.hint(), d, b);
          break;
        }
        default:
          break;
      }
      if (cur.is(TermKind::App) && cur.fun().is(TermKind::Abs)) {
        spend();
        Step s;
        s.kind = Step::Kind::Beta;
        s.label = "beta";
        s.position = at;
        record(s);
        cur = instantiate(cur.fun().body(), cur.arg());
        continue;
      }
      if (auto next = root_step(cur, at)) {
        spend();
        cur = *next;
        continue;
      }
      normal_.insert(cur);
      return cur;
    }
  }

  std::optional<Term> root_step(const Term& t, const Position& at) {
    for (std::size_t i : rules_) {
      const auto& r = sig_.rules()[i];
      if (auto sigma = match(r.lhs(), t)) {
        record(Step{Step::Kind::Rule, i, r.label, Direction::LeftToRight, at, *sigma});
        return apply_subst(r.rhs, *sigma);
      }
    }
    if (!modulo_ || rules_.empty() || !filter_.may_apply(t)) return std::nullopt;
    EClass c = e_class(t, sig_, limits_.max_class_size);
    if (c.truncated) throw ClassBoundExceeded(to_string(t, sig_), limits_.max_class_size);
    for (std::size_t m = 1; m < c.members.size(); ++m) {
      const Term& member = c.members[m];
      for (const Position& p : spine_positions(member)) {
        Term sub = subterm_at(member, p);
        for (std::size_t i : rules_) {
          const auto& r = sig_.rules()[i];
          auto sigma = match(r.lhs(), sub);
          if (!sigma) continue;
          if (trace_) {
            trace_->append(c.path_to(m).shifted(at));
            record(Step{Step::Kind::Rule, i, r.label, Direction::LeftToRight, at.concat(p), *sigma});
          }
          return replace_at(member, p, apply_subst(r.rhs, *sigma));
        }
      }
    }
    return std::nullopt;
  }

  const Signature& sig_;
  const Limits& limits_;
  EquationFilter filter_;
  bool modulo_;
  std::vector<std::size_t> rules_;
  std::unordered_set<Term, TermHash> normal_;
  std::size_t used_ = 0;
  const Term* origin_ = nullptr;
  ReductionTrace* trace_ = nullptr;
};

}  // namespace

Term normalize(const Term& t, const Signature& sig, const Limits& limits, ReductionTrace* trace) {
  Normalizer n(sig, limits, nullptr, true);
  return n.run(t, trace);
}

Joinability join(const Term& t, const Term& u, const Signature& sig, const Limits& limits) {
  Joinability j;
  j.left_nf = normalize(t, sig, limits);
  j.right_nf = normalize(u, sig, limits);
  j.joinable = equivalent_modulo(j.left_nf, j.right_nf, sig, limits);
  return j;
}

bool joinable_modulo(const Term& t, const Term& u, const Signature& sig, const Limits& limits) {
  if (t == u) return true;
  return join(t, u, sig, limits).joinable;
}

Term restricted_normalize(const Term& t, SymbolId f, const Signature& sig, const Limits& limits) {
  const Precedence& prec = sig.precedence();
  Normalizer n(
      sig, limits, [&](const RewriteRule& r) { return prec.less(r.head, f); }, false);
  return n.run(t, nullptr);
}

// ---------------------------------------------------------------------------

namespace {

class CapBuilder {
 public:
  CapBuilder(const Signature& sig, const Limits& limits, const Term& t)
      : sig_(sig), limits_(limits), avoid_(free_vars(t)) {}

  Term go(const Term& t, const Position& at) {
    if (t.is(TermKind::FVar)) return t;
    auto s = spine(t);
    if (s.head.is(TermKind::Symb)) {
      SymbolId f = s.head.symbol();
      if (sig_.is_first_order(f) && s.args.size() == sig_.symbol(f).arity) {
        std::vector<Term> args;
        const std::size_t n = s.args.size();
        for (std::size_t i = 1; i <= n; ++i)
          args.push_back(go(s.args[i - 1], at.concat(argument_position(n, i))));
        return Term::apps(s.head, args);
      }
    }
    return alien(t, at);
  }

  CapAliens result;

 private:
  Term alien(const Term& t, const Position& at) {
    std::string var;
    for (std::size_t j = 0; j < result.aliens.size() && var.empty(); ++j) {
      try {
        if (joinable_modulo(result.aliens[j].second, t, sig_, limits_)) var = result.alien_vars[j];
      } catch (const FuelExhausted&) {
        result.approximate = true;
      } catch (const ClassBoundExceeded&) {
        result.approximate = true;
      }
    }
    if (var.empty()) {
      do {
        var = "x" + std::to_string(++counter_);
      } while (avoid_.contains(var));
    }
    result.aliens.emplace_back(at, t);
    result.alien_vars.push_back(var);
    return Term::fvar(var);
  }

  const Signature& sig_;
  const Limits& limits_;
  NameSet avoid_;
  std::size_t counter_ = 0;
};

}  // namespace

CapAliens cap_aliens(const Term& t, const Signature& sig, const Limits& limits) {
  CapBuilder b(sig, limits, t);
  b.result.cap = b.go(t, Position{});
  return std::move(b.result);
}

// ---------------------------------------------------------------------------

Term replay(const Term& t, const ReductionTrace& trace, const Signature& sig) {
  Term cur = t;
  for (const auto& s : trace.steps) {
    Term sub = subterm_at(cur, s.position);
    switch (s.kind) {
      case Step::Kind::Beta:
        if (!sub.is(TermKind::App) || !sub.fun().is(TermKind::Abs))
          throw Error("no beta-redex at " + s.position.to_string());
        cur = replace_at(cur, s.position, instantiate(sub.fun().body(), sub.arg()));
        break;
      case Step::Kind::Rule: {
        const auto& r = sig.rules().at(s.id);
        auto sigma = match(r.lhs(), sub);
        if (!sigma) throw Error("rule " + r.label + " does not apply at " + s.position.to_string());
        cur = replace_at(cur, s.position, apply_subst(r.rhs, *sigma));
        break;
      }
      case Step::Kind::Eq: {
        const auto& e = sig.equations().at(s.id);
        auto sigma = match(e.source(s.direction), sub);
        if (!sigma)
          throw Error("equation " + e.label + " does not apply at " + s.position.to_string());
        cur = replace_at(cur, s.position, apply_subst(e.target(s.direction), *sigma));
        break;
      }
    }
  }
  return cur;
}

}  // namespace cac
