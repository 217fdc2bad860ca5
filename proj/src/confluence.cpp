#include "cac/confluence.hpp"

#include "cac/errors.hpp"
#include "cac/print.hpp"

namespace cac {

namespace {

Term walk(const Term& t, const Substitution& sigma) {
  Term cur = t;
  while (cur.is(TermKind::FVar)) {
    const Term* v = sigma.find(cur.name());
    if (!v) break;
    cur = *v;
  }
  return cur;
}

bool occurs(const std::string& x, const Term& t, const Substitution& sigma) {
  Term u = walk(t, sigma);
  if (u.is(TermKind::FVar)) return u.name() == x;
  if (u.is(TermKind::App)) return occurs(x, u.fun(), sigma) || occurs(x, u.arg(), sigma);
  return occurs_free(x, u);
}

bool unify_rec(const Term& s0, const Term& t0, Substitution& sigma) {
  Term s = walk(s0, sigma);
  Term t = walk(t0, sigma);
  if (s == t) return true;
  if (t.is(TermKind::FVar)) {
    if (occurs(t.name(), s, sigma)) return false;
    sigma.bind(t.name(), s);
    return true;
  }
  if (s.is(TermKind::FVar)) {
    if (occurs(s.name(), t, sigma)) return false;
    sigma.bind(s.name(), t);
    return true;
  }
  if (s.is(TermKind::App) && t.is(TermKind::App))
    return unify_rec(s.fun(), t.fun(), sigma) && unify_rec(s.arg(), t.arg(), sigma);
  return false;
}

// Fully resolves a triangular substitution.
Substitution resolve(const Substitution& sigma) {
  Substitution out;
  for (const auto& [x, v] : sigma.entries()) {
    Term cur = v;
    for (std::size_t i = 0; i <= sigma.size(); ++i) {
      Term next = apply_subst(cur, sigma);
      if (next == cur) break;
      cur = next;
    }
    out.bind(x, cur);
  }
  return out;
}

Substitution rename_apart(const NameSet& vars, const NameSet& avoid) {
  Substitution out;
  NameSet taken = avoid;
  for (const auto& x : vars) {
    if (!taken.contains(x)) {
      taken.insert(x);
      continue;
    }
    std::string y = fresh_name(x, taken);
    taken.insert(y);
    out.bind(x, Term::fvar(y));
  }
  return out;
}

NameSet vars_of(const Term& a, const Term& b) {
  NameSet out = free_vars(a);
  for (const auto& x : free_vars(b)) out.insert(x);
  return out;
}

struct Side {
  Term source;
  Term target;
  std::size_t id;
  std::string label;
  Direction direction;
  bool is_rule;
};

std::vector<Side> rule_sides(const Signature& sig) {
  std::vector<Side> out;
  for (std::size_t i = 0; i < sig.rules().size(); ++i) {
    const auto& r = sig.rules()[i];
    out.push_back({r.lhs(), r.rhs, i, r.label, Direction::LeftToRight, true});
  }
  return out;
}

std::vector<Side> equation_sides(const Signature& sig) {
  std::vector<Side> out;
  for (std::size_t i = 0; i < sig.equations().size(); ++i) {
    const auto& e = sig.equations()[i];
    for (Direction d : {Direction::LeftToRight, Direction::RightToLeft}) {
      const Term& src = e.source(d);
      if (src.is(TermKind::FVar)) continue;
      auto sv = free_vars(src);
      bool usable = true;
      for (const auto& x : free_vars(e.target(d))) usable = usable && sv.contains(x);
      if (usable) out.push_back({src, e.target(d), i, e.label, d, false});
    }
  }
  return out;
}

void overlaps(const Side& outer, const Side& inner_raw, CriticalPair::Kind kind,
              std::vector<CriticalPair>& out) {
  Substitution renaming =
      rename_apart(vars_of(inner_raw.source, inner_raw.target), vars_of(outer.source, outer.target));
  Term inner_src = apply_subst(inner_raw.source, renaming);
  Term inner_dst = apply_subst(inner_raw.target, renaming);
  bool same = kind == CriticalPair::Kind::RR && outer.id == inner_raw.id;
  for (const Position& p : spine_positions(outer.source)) {
    Term sub = subterm_at(outer.source, p);
    if (sub.is(TermKind::FVar)) continue;
    if (same && p.is_root()) continue;
    auto mgu = unify_algebraic(sub, inner_src);
    if (!mgu) continue;
    CriticalPair cp;
    cp.kind = kind;
    cp.outer_id = outer.id;
    cp.inner_id = inner_raw.id;
    cp.outer_label = outer.label;
    cp.inner_label = inner_raw.label;
    cp.outer_direction = outer.direction;
    cp.inner_direction = inner_raw.direction;
    cp.position = p;
    cp.mgu = *mgu;
    cp.peak = apply_subst(outer.source, *mgu);
    Term outer_reduct = apply_subst(outer.target, *mgu);
    Term inner_reduct = replace_at(cp.peak, p, apply_subst(inner_dst, *mgu));
    if (kind == CriticalPair::Kind::RE) {
      cp.left = inner_reduct;
      cp.right = outer_reduct;
    } else {
      cp.left = outer_reduct;
      cp.right = inner_reduct;
    }
    out.push_back(std::move(cp));
  }
}

}  // namespace

std::optional<Substitution> unify_algebraic(const Term& s, const Term& t) {
  Substitution sigma;
  if (!unify_rec(s, t, sigma)) return std::nullopt;
  return resolve(sigma);
}

const char* to_string(CriticalPair::Kind k) {
  switch (k) {
    case CriticalPair::Kind::RR:
      return "RR";
    case CriticalPair::Kind::RE:
      return "RE";
    case CriticalPair::Kind::ER:
      return "ER";
  }
  return "?";
}

const char* to_string(ConfluenceOutcome o) {
  switch (o) {
    case ConfluenceOutcome::Confluent:
      return "confluent";
    case ConfluenceOutcome::NotConfluent:
      return "not-confluent";
    case ConfluenceOutcome::Unknown:
      return "unknown";
  }
  return "?";
}

std::vector<CriticalPair> critical_pairs(const Signature& sig) {
  std::vector<CriticalPair> out;
  auto rules = rule_sides(sig);
  auto eqs = equation_sides(sig);
  for (const auto& outer : rules)
    for (const auto& inner : rules) overlaps(outer, inner, CriticalPair::Kind::RR, out);
  for (const auto& outer : eqs)
    for (const auto& inner : rules) overlaps(outer, inner, CriticalPair::Kind::RE, out);
  for (const auto& outer : rules)
    for (const auto& inner : eqs) overlaps(outer, inner, CriticalPair::Kind::ER, out);
  return out;
}

PairJoin cp_joinable(const CriticalPair& cp, const Signature& sig, const Limits& limits) {
  PairJoin j;
  try {
    Joinability r = join(cp.left, cp.right, sig, limits);
    j.joinable = r.joinable;
    j.left_nf = r.left_nf;
    j.right_nf = r.right_nf;
  } catch (const FuelExhausted& e) {
    j.error = true;
    j.message = e.what();
  } catch (const ClassBoundExceeded& e) {
    j.error = true;
    j.message = e.what();
  }
  return j;
}

ConfluenceReport confluence_verdict(const Signature& sig, bool sn_passed, bool algebraic_sn,
                                    const Limits& limits) {
  ConfluenceReport rep;
  rep.pairs = critical_pairs(sig);
  bool all_joinable = true;
  bool refuted = false;
  for (const auto& cp : rep.pairs) {
    rep.joins.push_back(cp_joinable(cp, sig, limits));
    const auto& j = rep.joins.back();
    if (!j.joinable) all_joinable = false;
    if (!j.joinable && !j.error) refuted = true;
  }
  rep.e_linear = true;
  for (const auto& e : sig.equations())
    rep.e_linear = rep.e_linear && linear(e.lhs) && linear(e.rhs);
  rep.left_linear = true;
  for (const auto& r : sig.rules()) rep.left_linear = rep.left_linear && linear(r.lhs());

  rep.notes.push_back(
      "critical pairs between the algebraic rules and beta-reduction are trivial: left-hand "
      "sides are algebraic");
  auto positive = [&](std::string theorem) {
    rep.outcome = ConfluenceOutcome::Confluent;
    rep.verdict = "~-confluent on ~-classes";
    rep.theorem_used = std::move(theorem);
    rep.notes.push_back(
        "-> is confluent: confluence of ->, ~-confluence and ~-confluence on ~-classes are "
        "equivalent");
  };

  if (refuted) {
    rep.outcome = ConfluenceOutcome::NotConfluent;
    rep.verdict = "not ~-confluent";
    rep.theorem_used = "none";
    rep.blocking_conditions.push_back("a critical pair has distinct normal forms");
    return rep;
  }
  if (sn_passed && rep.e_linear && rep.left_linear && all_joinable) {
    positive(
        "strong normalization, linear E, local ~-confluence, and local ~-coherence from "
        "left-linearity with joinable rule/equation critical pairs");
    return rep;
  }
  if (algebraic_sn && rep.e_linear && rep.left_linear && all_joinable) {
    positive(
        "left-linear combination of beta with rewriting modulo that is ~-confluent on "
        "~-classes");
    return rep;
  }
  rep.outcome = ConfluenceOutcome::Unknown;
  rep.verdict = "unknown";
  rep.theorem_used = "none";
  if (!sn_passed && !algebraic_sn) rep.blocking_conditions.push_back("strong normalization not established");
  if (!rep.e_linear) rep.blocking_conditions.push_back("E is not linear");
  if (!rep.left_linear) rep.blocking_conditions.push_back("R is not left-linear");
  if (!all_joinable)
    rep.blocking_conditions.push_back("joinability of some critical pair could not be decided");
  return rep;
}

}  // namespace cac
