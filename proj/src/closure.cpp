#include "cac/closure.hpp"

#include <algorithm>

#include "cac/errors.hpp"
#include "cac/print.hpp"
#include "cac/typing.hpp"

namespace cac {

const char* to_string(Occurrence o) {
  switch (o) {
    case Occurrence::OnlyPositive:
      return "positive";
    case Occurrence::HasNegative:
      return "negative";
    case Occurrence::Absent:
      return "absent";
  }
  return "?";
}

namespace {

void collect_polarity(SymbolId c, const Term& t, bool positive, bool& pos, bool& neg) {
  switch (t.kind()) {
    case TermKind::Symb:
      if (t.symbol() == c) (positive ? pos : neg) = true;
      return;
    case TermKind::Prod:
      collect_polarity(c, t.domain(), !positive, pos, neg);
      collect_polarity(c, t.body(), positive, pos, neg);
      return;
    case TermKind::Abs:
      collect_polarity(c, t.domain(), positive, pos, neg);
      collect_polarity(c, t.body(), positive, pos, neg);
      return;
    case TermKind::App:
      collect_polarity(c, t.fun(), positive, pos, neg);
      collect_polarity(c, t.arg(), positive, pos, neg);
      return;
    default:
      return;
  }
}

}  // namespace

Occurrence positive_occurrence(SymbolId c, const Term& t, bool positive) {
  bool pos = false, neg = false;
  collect_polarity(c, t, positive, pos, neg);
  if (neg) return Occurrence::HasNegative;
  return pos ? Occurrence::OnlyPositive : Occurrence::Absent;
}

namespace {

void accessible_in(const Term& t, const Signature& sig, const Substitution& rho, NameSet& out) {
  if (t.is(TermKind::FVar)) {
    if (!rho.contains(t.name())) out.insert(t.name());
    return;
  }
  auto s = spine(t);
  if (!s.head.is(TermKind::Symb)) return;
  SymbolId g = s.head.symbol();
  const SymbolDecl& decl = sig.symbol(g);
  if (sig.is_constant(g) && !sig.is_predicate(g)) {
    for (const Term& a : s.args) accessible_in(a, sig, rho, out);
    return;
  }
  auto c = head_symbol(output_type(decl));
  if (!c || !sig.is_constant(*c)) return;
  auto types = argument_types(decl);
  for (std::size_t i = 0; i < s.args.size() && i < types.size(); ++i)
    if (positive_occurrence(*c, types[i]) != Occurrence::HasNegative)
      accessible_in(s.args[i], sig, rho, out);
}

}  // namespace

NameSet accessible_vars(SymbolId, const std::vector<Term>& args, const Signature& sig,
                        const Substitution& rho) {
  NameSet out;
  for (const Term& a : args) accessible_in(a, sig, rho, out);
  return out;
}

bool strict_subterm(const Term& big, const Term& small) {
  if (small.size() >= big.size()) return false;
  for (const Position& p : spine_positions(big))
    if (!p.is_root() && subterm_at(big, p) == small) return true;
  return false;
}

bool status_less(const std::vector<Term>& u, const std::vector<Term>& l, Status status) {
  if (status == Status::Lex) {
    for (std::size_t i = 0; i < u.size() && i < l.size(); ++i) {
      if (u[i] == l[i]) continue;
      return strict_subterm(l[i], u[i]);
    }
    return false;
  }
  // Multiset extension: drop common elements, then every remaining element of
  // u must lie strictly below some remaining element of l.
  std::vector<Term> left(l), right(u);
  for (auto it = right.begin(); it != right.end();) {
    auto hit = std::find(left.begin(), left.end(), *it);
    if (hit != left.end()) {
      left.erase(hit);
      it = right.erase(it);
    } else {
      ++it;
    }
  }
  if (left.empty()) return false;
  for (const Term& y : right) {
    bool dominated = std::any_of(left.begin(), left.end(),
                                 [&](const Term& x) { return strict_subterm(x, y); });
    if (!dominated) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

namespace {

struct ClosureFailure {
  std::string rule;
  std::string detail;
};

class ClosureChecker {
 public:
  ClosureChecker(const ClosureContext& ctx, const Signature& sig, const Limits& limits)
      : ctx_(ctx), sig_(sig), limits_(limits), prec_(sig.precedence()) {}

  template <typename F>
  auto guarded(TypingEnv& delta, F&& f) {
    try {
      auto r = f();
      delta.pop();
      return r;
    } catch (...) {
      delta.pop();
      throw;
    }
  }

  Term infer(TypingEnv& delta, const Term& t) {
    switch (t.kind()) {
      case TermKind::Sort:
        if (t.sort_value() == Sort::Star) return Term::box();
        fail("ax", "box has no type");
      case TermKind::BVar:
        fail("var", "dangling bound variable");
      case TermKind::FVar:
        if (const Term* ty = delta.lookup(t.name())) return *ty;
        if (const Term* ty = ctx_.env.lookup(t.name())) return *ty;
        fail("var", "variable " + t.name() + " is neither bound nor declared in the environment");
      case TermKind::Symb: {
        SymbolId g = t.symbol();
        if (prec_.less(g, ctx_.head)) return sig_.symbol(g).type;
        fail("symb<", "symbol " + sig_.name_of(g) + " is not below " + sig_.name_of(ctx_.head) +
                          " and is not applied to its " + std::to_string(sig_.symbol(g).arity) +
                          " arguments");
      }
      case TermKind::Prod: {
        sort_of(delta, t.domain());
        std::string x = open_name(delta, t);
        delta.push(x, t.domain());
        Sort s = guarded(delta, [&] { return sort_of(delta, open(t.body(), x)); });
        return Term::sort(s);
      }
      case TermKind::Abs: {
        sort_of(delta, t.domain());
        std::string x = open_name(delta, t);
        delta.push(x, t.domain());
        Term body_type = guarded(delta, [&] {
          Term bt = infer(delta, open(t.body(), x));
          if (bt == Term::box()) fail("abs", "abstraction body typed by box");
          sort_of(delta, bt);
          return bt;
        });
        return Term::prod(t.hint(), t.domain(), close(body_type, x));
      }
      case TermKind::App:
        return infer_app(delta, t);
    }
    fail("ax", "unknown term");
  }

  void check(TypingEnv& delta, const Term& t, const Term& expected) {
    Term actual = infer(delta, t);
    if (actual == expected) return;
    if (!convertible(actual, expected))
      fail("conv", to_string(t, sig_) + " has type " + to_string(actual, sig_) +
                       ", not convertible to " + to_string(expected, sig_) +
                       " by beta and the rules below " + sig_.name_of(ctx_.head));
    if (expected != Term::box()) sort_of(delta, expected);
  }

  Sort sort_of(TypingEnv& delta, const Term& t) {
    Term ty = infer(delta, t);
    if (!ty.is(TermKind::Sort)) ty = restricted_normalize(ty, ctx_.head, sig_, limits_);
    if (!ty.is(TermKind::Sort)) fail("prod", to_string(t, sig_) + " is not typed by a sort");
    return ty.sort_value();
  }

  [[noreturn]] static void fail(std::string rule, std::string detail) {
    throw ClosureFailure{std::move(rule), std::move(detail)};
  }

 private:
  std::string open_name(const TypingEnv& delta, const Term& binder) const {
    NameSet avoid = delta.names();
    for (const auto& [x, ty] : ctx_.env) avoid.insert(x);
    for (const auto& x : free_vars(binder)) avoid.insert(x);
    return fresh_name(binder.hint(), avoid);
  }

  bool convertible(const Term& a, const Term& b) {
    if (a == b) return true;
    return restricted_normalize(a, ctx_.head, sig_, limits_) ==
           restricted_normalize(b, ctx_.head, sig_, limits_);
  }

  Term as_product(const Term& t) {
    if (t.is(TermKind::Prod)) return t;
    return restricted_normalize(t, ctx_.head, sig_, limits_);
  }

  Term apply_arg(TypingEnv& delta, const Term& whole, const Term& fun_type, const Term& arg) {
    Term prod = as_product(fun_type);
    if (!prod.is(TermKind::Prod))
      fail("app", "in " + to_string(whole, sig_) + ": function type " + to_string(fun_type, sig_) +
                      " is not a product");
    Term arg_type = infer(delta, arg);
    if (!convertible(arg_type, prod.domain()))
      fail("app", "in " + to_string(whole, sig_) + ": argument " + to_string(arg, sig_) +
                      " has type " + to_string(arg_type, sig_) + " but " +
                      to_string(prod.domain(), sig_) + " was expected");
    return instantiate(prod.body(), arg);
  }

  Term infer_app(TypingEnv& delta, const Term& t) {
    auto s = spine(t);
    std::size_t used = 0;
    Term type;
    if (s.head.is(TermKind::Symb) && prec_.equivalent(s.head.symbol(), ctx_.head)) {
      SymbolId g = s.head.symbol();
      const SymbolDecl& decl = sig_.symbol(g);
      if (s.args.size() < decl.arity)
        fail("symb=", sig_.name_of(g) + " is applied to " + std::to_string(s.args.size()) +
                          " arguments, fewer than its arity " + std::to_string(decl.arity));
      std::vector<Term> call(s.args.begin(), s.args.begin() + decl.arity);
      if (!status_less(call, ctx_.lhs_args, sig_.symbol(ctx_.head).status))
        fail("symb=", "arguments of the call " + to_string(Term::apps(s.head, call), sig_) +
                          " are not smaller than the left-hand side arguments under " +
                          to_string(sig_.symbol(ctx_.head).status) + " status");
      Term cur = decl.type;
      for (const Term& a : call) {
        try {
          check(delta, a, cur.domain());
        } catch (ClosureFailure& f) {
          f.detail = "argument " + to_string(a, sig_) + " of " + sig_.name_of(g) + ": " + f.detail;
          throw;
        }
        cur = instantiate(cur.body(), a);
      }
      type = cur;
      used = decl.arity;
    } else {
      type = infer(delta, s.head);
    }
    for (std::size_t i = used; i < s.args.size(); ++i) type = apply_arg(delta, t, type, s.args[i]);
    return type;
  }

  const ClosureContext& ctx_;
  const Signature& sig_;
  const Limits& limits_;
  const Precedence& prec_;
};

bool constructor_with_functional_argument(const Term& t, const Signature& sig) {
  for (const Position& p : spine_positions(t)) {
    auto h = head_symbol(subterm_at(t, p));
    if (!h || !sig.is_constant(*h) || sig.is_predicate(*h)) continue;
    for (const Term& a : argument_types(sig.symbol(*h)))
      if (a.is(TermKind::Prod) && !is_kind(a)) return true;
  }
  return false;
}

// Runs `body` and turns a closure failure into a verdict.
template <typename F>
void run_schema(SchemaVerdict& v, F&& body) {
  try {
    body();
    v.pass = v.inaccessible.empty();
    if (!v.pass) {
      v.failed_rule = "accessibility";
      std::string names;
      for (const auto& x : v.inaccessible) names += (names.empty() ? "" : ", ") + x;
      v.detail = "not accessible in the left-hand side: " + names;
    }
  } catch (const ClosureFailure& f) {
    v.pass = false;
    v.failed_rule = f.rule;
    v.detail = f.detail;
  } catch (const TypeError& e) {
    v.pass = false;
    v.failed_rule = "type";
    v.detail = e.what();
  }
}

void check_env_sorts(ClosureChecker& checker, const TypingEnv& env) {
  TypingEnv none;
  for (const auto& [x, ty] : env) {
    try {
      checker.sort_of(none, ty);
    } catch (ClosureFailure& f) {
      f.detail = "type of " + x + ": " + f.detail;
      throw;
    }
  }
}

}  // namespace

ClosureResult closure_check(const ClosureContext& ctx, const Term& t, const Term& type,
                            const Signature& sig, const Limits& limits) {
  ClosureChecker checker(ctx, sig, limits);
  TypingEnv delta;
  try {
    checker.check(delta, t, type);
  } catch (const ClosureFailure& f) {
    return {false, f.rule, f.detail};
  }
  return {};
}

SchemaVerdict general_schema_rule(const RewriteRule& rule, const Signature& sig,
                                  const Limits& limits) {
  SchemaVerdict v;
  v.label = rule.label;
  ClosureContext ctx{rule.head, {}, rule.env, rule.rho};
  for (const Term& a : rule.lhs_args) ctx.lhs_args.push_back(apply_subst(a, rule.rho));
  NameSet acc = accessible_vars(rule.head, rule.lhs_args, sig, rule.rho);
  for (const auto& [x, ty] : rule.env)
    if (!acc.contains(x)) v.inaccessible.push_back(x);
  ClosureChecker checker(ctx, sig, limits);
  run_schema(v, [&] {
    check_env_sorts(checker, rule.env);
    Term expected = apply_subst(instantiate_type(sig.symbol(rule.head).type, rule.lhs_args), rule.rho);
    TypingEnv delta;
    checker.check(delta, rule.rhs, expected);
  });
  if (!v.pass && v.failed_rule == "symb=")
    v.conservative = constructor_with_functional_argument(rule.lhs(), sig);
  return v;
}

namespace {

SchemaVerdict equation_orientation(const Equation& eq, Direction d, const Signature& sig,
                                   const Limits& limits) {
  SchemaVerdict v;
  v.label = eq.label;
  v.direction = to_string(d);
  auto src = spine(eq.source(d));
  auto dst = spine(eq.target(d));
  if (!src.head.is(TermKind::Symb) || !dst.head.is(TermKind::Symb)) {
    v.failed_rule = "shape";
    v.detail = "both sides must be headed by a symbol";
    return v;
  }
  SymbolId f = src.head.symbol();
  SymbolId g = dst.head.symbol();
  if (dst.args.size() != sig.symbol(g).arity) {
    v.failed_rule = "shape";
    v.detail = "right side is not an application of " + sig.name_of(g) + " to its arity";
    return v;
  }
  ClosureContext ctx{f, {}, eq.env, eq.rho};
  for (const Term& a : src.args) ctx.lhs_args.push_back(apply_subst(a, eq.rho));
  ClosureChecker checker(ctx, sig, limits);
  run_schema(v, [&] {
    check_env_sorts(checker, eq.env);
    Term cur = sig.symbol(g).type;
    for (const Term& m : dst.args) {
      Term expected = apply_subst(cur.domain(), eq.rho);
      TypingEnv delta;
      try {
        checker.check(delta, apply_subst(m, eq.rho), expected);
      } catch (ClosureFailure& fl) {
        fl.detail = "argument " + to_string(m, sig) + ": " + fl.detail;
        throw;
      }
      cur = instantiate(cur.body(), m);
    }
  });
  if (!v.pass && v.failed_rule == "symb=")
    v.conservative = constructor_with_functional_argument(eq.source(d), sig);
  return v;
}

}  // namespace

EquationSchema general_schema_equation(const Equation& eq, const Signature& sig,
                                       const Limits& limits) {
  return {eq.label, equation_orientation(eq, Direction::LeftToRight, sig, limits),
          equation_orientation(eq, Direction::RightToLeft, sig, limits)};
}

const std::vector<std::string>& closure_interpretation_notes() {
  static const std::vector<std::string> notes = {
      "(symb=) closure-checks each argument of a recursive call at its instantiated type",
      "recursive-call arguments are compared with the syntactic strict subterm order, "
      "not modulo the equations",
      "left-hand side positions whose argument is a variable eliminated by rho are compared "
      "after applying rho",
  };
  return notes;
}

}  // namespace cac
