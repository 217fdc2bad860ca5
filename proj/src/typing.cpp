#include "cac/typing.hpp"

#include "cac/errors.hpp"
#include "cac/print.hpp"

namespace cac {

namespace {

class Inferencer {
 public:
  Inferencer(const Signature& sig, const Limits& limits, JudgmentTrace* trace)
      : sig_(sig), limits_(limits), trace_(trace) {}

  Term infer(TypingEnv& env, const Term& t) {
    Term type = infer_node(env, t);
    if (trace_) trace_->push_back({env, t, type});
    return type;
  }

  Sort sort_of(TypingEnv& env, const Term& t) {
    Term type = infer(env, t);
    if (type.is(TermKind::Sort)) return type.sort_value();
    Term nf = normalize(type, sig_, limits_);
    if (nf.is(TermKind::Sort)) return nf.sort_value();
    throw TypeError(show(t) + " is not a type: its type " + show(type) + " is not a sort" +
                    where(env));
  }

 private:
  std::string show(const Term& t) const { return to_string(t, sig_); }

  static std::string where(const TypingEnv& env) {
    if (env.empty()) return "";
    std::string names;
    for (const auto& [x, ty] : env) names += (names.empty() ? "" : ", ") + x;
    return " (in context " + names + ")";
  }

  std::string open_name(const TypingEnv& env, const Term& binder) const {
    NameSet avoid = env.names();
    for (const auto& x : free_vars(binder)) avoid.insert(x);
    return fresh_name(binder.hint(), avoid);
  }

  Term infer_node(TypingEnv& env, const Term& t) {
    switch (t.kind()) {
      case TermKind::Sort:
        if (t.sort_value() == Sort::Star) return Term::box();
        throw TypeError("box has no type");
      case TermKind::BVar:
        throw TypeError("dangling bound variable ^" + std::to_string(t.index()));
      case TermKind::FVar:
        if (const Term* ty = env.lookup(t.name())) return *ty;
        throw TypeError("unbound variable " + t.name() + where(env));
      case TermKind::Symb:
        return sig_.symbol(t.symbol()).type;
      case TermKind::Prod: {
        sort_of(env, t.domain());
        std::string x = open_name(env, t);
        env.push(x, t.domain());
        Sort s;
        try {
          s = sort_of(env, open(t.body(), x));
        } catch (...) {
          env.pop();
          throw;
        }
        env.pop();
        return Term::sort(s);
      }
      case TermKind::Abs: {
        sort_of(env, t.domain());
        std::string x = open_name(env, t);
        env.push(x, t.domain());
        Term body_type;
        try {
          body_type = infer(env, open(t.body(), x));
          if (body_type == Term::box())
            throw TypeError("abstraction " + show(t) + " has a body typed by box");
          sort_of(env, body_type);
        } catch (...) {
          env.pop();
          throw;
        }
        env.pop();
        return Term::prod(t.hint(), t.domain(), close(body_type, x));
      }
      case TermKind::App: {
        Term fun_type = infer(env, t.fun());
        Term prod = fun_type;
        if (!prod.is(TermKind::Prod)) prod = normalize(fun_type, sig_, limits_);
        if (!prod.is(TermKind::Prod))
          throw TypeError("in " + show(t) + ": " + show(t.fun()) + " has type " + show(fun_type) +
                          ", which is not a product" + where(env));
        Term arg_type = infer(env, t.arg());
        if (!convertible(arg_type, prod.domain(), sig_, limits_))
          throw TypeError("in " + show(t) + ": argument " + show(t.arg()) + " has type " +
                          show(arg_type) + " but " + show(prod.domain()) + " was expected" +
                          where(env));
        return instantiate(prod.body(), t.arg());
      }
    }
    throw TypeError("unknown term kind");
  }

  const Signature& sig_;
  const Limits& limits_;
  JudgmentTrace* trace_;
};

}  // namespace

Term infer(const TypingEnv& env, const Term& t, const Signature& sig, const Limits& limits,
           JudgmentTrace* trace) {
  TypingEnv work = env;
  Inferencer inf(sig, limits, trace);
  return inf.infer(work, t);
}

bool convertible(const Term& a, const Term& b, const Signature& sig, const Limits& limits) {
  if (a == b) return true;
  return joinable_modulo(a, b, sig, limits);
}

CheckOutcome check(const TypingEnv& env, const Term& t, const Term& type, const Signature& sig,
                   const Limits& limits, JudgmentTrace* trace) {
  Term actual;
  try {
    actual = infer(env, t, sig, limits, trace);
    if (type == Term::box()) {
      if (actual == type) return {true, ""};
      return {false, to_string(t, sig) + " has type " + to_string(actual, sig) + ", not box"};
    }
    TypingEnv work = env;
    Inferencer inf(sig, limits, nullptr);
    inf.sort_of(work, type);
  } catch (const TypeError& e) {
    return {false, e.what()};
  }
  if (convertible(actual, type, sig, limits)) return {true, ""};
  return {false, to_string(t, sig) + " has type " + to_string(actual, sig) +
                     ", not convertible to " + to_string(type, sig)};
}

CheckOutcome check_env(const TypingEnv& env, const Signature& sig, const Limits& limits) {
  TypingEnv prefix;
  Inferencer inf(sig, limits, nullptr);
  for (const auto& [x, ty] : env) {
    try {
      inf.sort_of(prefix, ty);
    } catch (const TypeError& e) {
      return {false, "declaration of " + x + ": " + e.what()};
    }
    prefix.push(x, ty);
  }
  return {true, ""};
}

Term instantiate_type(const Term& type, const std::vector<Term>& args) {
  Term cur = type;
  for (const Term& a : args) {
    if (!cur.is(TermKind::Prod)) throw TypeError("type has fewer products than arguments");
    cur = instantiate(cur.body(), a);
  }
  return cur;
}

namespace {

RuleTyping check_sides(const SymbolId head, const std::vector<Term>& args, const Term& lhs,
                       const Term& rhs, const TypingEnv& env, const Substitution& rho,
                       const Signature& sig, const Limits& limits) {
  RuleTyping out;
  out.env = check_env(env, sig, limits);
  if (!out.env) {
    out.lhs = out.rhs = {false, "ill-formed environment"};
    return out;
  }
  std::vector<Term> args_rho;
  for (const Term& a : args) args_rho.push_back(apply_subst(a, rho));
  try {
    out.expected = apply_subst(instantiate_type(sig.symbol(head).type, args), rho);
  } catch (const TypeError& e) {
    out.lhs = out.rhs = {false, e.what()};
    return out;
  }
  out.lhs = check(env, apply_subst(lhs, rho), out.expected, sig, limits);
  out.rhs = check(env, rhs, out.expected, sig, limits);
  return out;
}

}  // namespace

RuleTyping check_rule_typing(const RewriteRule& rule, const Signature& sig, const Limits& limits) {
  return check_sides(rule.head, rule.lhs_args, rule.lhs(), rule.rhs, rule.env, rule.rho, sig,
                     limits);
}

RuleTyping check_equation_typing(const Equation& eq, Direction d, const Signature& sig,
                                 const Limits& limits) {
  const Term& src = eq.source(d);
  auto head = head_symbol(src);
  if (!head) {
    RuleTyping out;
    out.env = check_env(eq.env, sig, limits);
    out.lhs = out.rhs = {false, "side is not headed by a symbol"};
    return out;
  }
  auto s = spine(src);
  return check_sides(*head, s.args, src, apply_subst(eq.target(d), eq.rho), eq.env, eq.rho, sig,
                     limits);
}

bool substitution_preserves_typing(const Substitution& theta, const TypingEnv& gamma,
                                   const TypingEnv& delta, const Signature& sig,
                                   const Limits& limits) {
  for (const auto& [x, ty] : gamma) {
    const Term* v = theta.find(x);
    Term image = v ? *v : Term::fvar(x);
    if (!check(delta, image, apply_subst(ty, theta), sig, limits)) return false;
  }
  return true;
}

}  // namespace cac
