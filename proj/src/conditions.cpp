#include "cac/conditions.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <unordered_set>

#include "cac/closure.hpp"
#include "cac/errors.hpp"
#include "cac/print.hpp"
#include "cac/typing.hpp"

namespace cac {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "PASS";
    case Verdict::Fail:
      return "FAIL";
    case Verdict::Assumed:
      return "ASSUMED";
    case Verdict::Unknown:
      return "UNKNOWN";
  }
  return "?";
}

namespace {

int severity(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return 0;
    case Verdict::Assumed:
      return 1;
    case Verdict::Unknown:
      return 2;
    case Verdict::Fail:
      return 3;
  }
  return 3;
}

bool passed(Verdict v) { return v == Verdict::Pass || v == Verdict::Assumed; }

std::size_t symbol_nodes(const Term& t) {
  switch (t.kind()) {
    case TermKind::Symb:
      return 1;
    case TermKind::App:
      return symbol_nodes(t.fun()) + symbol_nodes(t.arg());
    case TermKind::Abs:
    case TermKind::Prod:
      return symbol_nodes(t.domain()) + symbol_nodes(t.body());
    default:
      return 0;
  }
}

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

Finding finding(const std::string& label, int line, bool ok, std::string detail) {
  Finding f;
  f.label = label;
  f.line = line;
  f.verdict = ok ? Verdict::Pass : Verdict::Fail;
  f.detail = std::move(detail);
  return f;
}

// Runs a check that may run out of fuel; such findings become Unknown.
Finding guarded(const std::string& label, int line, const std::function<Finding()>& body) {
  try {
    return body();
  } catch (const FuelExhausted& e) {
    Finding f{label, line, Verdict::Unknown, e.what(), nullptr};
    return f;
  } catch (const ClassBoundExceeded& e) {
    Finding f{label, line, Verdict::Unknown, e.what(), nullptr};
    return f;
  }
}

Json schema_json(const SchemaVerdict& v) {
  Json j;
  j["pass"] = v.pass;
  if (!v.pass) {
    j["failed_rule"] = v.failed_rule;
    j["detail"] = v.detail;
    if (v.conservative) j["tag"] = "REJECTED-CONSERVATIVE";
  }
  return j;
}

std::string schema_detail(const SchemaVerdict& v) {
  if (v.pass) return "";
  std::string out = (v.conservative ? "REJECTED-CONSERVATIVE " : "") + std::string("(") +
                    v.failed_rule + ") " + v.detail;
  return out;
}

bool is_predicate_rule(const RewriteRule& r, const Signature& sig) {
  return sig.is_predicate(r.head);
}

}  // namespace

Verdict combine(Verdict a, Verdict b) { return severity(a) >= severity(b) ? a : b; }

// ---------------------------------------------------------------------------

std::vector<Finding> check_equation_shape(const Signature& sig) {
  std::vector<Finding> out;
  for (const auto& e : sig.equations()) {
    std::vector<std::string> problems;
    if (!is_algebraic(e.lhs, sig) || !is_algebraic(e.rhs, sig)) problems.push_back("a side is not algebraic");
    if (!head_symbol(e.lhs) || !head_symbol(e.rhs))
      problems.push_back("a side is not headed by a symbol");
    if (free_vars(e.lhs) != free_vars(e.rhs))
      problems.push_back("left and right-hand sides have distinct sets of variables");
    out.push_back(finding(e.label, e.line, problems.empty(), join_names(problems)));
  }
  return out;
}

std::vector<Finding> check_e_linear(const Signature& sig) {
  std::vector<Finding> out;
  for (const auto& e : sig.equations()) {
    std::vector<std::string> problems;
    if (!linear(e.lhs)) problems.push_back("left-hand side is not linear");
    if (!linear(e.rhs)) problems.push_back("right-hand side is not linear");
    out.push_back(finding(e.label, e.line, problems.empty(), join_names(problems)));
  }
  return out;
}

std::vector<Finding> check_finite_classes(const Signature& sig, const Limits& limits) {
  std::vector<Finding> out;
  for (const auto& e : sig.equations()) {
    if (symbol_nodes(e.lhs) == symbol_nodes(e.rhs) && var_counts(e.lhs) == var_counts(e.rhs)) {
      out.push_back(finding(e.label, e.line, true, "size- and variable-preserving"));
      continue;
    }
    Signature alone = sig.restricted([](const RewriteRule&) { return false; },
                                     [&](const Equation& other) { return other.label == e.label; });
    Finding f{e.label, e.line, Verdict::Unknown, "", nullptr};
    std::size_t largest = 0;
    for (const Term* side : {&e.lhs, &e.rhs}) {
      EClass c = e_class(*side, alone, limits.max_class_size);
      largest = std::max(largest, c.members.size());
      if (c.truncated) {
        f.verdict = Verdict::Fail;
        f.detail = "the class of " + to_string(*side, sig) + " exceeds " +
                   std::to_string(limits.max_class_size) + " members";
        break;
      }
    }
    if (f.verdict == Verdict::Unknown)
      f.detail = "not size-preserving; the classes of its sides are finite (" +
                 std::to_string(largest) + " members at most) but other classes are not covered";
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<Finding> check_no_predicate_equations(const Signature& sig) {
  std::vector<Finding> out;
  for (const auto& e : sig.equations()) {
    std::vector<std::string> preds;
    for (const Term* side : {&e.lhs, &e.rhs}) {
      auto h = head_symbol(*side);
      if (h && sig.is_predicate(*h) &&
          std::find(preds.begin(), preds.end(), sig.name_of(*h)) == preds.end())
        preds.push_back(sig.name_of(*h));
    }
    out.push_back(finding(e.label, e.line, preds.empty(),
                          preds.empty() ? "" : "equation on predicate symbol " + join_names(preds)));
  }
  return out;
}

std::vector<Finding> check_equation_schema(const Signature& sig, const Limits& limits) {
  std::vector<Finding> out;
  for (const auto& e : sig.equations()) {
    out.push_back(guarded(e.label, e.line, [&] {
      EquationSchema s = general_schema_equation(e, sig, limits);
      std::vector<std::string> problems;
      if (!s.left_to_right.pass) problems.push_back("l2r: " + schema_detail(s.left_to_right));
      if (!s.right_to_left.pass) problems.push_back("r2l: " + schema_detail(s.right_to_left));
      Finding f = finding(e.label, e.line, s.pass(), join_names(problems));
      f.extra = Json{{"l2r", schema_json(s.left_to_right)}, {"r2l", schema_json(s.right_to_left)}};
      return f;
    }));
  }
  return out;
}

std::vector<Finding> check_typing(const Signature& sig, const Limits& limits) {
  std::vector<Finding> out;
  auto describe = [](const RuleTyping& t) {
    std::vector<std::string> problems;
    if (!t.env) problems.push_back("environment: " + t.env.detail);
    if (t.env && !t.lhs) problems.push_back("left-hand side: " + t.lhs.detail);
    if (t.env && !t.rhs) problems.push_back("right-hand side: " + t.rhs.detail);
    return join_names(problems);
  };
  for (const auto& r : sig.rules()) {
    out.push_back(guarded(r.label, r.line, [&] {
      RuleTyping t = check_rule_typing(r, sig, limits);
      return finding(r.label, r.line, t.ok(), describe(t));
    }));
  }
  for (const auto& e : sig.equations()) {
    out.push_back(guarded(e.label, e.line, [&] {
      // A side that is not headed by a symbol has no declared output type;
      // it is still checked as the target of the other orientation.
      bool ok = true;
      std::string detail;
      int checked = 0;
      for (Direction d : {Direction::LeftToRight, Direction::RightToLeft}) {
        if (!head_symbol(e.source(d))) continue;
        ++checked;
        RuleTyping t = check_equation_typing(e, d, sig, limits);
        ok = ok && t.ok();
        if (detail.empty()) detail = describe(t);
      }
      if (checked == 0) return finding(e.label, e.line, false, "no side is headed by a symbol");
      return finding(e.label, e.line, ok, detail);
    }));
  }
  return out;
}

std::vector<Finding> check_fo_nonduplicating(const Signature& sig) {
  std::vector<Finding> out;
  for (std::size_t i : sig.first_order_rules()) {
    const auto& r = sig.rules()[i];
    std::vector<std::string> dup;
    auto l = var_counts(r.lhs());
    for (const auto& [x, n] : var_counts(r.rhs)) {
      auto it = l.find(x);
      if (it == l.end() || it->second < n) dup.push_back(x);
    }
    out.push_back(finding(r.label, r.line, dup.empty(),
                          dup.empty() ? "" : "duplicates " + join_names(dup)));
  }
  return out;
}

std::vector<Finding> check_fo_symbols(const Signature& sig) {
  std::vector<Finding> out;
  auto ho_symbols = [&](std::initializer_list<const Term*> terms) {
    std::set<SymbolId> ho;
    for (const Term* t : terms)
      for (SymbolId f : symbols_of(*t))
        if (!sig.is_first_order(f)) ho.insert(f);
    std::vector<std::string> names;
    for (SymbolId f : ho) names.push_back(sig.name_of(f));
    return names;
  };
  for (std::size_t i : sig.first_order_rules()) {
    const auto& r = sig.rules()[i];
    Term lhs = r.lhs();
    auto ho = ho_symbols({&lhs, &r.rhs});
    out.push_back(finding(r.label, r.line, ho.empty(),
                          ho.empty() ? "" : "higher-order symbols " + join_names(ho)));
  }
  for (std::size_t i : sig.first_order_equations()) {
    const auto& e = sig.equations()[i];
    auto ho = ho_symbols({&e.lhs, &e.rhs});
    out.push_back(finding(e.label, e.line, ho.empty(),
                          ho.empty() ? "" : "higher-order symbols " + join_names(ho)));
  }
  return out;
}

std::vector<Finding> check_ho_schema(const Signature& sig, const Limits& limits) {
  std::vector<Finding> out;
  for (std::size_t i : sig.higher_order_rules()) {
    const auto& r = sig.rules()[i];
    out.push_back(guarded(r.label, r.line, [&] {
      SchemaVerdict v = general_schema_rule(r, sig, limits);
      Finding f = finding(r.label, r.line, v.pass, schema_detail(v));
      f.extra = schema_json(v);
      return f;
    }));
  }
  return out;
}

std::vector<Finding> check_ho_safe(const Signature& sig) {
  std::vector<Finding> out;
  for (std::size_t i : sig.higher_order_rules()) {
    const auto& r = sig.rules()[i];
    auto types = argument_types(sig.symbol(r.head));
    std::vector<std::string> problems;
    NameSet seen;
    for (std::size_t k = 0; k < r.lhs_args.size() && k < types.size(); ++k) {
      if (!is_kind(types[k])) continue;
      const Term& a = r.lhs_args[k];
      if (!a.is(TermKind::FVar))
        problems.push_back("argument " + std::to_string(k + 1) + " matches on a predicate");
      else if (!seen.insert(a.name()).second)
        problems.push_back("predicate variable " + a.name() + " repeated");
    }
    out.push_back(finding(r.label, r.line, problems.empty(), join_names(problems)));
  }
  return out;
}

std::vector<Finding> check_predicate_rules(const Signature& sig, const Limits& limits) {
  std::vector<Finding> out;
  std::vector<CriticalPair> pairs;
  bool any = std::any_of(sig.rules().begin(), sig.rules().end(),
                         [&](const RewriteRule& r) { return is_predicate_rule(r, sig); });
  if (any) pairs = critical_pairs(sig);
  for (std::size_t i = 0; i < sig.rules().size(); ++i) {
    const auto& r = sig.rules()[i];
    if (!is_predicate_rule(r, sig)) continue;
    out.push_back(guarded(r.label, r.line, [&] {
      std::vector<std::string> problems;
      for (const auto& cp : pairs) {
        bool involves = (cp.kind != CriticalPair::Kind::RE && cp.outer_id == i) ||
                        (cp.kind != CriticalPair::Kind::ER && cp.inner_id == i);
        if (involves) {
          problems.push_back("critical pair with " +
                             (cp.outer_id == i && cp.kind != CriticalPair::Kind::RE ? cp.inner_label
                                                                                     : cp.outer_label));
          break;
        }
      }
      SchemaVerdict v = general_schema_rule(r, sig, limits);
      if (!v.pass) problems.push_back("schema: " + schema_detail(v));
      for (const auto& x : free_vars(r.rhs)) {
        const Term* ty = r.env.lookup(x);
        if (!ty || !is_kind(*ty)) continue;
        bool is_arg = std::any_of(r.lhs_args.begin(), r.lhs_args.end(), [&](const Term& a) {
          return a.is(TermKind::FVar) && a.name() == x;
        });
        if (!is_arg) problems.push_back("not small: predicate variable " + x + " is not an argument");
      }
      return finding(r.label, r.line, problems.empty(), join_names(problems));
    }));
  }
  return out;
}

// ---------------------------------------------------------------------------
// First-order termination: refutation search.

namespace {

struct FoSymbol {
  SymbolId id;
  std::vector<Term> args;
  Term out;
};

std::vector<FoSymbol> simple_first_order_symbols(const Signature& sig) {
  std::vector<FoSymbol> out;
  for (std::uint32_t i = 0; i < sig.symbol_count(); ++i) {
    SymbolId f{i};
    const SymbolDecl& d = sig.symbol(f);
    if (d.sort != Sort::Star || !sig.is_first_order(f)) continue;
    FoSymbol s{f, {}, Term()};
    Term cur = d.type;
    bool simple = true;
    for (std::size_t k = 0; k < d.arity; ++k) {
      if (!is_arrow(cur)) {
        simple = false;
        break;
      }
      s.args.push_back(cur.domain());
      cur = instantiate(cur.body(), Term::star());  // the body does not use the variable
    }
    if (!simple || !cur.locally_closed()) continue;
    bool closed = std::all_of(s.args.begin(), s.args.end(),
                              [](const Term& a) { return a.locally_closed(); });
    if (!closed) continue;
    s.out = cur;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Term> output_types(const std::vector<FoSymbol>& syms) {
  std::vector<Term> out;
  for (const auto& s : syms)
    if (std::find(out.begin(), out.end(), s.out) == out.end()) out.push_back(s.out);
  return out;
}

class Refuter {
 public:
  Refuter(const Signature& sig, const CheckOptions& options)
      : sig_(sig), options_(options), budget_(options.refute_steps) {
    limits_ = options.limits;
    limits_.max_class_size = std::min<std::size_t>(limits_.max_class_size, kSearchClassSize);
  }

  std::optional<Finding> explore(const Term& seed) {
    path_.clear();
    return dfs(seed, ReductionTrace{});
  }

  bool exhausted() const { return budget_ == 0 || overflow_; }
  bool overflowed() const { return overflow_; }
  std::size_t spent() const { return options_.refute_steps - budget_; }

 private:
  struct Frame {
    Term term;
    Term key;
    ReductionTrace from_previous;
  };

  Term class_key(const Term& t) {
    EClass c = e_class(t, sig_, limits_.max_class_size);
    if (c.truncated) overflow_ = true;
    return c.truncated ? t : c.canonical();
  }

  std::optional<Finding> dfs(const Term& t, ReductionTrace from_previous) {
    Term key = class_key(t);
    for (std::size_t i = 0; i < path_.size(); ++i) {
      if (path_[i].key != key) continue;
      ReductionTrace trace;
      for (std::size_t j = i + 1; j < path_.size(); ++j) trace.append(path_[j].from_previous);
      trace.append(from_previous);
      Finding f;
      f.label = "search";
      f.verdict = Verdict::Fail;
      f.detail = "cycle modulo the equations from " + to_string(path_[i].term, sig_);
      f.extra = Json{{"start", to_string(path_[i].term, sig_)},
                     {"end", to_string(t, sig_)},
                     {"end_equivalent_to_start", true},
                     {"trace", trace_json(path_[i].term, trace, sig_)}};
      return f;
    }
    if (overflow_ || dead_.contains(key) || budget_ == 0 || path_.size() >= 512)
      return std::nullopt;
    --budget_;
    std::vector<Reduct> next;
    try {
      next = rel_step(t, sig_, limits_);
    } catch (const ClassBoundExceeded&) {
      overflow_ = true;
      return std::nullopt;
    }
    path_.push_back({t, key, std::move(from_previous)});
    for (auto& r : next) {
      if (auto f = dfs(r.term, r.trace)) return f;
      if (exhausted()) break;
    }
    path_.pop_back();
    if (!exhausted()) dead_.insert(key);
    return std::nullopt;
  }

  const Signature& sig_;
  // Classes met during the search are enumerated at every step, so they are
  // kept much smaller than the general bound.
  static constexpr std::size_t kSearchClassSize = 256;

  const CheckOptions& options_;
  Limits limits_;
  std::size_t budget_;
  bool overflow_ = false;
  std::vector<Frame> path_;
  std::unordered_set<Term, TermHash> dead_;
};

Term random_term(const std::vector<FoSymbol>& syms, const Term& type, std::size_t depth,
                 std::mt19937& rng, const std::map<Term, std::string, TermLess>& var_of) {
  std::vector<const FoSymbol*> leaves, nodes;
  for (const auto& s : syms) {
    if (s.out != type) continue;
    (s.args.empty() ? leaves : nodes).push_back(&s);
  }
  std::uniform_int_distribution<int> coin(0, 2);
  if (depth <= 1 || nodes.empty() || coin(rng) == 0) {
    std::uniform_int_distribution<std::size_t> pick(0, leaves.size());
    std::size_t k = pick(rng);
    if (k == leaves.size()) return Term::fvar(var_of.at(type));
    return Term::symb(leaves[k]->id);
  }
  std::uniform_int_distribution<std::size_t> pick(0, nodes.size() - 1);
  const FoSymbol* s = nodes[pick(rng)];
  std::vector<Term> args;
  for (const Term& a : s->args) {
    if (!var_of.contains(a)) return Term::fvar(var_of.at(type));
    args.push_back(random_term(syms, a, depth - 1, rng, var_of));
  }
  return Term::apps(Term::symb(s->id), args);
}

std::map<Term, std::string, TermLess> type_variables(const std::vector<Term>& types) {
  std::map<Term, std::string, TermLess> out;
  for (std::size_t i = 0; i < types.size(); ++i) out.emplace(types[i], "v" + std::to_string(i + 1));
  return out;
}

}  // namespace

std::vector<Term> enumerate_first_order_terms(const Signature& sig, std::size_t depth,
                                              std::size_t cap) {
  auto syms = simple_first_order_symbols(sig);
  auto types = output_types(syms);
  auto var_of = type_variables(types);
  // by_type[T] holds every term of type T up to the current depth.
  std::map<Term, std::vector<Term>, TermLess> by_type;
  std::vector<Term> out;
  std::unordered_set<Term, TermHash> seen;
  auto add = [&](const Term& type, const Term& t, std::map<Term, std::vector<Term>, TermLess>& into) {
    if (out.size() >= cap || !seen.insert(t).second) return;
    into[type].push_back(t);
    out.push_back(t);
  };
  for (const Term& ty : types) add(ty, Term::fvar(var_of.at(ty)), by_type);
  for (const auto& s : syms)
    if (s.args.empty()) add(s.out, Term::symb(s.id), by_type);
  for (std::size_t d = 2; d <= depth && out.size() < cap; ++d) {
    auto previous = by_type;
    for (const auto& s : syms) {
      if (s.args.empty()) continue;
      std::vector<const std::vector<Term>*> pools;
      bool ok = true;
      for (const Term& a : s.args) {
        auto it = previous.find(a);
        if (it == previous.end() || it->second.empty()) {
          ok = false;
          break;
        }
        pools.push_back(&it->second);
      }
      if (!ok) continue;
      std::vector<std::size_t> idx(pools.size(), 0);
      while (out.size() < cap) {
        std::vector<Term> args;
        for (std::size_t k = 0; k < pools.size(); ++k) args.push_back((*pools[k])[idx[k]]);
        add(s.out, Term::apps(Term::symb(s.id), args), by_type);
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == pools[k]->size()) idx[k++] = 0;
        if (k == idx.size()) break;
      }
    }
  }
  return out;
}

Finding search_fo_nontermination(const Signature& sig, const CheckOptions& options) {
  Finding f;
  f.label = "R1";
  if (sig.first_order_rules().empty()) {
    f.verdict = Verdict::Pass;
    f.detail = "there are no first-order rules";
    return f;
  }
  if (options.attest_fo_sn) {
    f.verdict = Verdict::Assumed;
    f.detail = "termination of the first-order rules modulo the first-order equations is attested";
    return f;
  }
  const auto& fo_rules = sig.first_order_rules();
  const auto& fo_eqs = sig.first_order_equations();
  std::set<std::string> rule_labels, eq_labels;
  for (std::size_t i : fo_rules) rule_labels.insert(sig.rules()[i].label);
  for (std::size_t i : fo_eqs) eq_labels.insert(sig.equations()[i].label);
  Signature first_order =
      sig.restricted([&](const RewriteRule& r) { return rule_labels.contains(r.label); },
                     [&](const Equation& e) { return eq_labels.contains(e.label); });

  std::vector<Term> seeds;
  for (std::size_t i : fo_rules) {
    seeds.push_back(sig.rules()[i].lhs());
    seeds.push_back(sig.rules()[i].rhs);
  }
  for (const Term& t : enumerate_first_order_terms(first_order, options.refute_depth, 2000))
    seeds.push_back(t);
  auto syms = simple_first_order_symbols(first_order);
  auto types = output_types(syms);
  auto var_of = type_variables(types);
  std::mt19937 rng(options.seed);
  for (std::size_t i = 0; i < options.random_terms && !types.empty(); ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, types.size() - 1);
    seeds.push_back(random_term(syms, types[pick(rng)], options.refute_depth, rng, var_of));
  }

  Refuter refuter(first_order, options);
  for (const Term& seed : seeds) {
    if (auto found = refuter.explore(seed)) {
      found->label = "R1";
      return *found;
    }
    if (refuter.exhausted()) break;
  }
  f.verdict = Verdict::Unknown;
  if (refuter.overflowed()) {
    f.detail = "search stopped after " + std::to_string(refuter.spent()) +
               " steps: an equivalence class exceeded the search bound; termination is not proved";
    return f;
  }
  f.detail = "no cycle found after " + std::to_string(refuter.spent()) + " steps from " +
             std::to_string(seeds.size()) + " seed terms; termination is not proved";
  return f;
}

// ---------------------------------------------------------------------------

const ConditionEntry* ConditionReport::find(const std::string& id) const {
  for (const auto& c : conditions)
    if (c.id == id) return &c;
  return nullptr;
}

namespace {

ConditionEntry entry(std::string id, std::string statement, std::vector<Finding> findings,
                     bool required = true) {
  ConditionEntry e{std::move(id), std::move(statement), Verdict::Pass, required, std::move(findings)};
  for (const auto& f : e.findings) e.verdict = combine(e.verdict, f.verdict);
  return e;
}

}  // namespace

ConditionReport assemble_report(const Signature& sig, const CheckOptions& options, bool attested) {
  const Limits& limits = options.limits;
  CheckOptions opts = options;
  opts.attest_fo_sn = options.attest_fo_sn || attested;

  ConditionReport rep;
  auto& cs = rep.conditions;
  cs.push_back(entry("typing", "every rule and equation is well typed: both sides have the "
                               "instantiated output type of the head",
                     check_typing(sig, limits)));
  cs.push_back(entry("eq-shape",
                     "both sides of each equation are algebraic, headed by a symbol, and have "
                     "the same variables",
                     check_equation_shape(sig)));
  cs.push_back(entry("e-linear", "E is linear", check_e_linear(sig)));
  cs.push_back(entry("finite-classes", "the equivalence classes modulo the equations are finite",
                     check_finite_classes(sig, limits)));
  cs.push_back(entry("no-pred-eq", "there is no equation on predicate symbols",
                     check_no_predicate_equations(sig)));
  cs.push_back(entry("eq-schema",
                     "each equation, in both orientations, satisfies the schema: the arguments "
                     "of the other side are in the computability closure",
                     check_equation_schema(sig, limits)));
  cs.push_back(entry("fo-nondup", "the first-order rules are non-duplicating",
                     check_fo_nonduplicating(sig), !sig.higher_order_rules().empty()));
  cs.push_back(entry("fo-symbols", "first-order rules and equations only contain first-order symbols",
                     check_fo_symbols(sig)));
  cs.push_back(entry("fo-sn",
                     "rewriting with the first-order rules modulo the first-order equations "
                     "terminates on first-order algebraic terms",
                     {search_fo_nontermination(sig, opts)}));
  cs.push_back(entry("ho-schema", "the higher-order rules satisfy the schema",
                     check_ho_schema(sig, limits)));
  cs.push_back(entry("ho-safe", "the higher-order rules do not match on predicates",
                     check_ho_safe(sig)));
  cs.push_back(entry("pred-rules",
                     "rules on predicate symbols have no critical pair, satisfy the schema and "
                     "are small",
                     check_predicate_rules(sig, limits)));

  bool sn_passed = std::all_of(cs.begin(), cs.end(),
                               [](const ConditionEntry& c) { return !c.required || passed(c.verdict); });
  const ConditionEntry* fo_sn = rep.find("fo-sn");
  bool algebraic_sn = sig.higher_order_rules().empty() && sig.higher_order_equations().empty() &&
                      passed(fo_sn->verdict);
  rep.confluence = confluence_verdict(sig, sn_passed, algebraic_sn, limits);

  bool type_level = std::any_of(sig.rules().begin(), sig.rules().end(),
                                [&](const RewriteRule& r) { return is_predicate_rule(r, sig); });
  Finding cf;
  cf.label = "critical pairs";
  cf.verdict = rep.confluence.outcome == ConfluenceOutcome::Confluent      ? Verdict::Pass
               : rep.confluence.outcome == ConfluenceOutcome::NotConfluent ? Verdict::Fail
                                                                           : Verdict::Unknown;
  cf.detail = rep.confluence.verdict +
              (rep.confluence.blocking_conditions.empty()
                   ? ""
                   : " (" + join_names(rep.confluence.blocking_conditions) + ")");
  cs.push_back(entry("confluence",
                     "beta-reduction, rewriting and the equations together are confluent",
                     {cf}, type_level));

  bool any_fail = false, all_pass = true;
  for (const auto& c : cs) {
    if (!c.required) continue;
    any_fail = any_fail || c.verdict == Verdict::Fail;
    all_pass = all_pass && passed(c.verdict);
  }
  rep.overall = any_fail ? Verdict::Fail : all_pass ? Verdict::Pass : Verdict::Unknown;

  rep.notes.push_back(
      "safety is read as: every left-hand side argument whose declared type is a kind is a "
      "variable, and these variables are pairwise distinct");
  rep.notes.push_back(
      "termination of the first-order part is never proved here: it is attested, or refuted by "
      "a bounded search for a cycle");
  rep.notes.push_back(
      "the finite-class criterion (size and variable preservation) is sufficient, not necessary");
  for (const auto& n : closure_interpretation_notes()) rep.notes.push_back(n);
  if (!type_level)
    rep.notes.push_back("confluence is informational: there are no rules on predicate symbols");

  std::set<std::string> rule_heads, eq_only;
  for (const auto& r : sig.rules()) rule_heads.insert(sig.name_of(r.head));
  for (const auto& e : sig.equations())
    for (const Term* side : {&e.lhs, &e.rhs})
      if (auto h = head_symbol(*side); h && !rule_heads.contains(sig.name_of(*h)))
        eq_only.insert(sig.name_of(*h));
  if (!eq_only.empty())
    rep.notes.push_back("classification: symbols heading equations but no rule are defined, not constant: " +
                        join_names({eq_only.begin(), eq_only.end()}));
  return rep;
}

// ---------------------------------------------------------------------------

Json symbols_json(const Signature& sig) {
  Json out = Json::array();
  for (std::uint32_t i = 0; i < sig.symbol_count(); ++i) {
    SymbolId f{i};
    const auto& d = sig.symbol(f);
    out.push_back({{"name", d.name},
                   {"type", to_string(d.type, sig)},
                   {"sort", d.sort == Sort::Star ? "*" : "box"},
                   {"arity", d.arity},
                   {"class", to_string(sig.kind(f))},
                   {"defined", !sig.is_constant(f)},
                   {"status", to_string(d.status)},
                   {"precedence_class", sig.precedence().component(f)}});
  }
  return out;
}

Json trace_json(const Term& start, const ReductionTrace& trace, const Signature& sig) {
  Json out = Json::array();
  Term cur = start;
  for (const auto& s : trace.steps) {
    Json step;
    step["kind"] = s.kind == Step::Kind::Beta ? "beta" : s.kind == Step::Kind::Rule ? "rule" : "eq";
    step["label"] = s.label;
    if (s.kind == Step::Kind::Eq) step["direction"] = to_string(s.direction);
    step["position"] = spine_path(cur, s.position);
    ReductionTrace one{{s}};
    cur = replay(cur, one, sig);
    step["result"] = to_string(cur, sig);
    out.push_back(std::move(step));
  }
  return out;
}

Json report_json(const ConditionReport& report, const Signature& sig) {
  Json out;
  Json conds = Json::array();
  for (const auto& c : report.conditions) {
    Json evidence = Json::array();
    for (const auto& f : c.findings) {
      Json e{{"item", f.label}, {"line", f.line}, {"verdict", to_string(f.verdict)}};
      if (!f.detail.empty()) e["detail"] = f.detail;
      if (!f.extra.is_null()) e["data"] = f.extra;
      evidence.push_back(std::move(e));
    }
    conds.push_back({{"id", c.id},
                     {"statement", c.statement},
                     {"verdict", to_string(c.verdict)},
                     {"required", c.required},
                     {"evidence", std::move(evidence)}});
  }
  out["conditions"] = std::move(conds);
  out["overall"] = to_string(report.overall);
  out["notes"] = report.notes;
  out["symbols"] = symbols_json(sig);
  return out;
}

Json confluence_json(const ConfluenceReport& report, const Signature& sig) {
  Json pairs = Json::array();
  for (std::size_t i = 0; i < report.pairs.size(); ++i) {
    const auto& cp = report.pairs[i];
    const auto& j = report.joins[i];
    Json p{{"kind", to_string(cp.kind)},
           {"outer", cp.outer_label},
           {"inner", cp.inner_label}};
    if (cp.kind == CriticalPair::Kind::RE) p["outer_direction"] = to_string(cp.outer_direction);
    if (cp.kind == CriticalPair::Kind::ER) p["inner_direction"] = to_string(cp.inner_direction);
    p["position"] = spine_path(cp.peak, cp.position);
    p["mgu"] = to_string(cp.mgu, sig);
    p["peak"] = to_string(cp.peak, sig);
    p["pair"] = {to_string(cp.left, sig), to_string(cp.right, sig)};
    p["joinable"] = j.joinable;
    if (j.error)
      p["error"] = j.message;
    else
      p["normal_forms"] = {to_string(j.left_nf, sig), to_string(j.right_nf, sig)};
    pairs.push_back(std::move(p));
  }
  Json out;
  out["critical_pairs"] = std::move(pairs);
  out["verdict"] = report.verdict;
  out["theorem_used"] = report.theorem_used;
  out["blocking_conditions"] = report.blocking_conditions;
  out["e_linear"] = report.e_linear;
  out["left_linear"] = report.left_linear;
  out["notes"] = report.notes;
  return out;
}

}  // namespace cac
