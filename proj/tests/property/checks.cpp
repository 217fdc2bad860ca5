#include "checks.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <memory>
#include <tuple>

#include "cac/closure.hpp"
#include "cac/conditions.hpp"
#include "cac/confluence.hpp"
#include "cac/errors.hpp"
#include "cac/frontend.hpp"
#include "cac/print.hpp"
#include "cac/reduction.hpp"
#include "oracle.hpp"

namespace cac::checks {

NatTerms::NatTerms(Signature sg) : sig(std::move(sg)) {
  nat = Term::symb(*sig.find("nat"));
  zero = Term::symb(*sig.find("zero"));
  s = Term::symb(*sig.find("s"));
  plus = Term::symb(*sig.find("plus"));
}

Term NatTerms::S(Term t) const { return Term::app(s, std::move(t)); }

Term NatTerms::P(Term t, Term u) const {
  return Term::app(Term::app(plus, std::move(t)), std::move(u));
}

Term NatTerms::redex(Term body, Term arg) const {
  return Term::app(Term::abs("v", nat, std::move(body)), std::move(arg));
}

std::vector<Term> NatTerms::all(int d, std::uint32_t bound) const {
  std::vector<Term> out{zero, Term::fvar("x")};
  for (std::uint32_t i = 0; i < bound; ++i) out.push_back(Term::bvar(i));
  if (d <= 1) return out;
  auto sub = all(d - 1, bound);
  auto inner = all(d - 1, bound + 1);
  for (const auto& t : sub) out.push_back(S(t));
  for (const auto& t : sub)
    for (const auto& u : sub) out.push_back(P(t, u));
  for (const auto& b : inner)
    for (const auto& a : sub) out.push_back(redex(b, a));
  return out;
}

Term NatTerms::random(std::mt19937& rng, int d, std::uint32_t bound) const {
  std::uniform_int_distribution<int> kind(0, d <= 1 ? 1 : 4);
  switch (kind(rng)) {
    case 0:
      return zero;
    case 1: {
      std::uniform_int_distribution<int> v(0, int(bound) + 1);
      int k = v(rng);
      if (k < int(bound)) return Term::bvar(std::uint32_t(k));
      return Term::fvar(k == int(bound) ? "x" : "y");
    }
    case 2:
      return S(random(rng, d - 1, bound));
    case 3:
      return P(random(rng, d - 1, bound), random(rng, d - 1, bound));
    default:
      return redex(random(rng, d - 1, bound + 1), random(rng, d - 1, bound));
  }
}

namespace {

// ---------------------------------------------------------------------------
// Named lambda terms with textbook capture-avoiding substitution.

struct Named {
  enum Kind { Var, Lam, App } kind;
  std::string name;
  std::shared_ptr<Named> a, b;
};
using NP = std::shared_ptr<Named>;

NP nvar(std::string x) { return std::make_shared<Named>(Named{Named::Var, std::move(x), {}, {}}); }
NP nlam(std::string x, NP b) { return std::make_shared<Named>(Named{Named::Lam, std::move(x), b, {}}); }
NP napp(NP f, NP a) { return std::make_shared<Named>(Named{Named::App, "", f, a}); }

std::set<std::string> nfree(const NP& t) {
  switch (t->kind) {
    case Named::Var:
      return {t->name};
    case Named::Lam: {
      auto s = nfree(t->a);
      s.erase(t->name);
      return s;
    }
    case Named::App: {
      auto s = nfree(t->a);
      auto r = nfree(t->b);
      s.insert(r.begin(), r.end());
      return s;
    }
  }
  return {};
}

int fresh_counter = 0;

NP nsubst(const NP& t, const std::string& x, const NP& v) {
  switch (t->kind) {
    case Named::Var:
      return t->name == x ? v : t;
    case Named::App:
      return napp(nsubst(t->a, x, v), nsubst(t->b, x, v));
    case Named::Lam: {
      if (t->name == x) return t;
      if (nfree(v).contains(t->name)) {
        std::string y = "r" + std::to_string(++fresh_counter);
        NP body = nsubst(t->a, t->name, nvar(y));
        return nlam(y, nsubst(body, x, v));
      }
      return nlam(t->name, nsubst(t->a, x, v));
    }
  }
  return t;
}

// Normal-order reduction; nullptr when the budget runs out.
NP nnormal(const NP& t, int& budget) {
  if (budget-- <= 0) return nullptr;
  switch (t->kind) {
    case Named::Var:
      return t;
    case Named::Lam: {
      NP b = nnormal(t->a, budget);
      return b ? nlam(t->name, b) : nullptr;
    }
    case Named::App: {
      NP f = t->a;
      // Weak head reduce the function part first.
      while (f->kind == Named::App) {
        NP h = nnormal(f, budget);
        if (!h) return nullptr;
        if (h->kind != Named::Lam) break;
        f = h;
      }
      if (f->kind == Named::Lam) return nnormal(nsubst(f->a, f->name, t->b), budget);
      NP nf = nnormal(f, budget);
      if (!nf) return nullptr;
      if (nf->kind == Named::Lam) return nnormal(napp(nf, t->b), budget);
      NP na = nnormal(t->b, budget);
      return na ? napp(nf, na) : nullptr;
    }
  }
  return nullptr;
}

std::string nprint(const NP& t) {
  switch (t->kind) {
    case Named::Var:
      return t->name;
    case Named::Lam:
      return "([" + t->name + ":*] " + nprint(t->a) + ")";
    case Named::App:
      return "(" + nprint(t->a) + " " + nprint(t->b) + ")";
  }
  return "";
}

NP nrandom(std::mt19937& rng, int depth) {
  static const char* names[] = {"x", "y", "z"};
  std::uniform_int_distribution<int> pick(0, 2), kind(0, depth <= 0 ? 0 : 2);
  switch (kind(rng)) {
    case 0:
      return nvar(names[pick(rng)]);
    case 1:
      return nlam(names[pick(rng)], nrandom(rng, depth - 1));
    default:
      return napp(nrandom(rng, depth - 1), nrandom(rng, depth - 1));
  }
}


const char* kAcSig =
    "symbol nat : *\n"
    "symbol a : nat\n"
    "symbol b : nat\n"
    "symbol c : nat\n"
    "symbol s : nat => nat\n"
    "symbol plus : nat => nat => nat\n"
    "eq [x:nat, y:nat] plus x y = plus y x\n"
    "eq [x:nat, y:nat, z:nat] plus x (plus y z) = plus (plus x y) z\n";

std::vector<oracle::Tree> all_terms(int depth) {
  using oracle::Tree;
  std::vector<Tree> out{{"a", false, {}}, {"b", false, {}}, {"c", false, {}}};
  if (depth <= 1) return out;
  auto smaller = all_terms(depth - 1);
  for (const auto& t : smaller) out.push_back({"s", false, {t}});
  for (const auto& t : smaller)
    for (const auto& u : smaller) out.push_back({"plus", false, {t, u}});
  return out;
}


// Nodes are equivalence classes, identified by their smallest member; an
// edge is a rule step from any member.
struct ClassGraph {
  std::vector<oracle::Rewrite> eqs, rules;

  oracle::Tree key(const oracle::Tree& t) const { return *oracle::closure(t, eqs, 100000).begin(); }

  std::vector<oracle::Tree> next(const oracle::Tree& k) const {
    std::vector<oracle::Tree> out;
    for (const auto& m : oracle::closure(k, eqs, 100000))
      for (const auto& u : oracle::steps(m, rules)) out.push_back(key(u));
    return out;
  }

  // Classes reachable in at most `depth` steps, and whether the search saw
  // everything reachable.
  std::pair<std::set<oracle::Tree>, bool> reach(const oracle::Tree& t, int depth) const {
    std::set<oracle::Tree> seen{key(t)};
    std::vector<oracle::Tree> frontier{key(t)};
    for (int d = 0; d < depth && !frontier.empty(); ++d) {
      std::vector<oracle::Tree> nf;
      for (const auto& k : frontier)
        for (auto& u : next(k))
          if (seen.insert(u).second) nf.push_back(u);
      frontier = std::move(nf);
    }
    bool complete = true;
    for (const auto& k : frontier)
      for (auto& u : next(k)) complete = complete && seen.contains(u);
    return {seen, complete};
  }
};

oracle::Tree random_nat(std::mt19937& rng, int depth) {
  static const char* atoms[] = {"zero", "x", "y"};
  std::uniform_int_distribution<int> kind(0, depth <= 1 ? 0 : 2), atom(0, 2);
  switch (kind(rng)) {
    case 0: {
      int i = atom(rng);
      return {atoms[i], i != 0, {}};
    }
    case 1:
      return {"s", false, {random_nat(rng, depth - 1)}};
    default:
      return {"plus", false, {random_nat(rng, depth - 1), random_nat(rng, depth - 1)}};
  }
}


struct OracleSide {
  oracle::Tree source, target;
  std::string label;
  Direction direction;
};

using CpKey = std::tuple<std::string, std::string, std::string, int, int, std::vector<int>,
                         std::vector<oracle::Tree>>;

std::multiset<CpKey> brute_force_pairs(const Signature& sig) {
  std::vector<OracleSide> rules, eqs;
  for (const auto& r : sig.rules())
    rules.push_back({oracle::from_term(r.lhs(), sig), oracle::from_term(r.rhs, sig), r.label,
                     Direction::LeftToRight});
  for (const auto& e : sig.equations())
    for (Direction d : {Direction::LeftToRight, Direction::RightToLeft}) {
      oracle::Tree src = oracle::from_term(e.source(d), sig);
      oracle::Tree dst = oracle::from_term(e.target(d), sig);
      auto sv = oracle::vars(src), dv = oracle::vars(dst);
      if (src.var || !std::includes(sv.begin(), sv.end(), dv.begin(), dv.end())) continue;
      eqs.push_back({src, dst, e.label, d});
    }
  std::multiset<CpKey> out;
  auto overlap = [&](const OracleSide& outer, const OracleSide& inner0, const std::string& kind) {
    OracleSide inner{oracle::rename(inner0.source, "#"), oracle::rename(inner0.target, "#"),
                     inner0.label, inner0.direction};
    for (const auto& p : oracle::paths(outer.source)) {
      const oracle::Tree& sub = oracle::at(outer.source, p);
      if (sub.var) continue;
      if (kind == "RR" && outer.label == inner.label && p.empty()) continue;
      auto mgu = oracle::unify(sub, inner.source);
      if (!mgu) continue;
      oracle::Tree peak = oracle::subst(outer.source, *mgu);
      oracle::Tree o = oracle::subst(outer.target, *mgu);
      oracle::Tree i = oracle::replace(peak, p, oracle::subst(inner.target, *mgu));
      std::vector<oracle::Tree> triple =
          kind == "RE" ? std::vector{peak, i, o} : std::vector{peak, o, i};
      std::vector<int> path(p.begin(), p.end());
      out.insert({kind, outer.label, inner.label, int(outer.direction), int(inner.direction), path,
                  oracle::canonical_names(triple)});
    }
  };
  for (const auto& o : rules)
    for (const auto& i : rules) overlap(o, i, "RR");
  for (const auto& o : eqs)
    for (const auto& i : rules) overlap(o, i, "RE");
  for (const auto& o : rules)
    for (const auto& i : eqs) overlap(o, i, "ER");
  return out;
}

std::multiset<CpKey> kernel_pairs(const Signature& sig) {
  std::multiset<CpKey> out;
  for (const auto& cp : critical_pairs(sig)) {
    // Tree paths count arguments from 0; spine paths from 1.
    std::vector<int> path;
    for (int k : spine_path(cp.peak, cp.position)) path.push_back(k - 1);
    out.insert({to_string(cp.kind), cp.outer_label, cp.inner_label, int(cp.outer_direction),
                int(cp.inner_direction), path,
                oracle::canonical_names({oracle::from_term(cp.peak, sig),
                                         oracle::from_term(cp.left, sig),
                                         oracle::from_term(cp.right, sig)})});
  }
  return out;
}

}  // namespace

Count beta_against_named(std::uint32_t seed, int samples) {
  Signature sig;
  sig.finalize();
  std::mt19937 rng(seed);
  Count c;
  for (int i = 0; i < samples; ++i) {
    NP t = nrandom(rng, 5);
    int budget = 2000;
    NP expected = nnormal(t, budget);
    if (!expected) continue;
    Term got;
    try {
      got = normalize(read_term(nprint(t), sig), sig, Limits{100, 2000});
    } catch (const FuelExhausted&) {
      continue;
    }
    ++c.checked;
    if (got != read_term(nprint(expected), sig)) c.fail(nprint(t));
  }
  return c;
}

Count classes_against_bfs() {
  auto f = load_source(kAcSig);
  auto eqs = oracle::orientations(f.sig);
  Count c;
  for (const auto& t : all_terms(3)) {
    ++c.checked;
    auto expected = oracle::closure(t, eqs, 100000);
    EClass cls = e_class(oracle::to_term(t, f.sig), f.sig, 100000);
    std::set<oracle::Tree> got;
    for (const auto& m : cls.members) got.insert(oracle::from_term(m, f.sig));
    if (cls.truncated || got != expected) c.fail(oracle::show(t));
  }
  return c;
}

std::size_t ac_class_size_of_abc() {
  auto f = load_source(kAcSig);
  return e_class(read_term("plus (plus a b) c", f.sig), f.sig, 1000).members.size();
}

JoinStats join_against_reachability(const Signature& sig, std::uint32_t seed, int pairs) {
  ClassGraph g{oracle::orientations(sig), oracle::rules(sig)};
  std::mt19937 rng(seed);
  JoinStats out;
  for (int n = 0; n < pairs; ++n) {
    oracle::Tree t = random_nat(rng, 3);
    oracle::Tree u = random_nat(rng, 3);
    // Half of the pairs are related by construction.
    if (rng() % 2) {
      auto succ = g.next(g.key(t));
      u = succ.empty() ? g.key(t) : succ[rng() % succ.size()];
    }
    ++out.count.checked;
    auto [rt, ct] = g.reach(t, 6);
    auto [ru, cu] = g.reach(u, 6);
    bool meet = std::any_of(rt.begin(), rt.end(), [&](const auto& k) { return ru.contains(k); });
    bool got = joinable_modulo(oracle::to_term(t, sig), oracle::to_term(u, sig), sig, {});
    std::string what = oracle::show(t) + " / " + oracle::show(u);
    if (meet) {
      ++out.joinable;
      if (!got) out.count.fail(what);
    } else if (ct && cu) {
      if (got) out.count.fail(what);
    } else {
      ++out.undecided;
    }
  }
  return out;
}

Count critical_pairs_against_superposition(const Signature& sig) {
  auto expected = brute_force_pairs(sig);
  auto got = kernel_pairs(sig);
  Count c;
  c.checked = expected.size();
  for (const auto& k : expected)
    if (got.count(k) != expected.count(k)) c.fail(std::get<0>(k) + " " + std::get<1>(k) + "/" + std::get<2>(k));
  for (const auto& k : got)
    if (!expected.contains(k)) c.fail("extra " + std::get<0>(k) + " " + std::get<1>(k) + "/" + std::get<2>(k));
  return c;
}

Count beta_commutation(const Signature& nat_ac) {
  NatTerms n(nat_ac);
  Count c;
  for (const auto& t : n.all(3, 0)) {
    auto ours = beta_step(t);
    for (const auto& [t2, step] : e_steps(t, n.sig)) {
      for (const auto& u2 : beta_step(t2)) {
        ++c.checked;
        bool ok = std::any_of(ours.begin(), ours.end(),
                              [&](const Term& u) { return equivalent_modulo(u, u2, n.sig, {}); });
        if (!ok) c.fail(to_string(t, n.sig));
      }
    }
  }
  return c;
}

Count cap_maximality(std::uint32_t seed, int samples) {
  auto f = load_source(
      "symbol nat : *\n"
      "symbol zero : nat\n"
      "symbol s : nat => nat\n"
      "symbol plus : nat => nat => nat\n"
      "symbol h : (nat => nat) => nat kind ho\n"
      "rule [x:nat] plus x zero -> x\n"
      "rule [x:nat, y:nat] plus x (s y) -> s (plus x y)\n"
      "eq [x:nat, y:nat] plus x y = plus y x\n");
  NatTerms n(f.sig);
  Term h = Term::symb(*f.sig.find("h"));
  std::mt19937 rng(seed);
  std::function<Term(int)> gen = [&](int d) -> Term {
    std::uniform_int_distribution<int> kind(0, d <= 1 ? 0 : 3);
    switch (kind(rng)) {
      case 0:
        return rng() % 2 ? n.zero : Term::fvar(rng() % 2 ? "x" : "y");
      case 1:
        return n.S(gen(d - 1));
      case 2:
        return n.P(gen(d - 1), gen(d - 1));
      default:
        return Term::app(h, Term::abs("v", n.nat, n.P(Term::bvar(0), gen(d - 1))));
    }
  };
  Count c;
  for (int i = 0; i < samples; ++i) {
    Term t = gen(5);
    std::string what = to_string(t, f.sig);
    CapAliens ca = cap_aliens(t, f.sig, {});
    ++c.checked;
    if (!is_first_order_algebraic(ca.cap, f.sig)) c.fail("cap not first-order: " + what);
    Term back = ca.cap;
    for (std::size_t k = 0; k < ca.aliens.size(); ++k) {
      const auto& [pos, alien] = ca.aliens[k];
      if (subterm_at(ca.cap, pos) != Term::fvar(ca.alien_vars[k])) c.fail("alien position: " + what);
      auto head = head_symbol(alien);
      bool first_order_root = head && f.sig.is_first_order(*head) &&
                              spine(alien).args.size() == f.sig.symbol(*head).arity;
      if (first_order_root || alien.is(TermKind::FVar)) c.fail("cap not maximal: " + what);
      back = replace_at(back, pos, alien);
      for (std::size_t j = 0; j < k; ++j) {
        bool same_var = ca.alien_vars[j] == ca.alien_vars[k];
        if (same_var != joinable_modulo(ca.aliens[j].second, alien, f.sig, {}))
          c.fail("alien variables: " + what);
      }
    }
    if (back != t) c.fail("aliens do not rebuild the term: " + what);
  }
  return c;
}

Count strict_order_laws(const Signature& nat_ac, std::uint32_t seed) {
  NatTerms n(nat_ac);
  std::mt19937 rng(seed);
  std::vector<std::vector<Term>> ms;
  for (int i = 0; i < 60; ++i) {
    std::vector<Term> m;
    for (int k = 0; k < 2; ++k) {
      Term t = n.random(rng, 3);
      while (!is_algebraic(t, n.sig)) t = n.random(rng, 3);
      m.push_back(t);
    }
    ms.push_back(m);
  }
  Count c;
  for (Status st : {Status::Mul, Status::Lex}) {
    std::string name = to_string(st);
    for (const auto& a : ms) {
      ++c.checked;
      if (status_less(a, a, st)) c.fail(name + " not irreflexive");
      for (const auto& b : ms) {
        if (!status_less(a, b, st)) continue;
        if (status_less(b, a, st)) c.fail(name + " not asymmetric");
        for (const auto& d : ms)
          if (status_less(b, d, st)) {
            ++c.checked;
            if (!status_less(a, d, st)) c.fail(name + " not transitive");
          }
      }
    }
  }
  return c;
}

Count normal_forms_are_normal(const Signature& nat_ac, std::uint32_t seed, int samples) {
  NatTerms n(nat_ac);
  std::mt19937 rng(seed);
  Count c;
  for (int i = 0; i < samples; ++i) {
    Term t = n.random(rng, 5);
    Term nf = normalize(t, n.sig, {});
    ++c.checked;
    if (!beta_steps(nf).empty() || !rel_step(nf, n.sig, {}).empty()) c.fail(to_string(t, n.sig));
  }
  return c;
}

Count report_determinism(const std::string& dir) {
  Count c;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".cac") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    auto a = load_file(p.string());
    auto b = load_file(p.string());
    ++c.checked;
    std::string ja = report_json(assemble_report(a.sig, {}), a.sig).dump();
    std::string jb = report_json(assemble_report(b.sig, {}), b.sig).dump();
    if (ja != jb) c.fail(p.string());
  }
  return c;
}

}  // namespace cac::checks
