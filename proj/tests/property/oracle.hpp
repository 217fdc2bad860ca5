#pragma once

// Independent reference implementations over plain first-order trees, used
// to cross-check the kernel. Nothing here calls into the rewrite engine.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cac/print.hpp"
#include "cac/signature.hpp"
#include "cac/term.hpp"

namespace oracle {

struct Tree {
  std::string f;  // symbol name, or variable name when `var`
  bool var = false;
  std::vector<Tree> args;

  friend bool operator==(const Tree& a, const Tree& b) {
    return a.f == b.f && a.var == b.var && a.args == b.args;
  }
  friend bool operator<(const Tree& a, const Tree& b) {
    if (a.f != b.f) return a.f < b.f;
    if (a.var != b.var) return a.var < b.var;
    return std::lexicographical_compare(a.args.begin(), a.args.end(), b.args.begin(), b.args.end());
  }
};

inline std::string show(const Tree& t) {
  if (t.args.empty()) return t.var ? "?" + t.f : t.f;
  std::string s = "(" + t.f;
  for (const auto& a : t.args) s += " " + show(a);
  return s + ")";
}

// Algebraic terms only.
inline Tree from_term(const cac::Term& t, const cac::Signature& sig) {
  cac::Spine s = cac::spine(t);
  Tree out;
  if (s.head.is(cac::TermKind::FVar)) {
    out.f = s.head.name();
    out.var = true;
  } else {
    out.f = sig.name_of(s.head.symbol());
  }
  for (const auto& a : s.args) out.args.push_back(from_term(a, sig));
  return out;
}

inline cac::Term to_term(const Tree& t, const cac::Signature& sig) {
  cac::Term head = t.var ? cac::Term::fvar(t.f) : cac::Term::symb(*sig.find(t.f));
  std::vector<cac::Term> args;
  for (const auto& a : t.args) args.push_back(to_term(a, sig));
  return cac::Term::apps(head, args);
}

using Subst = std::map<std::string, Tree>;

inline Tree subst(const Tree& t, const Subst& s) {
  if (t.var) {
    auto it = s.find(t.f);
    if (it != s.end()) return it->second;
  }
  Tree out{t.f, t.var, {}};
  for (const auto& a : t.args) out.args.push_back(subst(a, s));
  return out;
}

inline bool match_into(const Tree& p, const Tree& t, Subst& s) {
  if (p.var && p.args.empty()) {
    auto [it, fresh] = s.emplace(p.f, t);
    return fresh || it->second == t;
  }
  if (p.var || t.var || p.f != t.f || p.args.size() != t.args.size()) return false;
  for (std::size_t i = 0; i < p.args.size(); ++i)
    if (!match_into(p.args[i], t.args[i], s)) return false;
  return true;
}

inline std::optional<Subst> match(const Tree& p, const Tree& t) {
  Subst s;
  if (match_into(p, t, s)) return s;
  return std::nullopt;
}

using Path = std::vector<std::size_t>;  // argument indices, 0-based

inline void paths(const Tree& t, Path& cur, std::vector<Path>& out) {
  out.push_back(cur);
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    cur.push_back(i);
    paths(t.args[i], cur, out);
    cur.pop_back();
  }
}

inline std::vector<Path> paths(const Tree& t) {
  std::vector<Path> out;
  Path cur;
  paths(t, cur, out);
  return out;
}

inline const Tree& at(const Tree& t, const Path& p, std::size_t i = 0) {
  return i == p.size() ? t : at(t.args[p[i]], p, i + 1);
}

inline Tree replace(const Tree& t, const Path& p, const Tree& u, std::size_t i = 0) {
  if (i == p.size()) return u;
  Tree out = t;
  out.args[p[i]] = replace(t.args[p[i]], p, u, i + 1);
  return out;
}

inline void vars(const Tree& t, std::set<std::string>& out) {
  if (t.var) out.insert(t.f);
  for (const auto& a : t.args) vars(a, out);
}

inline std::set<std::string> vars(const Tree& t) {
  std::set<std::string> out;
  vars(t, out);
  return out;
}

struct Rewrite {
  Tree lhs;
  Tree rhs;
};

// One step of any of `rules` at any position.
inline std::vector<Tree> steps(const Tree& t, const std::vector<Rewrite>& rules) {
  std::vector<Tree> out;
  for (const auto& p : paths(t)) {
    const Tree& sub = at(t, p);
    for (const auto& r : rules)
      if (auto s = match(r.lhs, sub)) out.push_back(replace(t, p, subst(r.rhs, *s)));
  }
  return out;
}

// Both orientations of each equation, dropping those that would introduce
// variables.
inline std::vector<Rewrite> orientations(const cac::Signature& sig) {
  std::vector<Rewrite> out;
  for (const auto& e : sig.equations()) {
    Tree l = from_term(cac::apply_subst(e.lhs, e.rho), sig);
    Tree r = from_term(cac::apply_subst(e.rhs, e.rho), sig);
    auto lv = vars(l), rv = vars(r);
    if (std::includes(lv.begin(), lv.end(), rv.begin(), rv.end())) out.push_back({l, r});
    if (std::includes(rv.begin(), rv.end(), lv.begin(), lv.end())) out.push_back({r, l});
  }
  return out;
}

inline std::vector<Rewrite> rules(const cac::Signature& sig) {
  std::vector<Rewrite> out;
  for (const auto& r : sig.rules()) out.push_back({from_term(r.lhs(), sig), from_term(r.rhs, sig)});
  return out;
}

// Closure under equation steps by plain breadth-first search.
inline std::set<Tree> closure(const Tree& t, const std::vector<Rewrite>& eqs, std::size_t bound) {
  std::set<Tree> seen{t};
  std::vector<Tree> frontier{t};
  while (!frontier.empty() && seen.size() <= bound) {
    std::vector<Tree> next;
    for (const auto& u : frontier)
      for (auto& v : steps(u, eqs))
        if (seen.insert(v).second) next.push_back(std::move(v));
    frontier = std::move(next);
  }
  return seen;
}

// Renames variables to v0, v1, ... in order of first occurrence across `ts`.
inline std::vector<Tree> canonical_names(const std::vector<Tree>& ts) {
  std::map<std::string, std::string> ren;
  std::vector<Tree> out;
  auto go = [&](auto&& self, const Tree& t) -> Tree {
    Tree r{t.f, t.var, {}};
    if (t.var) {
      auto it = ren.find(t.f);
      if (it == ren.end()) it = ren.emplace(t.f, "v" + std::to_string(ren.size())).first;
      r.f = it->second;
    }
    for (const auto& a : t.args) r.args.push_back(self(self, a));
    return r;
  };
  for (const auto& t : ts) out.push_back(go(go, t));
  return out;
}

// Robinson unification on trees.
inline bool occurs(const std::string& x, const Tree& t, const Subst& s) {
  if (t.var) {
    if (t.f == x) return true;
    auto it = s.find(t.f);
    return it != s.end() && occurs(x, it->second, s);
  }
  for (const auto& a : t.args)
    if (occurs(x, a, s)) return true;
  return false;
}

inline Tree resolve(const Tree& t, const Subst& s) {
  if (t.var) {
    auto it = s.find(t.f);
    return it == s.end() ? t : resolve(it->second, s);
  }
  Tree out{t.f, false, {}};
  for (const auto& a : t.args) out.args.push_back(resolve(a, s));
  return out;
}

inline bool unify_into(const Tree& a, const Tree& b, Subst& s) {
  Tree x = a, y = b;
  while (x.var && s.contains(x.f)) x = s.at(x.f);
  while (y.var && s.contains(y.f)) y = s.at(y.f);
  if (x.var && y.var && x.f == y.f) return true;
  if (x.var) {
    if (occurs(x.f, y, s)) return false;
    s[x.f] = y;
    return true;
  }
  if (y.var) return unify_into(y, x, s);
  if (x.f != y.f || x.args.size() != y.args.size()) return false;
  for (std::size_t i = 0; i < x.args.size(); ++i)
    if (!unify_into(x.args[i], y.args[i], s)) return false;
  return true;
}

inline std::optional<Subst> unify(const Tree& a, const Tree& b) {
  Subst s;
  if (!unify_into(a, b, s)) return std::nullopt;
  Subst out;
  for (const auto& [x, t] : s) out[x] = resolve(t, s);
  return out;
}

inline Tree rename(const Tree& t, const std::string& suffix) {
  Tree out{t.var ? t.f + suffix : t.f, t.var, {}};
  for (const auto& a : t.args) out.args.push_back(rename(a, suffix));
  return out;
}

}  // namespace oracle
