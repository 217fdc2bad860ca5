#include "doctest.h"

#include <fstream>
#include <sstream>

#include "cac/confluence.hpp"
#include "cac/frontend.hpp"
#include "support.hpp"

using namespace cac;

namespace {

std::string with_nat(const std::string& extra) {
  std::ifstream in(test::corpus_path("nat_ac.cac"));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str() + extra;
}

}  // namespace

TEST_CASE("unification") {
  auto f = test::corpus("nat_ac.cac");
  auto u = unify_algebraic(read_term("plus x (s y)", f.sig), read_term("plus (s z) w", f.sig));
  REQUIRE(u);
  CHECK(apply_subst(read_term("plus x (s y)", f.sig), *u) ==
        apply_subst(read_term("plus (s z) w", f.sig), *u));
  CHECK_FALSE(unify_algebraic(read_term("s x", f.sig), read_term("zero", f.sig)));
  CHECK_FALSE(unify_algebraic(read_term("x", f.sig), read_term("s x", f.sig)));
  auto v = unify_algebraic(Term::fvar("a"), Term::fvar("b"));
  REQUIRE(v);
  CHECK(*v->find("b") == Term::fvar("a"));
}

TEST_CASE("the rule x + 0 -> x against commutativity") {
  auto f = test::corpus("nat_ac.cac");
  auto cps = critical_pairs(f.sig);
  bool found = false;
  for (const auto& cp : cps) {
    if (cp.kind != CriticalPair::Kind::RE || cp.outer_label != "E1" || cp.inner_label != "R1")
      continue;
    if (cp.outer_direction != Direction::LeftToRight) continue;
    found = true;
    CHECK(cp.left == Term::fvar("x"));
    CHECK(cp.right == read_term("plus zero x", f.sig));
    CHECK(cp_joinable(cp, f.sig).joinable);
  }
  CHECK(found);
}

TEST_CASE("every pair of the naturals is joinable") {
  auto f = test::corpus("nat_ac.cac");
  for (const auto& cp : critical_pairs(f.sig)) CHECK(cp_joinable(cp, f.sig).joinable);
}

TEST_CASE("confluence of addition modulo AC") {
  auto f = test::corpus("nat_ac.cac");
  ConfluenceReport r = confluence_verdict(f.sig, true);
  CHECK(r.outcome == ConfluenceOutcome::Confluent);
  CHECK(r.verdict == "~-confluent on ~-classes");
  CHECK(r.e_linear);
  CHECK(r.left_linear);
  bool note = false;
  for (const auto& n : r.notes) note = note || n.find("-> is confluent") == 0;
  CHECK(note);
}

TEST_CASE("without termination the verdict is unknown") {
  auto f = test::corpus("nat_ac.cac");
  ConfluenceReport r = confluence_verdict(f.sig, false);
  CHECK(r.outcome == ConfluenceOutcome::Unknown);
  CHECK_FALSE(r.blocking_conditions.empty());
}

TEST_CASE("a non-left-linear rule blocks the verdict") {
  auto f = load_source(with_nat(
      "symbol minus : nat => nat => nat\n"
      "rule [x:nat] minus x x -> zero\n"));
  ConfluenceReport r = confluence_verdict(f.sig, true);
  CHECK_FALSE(r.left_linear);
  CHECK(r.outcome == ConfluenceOutcome::Unknown);
}

TEST_CASE("an unjoinable pair refutes confluence") {
  auto f = load_source(with_nat(
      "symbol c : nat => nat\n"
      "rule c zero -> zero\n"
      "rule c zero -> s zero\n"));
  ConfluenceReport r = confluence_verdict(f.sig, true);
  CHECK(r.outcome == ConfluenceOutcome::NotConfluent);
  bool rr = false;
  for (std::size_t i = 0; i < r.pairs.size(); ++i)
    if (r.pairs[i].kind == CriticalPair::Kind::RR) {
      rr = true;
      CHECK_FALSE(r.joins[i].joinable);
    }
  CHECK(rr);
}

TEST_CASE("a rule does not overlap itself at the root") {
  auto f = test::corpus("lists.cac");
  for (const auto& cp : critical_pairs(f.sig))
    CHECK_FALSE((cp.outer_id == cp.inner_id && cp.position.is_root()));
}

TEST_CASE("concatenation overlaps are joinable") {
  auto f = test::corpus("lists.cac");
  auto cps = critical_pairs(f.sig);
  CHECK(cps.size() == 3);
  for (const auto& cp : cps) CHECK(cp_joinable(cp, f.sig).joinable);
}
