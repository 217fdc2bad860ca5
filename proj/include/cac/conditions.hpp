#pragma once

// The strong normalization checklist: every condition of the termination
// theorem for beta-reduction plus rewriting modulo the equations, evaluated
// on a signature and folded into one report.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cac/confluence.hpp"
#include "cac/reduction.hpp"
#include "cac/signature.hpp"

namespace cac {

using Json = nlohmann::ordered_json;

enum class Verdict : std::uint8_t { Pass, Fail, Assumed, Unknown };

const char* to_string(Verdict v);

// Fail beats Unknown beats Assumed beats Pass.
Verdict combine(Verdict a, Verdict b);

struct Finding {
  std::string label;  // rule or equation label, symbol name
  int line = 0;
  Verdict verdict = Verdict::Pass;
  std::string detail;
  Json extra;  // structured evidence (traces, pairs); null when absent
};

struct ConditionEntry {
  std::string id;
  std::string statement;
  Verdict verdict = Verdict::Pass;
  bool required = true;
  std::vector<Finding> findings;
};

struct CheckOptions {
  Limits limits;
  bool attest_fo_sn = false;
  std::size_t refute_steps = 10000;
  std::size_t refute_depth = 3;
  std::size_t random_terms = 200;
  std::uint32_t seed = 20240601;
};

// Per-equation or per-rule findings. Each function returns one finding per
// item it inspects.
std::vector<Finding> check_equation_shape(const Signature& sig);
std::vector<Finding> check_e_linear(const Signature& sig);
std::vector<Finding> check_finite_classes(const Signature& sig, const Limits& limits = {});
std::vector<Finding> check_no_predicate_equations(const Signature& sig);
std::vector<Finding> check_equation_schema(const Signature& sig, const Limits& limits = {});
std::vector<Finding> check_typing(const Signature& sig, const Limits& limits = {});
std::vector<Finding> check_fo_nonduplicating(const Signature& sig);
std::vector<Finding> check_fo_symbols(const Signature& sig);
std::vector<Finding> check_ho_schema(const Signature& sig, const Limits& limits = {});
std::vector<Finding> check_ho_safe(const Signature& sig);
std::vector<Finding> check_predicate_rules(const Signature& sig, const Limits& limits = {});

// Bounded search for a cycle modulo the first-order equations among the
// first-order rules. A Fail finding carries a replayable trace: starting
// from `start`, the steps lead to a term equivalent to `start`.
Finding search_fo_nontermination(const Signature& sig, const CheckOptions& options);

// Simply typed first-order terms up to the given depth, for each primitive
// type that some first-order symbol produces. One variable per type is
// included as a leaf. At most `cap` terms.
std::vector<Term> enumerate_first_order_terms(const Signature& sig, std::size_t depth,
                                              std::size_t cap);

struct ConditionReport {
  std::vector<ConditionEntry> conditions;
  Verdict overall = Verdict::Unknown;
  std::vector<std::string> notes;
  ConfluenceReport confluence;

  const ConditionEntry* find(const std::string& id) const;
};

// `attested` is true when the input file itself attests termination of the
// first-order part; the option flag has the same effect.
ConditionReport assemble_report(const Signature& sig, const CheckOptions& options,
                                bool attested = false);

Json symbols_json(const Signature& sig);
Json report_json(const ConditionReport& report, const Signature& sig);
Json confluence_json(const ConfluenceReport& report, const Signature& sig);
// Steps with the term reached after each one, starting from `start`.
Json trace_json(const Term& start, const ReductionTrace& trace, const Signature& sig);

}  // namespace cac
