#include "cac/cli.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "cac/closure.hpp"
#include "cac/conditions.hpp"
#include "cac/confluence.hpp"
#include "cac/errors.hpp"
#include "cac/frontend.hpp"
#include "cac/print.hpp"
#include "cac/typing.hpp"

namespace cac {

namespace {

struct Options {
  std::string file;
  bool json = false;
  bool strict = false;
  bool attest = false;
  bool no_timestamp = false;
  bool show_trace = false;
  std::size_t max_class_size = Limits{}.max_class_size;
  std::size_t fuel = Limits{}.fuel;
  std::size_t refute_steps = CheckOptions{}.refute_steps;
  std::size_t refute_depth = CheckOptions{}.refute_depth;
  std::string env;
  std::vector<std::string> terms;

  Limits limits() const { return {max_class_size, fuel}; }

  CheckOptions check_options() const {
    CheckOptions o;
    o.limits = limits();
    o.attest_fo_sn = attest;
    o.refute_steps = refute_steps;
    o.refute_depth = refute_depth;
    return o;
  }

  int undecided() const { return strict ? kExitError : kExitFail; }
};

void common_options(CLI::App* cmd, Options& o) {
  cmd->add_option("file", o.file, "input file")->required();
  cmd->add_flag("--json", o.json, "print the JSON report");
  cmd->add_option("--max-class-size", o.max_class_size, "bound on equivalence class enumeration");
  cmd->add_option("--fuel", o.fuel, "bound on normalization steps");
}

void check_options(CLI::App* cmd, Options& o) {
  cmd->add_flag("--attest-fo-sn", o.attest,
                "assume termination of the first-order rules modulo the first-order equations");
  cmd->add_flag("--strict", o.strict, "exit with 2 instead of 1 when the verdict is unknown");
  cmd->add_option("--refute-steps", o.refute_steps, "step budget of the non-termination search");
  cmd->add_option("--refute-depth", o.refute_depth, "depth of the generated search seeds");
  cmd->add_flag("--no-timestamp", o.no_timestamp, "omit the timestamp from JSON output");
}

std::string timestamp() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void finish_json(Json& j, const Options& o, std::ostream& out) {
  if (!o.no_timestamp) j["timestamp"] = timestamp();
  out << j.dump(2) << '\n';
}

int verdict_exit(Verdict v, const Options& o) {
  switch (v) {
    case Verdict::Pass:
    case Verdict::Assumed:
      return kExitPass;
    case Verdict::Fail:
      return kExitFail;
    case Verdict::Unknown:
      return o.undecided();
  }
  return kExitError;
}

int cmd_check(const Options& o, std::ostream& out) {
  LoadedFile lf = load_file(o.file);
  ConditionReport rep = assemble_report(lf.sig, o.check_options(), lf.attest_fo_sn);
  if (o.json) {
    Json j{{"file", o.file}};
    Json body = report_json(rep, lf.sig);
    for (auto& [k, v] : body.items()) j[k] = v;
    finish_json(j, o, out);
  } else {
    out << "file: " << o.file << '\n';
    for (const auto& c : rep.conditions) {
      out << std::left << std::setw(16) << c.id << to_string(c.verdict)
          << (c.required ? "" : "  (not required)") << '\n';
      for (const auto& f : c.findings) {
        if (f.verdict == Verdict::Pass) continue;
        out << "    " << f.label;
        if (f.line) out << " (line " << f.line << ")";
        out << ": " << to_string(f.verdict);
        if (!f.detail.empty()) out << ": " << f.detail;
        out << '\n';
      }
    }
    out << "overall: " << to_string(rep.overall) << '\n';
    for (const auto& n : rep.notes) out << "note: " << n << '\n';
  }
  return verdict_exit(rep.overall, o);
}

Json schema_entry(const SchemaVerdict& v) {
  Json j{{"pass", v.pass}};
  if (!v.pass) {
    j["failed_rule"] = v.failed_rule;
    j["detail"] = v.detail;
    if (v.conservative) j["tag"] = "REJECTED-CONSERVATIVE";
  }
  return j;
}

std::string schema_line(const SchemaVerdict& v) {
  if (v.pass) return "PASS";
  return std::string("FAIL") + (v.conservative ? " REJECTED-CONSERVATIVE" : "") + " (" +
         v.failed_rule + ") " + v.detail;
}

int cmd_schema(const Options& o, std::ostream& out) {
  LoadedFile lf = load_file(o.file);
  const Signature& sig = lf.sig;
  Limits limits = o.limits();
  bool all = true;
  Json rules = Json::array(), eqs = Json::array();
  std::ostringstream text;
  for (const auto& r : sig.rules()) {
    SchemaVerdict v = general_schema_rule(r, sig, limits);
    all = all && v.pass;
    Json j{{"label", r.label}, {"line", r.line}};
    Json entry = schema_entry(v);
    for (auto& [k, x] : entry.items()) j[k] = x;
    rules.push_back(std::move(j));
    text << r.label << " (line " << r.line << "): " << schema_line(v) << '\n';
  }
  for (const auto& e : sig.equations()) {
    EquationSchema s = general_schema_equation(e, sig, limits);
    all = all && s.pass();
    eqs.push_back({{"label", e.label},
                   {"line", e.line},
                   {"pass", s.pass()},
                   {"l2r", schema_entry(s.left_to_right)},
                   {"r2l", schema_entry(s.right_to_left)}});
    text << e.label << " (line " << e.line << ") l2r: " << schema_line(s.left_to_right) << '\n';
    text << e.label << " (line " << e.line << ") r2l: " << schema_line(s.right_to_left) << '\n';
  }
  if (o.json) {
    Json j{{"file", o.file},
           {"rules", rules},
           {"equations", eqs},
           {"pass", all},
           {"notes", closure_interpretation_notes()}};
    finish_json(j, o, out);
  } else {
    out << text.str();
    for (const auto& n : closure_interpretation_notes()) out << "note: " << n << '\n';
  }
  return all ? kExitPass : kExitFail;
}

int cmd_confluence(const Options& o, std::ostream& out) {
  LoadedFile lf = load_file(o.file);
  ConditionReport rep = assemble_report(lf.sig, o.check_options(), lf.attest_fo_sn);
  const ConfluenceReport& c = rep.confluence;
  if (o.json) {
    Json j{{"file", o.file}};
    Json body = confluence_json(c, lf.sig);
    for (auto& [k, v] : body.items()) j[k] = v;
    j["termination"] = to_string(rep.overall);
    finish_json(j, o, out);
  } else {
    for (std::size_t i = 0; i < c.pairs.size(); ++i) {
      const auto& cp = c.pairs[i];
      const auto& jn = c.joins[i];
      out << to_string(cp.kind) << ' ' << cp.outer_label << '/' << cp.inner_label << " at "
          << spine_path_string(cp.peak, cp.position) << ": " << to_string(cp.peak, lf.sig)
          << "  =>  (" << to_string(cp.left, lf.sig) << ", " << to_string(cp.right, lf.sig)
          << ")  " << (jn.joinable ? "joinable" : jn.error ? "undecided: " + jn.message : "not joinable")
          << '\n';
    }
    out << "critical pairs: " << c.pairs.size() << '\n';
    out << "verdict: " << c.verdict << '\n';
    out << "theorem: " << c.theorem_used << '\n';
    for (const auto& b : c.blocking_conditions) out << "blocking: " << b << '\n';
    for (const auto& n : c.notes) out << "note: " << n << '\n';
  }
  switch (c.outcome) {
    case ConfluenceOutcome::Confluent:
      return kExitPass;
    case ConfluenceOutcome::NotConfluent:
      return kExitFail;
    case ConfluenceOutcome::Unknown:
      return o.undecided();
  }
  return kExitError;
}

void warn_unless_terminating(const LoadedFile& lf, const Options& o, std::ostream& err) {
  ConditionReport rep = assemble_report(lf.sig, o.check_options(), lf.attest_fo_sn);
  if (rep.overall != Verdict::Pass)
    err << "warning: termination conditions are " << to_string(rep.overall)
        << "; conversion tests may not terminate and are cut off by --fuel\n";
}

int cmd_typecheck(const Options& o, std::ostream& out, std::ostream& err) {
  LoadedFile lf = load_file(o.file);
  const Signature& sig = lf.sig;
  warn_unless_terminating(lf, o, err);
  TypingEnv env = o.env.empty() ? TypingEnv{} : read_env(o.env, sig);
  CheckOutcome env_ok = check_env(env, sig, o.limits());
  if (!env_ok) {
    err << "error: " << env_ok.detail << '\n';
    return kExitFail;
  }
  Term t = read_term(o.terms.at(0), sig, env);
  JudgmentTrace trace;
  bool ok;
  std::string detail;
  Term type;
  if (o.terms.size() > 1) {
    type = read_term(o.terms[1], sig, env);
    CheckOutcome r = check(env, t, type, sig, o.limits(), &trace);
    ok = r.ok;
    detail = r.detail;
  } else {
    try {
      type = infer(env, t, sig, o.limits(), &trace);
      ok = true;
    } catch (const TypeError& e) {
      ok = false;
      detail = e.what();
    }
  }
  if (o.json) {
    Json steps = Json::array();
    for (const auto& jd : trace)
      steps.push_back({{"env", to_string(jd.env, sig)},
                       {"subject", to_string(jd.subject, sig)},
                       {"type", to_string(jd.type, sig)}});
    Json j{{"env", to_string(env, sig)}, {"subject", to_string(t, sig)}, {"ok", ok}};
    if (ok || o.terms.size() > 1) j["type"] = to_string(type, sig);
    if (!ok) j["error"] = detail;
    j["trace"] = std::move(steps);
    finish_json(j, o, out);
  } else if (ok) {
    out << to_string(t, sig) << " : " << to_string(type, sig) << '\n';
  } else {
    out << "ill-typed: " << detail << '\n';
  }
  return ok ? kExitPass : kExitFail;
}

int cmd_normalize(const Options& o, std::ostream& out) {
  LoadedFile lf = load_file(o.file);
  const Signature& sig = lf.sig;
  TypingEnv env = o.env.empty() ? TypingEnv{} : read_env(o.env, sig);
  Term t = read_term(o.terms.at(0), sig, env);
  ReductionTrace trace;
  Term nf = normalize(t, sig, o.limits(), &trace);
  if (o.json) {
    Json j{{"term", to_string(t, sig)},
           {"normal_form", to_string(nf, sig)},
           {"trace", trace_json(t, trace, sig)}};
    finish_json(j, o, out);
  } else {
    if (o.show_trace) {
      Json steps = trace_json(t, trace, sig);
      for (const auto& s : steps) {
        out << "  " << s["kind"].get<std::string>() << ' ' << s["label"].get<std::string>();
        if (s.contains("direction")) out << ' ' << s["direction"].get<std::string>();
        out << " at " << s["position"].dump() << " -> " << s["result"].get<std::string>() << '\n';
      }
    }
    out << to_string(nf, sig) << '\n';
  }
  return kExitPass;
}

int cmd_join(const Options& o, std::ostream& out) {
  LoadedFile lf = load_file(o.file);
  const Signature& sig = lf.sig;
  TypingEnv env = o.env.empty() ? TypingEnv{} : read_env(o.env, sig);
  Term a = read_term(o.terms.at(0), sig, env);
  Term b = read_term(o.terms.at(1), sig, env);
  Joinability j = join(a, b, sig, o.limits());
  if (o.json) {
    Json r{{"left", to_string(a, sig)},
           {"right", to_string(b, sig)},
           {"joinable", j.joinable},
           {"normal_forms", {to_string(j.left_nf, sig), to_string(j.right_nf, sig)}}};
    finish_json(r, o, out);
  } else {
    out << (j.joinable ? "true" : "false") << '\n';
    out << "normal forms: " << to_string(j.left_nf, sig) << " | " << to_string(j.right_nf, sig)
        << '\n';
  }
  return j.joinable ? kExitPass : kExitFail;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"checker for algebraic constructions with rewriting modulo equations", "cacheck"};
  app.require_subcommand(1);
  Options o;

  auto* check = app.add_subcommand("check", "evaluate the termination conditions");
  common_options(check, o);
  check_options(check, o);

  auto* schema = app.add_subcommand("schema", "check rules and equations against the schema");
  common_options(schema, o);
  schema->add_flag("--no-timestamp", o.no_timestamp, "omit the timestamp from JSON output");

  auto* confluence = app.add_subcommand("confluence", "critical pairs and confluence verdict");
  common_options(confluence, o);
  check_options(confluence, o);

  auto* typecheck = app.add_subcommand("typecheck", "infer or check the type of a term");
  common_options(typecheck, o);
  check_options(typecheck, o);
  typecheck->add_option("term", o.terms, "TERM [TYPE]")->required()->expected(1, 2);
  typecheck->add_option("--env", o.env, "typing environment, e.g. \"x:nat, y:nat\"");

  auto* normalize_cmd = app.add_subcommand("normalize", "print a normal form");
  common_options(normalize_cmd, o);
  normalize_cmd->add_option("term", o.terms, "TERM")->required()->expected(1);
  normalize_cmd->add_option("--env", o.env, "variables in scope");
  normalize_cmd->add_flag("--trace", o.show_trace, "print the reduction steps");
  normalize_cmd->add_flag("--no-timestamp", o.no_timestamp, "omit the timestamp from JSON output");

  auto* join_cmd = app.add_subcommand("join", "decide joinability of two terms");
  common_options(join_cmd, o);
  join_cmd->add_option("terms", o.terms, "TERM TERM")->required()->expected(2);
  join_cmd->add_option("--env", o.env, "variables in scope");
  join_cmd->add_flag("--no-timestamp", o.no_timestamp, "omit the timestamp from JSON output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitError;
  }

  try {
    if (*check) return cmd_check(o, out);
    if (*schema) return cmd_schema(o, out);
    if (*confluence) return cmd_confluence(o, out);
    if (*typecheck) return cmd_typecheck(o, out, err);
    if (*normalize_cmd) return cmd_normalize(o, out);
    if (*join_cmd) return cmd_join(o, out);
  } catch (const SyntaxError& e) {
    err << o.file << ':' << e.what() << '\n';
    return kExitError;
  } catch (const LoadError& e) {
    err << o.file << ": " << e.what() << '\n';
    return kExitError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace cac
