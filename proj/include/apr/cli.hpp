#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "apr/ars_io.hpp"
#include "apr/expand.hpp"
#include "apr/oracle.hpp"
#include "apr/prover.hpp"
#include "apr/reductions.hpp"
#include "apr/report.hpp"

// Front end shared by tools/aprcheck and the tests. Exit codes: 0 when the
// queried property holds, 1 when it fails (a witness is printed), 2 on any
// usage or input error.

namespace apr::cli {

inline constexpr int kHolds = 0;
inline constexpr int kFails = 1;
inline constexpr int kError = 2;

struct Options {
  std::string ars_file;
  std::string model_file;
  std::string builtin;
  std::optional<std::string> source;
  std::optional<std::string> target;
  std::optional<std::string> error;
  std::string mode = "partial";
  std::string engine = "prover";
  std::string strategy = "eager";
  std::string emit_proof;
  std::string emit_trace;
  std::string out_file;
  bool trace = false;
  bool json = false;
  std::size_t max_nodes = 1'000'000;
  std::size_t max_states = 1'000'000;
};

struct Input {
  std::string description;
  std::optional<model::Expansion> expansion;
  std::optional<Ars> plain;

  [[nodiscard]] const Ars& ars() const { return expansion ? expansion->ars : *plain; }
};

/// Splits `a,b,<x,y>` at top-level commas; commas inside angle brackets
/// belong to expanded state labels.
inline std::vector<std::string> split_labels(std::string_view text) {
  std::vector<std::string> out;
  if (text.find_first_not_of(" \t") == std::string_view::npos) return out;
  std::string current;
  int depth = 0;
  auto flush = [&] {
    const auto first = current.find_first_not_of(" \t");
    if (first == std::string::npos) throw InputError("empty label in list '" + std::string(text) + "'");
    out.push_back(current.substr(first, current.find_last_not_of(" \t") - first + 1));
    current.clear();
  };
  for (char c : text) {
    if (c == '<') ++depth;
    if (c == '>') --depth;
    if (c == ',' && depth == 0) {
      flush();
    } else {
      current += c;
    }
  }
  flush();
  return out;
}

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out || !(out << content) || !out.flush()) throw InputError("cannot write '" + path + "'");
}

inline Input load_input(const Options& o, bool model_only = false) {
  const int given = !o.ars_file.empty() + !o.model_file.empty() + !o.builtin.empty();
  if (given != 1) {
    throw InputError(model_only ? "exactly one of --model or --builtin is required"
                                : "exactly one of --ars, --model or --builtin is required");
  }
  Input in;
  if (!o.ars_file.empty()) {
    if (model_only) throw InputError("this command needs a model, not an ARS file");
    in.description = o.ars_file;
    try {
      in.plain = parse_ars(read_file(o.ars_file));
    } catch (const InputError& e) {
      throw InputError(o.ars_file + ": " + e.what());
    }
    return in;
  }
  model::Model m;
  if (!o.builtin.empty()) {
    in.description = "builtin:" + o.builtin;
    m = model::builtin_peterson();
  } else {
    in.description = o.model_file;
    try {
      m = model::parse_model(read_file(o.model_file));
    } catch (const InputError& e) {
      throw InputError(o.model_file + ": " + e.what());
    }
  }
  in.expansion = model::expand(std::move(m), o.max_states);
  return in;
}

// Label list for ARS inputs; `init` or a state predicate for models.
inline StateSet resolve_set(const Input& in, const std::string& text, std::string_view flag) {
  try {
    if (in.expansion) {
      if (text == "init") return in.expansion->initial;
      return model::eval_state_predicate(*in.expansion, text);
    }
    auto labels = split_labels(text);
    return in.plain->set_of(labels);
  } catch (const InputError& e) {
    throw InputError(std::string(flag) + ": " + e.what());
  }
}

struct Outcome {
  VerdictKind kind = VerdictKind::PartiallyValid;
  std::optional<Witness> witness;
  std::optional<PreProof> pre_proof;
  std::optional<StatsReport> stats;
  double ms = 0.0;
};

inline Outcome decide(const Ars& ars, const AprPredicate& pred, bool total, const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  if (o.engine == "oracle") {
    OracleAnswer a = total ? oracle_total(ars, pred) : oracle_partial(ars, pred);
    out.witness = std::move(a.witness);
    if (total) {
      out.kind = a.valid ? VerdictKind::TotallyValid : VerdictKind::NotTotallyValid;
    } else {
      out.kind = a.valid ? VerdictKind::PartiallyValid : VerdictKind::NotPartiallyValid;
    }
  } else {
    ProverConfig cfg;
    cfg.strategy = *parse_split_strategy(o.strategy);
    cfg.node_budget = o.max_nodes;
    Verdict v = total ? check_total(ars, pred, cfg) : check_partial(ars, pred, cfg);
    out.kind = v.kind;
    out.witness = std::move(v.witness);
    out.stats = make_stats_report(v.stats, proof_graph(v.pre_proof));
    out.pre_proof = std::move(v.pre_proof);
  }
  out.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

inline void emit_artifacts(const Ars& ars, const Outcome& outcome, const Options& o) {
  if (o.emit_proof.empty() && o.emit_trace.empty()) return;
  if (!outcome.pre_proof) throw InputError("proof output needs the prover engine");
  if (!o.emit_proof.empty()) write_file(o.emit_proof, to_dot(ars, proof_graph(*outcome.pre_proof)));
  if (!o.emit_trace.empty()) {
    std::ostringstream trace;
    write_trace(trace, ars, *outcome.pre_proof);
    write_file(o.emit_trace, trace.str());
  }
}

inline RunReport make_report(const std::string& command, const Input& in, const Ars& ars, const Options& o,
                             bool total, const Outcome& outcome) {
  RunReport r;
  r.command = command;
  r.input = in.description;
  r.source = o.source;
  r.target = o.target;
  r.error = o.error;
  r.mode = total ? "total" : "partial";
  r.engine = o.engine;
  if (o.engine == "prover") r.strategy = o.strategy;
  r.verdict = std::string(to_string(outcome.kind));
  if (outcome.witness) r.witness = make_witness_report(ars, *outcome.witness);
  r.stats = outcome.stats;
  r.timing_ms = outcome.ms;
  return r;
}

inline void print_details(std::ostream& out, const Ars& ars, const Outcome& outcome, const Options& o) {
  if (outcome.witness) {
    out << (std::holds_alternative<Lasso>(*outcome.witness) ? "lasso: " : "witness: ")
        << render_witness(ars, *outcome.witness) << '\n';
  }
  if (outcome.stats) {
    const StatsReport& s = *outcome.stats;
    out << "proof: " << s.nodes << " nodes, " << s.buds << (s.buds == 1 ? " bud" : " buds") << " (Axiom " << s.axiom
        << ", Subs " << s.subs << ", Der " << s.der << ", Dis " << s.dis << ")\n";
    out << "proof graph: " << s.graph_vertices << " vertices, " << s.graph_edges << " edges, "
        << (s.acyclic ? "acyclic" : "cyclic") << '\n';
  }
  if (o.trace && outcome.pre_proof) write_trace(out, ars, *outcome.pre_proof);
}

inline void print_json(std::ostream& out, const RunReport& r) { out << nlohmann::json(r).dump(2) << '\n'; }

inline int finish(std::ostream& out, const std::string& headline, const RunReport& report, const Ars& ars, const Outcome& outcome, const Options& o) {
  emit_artifacts(ars, outcome, o);
  if (o.json) {
    print_json(out, report);
  } else {
    out << headline << '\n';
    print_details(out, ars, outcome, o);
  }
  return holds(outcome.kind) ? kHolds : kFails;
}

inline AprPredicate read_predicate(const Input& in, const Options& o) {
  if (!o.source) throw InputError("a source set is required (--source/--from)");
  if (!o.target) throw InputError("a target set is required (--target/--goal)");
  return AprPredicate(resolve_set(in, *o.source, "--source"), resolve_set(in, *o.target, "--target"));
}

inline void reject_proof_output_for_oracle(const Options& o) {
  if (o.engine == "oracle" && (!o.emit_proof.empty() || !o.emit_trace.empty() || o.trace)) {
    throw InputError("proof output is only available with --engine prover");
  }
}

inline int cmd_check(const Options& o, std::ostream& out) {
  reject_proof_output_for_oracle(o);
  Input in = load_input(o);
  AprPredicate pred = read_predicate(in, o);
  const bool total = o.mode == "total";
  Outcome outcome = decide(in.ars(), pred, total, o);
  RunReport report = make_report("check", in, in.ars(), o, total, outcome);
  return finish(out, report.verdict, report, in.ars(), outcome, o);
}

inline int cmd_liveness(const Options& o, std::ostream& out) {
  reject_proof_output_for_oracle(o);
  Input in = load_input(o);
  AprPredicate pred = read_predicate(in, o);
  Outcome outcome = decide(in.ars(), pred, true, o);
  RunReport report = make_report("liveness", in, in.ars(), o, true, outcome);
  const std::string headline =
      holds(outcome.kind) ? "live (totally valid)" : "not live (" + report.verdict + ")";
  return finish(out, headline, report, in.ars(), outcome, o);
}

inline int cmd_safety(const Options& o, std::ostream& out) {
  reject_proof_output_for_oracle(o);
  Input in = load_input(o);
  if (!o.source) throw InputError("a source set is required (--from)");
  if (!o.error) throw InputError("an error set is required (--error)");
  const StateSet p = resolve_set(in, *o.source, "--from");
  const StateSet e = resolve_set(in, *o.error, "--error");
  if (e.empty()) throw InputError("--error: the error set is empty");
  SafetyQuery query = build_safety_query(in.ars(), p, e);
  Outcome outcome = decide(query.ars, query.predicate, false, o);
  RunReport report = make_report("safety", in, query.ars, o, false, outcome);
  const std::string headline =
      holds(outcome.kind) ? "safe (no error state reachable)" : "unsafe (an error state is reachable)";
  return finish(out, headline, report, query.ars, outcome, o);
}

inline int cmd_export(const Options& o, std::ostream& out) {
  if (o.emit_proof.empty()) throw InputError("export needs --emit-proof <path>");
  if (o.engine != "prover") throw InputError("export needs the prover engine");
  Input in = load_input(o);
  AprPredicate pred = read_predicate(in, o);
  const bool total = o.mode == "total";
  Outcome outcome = decide(in.ars(), pred, total, o);
  emit_artifacts(in.ars(), outcome, o);
  if (o.json) {
    print_json(out, make_report("export", in, in.ars(), o, total, outcome));
  } else {
    out << "wrote " << o.emit_proof << " (" << outcome.stats->graph_vertices << " vertices, "
        << outcome.stats->graph_edges << " edges, " << to_string(outcome.kind) << ")\n";
  }
  return kHolds;
}

inline int cmd_expand(const Options& o, std::ostream& out) {
  Input in = load_input(o, true);
  const model::Expansion& x = *in.expansion;
  std::ostringstream text;
  text << "# " << x.ars.size() << " states, " << x.ars.edge_count() << " transitions\n";
  text << "# initial: ";
  bool first = true;
  for (ObjectId s : x.initial) {
    text << (first ? "" : " ") << x.ars.label(s);
    first = false;
  }
  text << '\n';
  write_ars(text, x.ars);
  if (o.out_file.empty()) {
    out << text.str();
  } else {
    write_file(o.out_file, text.str());
    out << "wrote " << o.out_file << " (" << x.ars.size() << " states, " << x.ars.edge_count()
        << " transitions)\n";
  }
  return kHolds;
}

}  // namespace detail

/// Runs one invocation; `args` excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Decide all-path reachability of finite transition systems by cyclic proof search", "aprcheck"};
  app.require_subcommand(1);

  auto add_input = [&](CLI::App* sub, bool model_only) {
    if (!model_only) sub->add_option("--ars", o.ars_file, "ARS file (`states ...` / `trans a b` lines)");
    sub->add_option("--model", o.model_file, "guarded-transition model file");
    sub->add_option("--builtin", o.builtin, "built-in model")->check(CLI::IsMember({"peterson"}));
    sub->add_option("--max-states", o.max_states, "cap on expanded model states")->check(CLI::PositiveNumber);
  };
  auto add_engine = [&](CLI::App* sub, bool with_engine) {
    if (with_engine) {
      sub->add_option("--engine", o.engine, "prover or oracle")->check(CLI::IsMember({"prover", "oracle"}));
    }
    sub->add_option("--strategy", o.strategy, "Der premise split")
        ->check(CLI::IsMember({"eager", "singleton", "monolithic"}));
    sub->add_option("--max-nodes", o.max_nodes, "prover node budget")->check(CLI::PositiveNumber);
    sub->add_option("--emit-proof", o.emit_proof, "write the proof graph as DOT");
    sub->add_option("--emit-trace", o.emit_trace, "write the pre-proof as an indented rule trace");
    sub->add_flag("--json", o.json, "print a JSON report");
  };
  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", o.mode, "partial or total")->check(CLI::IsMember({"partial", "total"}));
  };

  CLI::App* check = app.add_subcommand("check", "decide partial or total validity of <source> => <target>");
  add_input(check, false);
  check->add_option("--source,--from", o.source, "source set");
  check->add_option("--target,--goal", o.target, "target set");
  add_mode(check);
  add_engine(check, true);
  check->add_flag("--trace", o.trace, "print the pre-proof");

  CLI::App* safety = app.add_subcommand("safety", "decide that no error state is reachable");
  add_input(safety, false);
  safety->add_option("--from,--source", o.source, "initial set");
  safety->add_option("--error", o.error, "error set");
  add_engine(safety, true);
  safety->add_flag("--trace", o.trace, "print the pre-proof");

  CLI::App* liveness = app.add_subcommand("liveness", "decide that every execution reaches the goal");
  add_input(liveness, false);
  liveness->add_option("--from,--source", o.source, "source set");
  liveness->add_option("--goal,--target", o.target, "goal set");
  add_engine(liveness, true);
  liveness->add_flag("--trace", o.trace, "print the pre-proof");

  CLI::App* expand_cmd = app.add_subcommand("expand", "expand a model into an ARS file");
  add_input(expand_cmd, true);
  expand_cmd->add_option("--out", o.out_file, "output file (default: standard output)");

  CLI::App* export_cmd = app.add_subcommand("export", "write the proof graph of a query as DOT");
  add_input(export_cmd, false);
  export_cmd->add_option("--source,--from", o.source, "source set");
  export_cmd->add_option("--target,--goal", o.target, "target set");
  add_mode(export_cmd);
  add_engine(export_cmd, false);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kHolds : kError;
  }

  try {
    if (*check) return detail::cmd_check(o, out);
    if (*safety) return detail::cmd_safety(o, out);
    if (*liveness) return detail::cmd_liveness(o, out);
    if (*expand_cmd) return detail::cmd_expand(o, out);
    return detail::cmd_export(o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
  }
  return kError;
}

}  // namespace apr::cli
