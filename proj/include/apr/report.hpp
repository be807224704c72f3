#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "apr/prover.hpp"

namespace apr {

struct WitnessReport {
  std::string kind;  // "path" or "lasso"
  std::vector<std::string> path;
  std::vector<std::string> stem;
  std::vector<std::string> cycle;

  friend bool operator==(const WitnessReport&, const WitnessReport&) = default;
};

struct StatsReport {
  std::size_t nodes = 0;
  std::size_t buds = 0;
  std::size_t axiom = 0;
  std::size_t subs = 0;
  std::size_t der = 0;
  std::size_t dis = 0;
  std::size_t graph_vertices = 0;
  std::size_t graph_edges = 0;
  bool acyclic = true;

  friend bool operator==(const StatsReport&, const StatsReport&) = default;
};

/// Everything one CLI invocation decided, in a form that survives JSON.
struct RunReport {
  std::string command;
  std::string input;
  std::optional<std::string> source;
  std::optional<std::string> target;
  std::optional<std::string> error;
  std::string mode;
  std::string engine;
  std::optional<std::string> strategy;
  std::string verdict;
  std::optional<WitnessReport> witness;
  std::optional<StatsReport> stats;
  double timing_ms = 0.0;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

inline WitnessReport make_witness_report(const Ars& ars, const Witness& w) {
  WitnessReport r;
  if (const auto* path = std::get_if<ExecutionPath>(&w)) {
    r.kind = "path";
    r.path = ars.labels_of(path->steps);
  } else {
    const Lasso& lasso = std::get<Lasso>(w);
    r.kind = "lasso";
    r.stem = ars.labels_of(lasso.stem);
    r.cycle = ars.labels_of(lasso.cycle);
  }
  return r;
}

inline StatsReport make_stats_report(const ProofStats& s, const ProofGraph& g) {
  StatsReport r;
  r.nodes = s.nodes;
  r.buds = s.buds;
  r.axiom = s.count(RuleName::Axiom);
  r.subs = s.count(RuleName::Subs);
  r.der = s.count(RuleName::Der);
  r.dis = s.count(RuleName::Dis);
  r.graph_vertices = g.vertices.size();
  r.graph_edges = g.edges.size();
  r.acyclic = is_acyclic(g);
  return r;
}

namespace detail {

template <typename T>
void put_optional(nlohmann::json& j, const char* key, const std::optional<T>& v) {
  if (v) {
    j[key] = *v;
  } else {
    j[key] = nullptr;
  }
}

template <typename T>
void get_optional(const nlohmann::json& j, const char* key, std::optional<T>& v) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) {
    v = it->get<T>();
  } else {
    v.reset();
  }
}

}  // namespace detail

inline void to_json(nlohmann::json& j, const WitnessReport& w) {
  j = nlohmann::json{{"kind", w.kind}};
  if (w.kind == "path") {
    j["path"] = w.path;
  } else {
    j["stem"] = w.stem;
    j["cycle"] = w.cycle;
  }
}

inline void from_json(const nlohmann::json& j, WitnessReport& w) {
  w = {};
  j.at("kind").get_to(w.kind);
  if (w.kind == "path") {
    j.at("path").get_to(w.path);
  } else if (w.kind == "lasso") {
    j.at("stem").get_to(w.stem);
    j.at("cycle").get_to(w.cycle);
  } else {
    throw InputError("unknown witness kind '" + w.kind + "'");
  }
}

inline void to_json(nlohmann::json& j, const StatsReport& s) {
  j = nlohmann::json{{"nodes", s.nodes},
                     {"buds", s.buds},
                     {"rules", {{"Axiom", s.axiom}, {"Subs", s.subs}, {"Der", s.der}, {"Dis", s.dis}}},
                     {"graph_vertices", s.graph_vertices},
                     {"graph_edges", s.graph_edges},
                     {"acyclic", s.acyclic}};
}

inline void from_json(const nlohmann::json& j, StatsReport& s) {
  j.at("nodes").get_to(s.nodes);
  j.at("buds").get_to(s.buds);
  const auto& rules = j.at("rules");
  rules.at("Axiom").get_to(s.axiom);
  rules.at("Subs").get_to(s.subs);
  rules.at("Der").get_to(s.der);
  rules.at("Dis").get_to(s.dis);
  j.at("graph_vertices").get_to(s.graph_vertices);
  j.at("graph_edges").get_to(s.graph_edges);
  j.at("acyclic").get_to(s.acyclic);
}

inline void to_json(nlohmann::json& j, const RunReport& r) {
  j = nlohmann::json{{"command", r.command}, {"input", r.input},       {"mode", r.mode},
                     {"engine", r.engine},   {"verdict", r.verdict},   {"timing_ms", r.timing_ms}};
  detail::put_optional(j, "source", r.source);
  detail::put_optional(j, "target", r.target);
  detail::put_optional(j, "error", r.error);
  detail::put_optional(j, "strategy", r.strategy);
  detail::put_optional(j, "witness", r.witness);
  detail::put_optional(j, "stats", r.stats);
}

inline void from_json(const nlohmann::json& j, RunReport& r) {
  j.at("command").get_to(r.command);
  j.at("input").get_to(r.input);
  j.at("mode").get_to(r.mode);
  j.at("engine").get_to(r.engine);
  j.at("verdict").get_to(r.verdict);
  j.at("timing_ms").get_to(r.timing_ms);
  detail::get_optional(j, "source", r.source);
  detail::get_optional(j, "target", r.target);
  detail::get_optional(j, "error", r.error);
  detail::get_optional(j, "strategy", r.strategy);
  detail::get_optional(j, "witness", r.witness);
  detail::get_optional(j, "stats", r.stats);
}

}  // namespace apr
