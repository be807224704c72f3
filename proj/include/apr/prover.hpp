#pragma once

#include <array>
#include <cstddef>
#include <deque>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "apr/proof_graph.hpp"
#include "apr/witness.hpp"

namespace apr {

struct ProverConfig {
  SplitStrategy strategy = SplitStrategy::Eager;
  std::size_t node_budget = 1'000'000;
};

struct ProofStats {
  std::size_t nodes = 0;
  std::size_t buds = 0;
  std::array<std::size_t, 4> rule_counts{};  // indexed by RuleName

  [[nodiscard]] std::size_t count(RuleName r) const { return rule_counts[static_cast<std::size_t>(r)]; }
};

inline ProofStats proof_stats(const PreProof& pp) {
  ProofStats stats;
  stats.nodes = pp.nodes.size();
  for (NodeId v = 0; v < pp.nodes.size(); ++v) {
    if (pp.nodes[v].rule) ++stats.rule_counts[static_cast<std::size_t>(*pp.nodes[v].rule)];
    if (pp.is_bud(v)) ++stats.buds;
  }
  return stats;
}

/// Breadth-first construction of a closed pre-proof. Each dequeued node is
/// first matched against the Der nodes built so far (earliest identical
/// predicate becomes its companion); otherwise the unique applicable rule is
/// applied and its premises are enqueued. Terminates on every finite Ars
/// because Der nodes carry pairwise distinct predicates.
inline PreProof prove(const Ars& ars, const AprPredicate& pred, const ProverConfig& cfg = {}) {
  if (pred.is_bottom()) throw PreconditionError("cannot prove the bottom predicate");
  if (cfg.node_budget < 1) throw InputError("node budget must be at least 1");
  require_members(ars, pred);

  PreProof pp;
  std::unordered_map<AprPredicate, NodeId, AprPredicateHash> der_nodes;
  std::vector<StateSet> der_sources;
  std::deque<NodeId> queue;

  auto create = [&](AprPredicate a) {
    if (pp.nodes.size() >= cfg.node_budget) {
      throw ResourceError("node budget of " + std::to_string(cfg.node_budget) + " exceeded");
    }
    pp.nodes.push_back({std::move(a), std::nullopt, std::nullopt});
    return pp.nodes.size() - 1;
  };

  pp.root = create(pred);
  queue.push_back(pp.root);
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    const AprPredicate a = pp.nodes[v].predicate;

    if (auto it = der_nodes.find(a); it != der_nodes.end()) {
      pp.companion.emplace(v, it->second);
      continue;
    }
    const RuleName rule = applicable_rule(ars, a);
    if (rule == RuleName::Der) {
      der_nodes.emplace(a, v);
      der_sources.push_back(a.source());
    }
    RuleApplication app = premises(ars, a, cfg.strategy, der_sources);
    std::vector<NodeId> kids;
    kids.reserve(app.premises.size());
    for (AprPredicate& premise : app.premises) {
      const bool bottom = premise.is_bottom();
      NodeId c = create(std::move(premise));
      kids.push_back(c);
      if (!bottom) queue.push_back(c);
    }
    pp.nodes[v].rule = rule;
    pp.nodes[v].children = std::move(kids);
  }
  return pp;
}

enum class VerdictKind { PartiallyValid, NotPartiallyValid, TotallyValid, NotTotallyValid };

inline std::string_view to_string(VerdictKind k) noexcept {
  switch (k) {
    case VerdictKind::PartiallyValid: return "PartiallyValid";
    case VerdictKind::NotPartiallyValid: return "NotPartiallyValid";
    case VerdictKind::TotallyValid: return "TotallyValid";
    case VerdictKind::NotTotallyValid: return "NotTotallyValid";
  }
  return "?";
}

inline bool holds(VerdictKind k) noexcept {
  return k == VerdictKind::PartiallyValid || k == VerdictKind::TotallyValid;
}

struct Verdict {
  VerdictKind kind;
  PreProof pre_proof;
  std::optional<Witness> witness;
  ProofStats stats;
};

/// Concrete counterexample read off a disproof: take the first Dis node,
/// pick an irreducible non-target object of its source, and walk the tree
/// path back to the root choosing a predecessor at every Der step.
inline ExecutionPath extract_finite_counterexample(const Ars& ars, const PreProof& disproof) {
  std::optional<NodeId> dis;
  for (NodeId v = 0; v < disproof.nodes.size() && !dis; ++v) {
    if (disproof.nodes[v].rule == RuleName::Dis) dis = v;
  }
  if (!dis) throw PreconditionError("pre-proof contains no Dis node");

  const AprPredicate& stuck = disproof.node(*dis).predicate;
  StateSet candidates = difference(intersect(stuck.source(), ars.normal_forms()), stuck.target());
  if (candidates.empty()) throw PreconditionError("Dis node violates its side condition");

  const auto parents = disproof.parents();
  std::vector<ObjectId> backwards{candidates.front()};
  NodeId v = *dis;
  for (; parents[v]; v = *parents[v]) {
    const NodeId up = *parents[v];
    const ProofNode& parent = disproof.node(up);
    const ObjectId current = backwards.back();
    if (parent.rule == RuleName::Der) {
      std::optional<ObjectId> pick;
      for (ObjectId s : ars.predecessors(current)) {
        if (parent.predicate.source().contains(s)) {
          pick = s;
          break;
        }
      }
      if (!pick) throw PreconditionError("Der step without a predecessor in the tree");
      backwards.push_back(*pick);
    } else if (!parent.predicate.source().contains(current)) {
      throw PreconditionError("Subs step does not preserve the witness object");
    }
  }
  if (v != disproof.root) throw PreconditionError("Dis node is not attached to the root");
  std::reverse(backwards.begin(), backwards.end());
  return {std::move(backwards), true};
}

/// Lasso in the target-avoiding region of the query.
inline Lasso extract_lasso(const Ars& ars, const AprPredicate& pred) {
  require_members(ars, pred);
  if (auto lasso = find_lasso(ars, pred.source(), pred.target())) return *std::move(lasso);
  throw PreconditionError("no cycle in the target-avoiding region");
}

inline Verdict check_partial(const Ars& ars, const AprPredicate& pred, const ProverConfig& cfg = {}) {
  PreProof pp = prove(ars, pred, cfg);
  Verdict v{VerdictKind::PartiallyValid, std::move(pp), std::nullopt, {}};
  v.stats = proof_stats(v.pre_proof);
  if (v.pre_proof.has_rule(RuleName::Dis)) {
    v.kind = VerdictKind::NotPartiallyValid;
    v.witness = extract_finite_counterexample(ars, v.pre_proof);
  }
  return v;
}

/// Total validity: a disproof refutes it outright; otherwise the single
/// proof decides it by acyclicity of its proof graph.
inline Verdict check_total(const Ars& ars, const AprPredicate& pred, const ProverConfig& cfg = {}) {
  PreProof pp = prove(ars, pred, cfg);
  Verdict v{VerdictKind::TotallyValid, std::move(pp), std::nullopt, {}};
  v.stats = proof_stats(v.pre_proof);
  if (v.pre_proof.has_rule(RuleName::Dis)) {
    v.kind = VerdictKind::NotTotallyValid;
    v.witness = extract_finite_counterexample(ars, v.pre_proof);
  } else if (!is_acyclic(proof_graph(v.pre_proof))) {
    v.kind = VerdictKind::NotTotallyValid;
    v.witness = extract_lasso(ars, pred);
  }
  return v;
}

}  // namespace apr
