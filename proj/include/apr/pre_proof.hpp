#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "apr/rules.hpp"

namespace apr {

using NodeId = std::size_t;

/// One node of a derivation tree. `children` is undefined (nullopt) for
/// nodes no rule was applied to; Axiom nodes carry an empty child list.
struct ProofNode {
  AprPredicate predicate;
  std::optional<RuleName> rule;
  std::optional<std::vector<NodeId>> children;

  friend bool operator==(const ProofNode&, const ProofNode&) = default;
};

/// A finite derivation tree plus the bud → companion map.
struct PreProof {
  std::vector<ProofNode> nodes;
  NodeId root = 0;
  std::map<NodeId, NodeId> companion;

  [[nodiscard]] const ProofNode& node(NodeId v) const { return nodes.at(v); }

  [[nodiscard]] bool is_leaf(NodeId v) const {
    const auto& c = nodes.at(v).children;
    return !c || c->empty();
  }

  [[nodiscard]] bool is_closed_leaf(NodeId v) const {
    const ProofNode& n = nodes.at(v);
    return (n.children && n.children->empty()) || n.predicate.is_bottom();
  }

  [[nodiscard]] bool is_open_leaf(NodeId v) const { return is_leaf(v) && !is_closed_leaf(v); }

  [[nodiscard]] bool is_bud(NodeId v) const { return is_open_leaf(v) && companion.contains(v); }

  [[nodiscard]] std::vector<NodeId> open_leaves() const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < nodes.size(); ++v) {
      if (is_open_leaf(v)) out.push_back(v);
    }
    return out;
  }

  [[nodiscard]] bool has_rule(RuleName r) const {
    return std::any_of(nodes.begin(), nodes.end(), [r](const ProofNode& n) { return n.rule == r; });
  }

  /// Every leaf is closed or a bud.
  [[nodiscard]] bool is_closed() const {
    for (NodeId v = 0; v < nodes.size(); ++v) {
      if (is_open_leaf(v) && !companion.contains(v)) return false;
    }
    return true;
  }

  /// Parent of every node (nullopt for the root and for unattached nodes).
  [[nodiscard]] std::vector<std::optional<NodeId>> parents() const {
    std::vector<std::optional<NodeId>> out(nodes.size());
    for (NodeId v = 0; v < nodes.size(); ++v) {
      if (!nodes[v].children) continue;
      for (NodeId c : *nodes[v].children) {
        if (c < nodes.size()) out[c] = v;
      }
    }
    return out;
  }
};

enum class PreProofKind { Proof, Disproof, Open };

inline std::string_view to_string(PreProofKind k) noexcept {
  switch (k) {
    case PreProofKind::Proof: return "proof";
    case PreProofKind::Disproof: return "disproof";
    case PreProofKind::Open: return "open";
  }
  return "?";
}

struct Violation {
  std::optional<NodeId> node;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  PreProofKind kind = PreProofKind::Open;

  [[nodiscard]] bool valid() const noexcept { return violations.empty(); }

  [[nodiscard]] bool mentions(std::string_view fragment) const {
    return std::any_of(violations.begin(), violations.end(),
                       [fragment](const Violation& v) { return v.message.find(fragment) != std::string::npos; });
  }
};

namespace detail {

inline void check_rule_instance(const Ars& ars, const PreProof& pp, NodeId v, ValidationReport& report) {
  const ProofNode& n = pp.nodes[v];
  auto fail = [&](std::string msg) { report.violations.push_back({v, std::move(msg)}); };

  if (n.predicate.is_bottom()) {
    if (n.rule) fail("bottom node must not carry a rule");
    if (n.children) fail("bottom node must not have children");
    return;
  }
  if (!n.rule) {
    if (n.children) fail("children defined without a rule");
    return;
  }
  if (!n.children) {
    fail("rule applied but children undefined");
    return;
  }
  const RuleName rule = *n.rule;
  const StateSet& p = n.predicate.source();
  const StateSet& q = n.predicate.target();
  const auto& kids = *n.children;
  if (!side_condition_holds(ars, n.predicate, rule)) {
    fail("side condition of " + std::string(to_string(rule)) + " does not hold");
  }

  std::vector<const AprPredicate*> premises;
  for (NodeId c : kids) {
    if (c >= pp.nodes.size()) {
      fail("child index out of range");
      return;
    }
    premises.push_back(&pp.nodes[c].predicate);
  }

  switch (rule) {
    case RuleName::Axiom:
      if (!kids.empty()) fail("Axiom must have no premises");
      return;
    case RuleName::Dis:
      if (kids.size() != 1 || !premises[0]->is_bottom()) fail("Dis must have the single premise bottom");
      return;
    case RuleName::Subs:
    case RuleName::Der:
      break;
  }

  if (kids.empty()) {
    fail(std::string(to_string(rule)) + " needs at least one premise");
    return;
  }
  StateSet covered;
  for (const AprPredicate* c : premises) {
    if (c->is_bottom()) {
      fail("bottom premise under " + std::string(to_string(rule)));
      return;
    }
    if (c->target() != q) fail("premise target differs from the conclusion target");
    covered = unite(covered, c->source());
  }
  if (rule == RuleName::Subs) {
    if (covered != difference(p, q)) fail("Subs premises do not cover exactly P \\ Q");
    if (kids.size() > 1) {
      for (const AprPredicate* c : premises) {
        if (c->source().empty() || !is_subset(c->source(), p)) fail("Subs split part must satisfy 0 < P_i <= P");
      }
    }
  } else {
    if (covered != derivative(ars, p)) fail("Der premises do not cover exactly D(P)");
    for (const AprPredicate* c : premises) {
      if (c->source().empty()) fail("Der split part must be nonempty");
    }
  }
}

}  // namespace detail

/// Checks every rule instance and bud link of `pp` and classifies it:
/// disproof if some node uses Dis, proof if every open leaf is a bud,
/// open otherwise. Violations are collected, never thrown.
inline ValidationReport validate_pre_proof(const Ars& ars, const PreProof& pp) {
  ValidationReport report;
  auto fail = [&](std::optional<NodeId> v, std::string msg) { report.violations.push_back({v, std::move(msg)}); };

  if (pp.nodes.empty()) {
    fail(std::nullopt, "pre-proof has no nodes");
    return report;
  }
  if (pp.root >= pp.nodes.size()) {
    fail(std::nullopt, "root index out of range");
    return report;
  }

  // Tree shape: every node reached exactly once from the root.
  std::vector<int> visits(pp.nodes.size(), 0);
  std::vector<NodeId> stack{pp.root};
  visits[pp.root] = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    if (!pp.nodes[v].children) continue;
    for (NodeId c : *pp.nodes[v].children) {
      if (c >= pp.nodes.size()) continue;
      if (++visits[c] == 1) stack.push_back(c);
    }
  }
  for (NodeId v = 0; v < pp.nodes.size(); ++v) {
    if (visits[v] == 0) fail(v, "node is not reachable from the root");
    if (visits[v] > 1) fail(v, "node has more than one parent");
  }

  for (NodeId v = 0; v < pp.nodes.size(); ++v) {
    try {
      detail::check_rule_instance(ars, pp, v, report);
    } catch (const std::exception& e) {
      fail(v, e.what());
    }
  }

  for (const auto& [bud, comp] : pp.companion) {
    if (bud >= pp.nodes.size() || comp >= pp.nodes.size()) {
      fail(bud, "bud or companion index out of range");
      continue;
    }
    if (!pp.is_open_leaf(bud)) fail(bud, "bud must be an open leaf");
    if (pp.is_open_leaf(comp)) fail(bud, "companion must not be an open leaf");
    if (pp.nodes[bud].predicate != pp.nodes[comp].predicate) fail(bud, "bud predicate differs from its companion");
    if (pp.nodes[comp].rule != RuleName::Der) fail(bud, "companion rule must be Der");
  }

  if (pp.has_rule(RuleName::Dis)) {
    report.kind = PreProofKind::Disproof;
  } else if (pp.is_closed()) {
    report.kind = PreProofKind::Proof;
  } else {
    report.kind = PreProofKind::Open;
  }
  return report;
}

}  // namespace apr
