#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "apr/pre_proof.hpp"

namespace apr {

/// Quotient of a closed pre-proof: open leaves disappear and every edge
/// into a bud is redirected to the bud's companion.
struct ProofGraph {
  struct Vertex {
    NodeId node;
    AprPredicate predicate;
    std::optional<RuleName> rule;
  };
  struct Edge {
    NodeId from;
    NodeId to;
    RuleName rule;

    friend bool operator==(const Edge&, const Edge&) = default;
  };

  std::vector<Vertex> vertices;  // tree preorder
  std::vector<Edge> edges;

  [[nodiscard]] std::optional<std::size_t> index_of(NodeId node) const {
    auto it = index_.find(node);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  [[nodiscard]] const Vertex& vertex(NodeId node) const { return vertices.at(index_.at(node)); }

  [[nodiscard]] std::vector<NodeId> successors(NodeId node) const {
    std::vector<NodeId> out;
    for (const Edge& e : edges) {
      if (e.from == node) out.push_back(e.to);
    }
    return out;
  }

 private:
  friend ProofGraph proof_graph(const PreProof&);
  std::unordered_map<NodeId, std::size_t> index_;
};

inline ProofGraph proof_graph(const PreProof& pp) {
  if (!pp.is_closed()) throw PreconditionError("proof graph requires a closed pre-proof");
  ProofGraph g;

  std::vector<NodeId> stack{pp.root};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    if (!pp.is_open_leaf(v)) {
      g.index_.emplace(v, g.vertices.size());
      g.vertices.push_back({v, pp.node(v).predicate, pp.node(v).rule});
    }
    if (const auto& kids = pp.node(v).children) {
      for (auto it = kids->rbegin(); it != kids->rend(); ++it) stack.push_back(*it);
    }
  }

  for (const auto& vx : g.vertices) {
    const ProofNode& n = pp.node(vx.node);
    if (!n.children) continue;
    for (NodeId c : *n.children) {
      NodeId target = pp.is_bud(c) ? pp.companion.at(c) : c;
      ProofGraph::Edge e{vx.node, target, *n.rule};
      if (std::find(g.edges.begin(), g.edges.end(), e) == g.edges.end()) g.edges.push_back(e);
    }
  }
  return g;
}

/// True iff the graph has no directed cycle.
inline bool is_acyclic(const ProofGraph& g) {
  const std::size_t n = g.vertices.size();
  std::vector<std::vector<std::size_t>> adj(n);
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& e : g.edges) {
    auto from = g.index_of(e.from);
    auto to = g.index_of(e.to);
    if (!from || !to) continue;
    adj[*from].push_back(*to);
    ++indegree[*to];
  }
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  std::size_t removed = 0;
  while (!ready.empty()) {
    std::size_t v = ready.back();
    ready.pop_back();
    ++removed;
    for (std::size_t w : adj[v]) {
      if (--indegree[w] == 0) ready.push_back(w);
    }
  }
  return removed == n;
}

/// Structural facts every proof graph satisfies: edges preserve the target;
/// Subs edges shrink into P \ Q; Der vertices relate to their premises by
/// exactly one step in both directions; Dis points at bottom; Axiom vertices
/// have an empty source and no outgoing edge.
inline std::vector<std::string> proof_graph_violations(const Ars& ars, const ProofGraph& g) {
  std::vector<std::string> out;
  auto where = [](NodeId v) { return "vertex " + std::to_string(v) + ": "; };

  for (const auto& e : g.edges) {
    const auto& from = g.vertex(e.from);
    const auto& to = g.vertex(e.to);
    if (e.rule == RuleName::Dis) {
      if (!to.predicate.is_bottom()) out.push_back(where(e.from) + "Dis edge does not point at bottom");
      continue;
    }
    if (to.predicate.is_bottom()) {
      out.push_back(where(e.from) + "non-Dis edge points at bottom");
      continue;
    }
    if (from.predicate.target() != to.predicate.target()) {
      out.push_back(where(e.from) + "edge changes the target set");
    }
    if (e.rule == RuleName::Subs &&
        !is_subset(to.predicate.source(), difference(from.predicate.source(), from.predicate.target()))) {
      out.push_back(where(e.from) + "Subs premise not contained in P \\ Q");
    }
  }

  for (const auto& vx : g.vertices) {
    std::vector<NodeId> succ = g.successors(vx.node);
    if (vx.rule == RuleName::Axiom) {
      if (!vx.predicate.source().empty()) out.push_back(where(vx.node) + "Axiom vertex has nonempty source");
      if (!succ.empty()) out.push_back(where(vx.node) + "Axiom vertex has an outgoing edge");
    }
    if (vx.rule != RuleName::Der) continue;
    StateSet premise_union;
    for (NodeId w : succ) premise_union = unite(premise_union, g.vertex(w).predicate.source());
    for (ObjectId s : vx.predicate.source()) {
      bool has_step = false;
      for (ObjectId t : ars.successors(s)) has_step = has_step || premise_union.contains(t);
      if (!has_step) out.push_back(where(vx.node) + "Der source element without a successor in the premises");
    }
    for (ObjectId t : premise_union) {
      bool has_pred = false;
      for (ObjectId s : ars.predecessors(t)) has_pred = has_pred || vx.predicate.source().contains(s);
      if (!has_pred) out.push_back(where(vx.node) + "Der premise element without a predecessor in the source");
    }
  }
  return out;
}

inline std::string render_set(const Ars& ars, const StateSet& s) {
  std::string out = "{";
  for (ObjectId id : s) {
    if (out.size() > 1) out += ',';
    out += ars.label(id);
  }
  return out + "}";
}

inline std::string render_predicate(const Ars& ars, const AprPredicate& p) {
  if (p.is_bottom()) return "BOT";
  return render_set(ars, p.source()) + " => " + render_set(ars, p.target());
}

/// Graphviz rendering; byte-for-byte deterministic for a given graph.
inline void write_dot(std::ostream& out, const Ars& ars, const ProofGraph& g) {
  out << "digraph proof {\n";
  for (const auto& vx : g.vertices) {
    out << "  n" << vx.node << " [label=\"" << render_predicate(ars, vx.predicate) << '"';
    if (vx.predicate.is_bottom()) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (const auto& e : g.edges) {
    out << "  n" << e.from << " -> n" << e.to << " [label=\"" << to_string(e.rule) << "\"];\n";
  }
  out << "}\n";
}

inline std::string to_dot(const Ars& ars, const ProofGraph& g) {
  std::ostringstream out;
  write_dot(out, ars, g);
  return out.str();
}

/// Indented rule trace of a pre-proof, one node per line.
inline void write_trace(std::ostream& out, const Ars& ars, const PreProof& pp) {
  struct Item {
    NodeId node;
    std::size_t depth;
  };
  std::vector<Item> stack{{pp.root, 0}};
  while (!stack.empty()) {
    auto [v, depth] = stack.back();
    stack.pop_back();
    const ProofNode& n = pp.node(v);
    out << std::string(depth * 2, ' ') << 'v' << v << ": " << render_predicate(ars, n.predicate);
    if (n.rule) {
      out << "  (" << to_string(*n.rule) << ')';
    } else if (pp.is_bud(v)) {
      out << "  [bud -> v" << pp.companion.at(v) << ']';
    } else if (pp.is_open_leaf(v)) {
      out << "  [open]";
    }
    out << '\n';
    if (n.children) {
      for (auto it = n.children->rbegin(); it != n.children->rend(); ++it) stack.push_back({*it, depth + 1});
    }
  }
}

}  // namespace apr
