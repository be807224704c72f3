#pragma once

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "apr/rules.hpp"

namespace apr {

/// Finite representation of an infinite path: stem, then cycle forever.
struct Lasso {
  std::vector<ObjectId> stem;
  std::vector<ObjectId> cycle;

  friend bool operator==(const Lasso&, const Lasso&) = default;
};

/// Counterexample to a validity claim: a finite maximal target-free path
/// (partial and total validity) or a target-free lasso (total validity).
using Witness = std::variant<ExecutionPath, Lasso>;

/// Checks `w` against ⟨P⟩⇒⟨Q⟩: it must start in P, avoid Q, follow edges,
/// and be maximal (path) or close its loop (lasso).
inline std::optional<std::string> witness_violation(const Ars& ars, const AprPredicate& pred, const Witness& w) {
  const StateSet& p = pred.source();
  const StateSet& q = pred.target();
  if (const auto* path = std::get_if<ExecutionPath>(&w)) {
    if (auto bad = path_violation(ars, *path)) return bad;
    if (!path->is_maximal) return "finite witness is not maximal";
    if (!p.contains(path->steps.front())) return "finite witness does not start in the source set";
    for (ObjectId s : path->steps) {
      if (q.contains(s)) return "finite witness visits target object " + ars.label(s);
    }
    return std::nullopt;
  }
  const Lasso& lasso = std::get<Lasso>(w);
  if (lasso.cycle.empty()) return "lasso cycle is empty";
  std::vector<ObjectId> walk = lasso.stem;
  walk.insert(walk.end(), lasso.cycle.begin(), lasso.cycle.end());
  walk.push_back(lasso.cycle.front());
  for (ObjectId s : walk) {
    if (s >= ars.size()) return "lasso mentions unknown object " + std::to_string(s);
    if (q.contains(s)) return "lasso visits target object " + ars.label(s);
  }
  if (!p.contains(walk.front())) return "lasso does not start in the source set";
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
    if (!ars.has_edge(walk[i], walk[i + 1])) {
      return "lasso uses missing edge " + ars.label(walk[i]) + " -> " + ars.label(walk[i + 1]);
    }
  }
  return std::nullopt;
}

namespace detail {

// Vertices of `region` lying on a directed cycle of the induced subgraph
// (Tarjan SCCs: nontrivial components plus self-loops).
inline std::vector<char> on_cycle(const Ars& ars, const StateSet& region) {
  const std::size_t n = ars.size();
  constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<char> on_stack(n, 0), result(n, 0);
  std::vector<ObjectId> scc_stack;
  std::size_t counter = 0;

  struct Frame {
    ObjectId v;
    std::size_t next;
  };
  for (ObjectId root : region) {
    if (index[root] != kUnvisited) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    scc_stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      auto succ = ars.successors(f.v);
      if (f.next < succ.size()) {
        ObjectId w = succ[f.next++];
        if (!region.contains(w)) continue;
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          scc_stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      ObjectId v = f.v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      if (low[v] != index[v]) continue;
      std::vector<ObjectId> component;
      ObjectId w;
      do {
        w = scc_stack.back();
        scc_stack.pop_back();
        on_stack[w] = 0;
        component.push_back(w);
      } while (w != v);
      if (component.size() > 1 || ars.has_edge(v, v)) {
        for (ObjectId x : component) result[x] = 1;
      }
    }
  }
  return result;
}

// Shortest path from `from` back to itself inside `allowed` (BFS, successors
// in id order). Returns the cycle starting at `from`.
template <typename Allowed>
std::vector<ObjectId> shortest_cycle_through(const Ars& ars, ObjectId from, Allowed allowed) {
  std::vector<std::optional<ObjectId>> parent(ars.size());
  std::vector<char> seen(ars.size(), 0);
  std::deque<ObjectId> queue;
  for (ObjectId t : ars.successors(from)) {
    if (t == from) return {from};
    if (allowed(t) && !seen[t]) {
      seen[t] = 1;
      queue.push_back(t);
    }
  }
  while (!queue.empty()) {
    ObjectId v = queue.front();
    queue.pop_front();
    for (ObjectId t : ars.successors(v)) {
      if (t == from) {
        std::vector<ObjectId> back{v};
        for (auto u = parent[v]; u; u = parent[*u]) back.push_back(*u);
        back.push_back(from);
        std::reverse(back.begin(), back.end());
        return back;
      }
      if (allowed(t) && !seen[t]) {
        seen[t] = 1;
        parent[t] = v;
        queue.push_back(t);
      }
    }
  }
  return {};
}

}  // namespace detail

/// Target-free lasso from P, if one exists: the entry vertex is the nearest
/// cycle vertex reachable from P \ Q (smallest id among equally near ones),
/// the stem is a shortest path to it, the cycle a shortest loop through it.
inline std::optional<Lasso> find_lasso(const Ars& ars, const StateSet& p, const StateSet& q) {
  const StateSet region = avoiding_region(ars, p, q);
  const std::vector<char> cyclic = detail::on_cycle(ars, region);

  std::vector<std::optional<ObjectId>> parent(ars.size());
  std::vector<char> seen(ars.size(), 0);
  std::vector<ObjectId> layer;
  for (ObjectId s : difference(p, q)) {
    seen[s] = 1;
    layer.push_back(s);
  }
  std::optional<ObjectId> entry;
  while (!layer.empty() && !entry) {
    for (ObjectId v : layer) {
      if (cyclic[v] && (!entry || v < *entry)) entry = v;
    }
    if (entry) break;
    std::vector<ObjectId> next;
    for (ObjectId v : layer) {
      for (ObjectId t : ars.successors(v)) {
        if (!seen[t] && !q.contains(t)) {
          seen[t] = 1;
          parent[t] = v;
          next.push_back(t);
        }
      }
    }
    std::sort(next.begin(), next.end());
    layer = std::move(next);
  }
  if (!entry) return std::nullopt;

  Lasso lasso;
  for (auto u = parent[*entry]; u; u = parent[*u]) lasso.stem.push_back(*u);
  std::reverse(lasso.stem.begin(), lasso.stem.end());
  lasso.cycle = detail::shortest_cycle_through(ars, *entry, [&](ObjectId t) { return cyclic[t] && region.contains(t); });
  return lasso;
}

/// Shortest maximal Q-free path from P \ Q to a normal form, if any.
inline std::optional<ExecutionPath> find_stuck_path(const Ars& ars, const StateSet& p, const StateSet& q) {
  ars.require_members(p);
  ars.require_members(q);
  std::vector<std::optional<ObjectId>> parent(ars.size());
  std::vector<char> seen(ars.size(), 0);
  std::deque<ObjectId> queue;
  for (ObjectId s : difference(p, q)) {
    seen[s] = 1;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    ObjectId v = queue.front();
    queue.pop_front();
    if (ars.is_normal_form(v)) {
      ExecutionPath path{{v}, true};
      for (auto u = parent[v]; u; u = parent[*u]) path.steps.push_back(*u);
      std::reverse(path.steps.begin(), path.steps.end());
      return path;
    }
    for (ObjectId t : ars.successors(v)) {
      if (!seen[t] && !q.contains(t)) {
        seen[t] = 1;
        parent[t] = v;
        queue.push_back(t);
      }
    }
  }
  return std::nullopt;
}

/// `a -> d` for paths; `a -> (b -> a)*` for stem [] and cycle [a, b].
inline std::string render_witness(const Ars& ars, const Witness& w) {
  std::string out;
  auto append = [&](ObjectId id) {
    if (!out.empty()) out += " -> ";
    out += ars.label(id);
  };
  if (const auto* path = std::get_if<ExecutionPath>(&w)) {
    for (ObjectId s : path->steps) append(s);
    return out;
  }
  const Lasso& lasso = std::get<Lasso>(w);
  for (ObjectId s : lasso.stem) append(s);
  append(lasso.cycle.front());
  std::string loop;
  for (std::size_t i = 1; i <= lasso.cycle.size(); ++i) {
    if (!loop.empty()) loop += " -> ";
    loop += ars.label(lasso.cycle[i % lasso.cycle.size()]);
  }
  out += " -> (" + loop + ")*";
  return out;
}

}  // namespace apr
