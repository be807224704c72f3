#pragma once

#include <cstddef>
#include <vector>

#include "apr/ars.hpp"

// Ground truth by enumerating execution paths one by one. Exponential, so
// only meant for a handful of states. A path is cut once it has more than
// |A| elements: it then repeats an object without having met the target and
// stands for an infinite target-free execution.

namespace apr::testing {

struct PathVerdict {
  bool partial = true;
  bool total = true;
};

namespace detail {

inline void walk(const Ars& ars, const StateSet& q, std::vector<ObjectId>& path, PathVerdict& out) {
  const ObjectId v = path.back();
  if (q.contains(v)) return;
  if (ars.is_normal_form(v)) {
    out.partial = false;
    out.total = false;
    return;
  }
  if (path.size() > ars.size()) {
    out.total = false;
    return;
  }
  for (ObjectId t : ars.successors(v)) {
    path.push_back(t);
    walk(ars, q, path, out);
    path.pop_back();
    if (!out.partial) return;
  }
}

}  // namespace detail

inline PathVerdict enumerate_paths(const Ars& ars, const StateSet& p, const StateSet& q) {
  PathVerdict out;
  for (ObjectId s : p) {
    std::vector<ObjectId> path{s};
    detail::walk(ars, q, path, out);
    if (!out.partial) break;
  }
  return out;
}

/// Every object some path from `p` visits, found by the same enumeration.
inline StateSet enumerate_reachable(const Ars& ars, const StateSet& p) {
  std::vector<char> seen(ars.size(), 0);
  std::vector<ObjectId> stack(p.begin(), p.end());
  while (!stack.empty()) {
    ObjectId v = stack.back();
    stack.pop_back();
    if (seen[v]) continue;
    seen[v] = 1;
    for (ObjectId t = 0; t < ars.size(); ++t) {
      if (ars.has_edge(v, t)) stack.push_back(t);
    }
  }
  std::vector<ObjectId> ids;
  for (ObjectId i = 0; i < ars.size(); ++i) {
    if (seen[i]) ids.push_back(i);
  }
  return StateSet(std::move(ids));
}

}  // namespace apr::testing
