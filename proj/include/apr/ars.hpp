#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "apr/error.hpp"
#include "apr/state_set.hpp"

namespace apr {

struct Transition {
  ObjectId from;
  ObjectId to;
};

inline bool is_valid_label(std::string_view label) noexcept {
  if (label.empty()) return false;
  return std::all_of(label.begin(), label.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '.' || c == '<' || c == '>' || c == ',' || c == '-';
  });
}

/// A finite abstract reduction system: objects 0..n-1 with unique labels and
/// a rewrite relation stored as sorted, duplicate-free successor lists.
/// Immutable once built.
class Ars {
 public:
  Ars(std::vector<std::string> labels, std::span<const Transition> transitions)
      : labels_(std::move(labels)), successors_(labels_.size()), predecessors_(labels_.size()) {
    index_.reserve(labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (!is_valid_label(labels_[i])) {
        throw InputError("invalid object label '" + labels_[i] + "'");
      }
      if (!index_.emplace(labels_[i], static_cast<ObjectId>(i)).second) {
        throw InputError("duplicate object label '" + labels_[i] + "'");
      }
    }
    for (const Transition& t : transitions) {
      if (t.from >= labels_.size() || t.to >= labels_.size()) {
        throw InputError("transition endpoint is not a declared object");
      }
      successors_[t.from].push_back(t.to);
      predecessors_[t.to].push_back(t.from);
    }
    std::vector<ObjectId> nf;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      canonicalize(successors_[i]);
      canonicalize(predecessors_[i]);
      edge_count_ += successors_[i].size();
      if (successors_[i].empty()) nf.push_back(static_cast<ObjectId>(i));
    }
    normal_forms_ = StateSet(std::move(nf));
  }

  [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
  [[nodiscard]] std::size_t edge_count() const noexcept { return edge_count_; }

  [[nodiscard]] const std::string& label(ObjectId id) const { return labels_.at(id); }
  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }

  [[nodiscard]] std::optional<ObjectId> find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  [[nodiscard]] ObjectId id(std::string_view label) const {
    if (auto found = find(label)) return *found;
    throw InputError("unknown object label '" + std::string(label) + "'");
  }

  [[nodiscard]] std::span<const ObjectId> successors(ObjectId id) const { return successors_.at(id); }
  [[nodiscard]] std::span<const ObjectId> predecessors(ObjectId id) const { return predecessors_.at(id); }

  [[nodiscard]] bool has_edge(ObjectId from, ObjectId to) const {
    auto succ = successors(from);
    return std::binary_search(succ.begin(), succ.end(), to);
  }

  [[nodiscard]] bool is_normal_form(ObjectId id) const { return successors_.at(id).empty(); }
  [[nodiscard]] const StateSet& normal_forms() const noexcept { return normal_forms_; }

  [[nodiscard]] StateSet all_objects() const {
    std::vector<ObjectId> ids(labels_.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<ObjectId>(i);
    return StateSet(std::move(ids));
  }

  /// Every edge in (source id, target id) order.
  [[nodiscard]] std::vector<Transition> transitions() const {
    std::vector<Transition> out;
    out.reserve(edge_count_);
    for (std::size_t i = 0; i < successors_.size(); ++i) {
      for (ObjectId t : successors_[i]) out.push_back({static_cast<ObjectId>(i), t});
    }
    return out;
  }

  [[nodiscard]] StateSet set_of(std::span<const std::string> labels) const {
    std::vector<ObjectId> ids;
    ids.reserve(labels.size());
    for (const auto& l : labels) ids.push_back(id(l));
    return StateSet(std::move(ids));
  }

  [[nodiscard]] StateSet set_of(std::initializer_list<std::string> labels) const {
    return set_of(std::span<const std::string>(labels.begin(), labels.size()));
  }

  [[nodiscard]] std::vector<std::string> labels_of(std::span<const ObjectId> ids) const {
    std::vector<std::string> out;
    out.reserve(ids.size());
    for (ObjectId i : ids) out.push_back(label(i));
    return out;
  }

  void require_members(const StateSet& s) const {
    if (!s.empty() && s.ids().back() >= labels_.size()) {
      throw InputError("unknown object id " + std::to_string(s.ids().back()));
    }
  }

  friend bool operator==(const Ars& a, const Ars& b) {
    return a.labels_ == b.labels_ && a.successors_ == b.successors_;
  }

 private:
  static void canonicalize(std::vector<ObjectId>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  std::vector<std::string> labels_;
  std::unordered_map<std::string, ObjectId> index_;
  std::vector<std::vector<ObjectId>> successors_;
  std::vector<std::vector<ObjectId>> predecessors_;
  StateSet normal_forms_;
  std::size_t edge_count_ = 0;
};

/// Finite prefix of a reduction sequence. `is_maximal` marks a path ending in
/// a normal form, i.e. a complete finite execution path.
struct ExecutionPath {
  std::vector<ObjectId> steps;
  bool is_maximal = false;

  friend bool operator==(const ExecutionPath&, const ExecutionPath&) = default;
};

/// Returns a description of the first broken invariant, if any.
inline std::optional<std::string> path_violation(const Ars& ars, const ExecutionPath& path) {
  if (path.steps.empty()) return "execution path is empty";
  for (ObjectId s : path.steps) {
    if (s >= ars.size()) return "execution path mentions unknown object " + std::to_string(s);
  }
  for (std::size_t i = 0; i + 1 < path.steps.size(); ++i) {
    if (!ars.has_edge(path.steps[i], path.steps[i + 1])) {
      return "no edge " + ars.label(path.steps[i]) + " -> " + ars.label(path.steps[i + 1]);
    }
  }
  if (path.is_maximal && !ars.is_normal_form(path.steps.back())) {
    return "maximal path ends in reducible object " + ars.label(path.steps.back());
  }
  return std::nullopt;
}

/// D(P): one-step successors of P.
inline StateSet derivative(const Ars& ars, const StateSet& p) {
  ars.require_members(p);
  std::vector<ObjectId> out;
  for (ObjectId s : p) {
    auto succ = ars.successors(s);
    out.insert(out.end(), succ.begin(), succ.end());
  }
  return StateSet(std::move(out));
}

/// P is nonempty and contains no normal form.
inline bool is_runnable(const Ars& ars, const StateSet& p) {
  ars.require_members(p);
  return !p.empty() && !intersects(p, ars.normal_forms());
}

namespace detail {

// Breadth-first closure of `start` restricted to objects accepted by `keep`.
template <typename Keep>
StateSet closure(const Ars& ars, const StateSet& start, Keep keep) {
  std::vector<char> seen(ars.size(), 0);
  std::deque<ObjectId> queue;
  std::vector<ObjectId> out;
  for (ObjectId s : start) {
    if (!keep(s)) continue;
    seen[s] = 1;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    ObjectId s = queue.front();
    queue.pop_front();
    out.push_back(s);
    for (ObjectId t : ars.successors(s)) {
      if (!seen[t] && keep(t)) {
        seen[t] = 1;
        queue.push_back(t);
      }
    }
  }
  return StateSet(std::move(out));
}

}  // namespace detail

/// Objects reachable from P in zero or more steps.
inline StateSet reachable(const Ars& ars, const StateSet& p) {
  ars.require_members(p);
  return detail::closure(ars, p, [](ObjectId) { return true; });
}

/// Objects reachable from P \ Q along paths that never touch Q.
inline StateSet avoiding_region(const Ars& ars, const StateSet& p, const StateSet& q) {
  ars.require_members(p);
  ars.require_members(q);
  return detail::closure(ars, p, [&q](ObjectId s) { return !q.contains(s); });
}

}  // namespace apr
