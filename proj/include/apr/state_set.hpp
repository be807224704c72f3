#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iterator>
#include <span>
#include <vector>

namespace apr {

/// Dense index of an object in its owning Ars.
using ObjectId = std::uint32_t;

/// A finite set of objects in canonical form (sorted, duplicate-free), so
/// that extensional equality coincides with representation equality.
class StateSet {
 public:
  using const_iterator = std::vector<ObjectId>::const_iterator;

  StateSet() = default;
  StateSet(std::initializer_list<ObjectId> ids) : StateSet(std::vector<ObjectId>(ids)) {}
  explicit StateSet(std::vector<ObjectId> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  }

  [[nodiscard]] bool empty() const noexcept { return ids_.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return ids_.size(); }
  [[nodiscard]] const_iterator begin() const noexcept { return ids_.begin(); }
  [[nodiscard]] const_iterator end() const noexcept { return ids_.end(); }
  [[nodiscard]] std::span<const ObjectId> ids() const noexcept { return ids_; }
  [[nodiscard]] ObjectId front() const { return ids_.front(); }

  [[nodiscard]] bool contains(ObjectId id) const noexcept {
    return std::binary_search(ids_.begin(), ids_.end(), id);
  }

  friend bool operator==(const StateSet&, const StateSet&) = default;
  friend auto operator<=>(const StateSet&, const StateSet&) = default;

 private:
  struct Canonical {};
  StateSet(Canonical, std::vector<ObjectId> ids) : ids_(std::move(ids)) {}

  friend StateSet unite(const StateSet&, const StateSet&);
  friend StateSet difference(const StateSet&, const StateSet&);
  friend StateSet intersect(const StateSet&, const StateSet&);

  std::vector<ObjectId> ids_;
};

inline StateSet unite(const StateSet& a, const StateSet& b) {
  std::vector<ObjectId> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return StateSet(StateSet::Canonical{}, std::move(out));
}

inline StateSet difference(const StateSet& a, const StateSet& b) {
  std::vector<ObjectId> out;
  out.reserve(a.size());
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return StateSet(StateSet::Canonical{}, std::move(out));
}

inline StateSet intersect(const StateSet& a, const StateSet& b) {
  std::vector<ObjectId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return StateSet(StateSet::Canonical{}, std::move(out));
}

inline bool intersects(const StateSet& a, const StateSet& b) noexcept {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

/// sub ⊆ super
inline bool is_subset(const StateSet& sub, const StateSet& super) noexcept {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

struct StateSetHash {
  std::size_t operator()(const StateSet& s) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (ObjectId id : s) {
      h ^= std::hash<ObjectId>{}(id) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h ^ s.size();
  }
};

}  // namespace apr
