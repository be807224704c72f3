#pragma once

#include <string>
#include <utility>
#include <vector>

#include "apr/rules.hpp"

namespace apr {

/// The three conditions making ⟨P⟩⇒⟨Q⟩ a safety predicate for the error
/// set E, each with the objects that break it.
struct SafetyCheckReport {
  bool disjoint_ok = true;        // Q ∩ E = ∅
  bool covers_nf_ok = true;       // reachable non-error normal forms ⊆ Q
  bool q_irreducible_ok = true;   // Q ⊆ NF
  StateSet shared_with_errors;
  StateSet uncovered_normal_forms;
  StateSet reducible_targets;

  [[nodiscard]] bool is_safety_predicate() const noexcept {
    return disjoint_ok && covers_nf_ok && q_irreducible_ok;
  }
};

inline SafetyCheckReport validate_safety_predicate(const Ars& ars, const StateSet& p, const StateSet& q,
                                                   const StateSet& e) {
  ars.require_members(p);
  ars.require_members(q);
  ars.require_members(e);
  if (!is_subset(e, ars.normal_forms())) {
    throw InputError("error states must be irreducible; apply augment_error first");
  }
  SafetyCheckReport r;
  r.shared_with_errors = intersect(q, e);
  r.uncovered_normal_forms =
      difference(difference(intersect(reachable(ars, p), ars.normal_forms()), e), q);
  r.reducible_targets = difference(q, ars.normal_forms());
  r.disjoint_ok = r.shared_with_errors.empty();
  r.covers_nf_ok = r.uncovered_normal_forms.empty();
  r.q_irreducible_ok = r.reducible_targets.empty();
  return r;
}

/// `base`, or `base_1`, `base_2`, ... whichever is unused first.
inline std::string fresh_label(const Ars& ars, const std::string& base) {
  if (!ars.find(base)) return base;
  for (std::size_t i = 1;; ++i) {
    std::string candidate = base + "_" + std::to_string(i);
    if (!ars.find(candidate)) return candidate;
  }
}

namespace detail {

// ars plus one fresh object (appended, so existing ids are kept) and an
// edge from every object in `sources` to it.
inline std::pair<Ars, ObjectId> with_sink(const Ars& ars, const std::string& base, const StateSet& sources) {
  std::vector<std::string> labels = ars.labels();
  const auto sink = static_cast<ObjectId>(labels.size());
  labels.push_back(fresh_label(ars, base));
  std::vector<Transition> edges = ars.transitions();
  for (ObjectId s : sources) edges.push_back({s, sink});
  return {Ars(std::move(labels), edges), sink};
}

}  // namespace detail

/// Adds a fresh irreducible `error` object reached in one step from every
/// given error state.
inline std::pair<Ars, ObjectId> augment_error(const Ars& ars, const StateSet& error_states) {
  ars.require_members(error_states);
  if (error_states.empty()) throw InputError("augment_error needs at least one error state");
  return detail::with_sink(ars, "error", error_states);
}

/// Adds a fresh irreducible `any` object reached in one step from every
/// non-error object, so that ⟨P⟩⇒⟨{any}⟩ decides error non-reachability.
inline std::pair<Ars, ObjectId> augment_any(const Ars& ars, const StateSet& e) {
  ars.require_members(e);
  if (!is_subset(e, ars.normal_forms())) {
    throw InputError("error states must be irreducible; apply augment_error first");
  }
  return detail::with_sink(ars, "any", difference(ars.all_objects(), e));
}

struct SafetyQuery {
  Ars ars;
  AprPredicate predicate;
  StateSet errors;                       // irreducible error set used for `any`
  std::optional<ObjectId> error_object;  // set when augment_error was applied
  ObjectId any_object;
};

/// Reduces "no execution from P reaches E" to partial validity of
/// ⟨P⟩⇒⟨{any}⟩ over the augmented system. Reducible error states are first
/// redirected to a fresh `error` sink.
inline SafetyQuery build_safety_query(const Ars& ars, const StateSet& p, const StateSet& e_raw) {
  ars.require_members(p);
  ars.require_members(e_raw);
  std::optional<ObjectId> error_object;
  Ars base = ars;
  StateSet errors = e_raw;
  if (!is_subset(e_raw, ars.normal_forms())) {
    auto [augmented, err] = augment_error(ars, e_raw);
    base = std::move(augmented);
    error_object = err;
    errors = StateSet{err};
  }
  auto [with_any, any] = augment_any(base, errors);
  AprPredicate pred(p, StateSet{any});
  return {std::move(with_any), std::move(pred), std::move(errors), error_object, any};
}

}  // namespace apr
