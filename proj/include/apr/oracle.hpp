#pragma once

#include <optional>

#include "apr/witness.hpp"

// Brute-force decision procedures working directly on the target-avoiding
// region R = avoiding_region(P, Q). They share no code with the prover and
// serve as ground truth in tests and as the `--engine oracle` backend.

namespace apr {

struct OracleAnswer {
  bool valid = true;
  std::optional<Witness> witness;
};

/// Partially valid iff no normal form lies in R.
inline OracleAnswer oracle_partial(const Ars& ars, const AprPredicate& pred) {
  require_members(ars, pred);
  if (auto path = find_stuck_path(ars, pred.source(), pred.target())) return {false, Witness{*std::move(path)}};
  return {};
}

/// Totally valid iff R holds no normal form and induces an acyclic subgraph.
inline OracleAnswer oracle_total(const Ars& ars, const AprPredicate& pred) {
  OracleAnswer partial = oracle_partial(ars, pred);
  if (!partial.valid) return partial;
  if (auto lasso = find_lasso(ars, pred.source(), pred.target())) return {false, Witness{*std::move(lasso)}};
  return {};
}

}  // namespace apr
