#pragma once

#include <algorithm>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "apr/ars.hpp"

namespace apr::testing {

struct RandomArsConfig {
  std::size_t min_states = 1;
  std::size_t max_states = 8;
  double max_density = 2.0;  // expected edges per state
};

// Objects are labelled s0, s1, ...
inline Ars random_ars(std::mt19937& rng, const RandomArsConfig& cfg = {}) {
  std::uniform_int_distribution<std::size_t> size_dist(cfg.min_states, cfg.max_states);
  const std::size_t n = size_dist(rng);
  std::uniform_real_distribution<double> density_dist(0.0, cfg.max_density);
  const double density = density_dist(rng);
  const double p_edge = std::min(1.0, density / static_cast<double>(n));
  std::bernoulli_distribution coin(p_edge);

  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("s" + std::to_string(i));
  std::vector<Transition> edges;
  for (ObjectId a = 0; a < n; ++a) {
    for (ObjectId b = 0; b < n; ++b) {
      if (coin(rng)) edges.push_back({a, b});
    }
  }
  return Ars(std::move(labels), edges);
}

/// Each object independently with probability `p`.
inline StateSet random_subset(std::mt19937& rng, const Ars& ars, double p = 0.35) {
  std::bernoulli_distribution coin(p);
  std::vector<ObjectId> ids;
  for (ObjectId i = 0; i < ars.size(); ++i) {
    if (coin(rng)) ids.push_back(i);
  }
  return StateSet(std::move(ids));
}

/// Random subset of `from`.
inline StateSet random_subset_of(std::mt19937& rng, const StateSet& from, double p = 0.5) {
  std::bernoulli_distribution coin(p);
  std::vector<ObjectId> ids;
  for (ObjectId i : from) {
    if (coin(rng)) ids.push_back(i);
  }
  return StateSet(std::move(ids));
}

}  // namespace apr::testing
