#include <random>

#include <gtest/gtest.h>

#include "apr/oracle.hpp"
#include "apr/prover.hpp"
#include "support/path_oracle.hpp"
#include "support/random_ars.hpp"

using namespace apr;
using apr::testing::random_ars;
using apr::testing::random_subset;

namespace {

bool partially_valid(const Ars& ars, const StateSet& p, const StateSet& q) {
  return oracle_partial(ars, AprPredicate(p, q)).valid;
}

class Seeded : public ::testing::TestWithParam<unsigned> {};

}  // namespace

TEST_P(Seeded, UnionOfValidPredicatesIsValid) {
  std::mt19937 rng(GetParam());
  for (int i = 0; i < 200; ++i) {
    Ars ars = random_ars(rng);
    StateSet p = random_subset(rng, ars), p2 = random_subset(rng, ars);
    StateSet q = random_subset(rng, ars), q2 = random_subset(rng, ars);
    if (partially_valid(ars, p, q) && partially_valid(ars, p2, q2)) {
      EXPECT_TRUE(partially_valid(ars, unite(p, p2), unite(q, q2)));
    }
  }
}

TEST_P(Seeded, SourceSplitAndTargetWeakening) {
  std::mt19937 rng(GetParam());
  for (int i = 0; i < 200; ++i) {
    Ars ars = random_ars(rng);
    StateSet p = random_subset(rng, ars), p2 = random_subset(rng, ars);
    StateSet q = random_subset(rng, ars);
    if (partially_valid(ars, unite(p, p2), q)) {
      EXPECT_TRUE(partially_valid(ars, p, q));
      EXPECT_TRUE(partially_valid(ars, p2, q));
    }
    if (partially_valid(ars, p, q)) {
      EXPECT_TRUE(partially_valid(ars, p, unite(q, p2)));
    }
  }
}

TEST_P(Seeded, Transitivity) {
  std::mt19937 rng(GetParam());
  for (int i = 0; i < 200; ++i) {
    Ars ars = random_ars(rng);
    StateSet p = random_subset(rng, ars), q = random_subset(rng, ars), r = random_subset(rng, ars);
    if (partially_valid(ars, p, q) && partially_valid(ars, q, r)) {
      EXPECT_TRUE(partially_valid(ars, p, r));
    }
  }
}

TEST_P(Seeded, EmptyTargetMeansNoReachableNormalForm) {
  std::mt19937 rng(GetParam());
  for (int i = 0; i < 200; ++i) {
    Ars ars = random_ars(rng);
    StateSet p = random_subset(rng, ars);
    const bool no_nf = !intersects(reachable(ars, p), ars.normal_forms());
    EXPECT_EQ(partially_valid(ars, p, StateSet{}), no_nf);
    EXPECT_EQ(check_partial(ars, AprPredicate(p, StateSet{})).kind == VerdictKind::PartiallyValid, no_nf);
  }
}

// For a proof, the proof graph is acyclic exactly when the predicate holds
// on every path, finite or not.
TEST_P(Seeded, AcyclicProofGraphIffTotallyValid) {
  std::mt19937 rng(GetParam());
  apr::testing::RandomArsConfig cfg;
  cfg.max_states = 5;
  for (int i = 0; i < 300; ++i) {
    Ars ars = random_ars(rng, cfg);
    AprPredicate q(random_subset(rng, ars), random_subset(rng, ars));
    for (SplitStrategy s : {SplitStrategy::Eager, SplitStrategy::Singleton, SplitStrategy::Monolithic}) {
      ProverConfig c;
      c.strategy = s;
      PreProof pp = prove(ars, q, c);
      if (pp.has_rule(RuleName::Dis)) continue;
      auto truth = apr::testing::enumerate_paths(ars, q.source(), q.target());
      EXPECT_TRUE(truth.partial);
      EXPECT_EQ(is_acyclic(proof_graph(pp)), truth.total);
    }
  }
}

TEST_P(Seeded, ProverAgreesWithPathEnumeration) {
  std::mt19937 rng(GetParam());
  apr::testing::RandomArsConfig cfg;
  cfg.max_states = 5;
  for (int i = 0; i < 300; ++i) {
    Ars ars = random_ars(rng, cfg);
    AprPredicate q(random_subset(rng, ars), random_subset(rng, ars));
    auto truth = apr::testing::enumerate_paths(ars, q.source(), q.target());
    EXPECT_EQ(holds(check_partial(ars, q).kind), truth.partial);
    EXPECT_EQ(holds(check_total(ars, q).kind), truth.total);
  }
}

TEST_P(Seeded, ProverWitnessesRevalidate) {
  std::mt19937 rng(GetParam());
  for (int i = 0; i < 300; ++i) {
    Ars ars = random_ars(rng);
    AprPredicate q(random_subset(rng, ars), random_subset(rng, ars));
    for (const Verdict& v : {check_partial(ars, q), check_total(ars, q)}) {
      EXPECT_EQ(holds(v.kind), !v.witness);
      if (v.witness) {
        auto bad = witness_violation(ars, q, *v.witness);
        EXPECT_FALSE(bad) << *bad;
      }
    }
    if (holds(check_total(ars, q).kind)) {
      EXPECT_TRUE(holds(check_partial(ars, q).kind));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, Seeded, ::testing::Values(100u, 200u, 300u));
