#include <random>

#include <gtest/gtest.h>

#include "apr/expand.hpp"
#include "apr/oracle.hpp"
#include "support/fixtures.hpp"
#include "support/path_oracle.hpp"
#include "support/random_ars.hpp"

using namespace apr;
using apr::testing::a1;
using apr::testing::pred;

TEST(OraclePartial, Examples) {
  Ars ars = a1();
  EXPECT_TRUE(oracle_partial(ars, pred(ars, {"a"}, {"c", "d"})).valid);
  OracleAnswer bad = oracle_partial(ars, pred(ars, {"a"}, {"c"}));
  EXPECT_FALSE(bad.valid);
  ASSERT_TRUE(bad.witness);
  EXPECT_EQ(std::get<ExecutionPath>(*bad.witness).steps, (std::vector<ObjectId>{0, 3}));
  OracleAnswer empty = oracle_partial(ars, AprPredicate(StateSet{}, StateSet{}));
  EXPECT_TRUE(empty.valid);
  EXPECT_FALSE(empty.witness);
}

TEST(OracleTotal, Examples) {
  Ars ars = a1();
  OracleAnswer lasso = oracle_total(ars, pred(ars, {"a"}, {"c", "d"}));
  EXPECT_FALSE(lasso.valid);
  ASSERT_TRUE(lasso.witness);
  EXPECT_EQ(std::get<Lasso>(*lasso.witness).cycle, (std::vector<ObjectId>{0, 1}));

  std::vector<Transition> edge{{0, 1}};
  Ars xy({"x", "y"}, edge);
  EXPECT_TRUE(oracle_total(xy, AprPredicate(StateSet{0}, StateSet{1})).valid);
}

TEST(OracleTotal, PetersonStarvationFreedom) {
  auto x = model::expand(model::builtin_peterson());
  AprPredicate q(model::eval_state_predicate(x, "loc(P0)=wait0 && b0=true"),
                 model::eval_state_predicate(x, "loc(P0)=crit0"));
  EXPECT_TRUE(oracle_total(x.ars, q).valid);
}

TEST(OracleTotal, WitnessPresentIffInvalid) {
  std::mt19937 rng(3);
  for (int i = 0; i < 300; ++i) {
    Ars ars = apr::testing::random_ars(rng);
    AprPredicate q(apr::testing::random_subset(rng, ars), apr::testing::random_subset(rng, ars));
    for (const OracleAnswer& a : {oracle_partial(ars, q), oracle_total(ars, q)}) {
      EXPECT_EQ(a.valid, !a.witness);
      if (a.witness) {
        auto bad = witness_violation(ars, q, *a.witness);
        EXPECT_FALSE(bad) << *bad;
      }
    }
  }
}

// The region-based oracle against plain path enumeration.
TEST(Oracle, AgreesWithPathEnumeration) {
  std::mt19937 rng(5);
  apr::testing::RandomArsConfig cfg;
  cfg.max_states = 5;
  for (int i = 0; i < 2000; ++i) {
    Ars ars = apr::testing::random_ars(rng, cfg);
    AprPredicate q(apr::testing::random_subset(rng, ars), apr::testing::random_subset(rng, ars));
    auto truth = apr::testing::enumerate_paths(ars, q.source(), q.target());
    ASSERT_EQ(oracle_partial(ars, q).valid, truth.partial) << "instance " << i;
    ASSERT_EQ(oracle_total(ars, q).valid, truth.total) << "instance " << i;
  }
}

TEST(Oracle, TotalImpliesPartial) {
  std::mt19937 rng(9);
  for (int i = 0; i < 500; ++i) {
    Ars ars = apr::testing::random_ars(rng);
    AprPredicate q(apr::testing::random_subset(rng, ars), apr::testing::random_subset(rng, ars));
    if (oracle_total(ars, q).valid) {
      EXPECT_TRUE(oracle_partial(ars, q).valid);
    }
  }
}
