#include <random>

#include <gtest/gtest.h>

#include "apr/expand.hpp"
#include "apr/prover.hpp"
#include "apr/reductions.hpp"
#include "support/fixtures.hpp"
#include "support/path_oracle.hpp"
#include "support/random_ars.hpp"

using namespace apr;
using apr::testing::a1;

TEST(ValidateSafetyPredicate, A1Examples) {
  Ars ars = a1();
  const StateSet p = ars.set_of({"a"});
  const StateSet e = ars.set_of({"d"});

  SafetyCheckReport ok = validate_safety_predicate(ars, p, ars.set_of({"c"}), e);
  EXPECT_TRUE(ok.disjoint_ok);
  EXPECT_TRUE(ok.covers_nf_ok);
  EXPECT_TRUE(ok.q_irreducible_ok);
  EXPECT_TRUE(ok.is_safety_predicate());

  SafetyCheckReport shared = validate_safety_predicate(ars, p, ars.set_of({"d"}), e);
  EXPECT_FALSE(shared.disjoint_ok);
  EXPECT_EQ(shared.shared_with_errors, e);

  SafetyCheckReport reducible = validate_safety_predicate(ars, p, ars.set_of({"b"}), e);
  EXPECT_FALSE(reducible.q_irreducible_ok);
  EXPECT_EQ(reducible.reducible_targets, ars.set_of({"b"}));
  EXPECT_FALSE(reducible.covers_nf_ok);
  EXPECT_EQ(reducible.uncovered_normal_forms, ars.set_of({"c"}));
}

TEST(ValidateSafetyPredicate, ReducibleErrorsAreRejected) {
  Ars ars = a1();
  EXPECT_THROW(validate_safety_predicate(ars, ars.set_of({"a"}), ars.set_of({"c"}), ars.set_of({"b"})),
               InputError);
}

TEST(AugmentError, AddsOneSinkAndKeepsIds) {
  Ars ars = a1();
  auto [aug, err] = augment_error(ars, ars.set_of({"a"}));
  EXPECT_EQ(err, 4u);
  EXPECT_EQ(aug.label(err), "error");
  EXPECT_TRUE(aug.is_normal_form(err));
  EXPECT_EQ(aug.edge_count(), ars.edge_count() + 1);
  EXPECT_TRUE(aug.has_edge(0, err));
  for (ObjectId s = 0; s < ars.size(); ++s) {
    EXPECT_EQ(aug.label(s), ars.label(s));
    if (s != 0) {
      EXPECT_EQ(std::vector<ObjectId>(aug.successors(s).begin(), aug.successors(s).end()),
                std::vector<ObjectId>(ars.successors(s).begin(), ars.successors(s).end()));
    }
  }
}

TEST(AugmentError, IrreducibleStateGainsOneEdge) {
  Ars ars = a1();
  auto [aug, err] = augment_error(ars, ars.set_of({"d"}));
  ASSERT_EQ(aug.successors(3).size(), 1u);
  EXPECT_EQ(aug.successors(3)[0], err);
}

TEST(AugmentError, FreshLabelsAndErrors) {
  std::vector<Transition> none;
  Ars taken({"error", "error_1", "x"}, none);
  auto [aug, err] = augment_error(taken, StateSet{2});
  EXPECT_EQ(aug.label(err), "error_2");
  EXPECT_THROW(augment_error(taken, StateSet{}), InputError);
  EXPECT_THROW(augment_error(taken, StateSet{7}), InputError);
}

TEST(AugmentAny, A1WithErrorD) {
  Ars ars = a1();
  auto [aug, any] = augment_any(ars, ars.set_of({"d"}));
  EXPECT_EQ(aug.label(any), "any");
  EXPECT_TRUE(aug.is_normal_form(any));
  EXPECT_EQ(aug.predecessors(any).size(), 3u);
  EXPECT_TRUE(aug.has_edge(0, any));
  EXPECT_TRUE(aug.has_edge(1, any));
  EXPECT_TRUE(aug.has_edge(2, any));
  EXPECT_FALSE(aug.has_edge(3, any));
  EXPECT_EQ(check_partial(aug, AprPredicate(ars.set_of({"a"}), StateSet{any})).kind,
            VerdictKind::NotPartiallyValid);
}

TEST(AugmentAny, EverythingIsAnError) {
  std::vector<Transition> none;
  Ars ars({"x", "y"}, none);
  auto [aug, any] = augment_any(ars, ars.all_objects());
  EXPECT_EQ(aug.edge_count(), 0u);
  EXPECT_EQ(check_partial(aug, AprPredicate(StateSet{0}, StateSet{any})).kind, VerdictKind::NotPartiallyValid);
}

TEST(AugmentAny, RejectsReducibleErrors) {
  Ars ars = a1();
  EXPECT_THROW(augment_any(ars, ars.set_of({"a"})), InputError);
}

TEST(BuildSafetyQuery, A1Examples) {
  Ars ars = a1();
  SafetyQuery unsafe = build_safety_query(ars, ars.set_of({"a"}), ars.set_of({"d"}));
  EXPECT_FALSE(unsafe.error_object);
  EXPECT_EQ(unsafe.predicate, AprPredicate(ars.set_of({"a"}), StateSet{unsafe.any_object}));
  EXPECT_EQ(check_partial(unsafe.ars, unsafe.predicate).kind, VerdictKind::NotPartiallyValid);

  SafetyQuery safe = build_safety_query(ars, ars.set_of({"c"}), ars.set_of({"d"}));
  EXPECT_EQ(check_partial(safe.ars, safe.predicate).kind, VerdictKind::PartiallyValid);
}

TEST(BuildSafetyQuery, ReducibleErrorsGoThroughErrorSink) {
  Ars ars = a1();
  SafetyQuery q = build_safety_query(ars, ars.set_of({"a"}), ars.set_of({"b"}));
  ASSERT_TRUE(q.error_object);
  EXPECT_EQ(q.ars.label(*q.error_object), "error");
  EXPECT_EQ(q.errors, StateSet{*q.error_object});
  EXPECT_EQ(q.ars.size(), ars.size() + 2);
  Verdict v = check_partial(q.ars, q.predicate);
  EXPECT_EQ(v.kind, VerdictKind::NotPartiallyValid);
  EXPECT_EQ(render_witness(q.ars, *v.witness), "a -> b -> error");
}

TEST(BuildSafetyQuery, PetersonIsRaceFree) {
  auto x = model::expand(model::builtin_peterson());
  StateSet races = model::eval_state_predicate(x, "loc(P0)=crit0 && loc(P1)=crit1");
  EXPECT_EQ(races.size(), 8u);
  SafetyQuery q = build_safety_query(x.ars, x.initial, races);
  EXPECT_EQ(check_partial(q.ars, q.predicate).kind, VerdictKind::PartiallyValid);

  auto [with_error, err] = augment_error(x.ars, races);
  EXPECT_EQ(check_partial(with_error, AprPredicate(x.initial, StateSet{})).kind, VerdictKind::PartiallyValid);
  EXPECT_FALSE(reachable(with_error, x.initial).contains(err));
}

// Random instance with an irreducible error set and the covering target
// that makes ⟨P⟩⇒⟨Q⟩ a safety predicate.
struct SafetyInstance {
  Ars ars;
  StateSet p, q, e;
};

SafetyInstance random_safety_instance(std::mt19937& rng) {
  apr::testing::RandomArsConfig cfg;
  cfg.max_states = 6;
  Ars ars = apr::testing::random_ars(rng, cfg);
  StateSet e = apr::testing::random_subset_of(rng, ars.normal_forms());
  StateSet p = apr::testing::random_subset(rng, ars);
  StateSet q = difference(ars.normal_forms(), e);
  return {std::move(ars), p, q, e};
}

TEST(SafetyProperties, PartialValidityMeansErrorsUnreachable) {
  std::mt19937 rng(17);
  for (int i = 0; i < 300; ++i) {
    SafetyInstance s = random_safety_instance(rng);
    ASSERT_TRUE(validate_safety_predicate(s.ars, s.p, s.q, s.e).is_safety_predicate());
    const bool valid = check_partial(s.ars, AprPredicate(s.p, s.q)).kind == VerdictKind::PartiallyValid;
    const bool error_reached = intersects(apr::testing::enumerate_reachable(s.ars, s.p), s.e);
    EXPECT_EQ(valid, !error_reached) << "instance " << i;
  }
}

TEST(SafetyProperties, AnyAugmentationPreservesVerdicts) {
  std::mt19937 rng(19);
  for (int i = 0; i < 300; ++i) {
    SafetyInstance s = random_safety_instance(rng);
    auto [aug, any] = augment_any(s.ars, s.e);
    EXPECT_EQ(check_partial(s.ars, AprPredicate(s.p, s.q)).kind,
              check_partial(aug, AprPredicate(s.p, StateSet{any})).kind)
        << "instance " << i;
  }
}
