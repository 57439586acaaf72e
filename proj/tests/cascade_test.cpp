#include "icsym/cascade.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace icsym {
namespace {

const Graph kTwoNodeHalf(2, {{0, 1, 0.5}});
const Graph kTriangleHalf(3, {{0, 1, 0.5}, {1, 2, 0.5}, {0, 2, 0.5}});

TEST(ActivationProbability, TwoActiveNeighbors) {
  const Graph g(4, {{1, 2, 0.3}, {1, 3, 0.6}, {0, 1, 0.9}});
  const double expected = 1 - (1 - 0.3) * (1 - 0.6);
  EXPECT_NEAR(activation_probability(g, ActiveSet(4, {2, 3}), 1), expected, 1e-15);
}

TEST(ActivationProbability, SingleNeighborIsExactCopy) {
  const Graph g(3, {{0, 2, 0.3}, {1, 2, 0.123456789}});
  EXPECT_EQ(activation_probability(g, ActiveSet(3, {0}), 2), 0.3);
  EXPECT_EQ(activation_probability(g, ActiveSet(3, {1}), 2), 0.123456789);
}

TEST(ActivationProbability, NoActiveNeighbor) {
  const Graph g(3, {{0, 1, 0.3}});
  EXPECT_EQ(activation_probability(g, ActiveSet(3), 2), 0.0);
  EXPECT_EQ(activation_probability(g, ActiveSet(3, {0}), 2), 0.0);
}

TEST(ActivationProbability, ActiveTargetIsContractViolation) {
  EXPECT_THROW(activation_probability(kTriangleHalf, ActiveSet(3, {0, 1}), 1),
               std::invalid_argument);
}

TEST(Step, EmptySetStaysEmpty) {
  const Graph g = generate_er_graph(5, 1.0, 1.0, 1);
  RandomStream rng(1);
  EXPECT_TRUE(step(g, ActiveSet(5), sample_step_matrix(g, rng)).empty());
}

TEST(Step, AllTrialsFailed) {
  const ActiveSet s(4, {0, 2});
  EXPECT_EQ(step(generate_er_graph(4, 1.0, 0.5, 1), s, StepMatrix::identity(4)), s);
}

TEST(Step, PathSingleSuccess) {
  const Graph path(3, {{0, 1, 0.5}, {1, 2, 0.5}});
  StepMatrix t(3);
  t.set_pair(0, 1, true);
  EXPECT_EQ(step(path, ActiveSet(3, {0}), t), ActiveSet(3, {0, 1}));
}

TEST(Step, SimultaneousUpdate) {
  // 0-1 and 1-2 both open: from {0} only 1 activates this step.
  const Graph path(3, {{0, 1, 0.5}, {1, 2, 0.5}});
  StepMatrix t(3);
  t.set_pair(0, 1, true);
  t.set_pair(1, 2, true);
  EXPECT_EQ(step(path, ActiveSet(3, {0}), t), ActiveSet(3, {0, 1}));
}

TEST(Step, DimensionMismatch) {
  EXPECT_THROW(step(kTriangleHalf, ActiveSet(3), StepMatrix(4)), std::invalid_argument);
  EXPECT_THROW(step(kTriangleHalf, ActiveSet(4), StepMatrix(3)), std::invalid_argument);
}

TEST(RunCascade, ZeroSteps) {
  RandomStream rng(1);
  const auto traj = run_cascade(kTriangleHalf, ActiveSet(3, {1}), 0, rng);
  ASSERT_EQ(traj.states.size(), 1u);
  EXPECT_EQ(traj.states[0], ActiveSet(3, {1}));
}

TEST(RunCascade, CertainEdge) {
  const Graph g(2, {{0, 1, 1.0}});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomStream rng(seed);
    const auto traj = run_cascade(g, ActiveSet(2, {0}), 1, rng);
    EXPECT_EQ(traj.final_state(), ActiveSet(2, {0, 1}));
  }
}

TEST(RunCascade, TwoNodeTwoSteps) {
  // Oracle: enumerate the 4 equally likely two-step outcomes.
  const double exact = oracle::brute_force_P_row(kTwoNodeHalf, 0, 2)[1];
  ASSERT_EQ(exact, 0.75);

  constexpr std::uint64_t kTrials = 100000;
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < kTrials; ++t) {
    RandomStream rng = make_stream(5, t);
    hits += run_cascade(kTwoNodeHalf, ActiveSet(2, {0}), 2, rng).final_state().contains(1);
  }
  EXPECT_TRUE(wilson_interval(hits, kTrials, 0.99).contains(exact));
}

TEST(RunCascade, DrivenByGivenMatrices) {
  const Graph path(3, {{0, 1, 0.5}, {1, 2, 0.5}});
  StepMatrix a(3), b(3);
  a.set_pair(0, 1, true);
  b.set_pair(1, 2, true);
  const std::vector<StepMatrix> seq{a, b};
  const auto traj = run_cascade(path, ActiveSet(3, {0}), seq);
  ASSERT_EQ(traj.steps(), 2u);
  EXPECT_EQ(traj.states[1], ActiveSet(3, {0, 1}));
  EXPECT_EQ(traj.states[2], ActiveSet(3, {0, 1, 2}));
}

// Property: persistent activation, states never shrink.
TEST(RunCascade, TrajectoriesAreMonotone) {
  RandomStream meta(44);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + meta() % 70;
    const Graph g = generate_er_graph(n, uniform01(meta) * 0.3, UniformRandom{}, meta());
    RandomStream rng(meta());
    const auto traj = run_cascade(g, ActiveSet::singleton(n, meta() % n), 8, rng);
    for (std::size_t k = 0; k + 1 < traj.states.size(); ++k)
      ASSERT_TRUE(traj.states[k].is_subset_of(traj.states[k + 1]));
  }
}

TEST(RunCascade, DeterministicForFixedStream) {
  const Graph g = generate_er_graph(30, 0.1, UniformRandom{}, 8);
  RandomStream a(4), b(4);
  EXPECT_EQ(run_cascade(g, ActiveSet(30, {0}), 10, a).states,
            run_cascade(g, ActiveSet(30, {0}), 10, b).states);
}

// Property: the one-step activation frequency of j from a fixed set matches
// activation_probability.
TEST(Step, OneStepMarginal) {
  const Graph g(5, {{0, 4, 0.2}, {1, 4, 0.35}, {2, 4, 0.5}, {3, 4, 0.1}, {0, 1, 0.9}});
  const ActiveSet s(5, {0, 1, 3});
  const double q = activation_probability(g, s, 4);
  constexpr std::uint64_t kTrials = 100000;
  std::uint64_t hits = 0;
  RandomStream rng(6);
  for (std::uint64_t t = 0; t < kTrials; ++t)
    hits += step(g, s, sample_step_matrix(g, rng)).contains(4);
  EXPECT_TRUE(wilson_interval(hits, kTrials, 0.99).contains(q)) << q;
}

TEST(EstimatePRow, SeedCellIsOne) {
  const auto row = estimate_P_row(kTriangleHalf, 1, 3, 1000, 1, 0.95);
  EXPECT_EQ(row[1].successes, 1000u);
  EXPECT_EQ(row[1].point, 1.0);
  EXPECT_EQ(row[1].ci_high, 1.0);
}

TEST(EstimatePRow, UnreachableCellIsZero) {
  const Graph g(4, {{0, 1, 0.9}, {2, 3, 0.9}});
  const auto row = estimate_P_row(g, 0, 5, 2000, 1, 0.95);
  EXPECT_EQ(row[2].point, 0.0);
  EXPECT_EQ(row[3].point, 0.0);
  EXPECT_EQ(row[2].ci_low, 0.0);
}

TEST(EstimatePRow, TriangleTwoSteps) {
  const double exact = oracle::brute_force_P_row(kTriangleHalf, 0, 2)[2];
  ASSERT_EQ(exact, 13.0 / 16.0);
  const auto row = estimate_P_row(kTriangleHalf, 0, 2, 100000, 2024, 0.99);
  EXPECT_TRUE(row[2].interval().contains(exact)) << row[2].point;
}

TEST(EstimatePRow, BaseCaseOneStep) {
  const Graph g(4, {{0, 1, 0.15}, {0, 2, 0.6}, {1, 3, 0.8}});
  const auto row = estimate_P_row(g, 0, 1, 100000, 3, 0.99);
  EXPECT_TRUE(row[1].interval().contains(0.15));
  EXPECT_TRUE(row[2].interval().contains(0.6));
  EXPECT_EQ(row[3].successes, 0u);
}

TEST(EstimatePRow, MatchesIndividualTrajectories) {
  const Graph g = generate_er_graph(6, 0.6, UniformRandom{}, 21);
  constexpr std::size_t kTrials = 3000;
  const auto row = estimate_P_row(g, 2, 3, kTrials, 55, 0.9);
  std::vector<std::uint64_t> hits(6, 0);
  for (std::size_t t = 0; t < kTrials; ++t) {
    RandomStream rng = make_stream(55, t);
    run_cascade(g, ActiveSet(6, {2}), 3, rng).final_state().for_each_member([&](NodeId j) {
      ++hits[j];
    });
  }
  for (NodeId j = 0; j < 6; ++j) EXPECT_EQ(row[j].successes, hits[j]);
}

TEST(EstimatePRow, Reproducible) {
  const Graph g = generate_er_graph(10, 0.3, UniformRandom{}, 5);
  const auto a = estimate_P_row(g, 0, 4, 20000, 9, 0.99);
  const auto b = estimate_P_row(g, 0, 4, 20000, 9, 0.99);
  for (NodeId j = 0; j < 10; ++j) {
    EXPECT_EQ(a[j].successes, b[j].successes);
    EXPECT_EQ(a[j].ci_low, b[j].ci_low);
  }
}

TEST(EstimatePRow, Preconditions) {
  EXPECT_THROW(estimate_P_row(kTriangleHalf, 0, 1, 0, 1, 0.99), std::invalid_argument);
  EXPECT_THROW(estimate_P_row(kTriangleHalf, 3, 1, 10, 1, 0.99), std::out_of_range);
}

}  // namespace
}  // namespace icsym
