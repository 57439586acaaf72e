#include "icsym/verify.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace icsym {
namespace {

const Graph kPath(3, {{0, 1, 0.3}, {1, 2, 0.7}});
const Graph kTriangleHalf(3, {{0, 1, 0.5}, {1, 2, 0.5}, {0, 2, 0.5}});

TEST(ExactSymmetry, OneStepIsExactlySymmetric) {
  const Graph g = generate_er_graph(10, 0.5, UniformRandom{}, 61);
  const SymmetryReport r = check_exact_symmetry(g, 1, 0.0);
  EXPECT_EQ(r.max_abs_asymmetry, 0.0);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.method, CheckMethod::Exact);
}

TEST(ExactSymmetry, PathTwoSteps) {
  const SymmetryReport r = check_exact_symmetry(kPath, 2, 1e-9);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.node_count, 3u);
  EXPECT_EQ(r.edge_count, 2u);
  EXPECT_EQ(r.n, 2u);
  const Eigen::MatrixXd p = exact_P_matrix(kPath, 2);
  EXPECT_NEAR(p(0, 2), 0.21, 1e-12);
  EXPECT_NEAR(p(2, 0), 0.21, 1e-12);
}

TEST(ExactSymmetry, SingleNode) {
  const SymmetryReport r = check_exact_symmetry(Graph(1), 4, 1e-9);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.max_abs_asymmetry, 0.0);
}

TEST(ExactSymmetry, DetectsAsymmetricMatrix) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(3, 3);
  m(0, 2) = 0.4;
  m(2, 0) = 0.1;
  const SymmetryReport r = symmetry_of(m, 1e-9);
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(r.max_abs_asymmetry, 0.3, 1e-15);
  EXPECT_TRUE((r.argmax_i == 0 && r.argmax_j == 2) || (r.argmax_i == 2 && r.argmax_j == 0));
}

TEST(ExactSymmetry, CapPropagates) {
  EXPECT_THROW(check_exact_symmetry(generate_er_graph(25, 0.1, 0.5, 1), 2, 1e-9), ExactCapError);
}

TEST(TransposeIdentity, ZeroSteps) {
  const SymmetryReport r = check_transpose_identity(kTriangleHalf, 0, 10, 1);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_EQ(r.method, CheckMethod::PerSample);
}

TEST(TransposeIdentity, OneStep) {
  const Graph g = generate_er_graph(20, 0.3, UniformRandom{}, 2);
  const SymmetryReport r = check_transpose_identity(g, 1, 200, 3);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.samples, 200u);
}

TEST(TransposeIdentity, LargerThanExactCap) {
  const Graph g = generate_er_graph(80, 0.03, UniformRandom{}, 12);
  const SymmetryReport r = check_transpose_identity(g, 4, 50, 13);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.violations, 0u);
}

TEST(McConsistency, DeterministicGraphIsExact) {
  const Graph g(5, {{0, 1, 1.0}, {1, 2, 1.0}, {3, 4, 1.0}, {2, 3, 0.0}});
  for (std::size_t n : {1u, 2u, 3u}) {
    const ConsistencyReport r = check_mc_consistency(g, n, 500, 0.99, 8);
    EXPECT_EQ(r.cascade_coverage, 1.0);
    EXPECT_EQ(r.matrix_coverage, 1.0);
    for (const PairRecord& rec : r.records) {
      EXPECT_EQ(rec.cascade.point, rec.exact);
      EXPECT_EQ(rec.matrix.point, rec.exact);
    }
  }
}

TEST(McConsistency, TriangleTwoSteps) {
  const ConsistencyReport r = check_mc_consistency(kTriangleHalf, 2, 100000, 0.99, 17);
  const PairRecord& rec = r.records[0 * 3 + 2];
  ASSERT_EQ(rec.i, 0u);
  ASSERT_EQ(rec.j, 2u);
  EXPECT_NEAR(rec.exact, 0.8125, 1e-12);
  EXPECT_TRUE(rec.cascade_inside_ci);
  EXPECT_TRUE(rec.matrix_inside_ci);
  // Disjoint streams for the two estimators.
  EXPECT_NE(rec.cascade.successes, rec.matrix.successes);
}

TEST(McConsistency, TwoNodeTwoSteps) {
  const ConsistencyReport r = check_mc_consistency(Graph(2, {{0, 1, 0.5}}), 2, 100000, 0.99, 4);
  EXPECT_NEAR(r.records[1].exact, 0.75, 1e-12);
  EXPECT_TRUE(r.records[1].cascade_inside_ci);
  EXPECT_TRUE(r.records[1].matrix_inside_ci);
  EXPECT_EQ(r.records.size(), 4u);
}

TEST(McConsistency, CoverageIsFractionInside) {
  const Graph g = generate_er_graph(5, 0.7, UniformRandom{}, 3);
  const ConsistencyReport r = check_mc_consistency(g, 2, 2000, 0.9, 5);
  std::size_t inside = 0;
  for (const auto& rec : r.records) inside += rec.cascade_inside_ci;
  EXPECT_DOUBLE_EQ(r.cascade_coverage, static_cast<double>(inside) / 25.0);
}

TEST(ProductOrder, ForwardAndReversedAgree) {
  const Graph g(4, {{0, 1, 0.4}, {1, 2, 0.25}, {2, 3, 0.6}, {0, 3, 0.1}, {1, 3, 0.5}});
  const OrderAgreementReport r = check_product_order_agreement(g, 3, 50000, 0.99, 21);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.records.size(), 16u);
}

}  // namespace
}  // namespace icsym
