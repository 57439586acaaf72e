#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "icsym/exact.hpp"
#include "icsym/graph.hpp"
#include "icsym/statistics.hpp"

namespace icsym {

enum class CheckMethod { Exact, PerSample, MonteCarlo };

std::string_view to_string(CheckMethod method) noexcept;

struct SymmetryReport {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::size_t n = 0;
  CheckMethod method = CheckMethod::Exact;
  double max_abs_asymmetry = 0.0;
  NodeId argmax_i = 0;
  NodeId argmax_j = 0;
  double tolerance = 0.0;
  std::size_t samples = 0;     ///< per-sample method only
  std::size_t violations = 0;  ///< per-sample method only
  bool pass = false;
};

/// max |P_ij(n) - P_ji(n)| over the exact matrix; pass iff <= tol.
SymmetryReport check_exact_symmetry(const Graph& g, std::size_t n, double tol,
                                    std::size_t cap = kDefaultExactCap);

/// Same check on an already computed matrix.
SymmetryReport symmetry_of(const ProbabilityMatrix<double>& values, double tol);

/// For every sampled sequence T^(1..n) and every pair (i, j), checks
/// chain_entry(forward, i, j) == chain_entry(reversed, j, i). Sample s draws
/// its matrices from stream (master_seed, s). Pass iff no violation.
SymmetryReport check_transpose_identity(const Graph& g, std::size_t n, std::size_t samples,
                                        std::uint64_t master_seed);

struct PairRecord {
  NodeId i = 0;
  NodeId j = 0;
  double exact = 0.0;
  EstimateCell cascade;
  bool cascade_inside_ci = false;
  EstimateCell matrix;
  bool matrix_inside_ci = false;
};

inline constexpr double kCoverageThreshold = 0.95;

struct ConsistencyReport {
  std::size_t n = 0;
  double confidence = 0.0;
  std::vector<PairRecord> records;  ///< all ordered pairs, row major
  double cascade_coverage = 0.0;
  double matrix_coverage = 0.0;
  double coverage_threshold = kCoverageThreshold;

  bool pass() const noexcept {
    return cascade_coverage >= coverage_threshold && matrix_coverage >= coverage_threshold;
  }
};

/// Compares cascade and matrix Monte Carlo estimates of P(n) with the exact
/// values. The two estimators run on disjoint seed streams.
ConsistencyReport check_mc_consistency(const Graph& g, std::size_t n, std::size_t trials,
                                       double confidence, std::uint64_t master_seed,
                                       std::size_t cap = kDefaultExactCap);

struct OrderRecord {
  NodeId i = 0;
  NodeId j = 0;
  EstimateCell forward;
  EstimateCell reversed;
  bool overlap = false;
};

struct OrderAgreementReport {
  std::size_t n = 0;
  double confidence = 0.0;
  std::vector<OrderRecord> records;
  std::size_t disagreements = 0;

  bool pass() const noexcept { return disagreements == 0; }
};

/// Estimates P((T^(n)...T^(1))_ij > 0) and P((T^(1)...T^(n))_ij > 0) on
/// independent streams and checks that the Wilson intervals overlap for
/// every pair.
OrderAgreementReport check_product_order_agreement(const Graph& g, std::size_t n,
                                                   std::size_t samples, double confidence,
                                                   std::uint64_t master_seed);

}  // namespace icsym
