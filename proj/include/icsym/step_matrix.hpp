#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "icsym/active_set.hpp"
#include "icsym/graph.hpp"
#include "icsym/random.hpp"
#include "icsym/statistics.hpp"

namespace icsym {

/// One realization of the random step matrix T: symmetric, boolean, ones on
/// the diagonal. Rows are packed bit vectors so the OR-AND product with an
/// active set is word parallel.
class StepMatrix {
 public:
  /// Identity of size n.
  explicit StepMatrix(std::size_t n = 0);

  static StepMatrix identity(std::size_t n) { return StepMatrix(n); }
  /// Throws std::invalid_argument unless the table is square, 0/1, symmetric
  /// and has a unit diagonal.
  static StepMatrix from_dense(const Eigen::MatrixXi& table);

  std::size_t size() const noexcept { return n_; }
  bool entry(NodeId i, NodeId j) const;
  /// Sets T_ij = T_ji; i != j.
  void set_pair(NodeId i, NodeId j, bool value);
  void reset_identity() noexcept;

  std::span<const std::uint64_t> row(NodeId i) const noexcept {
    return {bits_.data() + i * words_, words_};
  }

  /// True when every off-diagonal 1 sits on an edge of g.
  bool is_supported_by(const Graph& g) const;

  Eigen::MatrixXi to_dense() const;

  friend bool operator==(const StepMatrix&, const StepMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Draws T for g. Edges are visited in canonical order with one Bernoulli(p)
/// draw each; pairs with p = 0 are never sampled.
StepMatrix sample_step_matrix(const Graph& g, RandomStream& rng);
void sample_step_matrix_into(const Graph& g, RandomStream& rng, StepMatrix& out);

/// { i : exists k in s with T_ik = 1 } in the boolean semiring.
ActiveSet apply_matrix(const StepMatrix& t, const ActiveSet& s);
void apply_matrix_into(const StepMatrix& t, const ActiveSet& s, ActiveSet& out);

/// Which way a sequence T^(1..n) is multiplied out.
enum class ProductOrder {
  Forward,   ///< T^(n) ... T^(1): T^(1) acts first.
  Reversed,  ///< T^(1) ... T^(n): T^(n) acts first.
};

/// Column `source` of the product, as the set of targets with a positive
/// entry. Computed as a matrix-vector fold from the singleton {source}.
ActiveSet product_column(std::span<const StepMatrix> matrices, NodeId source,
                         ProductOrder order = ProductOrder::Forward);

/// Whether (T^(n) ... T^(1))_{target, source} > 0. Empty sequence is the
/// identity.
bool chain_entry(std::span<const StepMatrix> matrices, NodeId source, NodeId target);

/// Full boolean product T^(n) ... T^(1) as a 0/1 table, via dense matrix
/// products. Only meant for cross-checking folds on small N.
Eigen::MatrixXi boolean_product(std::span<const StepMatrix> matrices);

/// Estimates P((product)_{target, source} > 0) for every target by sampling
/// `trials` independent sequences of n matrices. Trial t uses stream
/// (master_seed, t).
std::vector<EstimateCell> estimate_product_column(const Graph& g, NodeId source, std::size_t n,
                                                  std::size_t trials, std::uint64_t master_seed,
                                                  double confidence, ProductOrder order);

/// P_ij(n) for every j via the forward product column i.
std::vector<EstimateCell> matrix_estimate_P_row(const Graph& g, NodeId i, std::size_t n,
                                                std::size_t trials, std::uint64_t master_seed,
                                                double confidence);

}  // namespace icsym
