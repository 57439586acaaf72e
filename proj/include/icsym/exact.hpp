#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "icsym/active_set.hpp"
#include "icsym/graph.hpp"

namespace icsym {

// Exact law of the active set, evolved over all subsets of nodes. The table
// has 2^N entries, hence the node-count cap.

inline constexpr std::size_t kDefaultExactCap = 20;
inline constexpr std::size_t kMaxExactCap = 30;

using SubsetMask = std::uint64_t;

class ExactCapError : public std::length_error {
 public:
  ExactCapError(std::size_t node_count, std::size_t cap)
      : std::length_error("exact computation refused: graph has " + std::to_string(node_count) +
                          " nodes, exact cap is " + std::to_string(cap)) {}
};

inline void check_exact_cap(std::size_t node_count, std::size_t cap) {
  if (cap > kMaxExactCap)
    throw std::invalid_argument("exact cap " + std::to_string(cap) + " exceeds the maximum " +
                                std::to_string(kMaxExactCap));
  if (node_count > cap) throw ExactCapError(node_count, cap);
}

template <typename Scalar = double>
using ProbabilityMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {

inline constexpr SubsetMask bit(NodeId k) noexcept { return SubsetMask{1} << k; }

/// Per-node activation probabilities out of the active mask s. Entries for
/// members of s are left at 0.
template <typename Scalar>
void activation_probabilities(const Graph& g, SubsetMask s, std::vector<Scalar>& q) {
  const std::size_t n = g.node_count();
  q.assign(n, Scalar(0));
  for (NodeId j = 0; j < n; ++j) {
    if (s & bit(j)) continue;
    Scalar acc(0);
    for (const Neighbor& nb : g.neighbors(j))
      if (s & bit(nb.node)) acc += Scalar(nb.p) * (Scalar(1) - acc);
    q[j] = acc;
  }
}

/// Calls visit(next_mask, weight) for every possible next active set out of
/// s. Inactive nodes activate independently: their trials touch disjoint
/// edges.
template <typename Scalar, typename Visit>
void for_each_transition(const Graph& g, SubsetMask s, std::vector<Scalar>& q,
                         std::vector<std::pair<NodeId, Scalar>>& uncertain, Visit&& visit) {
  activation_probabilities(g, s, q);
  SubsetMask base = s;
  uncertain.clear();
  for (NodeId j = 0; j < g.node_count(); ++j) {
    if (s & bit(j)) continue;
    if (q[j] >= Scalar(1))
      base |= bit(j);
    else if (q[j] > Scalar(0))
      uncertain.emplace_back(j, q[j]);
  }
  auto go = [&](auto&& self, std::size_t k, SubsetMask mask, Scalar weight) -> void {
    if (k == uncertain.size()) {
      visit(mask, weight);
      return;
    }
    const auto [node, qk] = uncertain[k];
    self(self, k + 1, mask, weight * (Scalar(1) - qk));
    self(self, k + 1, mask | bit(node), weight * qk);
  };
  go(go, 0, base, Scalar(1));
}

}  // namespace detail

template <typename Scalar>
class ActivationDistribution;

/// Applies the one-step transition `steps` times, merging mass on equal sets.
template <typename Scalar>
ActivationDistribution<Scalar> evolve_distribution(const Graph& g,
                                                   const ActivationDistribution<Scalar>& d,
                                                   std::size_t steps,
                                                   std::size_t cap = kDefaultExactCap);

/// Probability distribution over active sets after some number of steps,
/// keyed by bitmask.
template <typename Scalar = double>
class ActivationDistribution {
 public:
  static ActivationDistribution point_mass(std::size_t node_count, SubsetMask seeds,
                                           std::size_t cap = kDefaultExactCap) {
    check_exact_cap(node_count, cap);
    ActivationDistribution d;
    d.node_count_ = node_count;
    d.seeds_ = seeds;
    d.mass_.assign(std::size_t{1} << node_count, Scalar(0));
    d.mass_[seeds] = Scalar(1);
    return d;
  }

  static ActivationDistribution point_mass(const ActiveSet& seeds,
                                           std::size_t cap = kDefaultExactCap) {
    check_exact_cap(seeds.node_count(), cap);
    return point_mass(seeds.node_count(), seeds.to_mask(), cap);
  }

  std::size_t node_count() const noexcept { return node_count_; }
  SubsetMask seed_mask() const noexcept { return seeds_; }
  std::size_t step() const noexcept { return step_; }

  Scalar mass(SubsetMask s) const { return mass_.at(s); }
  Scalar total_mass() const {
    Scalar sum(0);
    for (Scalar m : mass_) sum += m;
    return sum;
  }
  /// P(j active) = sum of mass over sets containing j.
  Scalar marginal(NodeId j) const {
    Scalar sum(0);
    for (SubsetMask s = 0; s < mass_.size(); ++s)
      if (s & detail::bit(j)) sum += mass_[s];
    return sum;
  }
  /// Nonzero entries in increasing mask order.
  std::vector<std::pair<SubsetMask, Scalar>> support() const {
    std::vector<std::pair<SubsetMask, Scalar>> out;
    for (SubsetMask s = 0; s < mass_.size(); ++s)
      if (mass_[s] != Scalar(0)) out.emplace_back(s, mass_[s]);
    return out;
  }

  const std::vector<Scalar>& table() const noexcept { return mass_; }

  template <typename S>
  friend ActivationDistribution<S> evolve_distribution(const Graph& g,
                                                       const ActivationDistribution<S>& d,
                                                       std::size_t steps, std::size_t cap);

 private:
  std::size_t node_count_ = 0;
  SubsetMask seeds_ = 0;
  std::size_t step_ = 0;
  std::vector<Scalar> mass_;
};

/// Law of the next active set given the current set s.
template <typename Scalar = double>
std::map<SubsetMask, Scalar> transition_distribution(const Graph& g, const ActiveSet& s) {
  if (s.node_count() != g.node_count())
    throw std::invalid_argument("transition_distribution: active set size does not match graph");
  std::vector<Scalar> q;
  std::vector<std::pair<NodeId, Scalar>> uncertain;
  std::map<SubsetMask, Scalar> out;
  detail::for_each_transition<Scalar>(g, s.to_mask(), q, uncertain,
                                      [&](SubsetMask next, Scalar w) { out[next] += w; });
  return out;
}

template <typename Scalar>
ActivationDistribution<Scalar> evolve_distribution(const Graph& g,
                                                   const ActivationDistribution<Scalar>& d,
                                                   std::size_t steps, std::size_t cap) {
  check_exact_cap(g.node_count(), cap);
  if (d.node_count_ != g.node_count())
    throw std::invalid_argument("evolve_distribution: distribution size does not match graph");

  ActivationDistribution<Scalar> cur = d;
  std::vector<Scalar> next(cur.mass_.size());
  std::vector<Scalar> q;
  std::vector<std::pair<NodeId, Scalar>> uncertain;
  for (std::size_t k = 0; k < steps; ++k) {
    std::fill(next.begin(), next.end(), Scalar(0));
    for (SubsetMask s = 0; s < cur.mass_.size(); ++s) {
      const Scalar m = cur.mass_[s];
      if (m == Scalar(0)) continue;
      detail::for_each_transition<Scalar>(
          g, s, q, uncertain, [&](SubsetMask t, Scalar w) { next[t] += m * w; });
    }
    cur.mass_.swap(next);
    ++cur.step_;
  }
  return cur;
}

/// P(n) for n = 0 .. max_steps, one matrix each. values[i][j] is the chance
/// that j is active after n steps from the seed set {i}.
///
/// The step-n row is read off the step-(n-1) distribution as
/// sum_S mass(S) * (j in S ? 1 : q_j(S)), which equals the marginal of the
/// step-n distribution and saves the last expansion. From a point mass this
/// makes P(1) an exact copy of p_ij.
template <typename Scalar = double>
std::vector<ProbabilityMatrix<Scalar>> exact_P_sequence(const Graph& g, std::size_t max_steps,
                                                        std::size_t cap = kDefaultExactCap) {
  check_exact_cap(g.node_count(), cap);
  const std::size_t n = g.node_count();
  std::vector<ProbabilityMatrix<Scalar>> out(
      max_steps + 1, ProbabilityMatrix<Scalar>::Zero(static_cast<Eigen::Index>(n),
                                                     static_cast<Eigen::Index>(n)));
  out[0].setIdentity();

  std::vector<Scalar> q;
  for (NodeId i = 0; i < n; ++i) {
    auto d = ActivationDistribution<Scalar>::point_mass(n, detail::bit(i), cap);
    const auto row = static_cast<Eigen::Index>(i);
    for (std::size_t k = 1; k <= max_steps; ++k) {
      if (k > 1) d = evolve_distribution(g, d, 1, cap);
      auto& values = out[k];
      const auto& mass = d.table();
      for (SubsetMask s = 0; s < mass.size(); ++s) {
        const Scalar m = mass[s];
        if (m == Scalar(0)) continue;
        detail::activation_probabilities(g, s, q);
        for (NodeId j = 0; j < n; ++j)
          values(row, static_cast<Eigen::Index>(j)) += (s & detail::bit(j)) ? m : m * q[j];
      }
      values(row, row) = Scalar(1);
    }
  }
  return out;
}

template <typename Scalar = double>
ProbabilityMatrix<Scalar> exact_P_matrix(const Graph& g, std::size_t n,
                                         std::size_t cap = kDefaultExactCap) {
  return exact_P_sequence<Scalar>(g, n, cap).back();
}

}  // namespace icsym
