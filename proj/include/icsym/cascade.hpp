#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "icsym/active_set.hpp"
#include "icsym/graph.hpp"
#include "icsym/random.hpp"
#include "icsym/statistics.hpp"
#include "icsym/step_matrix.hpp"

namespace icsym {

// Persistent-attempt cascade: at every step each active node retries every
// inactive neighbor with a fresh Bernoulli trial, and all activations of a
// step are decided from the previous step's active set. This is not the
// single-attempt independent cascade.

/// 1 - prod_{k in s} (1 - p_kj), accumulated as q <- q + p (1 - q) so that a
/// single active neighbor yields p_kj exactly. Throws std::invalid_argument
/// if j is already in s.
double activation_probability(const Graph& g, const ActiveSet& s, NodeId j);

/// s together with every j outside s that has some k in s with
/// outcomes(k, j) = 1. outcomes must have been sampled for g.
ActiveSet step(const Graph& g, const ActiveSet& s, const StepMatrix& outcomes);

struct CascadeTrajectory {
  std::vector<ActiveSet> states;  ///< states[0] is the seed set.

  std::size_t steps() const noexcept { return states.empty() ? 0 : states.size() - 1; }
  const ActiveSet& final_state() const { return states.back(); }
};

/// n steps, each with a fresh T^(k) from sample_step_matrix.
CascadeTrajectory run_cascade(const Graph& g, const ActiveSet& seeds, std::size_t n,
                              RandomStream& rng);

/// Cascade driven by a given sequence of step outcomes.
CascadeTrajectory run_cascade(const Graph& g, const ActiveSet& seeds,
                              std::span<const StepMatrix> outcomes);

/// Monte Carlo P_ij(n) for all j from seeds {i}. Trial t runs on stream
/// (master_seed, t), so the estimate does not depend on scheduling.
std::vector<EstimateCell> estimate_P_row(const Graph& g, NodeId i, std::size_t n,
                                         std::size_t trials, std::uint64_t master_seed,
                                         double confidence);

}  // namespace icsym
