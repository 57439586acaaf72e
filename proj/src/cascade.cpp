#include "icsym/cascade.hpp"

#include <stdexcept>
#include <string>

#include "icsym/parallel.hpp"

namespace icsym {

double activation_probability(const Graph& g, const ActiveSet& s, NodeId j) {
  if (s.node_count() != g.node_count())
    throw std::invalid_argument("active set size does not match graph");
  if (s.contains(j))
    throw std::invalid_argument("node " + std::to_string(j) + " is already active");
  double q = 0.0;
  for (const Neighbor& nb : g.neighbors(j))
    if (s.contains(nb.node)) q += nb.p * (1.0 - q);
  return q;
}

namespace {

// Simultaneous update: attempts are made only by members of `s`, and `out`
// starts as a copy of `s`.
void step_into(const Graph& g, const ActiveSet& s, const StepMatrix& outcomes, ActiveSet& out) {
  out = s;
  s.for_each_member([&](NodeId k) {
    for (const Neighbor& nb : g.neighbors(k))
      if (!s.contains(nb.node) && outcomes.entry(k, nb.node)) out.insert(nb.node);
  });
}

void check_dimensions(const Graph& g, const ActiveSet& s, const StepMatrix& outcomes) {
  if (outcomes.size() != g.node_count())
    throw std::invalid_argument("step: outcome matrix is " + std::to_string(outcomes.size()) +
                                " wide, graph has " + std::to_string(g.node_count()) + " nodes");
  if (s.node_count() != g.node_count())
    throw std::invalid_argument("step: active set size does not match graph");
}

}  // namespace

ActiveSet step(const Graph& g, const ActiveSet& s, const StepMatrix& outcomes) {
  check_dimensions(g, s, outcomes);
  ActiveSet out;
  step_into(g, s, outcomes, out);
  return out;
}

CascadeTrajectory run_cascade(const Graph& g, const ActiveSet& seeds, std::size_t n,
                              RandomStream& rng) {
  if (seeds.node_count() != g.node_count())
    throw std::invalid_argument("run_cascade: seed set size does not match graph");
  CascadeTrajectory traj;
  traj.states.reserve(n + 1);
  traj.states.push_back(seeds);
  StepMatrix outcomes(g.node_count());
  for (std::size_t k = 1; k <= n; ++k) {
    sample_step_matrix_into(g, rng, outcomes);
    ActiveSet next;
    step_into(g, traj.states.back(), outcomes, next);
    traj.states.push_back(std::move(next));
  }
  return traj;
}

CascadeTrajectory run_cascade(const Graph& g, const ActiveSet& seeds,
                              std::span<const StepMatrix> outcomes) {
  CascadeTrajectory traj;
  traj.states.push_back(seeds);
  for (const StepMatrix& t : outcomes) traj.states.push_back(step(g, traj.states.back(), t));
  return traj;
}

std::vector<EstimateCell> estimate_P_row(const Graph& g, NodeId i, std::size_t n,
                                         std::size_t trials, std::uint64_t master_seed,
                                         double confidence) {
  g.check_node(i);
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  const std::size_t nodes = g.node_count();

  // Same draws as run_cascade on stream (master_seed, t), without keeping the
  // intermediate states.
  const auto counts = detail::count_trials(
      trials, nodes, [&](std::size_t begin, std::size_t end, std::span<std::uint64_t> hits) {
        StepMatrix outcomes(nodes);
        ActiveSet state(nodes);
        ActiveSet next(nodes);
        for (std::size_t t = begin; t < end; ++t) {
          RandomStream rng = make_stream(master_seed, t);
          state.clear();
          state.insert(i);
          for (std::size_t k = 0; k < n; ++k) {
            sample_step_matrix_into(g, rng, outcomes);
            step_into(g, state, outcomes, next);
            std::swap(state, next);
          }
          state.for_each_member([&](NodeId j) { ++hits[j]; });
        }
      });

  std::vector<EstimateCell> cells;
  cells.reserve(nodes);
  for (auto c : counts) cells.push_back(make_estimate_cell(c, trials, confidence));
  return cells;
}

}  // namespace icsym
