#include "icsym/verify.hpp"

#include <stdexcept>

#include "icsym/cascade.hpp"
#include "icsym/parallel.hpp"
#include "icsym/random.hpp"
#include "icsym/step_matrix.hpp"

namespace icsym {

std::string_view to_string(CheckMethod method) noexcept {
  switch (method) {
    case CheckMethod::Exact: return "exact";
    case CheckMethod::PerSample: return "per-sample";
    case CheckMethod::MonteCarlo: return "monte-carlo";
  }
  return "unknown";
}

SymmetryReport symmetry_of(const ProbabilityMatrix<double>& values, double tol) {
  SymmetryReport report;
  report.node_count = static_cast<std::size_t>(values.rows());
  report.method = CheckMethod::Exact;
  report.tolerance = tol;
  if (values.size() > 0) {
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    report.max_abs_asymmetry = (values - values.transpose()).cwiseAbs().maxCoeff(&r, &c);
    report.argmax_i = static_cast<NodeId>(r);
    report.argmax_j = static_cast<NodeId>(c);
  }
  report.pass = report.max_abs_asymmetry <= tol;
  return report;
}

SymmetryReport check_exact_symmetry(const Graph& g, std::size_t n, double tol, std::size_t cap) {
  SymmetryReport report = symmetry_of(exact_P_matrix(g, n, cap), tol);
  report.edge_count = g.edge_count();
  report.n = n;
  return report;
}

SymmetryReport check_transpose_identity(const Graph& g, std::size_t n, std::size_t samples,
                                        std::uint64_t master_seed) {
  if (samples == 0) throw std::invalid_argument("samples must be >= 1");
  const std::size_t nodes = g.node_count();

  std::size_t violations = 0;
  if (n > 0) {
    const auto counts = detail::count_trials(
        samples, 1, [&](std::size_t begin, std::size_t end, std::span<std::uint64_t> bad) {
          std::vector<StepMatrix> matrices(n, StepMatrix(nodes));
          std::vector<ActiveSet> forward(nodes);
          std::vector<ActiveSet> reversed(nodes);
          for (std::size_t s = begin; s < end; ++s) {
            RandomStream rng = make_stream(master_seed, s);
            for (auto& m : matrices) sample_step_matrix_into(g, rng, m);
            // forward[i] holds every j with chain_entry(forward, i, j);
            // reversed[j] every i with chain_entry(reversed, j, i).
            for (NodeId i = 0; i < nodes; ++i) {
              forward[i] = product_column(matrices, i, ProductOrder::Forward);
              reversed[i] = product_column(matrices, i, ProductOrder::Reversed);
            }
            for (NodeId i = 0; i < nodes; ++i)
              for (NodeId j = 0; j < nodes; ++j)
                if (forward[i].contains(j) != reversed[j].contains(i)) ++bad[0];
          }
        });
    violations = counts[0];
  }

  SymmetryReport report;
  report.node_count = nodes;
  report.edge_count = g.edge_count();
  report.n = n;
  report.method = CheckMethod::PerSample;
  report.samples = samples;
  report.violations = violations;
  report.max_abs_asymmetry = violations == 0 ? 0.0 : 1.0;
  report.tolerance = 0.0;
  report.pass = violations == 0;
  return report;
}

namespace {

// Slack for round-off in the exact value when testing CI membership.
constexpr double kMembershipSlack = 1e-12;

bool inside(const EstimateCell& cell, double exact) {
  return cell.ci_low - kMembershipSlack <= exact && exact <= cell.ci_high + kMembershipSlack;
}

}  // namespace

ConsistencyReport check_mc_consistency(const Graph& g, std::size_t n, std::size_t trials,
                                       double confidence, std::uint64_t master_seed,
                                       std::size_t cap) {
  const ProbabilityMatrix<double> exact = exact_P_matrix(g, n, cap);
  const std::size_t nodes = g.node_count();

  ConsistencyReport report;
  report.n = n;
  report.confidence = confidence;
  std::size_t cascade_hits = 0;
  std::size_t matrix_hits = 0;
  for (NodeId i = 0; i < nodes; ++i) {
    const auto cascade = estimate_P_row(g, i, n, trials, derive_seed(master_seed, 2 * i), confidence);
    const auto matrix =
        matrix_estimate_P_row(g, i, n, trials, derive_seed(master_seed, 2 * i + 1), confidence);
    for (NodeId j = 0; j < nodes; ++j) {
      PairRecord rec;
      rec.i = i;
      rec.j = j;
      rec.exact = exact(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      rec.cascade = cascade[j];
      rec.cascade_inside_ci = inside(rec.cascade, rec.exact);
      rec.matrix = matrix[j];
      rec.matrix_inside_ci = inside(rec.matrix, rec.exact);
      cascade_hits += rec.cascade_inside_ci;
      matrix_hits += rec.matrix_inside_ci;
      report.records.push_back(rec);
    }
  }
  const auto total = static_cast<double>(report.records.size());
  report.cascade_coverage = static_cast<double>(cascade_hits) / total;
  report.matrix_coverage = static_cast<double>(matrix_hits) / total;
  return report;
}

OrderAgreementReport check_product_order_agreement(const Graph& g, std::size_t n,
                                                   std::size_t samples, double confidence,
                                                   std::uint64_t master_seed) {
  const std::size_t nodes = g.node_count();
  OrderAgreementReport report;
  report.n = n;
  report.confidence = confidence;
  report.records.resize(nodes * nodes);
  for (NodeId j = 0; j < nodes; ++j) {
    const auto forward = estimate_product_column(g, j, n, samples, derive_seed(master_seed, 2 * j),
                                                 confidence, ProductOrder::Forward);
    const auto reversed =
        estimate_product_column(g, j, n, samples, derive_seed(master_seed, 2 * j + 1), confidence,
                                ProductOrder::Reversed);
    for (NodeId i = 0; i < nodes; ++i) {
      OrderRecord& rec = report.records[i * nodes + j];
      rec.i = i;
      rec.j = j;
      rec.forward = forward[i];
      rec.reversed = reversed[i];
      rec.overlap = rec.forward.interval().overlaps(rec.reversed.interval());
      report.disagreements += !rec.overlap;
    }
  }
  return report;
}

}  // namespace icsym
