#include "icsym/step_matrix.hpp"

#include <stdexcept>
#include <string>

#include "icsym/parallel.hpp"

namespace icsym {

StepMatrix::StepMatrix(std::size_t n) : n_(n), words_(words_for(n)), bits_(n * words_for(n), 0) {
  reset_identity();
}

StepMatrix StepMatrix::from_dense(const Eigen::MatrixXi& table) {
  if (table.rows() != table.cols()) throw std::invalid_argument("step matrix must be square");
  const auto n = static_cast<std::size_t>(table.rows());
  StepMatrix t(n);
  for (Eigen::Index i = 0; i < table.rows(); ++i) {
    if (table(i, i) != 1) throw std::invalid_argument("step matrix diagonal must be 1");
    for (Eigen::Index j = 0; j < table.cols(); ++j) {
      const int x = table(i, j);
      if (x != 0 && x != 1) throw std::invalid_argument("step matrix entries must be 0 or 1");
      if (x != table(j, i)) throw std::invalid_argument("step matrix must be symmetric");
      if (i < j && x == 1) t.set_pair(static_cast<NodeId>(i), static_cast<NodeId>(j), true);
    }
  }
  return t;
}

bool StepMatrix::entry(NodeId i, NodeId j) const {
  if (i >= n_ || j >= n_) throw std::out_of_range("step matrix index out of range");
  return (bits_[i * words_ + j / 64] >> (j % 64)) & 1U;
}

void StepMatrix::set_pair(NodeId i, NodeId j, bool value) {
  if (i >= n_ || j >= n_) throw std::out_of_range("step matrix index out of range");
  if (i == j) throw std::invalid_argument("step matrix diagonal is fixed at 1");
  const std::uint64_t bi = std::uint64_t{1} << (i % 64);
  const std::uint64_t bj = std::uint64_t{1} << (j % 64);
  if (value) {
    bits_[i * words_ + j / 64] |= bj;
    bits_[j * words_ + i / 64] |= bi;
  } else {
    bits_[i * words_ + j / 64] &= ~bj;
    bits_[j * words_ + i / 64] &= ~bi;
  }
}

void StepMatrix::reset_identity() noexcept {
  std::fill(bits_.begin(), bits_.end(), 0);
  for (std::size_t i = 0; i < n_; ++i) bits_[i * words_ + i / 64] |= std::uint64_t{1} << (i % 64);
}

bool StepMatrix::is_supported_by(const Graph& g) const {
  if (g.node_count() != n_) return false;
  for (NodeId i = 0; i < n_; ++i)
    for (NodeId j = 0; j < n_; ++j)
      if (i != j && entry(i, j) && g.probability(i, j) == 0.0) return false;
  return true;
}

Eigen::MatrixXi StepMatrix::to_dense() const {
  const auto n = static_cast<Eigen::Index>(n_);
  Eigen::MatrixXi m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = entry(static_cast<NodeId>(i), static_cast<NodeId>(j)) ? 1 : 0;
  return m;
}

void sample_step_matrix_into(const Graph& g, RandomStream& rng, StepMatrix& out) {
  if (out.size() != g.node_count())
    out = StepMatrix(g.node_count());
  else
    out.reset_identity();
  for (const Edge& e : g.edges())
    if (bernoulli(rng, e.p)) out.set_pair(e.u, e.v, true);
}

StepMatrix sample_step_matrix(const Graph& g, RandomStream& rng) {
  StepMatrix t(g.node_count());
  sample_step_matrix_into(g, rng, t);
  return t;
}

void apply_matrix_into(const StepMatrix& t, const ActiveSet& s, ActiveSet& out) {
  if (t.size() != s.node_count())
    throw std::invalid_argument("apply_matrix: matrix is " + std::to_string(t.size()) +
                                " wide, active set has " + std::to_string(s.node_count()) +
                                " nodes");
  if (out.node_count() != s.node_count()) out = ActiveSet(s.node_count());
  // T is symmetric, so OR-ing the rows of the active nodes gives T v.
  auto acc = out.words();
  std::fill(acc.begin(), acc.end(), 0);
  s.for_each_member([&](NodeId k) {
    const auto r = t.row(k);
    for (std::size_t w = 0; w < acc.size(); ++w) acc[w] |= r[w];
  });
}

ActiveSet apply_matrix(const StepMatrix& t, const ActiveSet& s) {
  ActiveSet out(s.node_count());
  apply_matrix_into(t, s, out);
  return out;
}

namespace {

void check_sequence(std::span<const StepMatrix> matrices, NodeId source) {
  if (matrices.empty()) return;
  const std::size_t n = matrices.front().size();
  for (const auto& t : matrices)
    if (t.size() != n) throw std::invalid_argument("step matrices of different sizes in sequence");
  if (source >= n) throw std::out_of_range("source node out of range");
}

// Folds the sequence over `state` in place; `scratch` is reused storage.
void fold(std::span<const StepMatrix> matrices, ProductOrder order, ActiveSet& state,
          ActiveSet& scratch) {
  const std::size_t n = matrices.size();
  for (std::size_t k = 0; k < n; ++k) {
    const StepMatrix& t = order == ProductOrder::Forward ? matrices[k] : matrices[n - 1 - k];
    apply_matrix_into(t, state, scratch);
    std::swap(state, scratch);
  }
}

}  // namespace

ActiveSet product_column(std::span<const StepMatrix> matrices, NodeId source, ProductOrder order) {
  if (matrices.empty()) throw std::invalid_argument("product_column: empty sequence has no size");
  check_sequence(matrices, source);
  ActiveSet state = ActiveSet::singleton(matrices.front().size(), source);
  ActiveSet scratch(state.node_count());
  fold(matrices, order, state, scratch);
  return state;
}

bool chain_entry(std::span<const StepMatrix> matrices, NodeId source, NodeId target) {
  if (matrices.empty()) return source == target;
  check_sequence(matrices, source);
  if (target >= matrices.front().size()) throw std::out_of_range("target node out of range");
  return product_column(matrices, source).contains(target);
}

Eigen::MatrixXi boolean_product(std::span<const StepMatrix> matrices) {
  if (matrices.empty()) throw std::invalid_argument("boolean_product: empty sequence");
  const auto n = static_cast<Eigen::Index>(matrices.front().size());
  Eigen::MatrixXi acc = Eigen::MatrixXi::Identity(n, n);
  for (const auto& t : matrices) {
    if (static_cast<Eigen::Index>(t.size()) != n)
      throw std::invalid_argument("step matrices of different sizes in sequence");
    acc = (t.to_dense() * acc).unaryExpr([](int x) { return x > 0 ? 1 : 0; });
  }
  return acc;
}

std::vector<EstimateCell> estimate_product_column(const Graph& g, NodeId source, std::size_t n,
                                                  std::size_t trials, std::uint64_t master_seed,
                                                  double confidence, ProductOrder order) {
  g.check_node(source);
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  const std::size_t nodes = g.node_count();

  const auto counts = detail::count_trials(
      trials, nodes, [&](std::size_t begin, std::size_t end, std::span<std::uint64_t> hits) {
        std::vector<StepMatrix> matrices(n, StepMatrix(nodes));
        ActiveSet state(nodes);
        ActiveSet scratch(nodes);
        for (std::size_t t = begin; t < end; ++t) {
          RandomStream rng = make_stream(master_seed, t);
          for (auto& m : matrices) sample_step_matrix_into(g, rng, m);
          state.clear();
          state.insert(source);
          fold(matrices, order, state, scratch);
          state.for_each_member([&](NodeId j) { ++hits[j]; });
        }
      });

  std::vector<EstimateCell> cells;
  cells.reserve(nodes);
  for (auto c : counts) cells.push_back(make_estimate_cell(c, trials, confidence));
  return cells;
}

std::vector<EstimateCell> matrix_estimate_P_row(const Graph& g, NodeId i, std::size_t n,
                                                std::size_t trials, std::uint64_t master_seed,
                                                double confidence) {
  return estimate_product_column(g, i, n, trials, master_seed, confidence, ProductOrder::Forward);
}

}  // namespace icsym
