#include "icsym/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "icsym/random.hpp"

namespace icsym {

namespace {

bool valid_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : GraphError(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

Graph::Graph(std::size_t node_count) : node_count_(node_count), adjacency_(node_count) {
  if (node_count == 0) throw GraphError("graph must have at least one node");
}

Graph::Graph(std::size_t node_count, std::initializer_list<Edge> edges)
    : Graph(node_count, std::span<const Edge>(edges.begin(), edges.size())) {}

Graph::Graph(std::size_t node_count, std::span<const Edge> edges) : Graph(node_count) {
  std::vector<Edge> canon;
  canon.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u >= node_count_ || e.v >= node_count_)
      throw GraphError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                       ") has a node index >= " + std::to_string(node_count_));
    if (e.u == e.v) throw GraphError("self-loop on node " + std::to_string(e.u));
    if (!valid_probability(e.p))
      throw GraphError("probability " + format_double(e.p) + " out of range [0, 1]");
    canon.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.p});
  }
  std::sort(canon.begin(), canon.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  for (std::size_t k = 1; k < canon.size(); ++k)
    if (canon[k].u == canon[k - 1].u && canon[k].v == canon[k - 1].v)
      throw GraphError("duplicate pair {" + std::to_string(canon[k].u) + ", " +
                       std::to_string(canon[k].v) + "}");

  for (const Edge& e : canon) {
    if (e.p == 0.0) continue;
    edges_.push_back(e);
    adjacency_[e.u].push_back({e.v, e.p});
    adjacency_[e.v].push_back({e.u, e.p});
  }
  for (auto& list : adjacency_)
    std::sort(list.begin(), list.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
}

Graph Graph::from_matrix(const Eigen::MatrixXd& table) {
  const ValidationReport report = validate(table);
  if (!report.ok()) throw GraphError(report.violations.front().message);
  const auto n = static_cast<std::size_t>(table.rows());
  std::vector<Edge> edges;
  for (Eigen::Index i = 0; i < table.rows(); ++i)
    for (Eigen::Index j = i + 1; j < table.cols(); ++j)
      if (table(i, j) != 0.0)
        edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j), table(i, j)});
  return Graph(n, edges);
}

void Graph::check_node(NodeId i) const {
  if (i >= node_count_)
    throw std::out_of_range("node " + std::to_string(i) + " outside [0, " +
                            std::to_string(node_count_) + ")");
}

std::span<const Neighbor> Graph::neighbors(NodeId i) const {
  check_node(i);
  return adjacency_[i];
}

double Graph::probability(NodeId i, NodeId j) const {
  check_node(i);
  check_node(j);
  const auto& list = adjacency_[i];
  auto it = std::lower_bound(list.begin(), list.end(), j,
                             [](const Neighbor& nb, NodeId key) { return nb.node < key; });
  return (it != list.end() && it->node == j) ? it->p : 0.0;
}

Eigen::MatrixXd Graph::probability_matrix() const {
  const auto n = static_cast<Eigen::Index>(node_count_);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : edges_) {
    m(static_cast<Eigen::Index>(e.u), static_cast<Eigen::Index>(e.v)) = e.p;
    m(static_cast<Eigen::Index>(e.v), static_cast<Eigen::Index>(e.u)) = e.p;
  }
  return m;
}

// Edge-list parsing.

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos > start) out.push_back(line.substr(start, pos - start));
  }
  return out;
}

std::size_t parse_index(std::string_view tok, std::size_t line, const char* what) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(line, std::string("malformed ") + what + " '" + std::string(tok) + "'");
  return value;
}

double parse_probability(std::string_view tok, std::size_t line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec == std::errc::result_out_of_range)
    throw ParseError(line, "probability '" + std::string(tok) + "' out of range [0, 1]");
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(line, "malformed probability '" + std::string(tok) + "'");
  if (!valid_probability(value))
    throw ParseError(line, "probability '" + std::string(tok) + "' out of range [0, 1]");
  return value;
}

}  // namespace

Graph parse_edge_list(std::istream& in) {
  std::size_t node_count = 0;
  bool have_count = false;
  std::vector<Edge> edges;
  std::set<std::pair<NodeId, NodeId>> seen;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tokens = split_tokens(line);
    if (tokens.empty()) continue;

    if (!have_count) {
      if (tokens.size() != 1)
        throw ParseError(line_no, "expected the node count alone on the first line");
      node_count = parse_index(tokens[0], line_no, "node count");
      if (node_count == 0) throw ParseError(line_no, "node count must be positive");
      have_count = true;
      continue;
    }

    if (tokens.size() != 3)
      throw ParseError(line_no, "expected 'u v p', got " + std::to_string(tokens.size()) +
                                    " tokens");
    const NodeId u = parse_index(tokens[0], line_no, "node index");
    const NodeId v = parse_index(tokens[1], line_no, "node index");
    const double p = parse_probability(tokens[2], line_no);
    if (u >= node_count || v >= node_count)
      throw ParseError(line_no, "node index >= declared node count " + std::to_string(node_count));
    if (u == v) throw ParseError(line_no, "self-loop on node " + std::to_string(u));
    if (!seen.emplace(std::min(u, v), std::max(u, v)).second)
      throw ParseError(line_no, "duplicate pair {" + std::to_string(std::min(u, v)) + ", " +
                                    std::to_string(std::max(u, v)) + "}");
    edges.push_back({u, v, p});
  }
  if (!have_count) throw ParseError(0, "missing node count");
  return Graph(node_count, edges);
}

Graph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in);
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open graph file '" + path + "'");
  return parse_edge_list(in);
}

std::string to_edge_list(const Graph& g) {
  std::string out = std::to_string(g.node_count()) + "\n";
  for (const Edge& e : g.edges())
    out += std::to_string(e.u) + " " + std::to_string(e.v) + " " + format_double(e.p) + "\n";
  return out;
}

Graph generate_er_graph(std::size_t n_nodes, double edge_density, EdgeProbability prob,
                        std::uint64_t seed) {
  if (n_nodes == 0) throw std::invalid_argument("generate_er_graph: n_nodes must be >= 1");
  if (!valid_probability(edge_density))
    throw std::invalid_argument("generate_er_graph: edge density outside [0, 1]");
  if (const double* p = std::get_if<double>(&prob); p && !valid_probability(*p))
    throw std::invalid_argument("generate_er_graph: edge probability outside [0, 1]");

  RandomStream rng(seed);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n_nodes; ++u) {
    for (NodeId v = u + 1; v < n_nodes; ++v) {
      if (!bernoulli(rng, edge_density)) continue;
      const double p = std::holds_alternative<UniformRandom>(prob) ? uniform_open01(rng)
                                                                   : std::get<double>(prob);
      edges.push_back({u, v, p});
    }
  }
  return Graph(n_nodes, edges);
}

// Validation.

std::string_view to_string(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::Dimension: return "dimension";
    case ViolationKind::Range: return "range";
    case ViolationKind::Symmetry: return "symmetry";
    case ViolationKind::SelfPair: return "self-pair";
  }
  return "unknown";
}

ValidationReport validate(const Eigen::MatrixXd& table) {
  ValidationReport report;
  if (table.rows() != table.cols() || table.rows() == 0) {
    report.violations.push_back({ViolationKind::Dimension, 0, 0, 0.0,
                                 "table is " + std::to_string(table.rows()) + "x" +
                                     std::to_string(table.cols()) +
                                     ", expected a nonempty square table"});
    return report;
  }
  const auto n = table.rows();
  auto at = [](Eigen::Index i, Eigen::Index j) {
    return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double x = table(i, j);
      const auto ui = static_cast<NodeId>(i);
      const auto uj = static_cast<NodeId>(j);
      if (i == j) {
        if (x != 0.0)
          report.violations.push_back({ViolationKind::SelfPair, ui, uj, x,
                                       "self pair " + at(i, j) + " = " + format_double(x)});
        continue;
      }
      if (!valid_probability(x))
        report.violations.push_back({ViolationKind::Range, ui, uj, x,
                                     "probability " + at(i, j) + " = " + format_double(x) +
                                         " outside [0, 1]"});
      if (i < j && std::isfinite(x) && std::isfinite(table(j, i)) && x != table(j, i))
        report.violations.push_back({ViolationKind::Symmetry, ui, uj, x - table(j, i),
                                     "p" + at(i, j) + " = " + format_double(x) + " but p" +
                                         at(j, i) + " = " + format_double(table(j, i))});
    }
  }
  return report;
}

ValidationReport validate(const Graph& g) {
  ValidationReport report = validate(g.probability_matrix());
  for (const Edge& e : g.edges())
    if (e.u >= e.v || e.v >= g.node_count())
      report.violations.push_back({ViolationKind::Dimension, e.u, e.v, e.p,
                                   "edge not in canonical form or out of range"});
  return report;
}

// Corpus.

namespace {

std::uint64_t canonical_form(std::uint64_t mask, std::size_t n,
                             const std::vector<std::pair<NodeId, NodeId>>& pairs,
                             const std::vector<std::vector<std::size_t>>& pair_index) {
  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::uint64_t image = 0;
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if ((mask >> k) & 1U) image |= std::uint64_t{1} << pair_index[perm[pairs[k].first]][perm[pairs[k].second]];
    best = std::min(best, image);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool connected(std::uint64_t mask, std::size_t n,
               const std::vector<std::pair<NodeId, NodeId>>& pairs) {
  std::uint64_t reached = 1;
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (!((mask >> k) & 1U)) continue;
      const auto a = std::uint64_t{1} << pairs[k].first;
      const auto b = std::uint64_t{1} << pairs[k].second;
      if (((reached & a) != 0) != ((reached & b) != 0)) {
        reached |= a | b;
        grew = true;
      }
    }
  }
  return reached == (std::uint64_t{1} << n) - 1;
}

}  // namespace

std::vector<EdgeShape> connected_graph_shapes(std::size_t n) {
  if (n == 0 || n > 6) throw std::invalid_argument("connected_graph_shapes: n must be in [1, 6]");
  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::vector<std::vector<std::size_t>> pair_index(n, std::vector<std::size_t>(n, 0));
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) {
      pair_index[u][v] = pair_index[v][u] = pairs.size();
      pairs.emplace_back(u, v);
    }

  std::set<std::uint64_t> classes;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask)
    if (connected(mask, n, pairs)) classes.insert(canonical_form(mask, n, pairs, pair_index));

  std::vector<EdgeShape> out;
  for (std::uint64_t mask : classes) {
    EdgeShape shape;
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if ((mask >> k) & 1U) shape.push_back(pairs[k]);
    out.push_back(std::move(shape));
  }
  return out;
}

Graph with_random_probabilities(std::size_t n, const EdgeShape& shape, std::uint64_t seed) {
  RandomStream rng(seed);
  std::vector<Edge> edges;
  for (const auto& [u, v] : shape) edges.push_back({u, v, uniform_open01(rng)});
  return Graph(n, edges);
}

}  // namespace icsym
