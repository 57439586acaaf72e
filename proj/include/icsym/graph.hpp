#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "icsym/active_set.hpp"

namespace icsym {

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Edge-list parse failure; line() is 1-based, 0 when not tied to a line.
class ParseError : public GraphError {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Unordered pair {u, v} with activation probability p. Stored canonically
/// with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  double p = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  NodeId node = 0;
  double p = 0.0;
};

/// Undirected graph with symmetric activation probabilities.
///
/// Each unordered pair is stored once, so p_ij and p_ji are the same stored
/// value. Pairs with p = 0 are not stored: they are not edges. Immutable
/// after construction.
class Graph {
 public:
  /// Edgeless graph; node_count must be positive.
  explicit Graph(std::size_t node_count);

  /// Edges may be given in either orientation. Zero-probability entries are
  /// dropped. Throws GraphError on a self pair, an index out of range, a
  /// probability outside [0, 1] or a repeated unordered pair.
  Graph(std::size_t node_count, std::span<const Edge> edges);
  Graph(std::size_t node_count, std::initializer_list<Edge> edges);

  /// Builds from a dense table; throws GraphError unless validate() is clean.
  static Graph from_matrix(const Eigen::MatrixXd& table);

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// p_ij; exactly 0 for absent pairs and for i == j.
  double probability(NodeId i, NodeId j) const;

  /// Canonical edges sorted by (u, v).
  std::span<const Edge> edges() const noexcept { return edges_; }
  /// Neighbors of i sorted by node id.
  std::span<const Neighbor> neighbors(NodeId i) const;

  void check_node(NodeId i) const;

  /// Dense symmetric table with zero diagonal.
  Eigen::MatrixXd probability_matrix() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.node_count_ == b.node_count_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t node_count_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

// Edge-list text format:
//   first non-comment line: N
//   then one "u v p" per line; '#' starts a comment; blank lines ignored.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list(std::string_view text);
Graph load_edge_list(const std::string& path);
/// Canonical serialization; probabilities printed with 17 significant digits.
std::string to_edge_list(const Graph& g);

struct UniformRandom {};
using EdgeProbability = std::variant<double, UniformRandom>;

/// Erdos-Renyi G(n, density). Pairs are visited in canonical order; each is
/// kept with probability edge_density and gets either the fixed probability
/// or an independent uniform draw on (0, 1).
Graph generate_er_graph(std::size_t n_nodes, double edge_density, EdgeProbability prob,
                        std::uint64_t seed);

enum class ViolationKind { Dimension, Range, Symmetry, SelfPair };

struct Violation {
  ViolationKind kind;
  NodeId i = 0;
  NodeId j = 0;
  double value = 0.0;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Checks a raw probability table against the Graph invariants. Every
/// violation is reported, nothing throws.
ValidationReport validate(const Eigen::MatrixXd& table);
ValidationReport validate(const Graph& g);

std::string_view to_string(ViolationKind kind) noexcept;

// Test corpus helpers.

using EdgeShape = std::vector<std::pair<NodeId, NodeId>>;

/// One representative per isomorphism class of connected simple graphs on n
/// nodes (brute force over permutations, so keep n small).
std::vector<EdgeShape> connected_graph_shapes(std::size_t n);

/// Assigns each edge of a shape an independent uniform probability on (0, 1).
Graph with_random_probabilities(std::size_t n, const EdgeShape& shape, std::uint64_t seed);

}  // namespace icsym
