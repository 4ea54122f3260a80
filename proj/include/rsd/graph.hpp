#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rsd {

using NodeId = std::int32_t;

/// Raised for malformed or invalid graph input. `line()` is the 1-based
/// line of the offending input, or 0 when the problem is global
/// (e.g. the graph is disconnected).
class GraphError : public std::runtime_error {
 public:
  GraphError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Simple, undirected, connected graph on nodes 0..n-1.
class Graph {
 public:
  using Edge = std::pair<NodeId, NodeId>;

  /// Validates and builds; throws GraphError on self-loops, duplicates,
  /// out-of-range ids or a disconnected result.
  Graph(NodeId n, const std::vector<Edge>& edges);

  NodeId size() const noexcept { return static_cast<NodeId>(adj_.size()); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  /// Edges with first < second, sorted.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  /// Sorted neighbor list.
  const std::vector<NodeId>& neighbors(NodeId v) const { return adj_.at(v); }
  int degree(NodeId v) const { return static_cast<int>(adj_.at(v).size()); }
  int max_degree() const noexcept;
  bool adjacent(NodeId u, NodeId v) const;

  /// BFS distances from `src`.
  std::vector<int> distances_from(NodeId src) const;
  int diameter() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> adj_;
};

/// Parses the text graph format: optional '#' comment lines, a header
/// "n m", then exactly m lines "u v".
Graph parse_graph(std::string_view text);

/// Inverse of parse_graph (canonical edge order, no comments).
std::string format_graph(const Graph& g);

/// BFS layering from the lowest-id node of maximum degree.
struct LevelDecomposition {
  NodeId root = 0;
  std::vector<int> level;                  // indexed by node
  int height = 0;                          // h
  std::vector<std::vector<NodeId>> levels; // V(0..h), each sorted by id
  int delta = 0;                           // maximum degree

  friend bool operator==(const LevelDecomposition&, const LevelDecomposition&) = default;
};

LevelDecomposition decompose(const Graph& g);

/// Neighbors of v one level deeper, sorted (N(v) in the construction).
std::vector<NodeId> lower_neighbors(const Graph& g, const LevelDecomposition& d, NodeId v);

/// floor(log2 x) for x >= 1.
int floor_log2(std::uint64_t x);
/// Number of binary digits of x (x >= 1), i.e. floor_log2(x) + 1.
int bitlen(std::uint64_t x);

}  // namespace rsd
