#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vcut {

using VertexId = std::int32_t;

class GraphError : public std::runtime_error {
 public:
  explicit GraphError(const std::string& what) : std::runtime_error(what) {}
};

// Parse failure; kind and line make the offending input identifiable in tests.
class ParseError : public GraphError {
 public:
  enum class Kind {
    BadHeader,
    BadEdgeLine,
    OutOfRange,
    SelfLoop,
    DuplicateEdge,
    WrongEdgeCount,
  };

  ParseError(Kind kind, int line, const std::string& what)
      : GraphError(what), kind(kind), line(line) {}

  Kind kind;
  int line;  // 1-based line number in the input text
};

// Undirected simple graph on dense vertices [0, n). Immutable after
// construction; adjacency is kept in CSR form with neighbor lists sorted
// ascending, which the simulator relies on for port ordering.
class Graph {
 public:
  Graph() = default;

  // Validates endpoints, self-loops and duplicates (in either orientation).
  static Graph from_edges(VertexId n, std::vector<std::pair<VertexId, VertexId>> edges);

  VertexId n() const { return n_; }
  std::int64_t m() const { return static_cast<std::int64_t>(edges_.size()); }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {adj_.data() + off_[v], adj_.data() + off_[v + 1]};
  }
  int degree(VertexId v) const { return off_[v + 1] - off_[v]; }
  bool has_edge(VertexId u, VertexId v) const;

  // Canonical edge list: u < v, sorted lexicographically.
  const std::vector<std::pair<VertexId, VertexId>>& edges() const { return edges_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  VertexId n_ = 0;
  std::vector<std::pair<VertexId, VertexId>> edges_;
  std::vector<std::int32_t> off_;
  std::vector<VertexId> adj_;
};

inline constexpr std::int32_t kDiameterInfinite = std::numeric_limits<std::int32_t>::max();

struct GraphStats {
  VertexId n = 0;
  std::int64_t m = 0;
  std::int32_t diameter = 0;  // kDiameterInfinite when disconnected
  int max_degree = 0;
  bool is_connected = false;
};

// Edge-list text format: line 1 is "n m", then m lines "u v" with
// 0 <= u < v < n, single spaces, newline terminators (trailing newline
// optional on input).
Graph parse_edge_list(std::string_view text);
std::string emit_edge_list(const Graph& g);

bool is_connected(const Graph& g);

// Exact hop diameter. Uses a double-sweep lower bound plus the iFUB
// eccentricity scan, so easy instances cost a handful of BFS passes while the
// worst case degrades to all-sources BFS.
GraphStats stats(const Graph& g);

// BFS hop distances from src; -1 for unreachable vertices.
std::vector<std::int32_t> bfs_distances(const Graph& g, VertexId src);

// Number of connected components, and per-vertex labels where each vertex is
// labeled with the minimum vertex id in its component.
int component_count(const Graph& g);
std::vector<VertexId> component_labels(const Graph& g);

struct RemovedGraph {
  Graph graph;
  std::vector<VertexId> old_id;  // old_id[new index] = index in the original graph
};

// Induced subgraph on the complement of s, reindexed densely.
// Throws GraphError if s covers all vertices or contains out-of-range ids.
RemovedGraph remove_vertices(const Graph& g, const std::vector<VertexId>& s);

}  // namespace vcut
