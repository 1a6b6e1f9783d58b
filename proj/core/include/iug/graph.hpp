#ifndef IUG_GRAPH_HPP
#define IUG_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace iug {

using Vertex = std::uint32_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Ordered list of vertex ids (a candidate walk or path).
using VertexSequence = std::vector<Vertex>;

/**
  Immutable simple undirected graph on vertices 0..vertex_count()-1.

  Adjacency is stored in compressed rows; every neighbour list is sorted
  ascending, symmetric and free of loops and duplicates. All constructors
  enforce these invariants.
*/
class Graph {
 public:
  Graph() = default;
  /// Edgeless graph on `vertex_count` vertices.
  explicit Graph(std::size_t vertex_count);

  /// Throws ArgumentError on loops, duplicate edges or out-of-range ids.
  static Graph from_edges(std::size_t vertex_count, std::span<const Edge> edges);
  /// Neighbour lists are sorted here; asymmetry, loops and duplicates throw.
  static Graph from_adjacency(std::vector<std::vector<Vertex>> adjacency);

  std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return targets_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const noexcept;
  std::size_t min_degree() const noexcept;
  /// Common degree when the graph is regular.
  std::optional<std::size_t> regular_degree() const noexcept;

  bool has_edge(Vertex u, Vertex v) const;
  /// Every edge once, as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const;

  /// 64-bit FNV-1a digest of the canonical adjacency structure.
  std::uint64_t fingerprint() const noexcept;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.offsets_ == b.offsets_ && a.targets_ == b.targets_;
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
};

inline constexpr std::uint32_t kUnreached = 0xffffffffu;

/// BFS distances from `source`; vertices farther than `limit` (or in other
/// components) are reported as kUnreached.
std::vector<std::uint32_t> bfs_distances(const Graph& g, Vertex source,
                                         std::uint32_t limit = kUnreached);

/// Shortest-path length, or nullopt when u and v lie in different
/// components.
std::optional<std::size_t> distance(const Graph& g, Vertex u, Vertex v);

/// Vertices at distance 1..radius from `center`, sorted ascending (the
/// centre itself is excluded).
std::vector<Vertex> ball(const Graph& g, Vertex center, std::size_t radius);

/// k-th power: same vertices, {u,v} an edge iff 0 < dist(u,v) <= k.
Graph power(const Graph& g, std::size_t k);

/// Length of a shortest cycle, nullopt for forests. Exact: truncated BFS
/// from every vertex.
std::optional<std::size_t> girth(const Graph& g);

bool is_bipartite(const Graph& g);
bool is_connected(const Graph& g);

/// Component index per vertex; components numbered in order of their
/// smallest vertex.
std::vector<std::size_t> connected_components(const Graph& g,
                                              std::size_t* count = nullptr);

bool is_walk(const Graph& g, std::span<const Vertex> seq);
bool is_path(const Graph& g, std::span<const Vertex> seq);

/// Subgraph spanned by the given edges (all vertices kept).
Graph spanning_subgraph(std::size_t vertex_count, std::span<const Edge> edges);

/// Induced subgraph on `vertices` (relabelled 0..k-1 in the given order).
Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

// Small named graphs used throughout the tests and examples.
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);

/// Edge-list text format: header "n m", then m lines "u v" (0-based ids).
/// Blank lines and '#' comments are ignored.
Graph read_edge_list(std::istream& in);
Graph parse_edge_list(const std::string& text);
Graph load_edge_list(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);
std::string format_edge_list(const Graph& g);

}  // namespace iug

#endif  // IUG_GRAPH_HPP
