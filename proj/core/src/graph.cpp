#include "iug/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "iug/error.hpp"

namespace iug {

namespace {

void check_vertex(const Graph& g, Vertex v) {
  if (v >= g.vertex_count()) {
    throw ArgumentError("vertex id " + std::to_string(v) +
                        " out of range for graph with " +
                        std::to_string(g.vertex_count()) + " vertices");
  }
}

}  // namespace

Graph::Graph(std::size_t vertex_count) : offsets_(vertex_count + 1, 0) {}

Graph Graph::from_edges(std::size_t vertex_count, std::span<const Edge> edges) {
  std::vector<std::vector<Vertex>> adjacency(vertex_count);
  for (const Edge& e : edges) {
    if (e.u >= vertex_count || e.v >= vertex_count) {
      throw ArgumentError("edge (" + std::to_string(e.u) + "," +
                          std::to_string(e.v) + ") references a vertex >= " +
                          std::to_string(vertex_count));
    }
    if (e.u == e.v) {
      throw ArgumentError("self-loop at vertex " + std::to_string(e.u));
    }
    adjacency[e.u].push_back(e.v);
    adjacency[e.v].push_back(e.u);
  }
  return from_adjacency(std::move(adjacency));
}

Graph Graph::from_adjacency(std::vector<std::vector<Vertex>> adjacency) {
  const std::size_t n = adjacency.size();
  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    auto& row = adjacency[v];
    std::sort(row.begin(), row.end());
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (row[k] >= n) {
        throw ArgumentError("neighbour id " + std::to_string(row[k]) +
                            " out of range");
      }
      if (row[k] == v) {
        throw ArgumentError("self-loop at vertex " + std::to_string(v));
      }
      if (k > 0 && row[k] == row[k - 1]) {
        throw ArgumentError("duplicate edge {" + std::to_string(v) + "," +
                            std::to_string(row[k]) + "}");
      }
    }
    g.offsets_[v + 1] = g.offsets_[v] + row.size();
  }
  g.targets_.reserve(g.offsets_[n]);
  for (const auto& row : adjacency) {
    g.targets_.insert(g.targets_.end(), row.begin(), row.end());
  }
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex w : g.neighbors(v)) {
      if (!std::binary_search(adjacency[w].begin(), adjacency[w].end(), v)) {
        throw ArgumentError("adjacency is not symmetric at {" +
                            std::to_string(v) + "," + std::to_string(w) + "}");
      }
    }
  }
  return g;
}

std::size_t Graph::max_degree() const noexcept {
  std::size_t best = 0;
  for (std::size_t v = 0; v + 1 < offsets_.size(); ++v) {
    best = std::max(best, offsets_[v + 1] - offsets_[v]);
  }
  return best;
}

std::size_t Graph::min_degree() const noexcept {
  if (vertex_count() == 0) return 0;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::size_t v = 0; v + 1 < offsets_.size(); ++v) {
    best = std::min(best, offsets_[v + 1] - offsets_[v]);
  }
  return best;
}

std::optional<std::size_t> Graph::regular_degree() const noexcept {
  if (vertex_count() == 0) return std::nullopt;
  const std::size_t lo = min_degree();
  if (lo != max_degree()) return std::nullopt;
  return lo;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u >= vertex_count() || v >= vertex_count()) return false;
  auto row = neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < vertex_count(); ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

std::uint64_t Graph::fingerprint() const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t x) {
    for (int b = 0; b < 8; ++b) {
      h ^= (x >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(vertex_count());
  for (std::size_t o : offsets_) mix(o);
  for (Vertex t : targets_) mix(t);
  return h;
}

std::vector<std::uint32_t> bfs_distances(const Graph& g, Vertex source,
                                         std::uint32_t limit) {
  check_vertex(g, source);
  std::vector<std::uint32_t> dist(g.vertex_count(), kUnreached);
  std::vector<Vertex> queue;
  queue.reserve(g.vertex_count());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    if (dist[u] >= limit) continue;
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] == kUnreached) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::optional<std::size_t> distance(const Graph& g, Vertex u, Vertex v) {
  check_vertex(g, u);
  check_vertex(g, v);
  if (u == v) return 0;
  const auto dist = bfs_distances(g, u);
  if (dist[v] == kUnreached) return std::nullopt;
  return dist[v];
}

std::vector<Vertex> ball(const Graph& g, Vertex center, std::size_t radius) {
  check_vertex(g, center);
  std::unordered_map<Vertex, std::size_t> depth{{center, 0}};
  std::vector<Vertex> queue{center};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    const std::size_t du = depth[u];
    if (du >= radius) continue;
    for (Vertex w : g.neighbors(u)) {
      if (depth.emplace(w, du + 1).second) queue.push_back(w);
    }
  }
  std::vector<Vertex> out(queue.begin() + 1, queue.end());
  std::sort(out.begin(), out.end());
  return out;
}

Graph power(const Graph& g, std::size_t k) {
  if (k == 0) throw ArgumentError("graph power requires k >= 1");
  if (k == 1) return g;
  std::vector<std::vector<Vertex>> adjacency(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    adjacency[v] = ball(g, v, k);
  }
  return Graph::from_adjacency(std::move(adjacency));
}

std::optional<std::size_t> girth(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::vector<std::uint32_t> dist(n, kUnreached);
  std::vector<Vertex> parent(n, 0);
  std::vector<Vertex> queue;
  queue.reserve(n);
  for (Vertex root = 0; root < n; ++root) {
    queue.clear();
    queue.push_back(root);
    dist[root] = 0;
    parent[root] = root;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex u = queue[head];
      // Any cycle found from here on is at least 2*dist(u)+1 long.
      if (2 * static_cast<std::size_t>(dist[u]) + 1 >= best) break;
      for (Vertex w : g.neighbors(u)) {
        if (dist[w] == kUnreached) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push_back(w);
        } else if (w != parent[u]) {
          best = std::min<std::size_t>(best, dist[u] + dist[w] + 1);
        }
      }
    }
    for (Vertex v : queue) dist[v] = kUnreached;
  }
  if (best == std::numeric_limits<std::size_t>::max()) return std::nullopt;
  return best;
}

bool is_bipartite(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<int> color(n, -1);
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex u = queue[head];
      for (Vertex w : g.neighbors(u)) {
        if (color[w] == -1) {
          color[w] = 1 - color[u];
          queue.push_back(w);
        } else if (color[w] == color[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

std::vector<std::size_t> connected_components(const Graph& g,
                                              std::size_t* count) {
  const std::size_t n = g.vertex_count();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> comp(n, kNone);
  std::size_t next = 0;
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    if (comp[s] != kNone) continue;
    comp[s] = next;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (Vertex w : g.neighbors(queue[head])) {
        if (comp[w] == kNone) {
          comp[w] = next;
          queue.push_back(w);
        }
      }
    }
    ++next;
  }
  if (count != nullptr) *count = next;
  return comp;
}

bool is_connected(const Graph& g) {
  std::size_t count = 0;
  connected_components(g, &count);
  return count <= 1;
}

bool is_walk(const Graph& g, std::span<const Vertex> seq) {
  for (Vertex v : seq) {
    if (v >= g.vertex_count()) return false;
  }
  for (std::size_t k = 1; k < seq.size(); ++k) {
    if (!g.has_edge(seq[k - 1], seq[k])) return false;
  }
  return true;
}

bool is_path(const Graph& g, std::span<const Vertex> seq) {
  if (!is_walk(g, seq)) return false;
  std::vector<Vertex> sorted(seq.begin(), seq.end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

Graph spanning_subgraph(std::size_t vertex_count, std::span<const Edge> edges) {
  return Graph::from_edges(vertex_count, edges);
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  std::vector<std::uint32_t> index(g.vertex_count(), kUnreached);
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    check_vertex(g, vertices[k]);
    index[vertices[k]] = static_cast<std::uint32_t>(k);
  }
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    for (Vertex w : g.neighbors(vertices[k])) {
      if (index[w] != kUnreached && index[w] > k) {
        edges.push_back({static_cast<Vertex>(k), index[w]});
      }
    }
  }
  return Graph::from_edges(vertices.size(), edges);
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t k = 1; k < n; ++k) {
    edges.push_back({static_cast<Vertex>(k - 1), static_cast<Vertex>(k)});
  }
  return Graph::from_edges(n, edges);
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw ArgumentError("a cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < n; ++k) {
    edges.push_back({static_cast<Vertex>(k), static_cast<Vertex>((k + 1) % n)});
  }
  return Graph::from_edges(n, edges);
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return Graph::from_edges(n, edges);
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    long long a = 0;
    long long b = 0;
    if (!(fields >> a)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected two integers");
    }
    if (!(fields >> b)) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected two integers");
    }
    std::string rest;
    if (fields >> rest) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": trailing tokens after two integers");
    }
    if (a < 0 || b < 0) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": negative value");
    }
    if (!have_header) {
      n = static_cast<std::size_t>(a);
      m = static_cast<std::size_t>(b);
      have_header = true;
      continue;
    }
    edges.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
  }
  if (!have_header) throw ParseError("missing \"n m\" header line");
  if (edges.size() != m) {
    throw ParseError("header announces " + std::to_string(m) +
                     " edges but " + std::to_string(edges.size()) +
                     " were listed");
  }
  try {
    return Graph::from_edges(n, edges);
  } catch (const ArgumentError& e) {
    throw ParseError(e.what());
  }
}

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open edge-list file " + path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

std::string format_edge_list(const Graph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

}  // namespace iug
