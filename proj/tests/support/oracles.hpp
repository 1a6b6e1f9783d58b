// Slow, definition-literal reference implementations used to cross-check the
// library. Nothing here shares code with core/.
#ifndef IUG_TESTS_ORACLES_HPP
#define IUG_TESTS_ORACLES_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "iug/gamma.hpp"
#include "iug/graph.hpp"

namespace oracle {

using iug::Graph;
using iug::Vertex;

inline std::vector<std::vector<bool>> adjacency_matrix(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<bool>> a(n, std::vector<bool>(n, false));
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v : g.neighbors(u)) a[u][v] = true;
  return a;
}

inline std::vector<int> bfs(const Graph& g, Vertex s) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::queue<Vertex> q;
  dist[s] = 0;
  q.push(s);
  while (!q.empty()) {
    Vertex u = q.front();
    q.pop();
    for (Vertex w : g.neighbors(u))
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        q.push(w);
      }
  }
  return dist;
}

// Every simple path with exactly k vertices, as vertex sequences (both
// orientations included).
inline void for_each_path(const Graph& g, std::size_t k,
                          const std::function<void(const std::vector<Vertex>&)>& visit) {
  if (k == 0) {
    visit({});
    return;
  }
  std::vector<Vertex> path;
  std::vector<bool> used(g.vertex_count(), false);
  std::function<void()> rec = [&] {
    if (path.size() == k) {
      visit(path);
      return;
    }
    for (Vertex w : g.neighbors(path.back())) {
      if (used[w]) continue;
      used[w] = true;
      path.push_back(w);
      rec();
      path.pop_back();
      used[w] = false;
    }
  };
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    used[s] = true;
    path.assign(1, s);
    rec();
    used[s] = false;
  }
}

inline bool q_expanding(const Graph& f, Vertex v, const std::vector<std::vector<Vertex>>& sets,
                        std::size_t q) {
  const std::size_t n = f.vertex_count();
  std::vector<std::vector<char>> in_set(q, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < q; ++i)
    for (Vertex x : sets[i]) in_set[i][x] = 1;
  std::vector<char> blocked(n, 0), on_walk(n, 0), end(n, 0);
  bool result = true;
  for (std::size_t k = 0; k <= q && result; ++k) {
    for_each_path(f, k, [&](const std::vector<Vertex>& p) {
      if (!result || (k > 1 && p.front() > p.back())) return;
      for (Vertex x : p) blocked[x] = 1;
      std::fill(end.begin(), end.end(), 0);
      std::size_t ends = 0;
      std::vector<Vertex> walk{v};
      on_walk[v] = 1;
      std::function<void()> rec = [&] {
        const std::size_t i = walk.size() - 1;
        if (i == q) {
          if (!end[walk.back()]) {
            end[walk.back()] = 1;
            ++ends;
          }
          return;
        }
        for (Vertex w : f.neighbors(walk.back())) {
          if (on_walk[w] || blocked[w] || in_set[i][w]) continue;
          on_walk[w] = 1;
          walk.push_back(w);
          rec();
          walk.pop_back();
          on_walk[w] = 0;
        }
      };
      rec();
      on_walk[v] = 0;
      for (Vertex x : p) blocked[x] = 0;
      if (2 * ends < n) result = false;
    });
  }
  return result;
}

// Components by brute BFS.
inline std::vector<std::vector<Vertex>> components(const Graph& g) {
  std::vector<std::vector<Vertex>> out;
  std::vector<bool> seen(g.vertex_count(), false);
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (seen[s]) continue;
    auto d = bfs(g, s);
    out.emplace_back();
    for (Vertex v = 0; v < g.vertex_count(); ++v)
      if (d[v] >= 0) {
        seen[v] = true;
        out.back().push_back(v);
      }
  }
  return out;
}

// Is the subgraph on `keep` (induced edges of g) a path or a cycle?
inline bool path_or_cycle(const Graph& g, const std::vector<Vertex>& keep) {
  if (keep.empty()) return false;
  std::set<Vertex> in(keep.begin(), keep.end());
  std::size_t edges = 0;
  for (Vertex u : keep) {
    std::size_t deg = 0;
    for (Vertex w : g.neighbors(u)) deg += in.count(w);
    if (deg > 2) return false;
    edges += deg;
  }
  edges /= 2;
  // connectivity inside keep
  std::set<Vertex> seen{keep[0]};
  std::vector<Vertex> stack{keep[0]};
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(u))
      if (in.count(w) && seen.insert(w).second) stack.push_back(w);
  }
  if (seen.size() != keep.size()) return false;
  return edges == keep.size() - 1 || (edges == keep.size() && keep.size() >= 3);
}

// Thin by definition: max degree <= 3 and each component has <= 2 vertices of
// degree 3 or equals T plus a matching from U subset V(T) to fresh vertices U'.
inline bool thin(const Graph& g) {
  if (g.max_degree() > 3) return false;
  for (const auto& comp : components(g)) {
    std::size_t deg3 = 0;
    for (Vertex v : comp) deg3 += g.degree(v) == 3;
    if (deg3 <= 2) continue;
    bool found = false;
    const std::size_t k = comp.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k) && !found; ++mask) {
      std::set<Vertex> fresh;
      for (std::size_t i = 0; i < k; ++i)
        if (mask >> i & 1) fresh.insert(comp[i]);
      bool ok = true;
      std::set<Vertex> anchors;
      for (Vertex x : fresh) {
        if (g.degree(x) != 1) { ok = false; break; }
        Vertex a = g.neighbors(x)[0];
        if (fresh.count(a) || !anchors.insert(a).second) { ok = false; break; }
      }
      if (!ok) continue;
      std::vector<Vertex> rest;
      for (Vertex v : comp)
        if (!fresh.count(v)) rest.push_back(v);
      found = path_or_cycle(g, rest);
    }
    if (!found) return false;
  }
  return true;
}

// Largest non-trivial |eigenvalue| of a regular graph via a dense solver.
inline double dense_second_eigenvalue(const Graph& g) {
  const std::size_t n = g.vertex_count();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v : g.neighbors(u)) a(u, v) = 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(ev.begin(), ev.end());
  const double d = static_cast<double>(g.max_degree());
  ev.pop_back();  // the degree
  if (!ev.empty() && std::abs(ev.front() + d) < 1e-8) ev.erase(ev.begin());
  double best = 0;
  for (double x : ev) best = std::max(best, std::abs(x));
  return best;
}

inline std::vector<Graph> all_graphs(std::size_t n, std::size_t max_degree) {
  std::vector<std::pair<Vertex, Vertex>> slots;
  for (Vertex v = 0; v < n; ++v)
    for (Vertex u = 0; u < v; ++u) slots.emplace_back(u, v);
  std::vector<Graph> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    std::vector<iug::Edge> edges;
    std::vector<std::size_t> deg(n, 0);
    bool ok = true;
    for (std::size_t i = 0; i < slots.size() && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      auto [u, v] = slots[i];
      ok = ++deg[u] <= max_degree && ++deg[v] <= max_degree;
      edges.push_back({u, v});
    }
    if (ok) out.push_back(Graph::from_edges(n, edges));
  }
  return out;
}

// Isomorphism invariant by trying every permutation.
inline std::vector<bool> permutation_key(const Graph& g) {
  const std::size_t n = g.vertex_count();
  auto a = adjacency_matrix(g);
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::vector<bool> best;
  do {
    std::vector<bool> code;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) code.push_back(a[perm[i]][perm[j]]);
    if (best.empty() || code > best) best = code;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Gamma adjacency straight from the three conditions, with BFS distances
// recomputed on the expanders.
class GammaOracle {
 public:
  explicit GammaOracle(const iug::GammaParams& p) : p_(p) {}

  bool power4(const Graph& g, Vertex a, Vertex b) {
    auto d = bfs(g, a)[b];
    return d >= 1 && d <= 4;
  }

  std::size_t rho(Vertex v, Vertex w) {
    auto d = bfs(*p_.r_m, v);
    std::size_t rank = 0;
    for (Vertex x = 0; x < w; ++x) rank += d[x] >= 1 && d[x] <= 4;
    return rank;
  }

  bool adjacent(const iug::GammaVertex& a, const iug::GammaVertex& b) {
    auto x = [](const iug::GammaVertex& g, std::size_t i) {
      return i == 1 ? g.x1 : g.blocks[i - 2].x;
    };
    for (std::size_t i = 2; i <= p_.delta; ++i) {
      if (!power4(*p_.r_m, x(a, i), x(b, i))) continue;
      bool e1 = false;
      for (std::size_t j = 1; j < i && !e1; ++j) e1 = power4(*p_.r_m, x(a, j), x(b, j));
      if (!e1) continue;
      const auto& ba = a.blocks[i - 2];
      const auto& bb = b.blocks[i - 2];
      if (!ba.subset.test(rho(ba.x, bb.x)) || !bb.subset.test(rho(bb.x, ba.x))) continue;
      if (power4(*p_.r_z, ba.u, bb.u)) return true;
    }
    return false;
  }

 private:
  const iug::GammaParams& p_;
};

inline Graph random_graph(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<iug::Edge> edges;
  for (Vertex v = 0; v < n; ++v)
    for (Vertex u = 0; u < v; ++u)
      if (coin(rng)) edges.push_back({u, v});
  return Graph::from_edges(n, edges);
}

}  // namespace oracle

#endif  // IUG_TESTS_ORACLES_HPP
