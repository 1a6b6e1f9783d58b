#include "iug/thin.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <random>

#include "iug/error.hpp"

namespace iug {

namespace {

std::string str(std::size_t x) { return std::to_string(x); }

std::vector<std::vector<Vertex>> component_lists(const Graph& g) {
  std::size_t count = 0;
  const auto comp = connected_components(g, &count);
  std::vector<std::vector<Vertex>> lists(count);
  for (Vertex v = 0; v < g.vertex_count(); ++v) lists[comp[v]].push_back(v);
  return lists;
}

}  // namespace

// ---------------------------------------------------------------------------
// Thinness

bool is_path_or_cycle_augmentation(const Graph& g, const std::vector<Vertex>& component) {
  if (component.size() <= 2) return true;
  for (Vertex v : component) {
    if (g.degree(v) > 3) return false;
  }
  // Pendant vertices form U'; what remains must have degree <= 2.
  for (Vertex v : component) {
    if (g.degree(v) == 1) continue;
    std::size_t core_degree = 0;
    for (Vertex w : g.neighbors(v)) {
      if (g.degree(w) != 1) ++core_degree;
    }
    if (core_degree > 2) return false;
  }
  return true;
}

ThinWitness is_thin(const Graph& g) {
  ThinWitness w;
  const auto comps = component_lists(g);
  for (const auto& comp : comps) {
    std::size_t branch = 0;
    for (Vertex v : comp) {
      if (g.degree(v) > 3) {
        return {false, comp.front(),
                "vertex " + str(v) + " has degree " + str(g.degree(v)) + " > 3"};
      }
      if (g.degree(v) == 3) ++branch;
    }
    if (branch <= 2) continue;
    if (!is_path_or_cycle_augmentation(g, comp)) {
      return {false, comp.front(),
              "component of vertex " + str(comp.front()) + " has " + str(branch) +
                  " vertices of degree 3 and is not an augmented path or cycle"};
    }
  }
  return w;
}

// ---------------------------------------------------------------------------
// Decomposition

std::string to_string(DecomposeStrategy s) {
  switch (s) {
    case DecomposeStrategy::kAuto: return "auto";
    case DecomposeStrategy::kEvenPetersen: return "even-petersen";
    case DecomposeStrategy::kEdgeColouring: return "edge-colouring";
    case DecomposeStrategy::kSearch: return "search";
    case DecomposeStrategy::kCustom: return "custom";
  }
  return "unknown";
}

DecomposeStrategy parse_decompose_strategy(const std::string& name) {
  if (name == "auto") return DecomposeStrategy::kAuto;
  if (name == "even-petersen" || name == "petersen") return DecomposeStrategy::kEvenPetersen;
  if (name == "edge-colouring" || name == "edge-coloring") return DecomposeStrategy::kEdgeColouring;
  if (name == "search") return DecomposeStrategy::kSearch;
  if (name == "custom") return DecomposeStrategy::kCustom;
  throw ArgumentError("unknown decomposition strategy '" + name + "'");
}

namespace {

/// Maximum bipartite matching (Hopcroft-Karp) on a multigraph given as
/// arcs left[a] -> right[a]; returns the arc chosen for each left vertex
/// (or -1).
std::vector<long> hopcroft_karp(std::size_t n_left, std::size_t n_right,
                                const std::vector<std::vector<std::size_t>>& arcs_of,
                                const std::vector<std::size_t>& head) {
  constexpr long kNone = -1;
  constexpr std::size_t kInf = static_cast<std::size_t>(-1);
  std::vector<long> match_left(n_left, kNone), match_right(n_right, kNone);
  std::vector<std::size_t> layer(n_left);
  std::vector<std::size_t> it(n_left);
  auto bfs = [&] {
    std::deque<std::size_t> queue;
    bool found = false;
    for (std::size_t u = 0; u < n_left; ++u) {
      if (match_left[u] == kNone) {
        layer[u] = 0;
        queue.push_back(u);
      } else {
        layer[u] = kInf;
      }
    }
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t a : arcs_of[u]) {
        const long m = match_right[head[a]];
        if (m == kNone) {
          found = true;
        } else if (layer[m] == kInf) {
          layer[m] = layer[u] + 1;
          queue.push_back(static_cast<std::size_t>(m));
        }
      }
    }
    return found;
  };
  // Iterative DFS along the layered graph.
  auto dfs = [&](std::size_t root) {
    std::vector<std::size_t> stack{root};
    std::vector<std::size_t> via;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      bool advanced = false;
      while (it[u] < arcs_of[u].size()) {
        const std::size_t a = arcs_of[u][it[u]++];
        const long m = match_right[head[a]];
        if (m == kNone) {
          via.push_back(a);
          // Flip the augmenting path.
          for (std::size_t k = via.size(); k-- > 0;) {
            const std::size_t arc = via[k];
            const std::size_t left = stack[k];
            match_left[left] = static_cast<long>(arc);
            match_right[head[arc]] = static_cast<long>(left);
          }
          return true;
        }
        if (layer[m] == layer[u] + 1) {
          via.push_back(a);
          stack.push_back(static_cast<std::size_t>(m));
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        layer[u] = kInf;
        stack.pop_back();
        if (!via.empty()) via.pop_back();
      }
    }
    return false;
  };
  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    for (std::size_t u = 0; u < n_left; ++u) {
      if (match_left[u] == kNone) dfs(u);
    }
  }
  return match_left;
}

/// Splits an even-regular multigraph into 2-factors: Euler orientation, then
/// perfect matchings of the (out, in) bipartite double cover.
std::vector<std::vector<std::size_t>> two_factorize(std::size_t n,
                                                    const std::vector<Edge>& medges,
                                                    std::size_t degree) {
  const std::size_t m = medges.size();
  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t e = 0; e < m; ++e) {
    incident[medges[e].u].push_back(e);
    incident[medges[e].v].push_back(e);
  }
  std::vector<char> used(m, 0);
  std::vector<std::size_t> pos(n, 0);
  std::vector<std::size_t> tail(m), head(m);
  for (Vertex s = 0; s < n; ++s) {
    std::vector<Vertex> stack{s};
    while (!stack.empty()) {
      const Vertex u = stack.back();
      while (pos[u] < incident[u].size() && used[incident[u][pos[u]]]) ++pos[u];
      if (pos[u] == incident[u].size()) {
        stack.pop_back();
        continue;
      }
      const std::size_t e = incident[u][pos[u]];
      used[e] = 1;
      const Vertex w = medges[e].u == u ? medges[e].v : medges[e].u;
      tail[e] = u;
      head[e] = w;
      stack.push_back(w);
    }
  }
  std::vector<char> taken(m, 0);
  std::vector<std::vector<std::size_t>> layers;
  for (std::size_t round = 0; round < degree / 2; ++round) {
    std::vector<std::vector<std::size_t>> arcs_of(n);
    for (std::size_t e = 0; e < m; ++e) {
      if (!taken[e]) arcs_of[tail[e]].push_back(e);
    }
    const auto match = hopcroft_karp(n, n, arcs_of, head);
    std::vector<std::size_t> layer;
    for (std::size_t u = 0; u < n; ++u) {
      if (match[u] < 0) throw IntegrityError("regular bipartite cover has no perfect matching");
      taken[static_cast<std::size_t>(match[u])] = 1;
      layer.push_back(static_cast<std::size_t>(match[u]));
    }
    layers.push_back(std::move(layer));
  }
  return layers;
}

ThinDecomposition assemble(const Graph& h, std::size_t delta,
                           const std::vector<std::pair<std::size_t, std::size_t>>& mult) {
  ThinDecomposition dec;
  dec.edges = h.edges();
  dec.multiplicity = mult;
  std::vector<std::vector<Edge>> part_edges(delta);
  for (std::size_t e = 0; e < dec.edges.size(); ++e) {
    part_edges[mult[e].first].push_back(dec.edges[e]);
    part_edges[mult[e].second].push_back(dec.edges[e]);
  }
  for (auto& pe : part_edges) dec.parts.push_back(Graph::from_edges(h.vertex_count(), pe));
  return dec;
}

/// Layers for even delta; layer j fills parts 2j and 2j+1.
ThinDecomposition even_petersen(const Graph& h, std::size_t delta) {
  const std::size_t n = h.vertex_count();
  const auto edges = h.edges();
  std::vector<std::pair<std::size_t, std::size_t>> mult(edges.size());
  if (edges.empty()) return assemble(h, delta, mult);

  // Padding: a clone of H plus parallel edges v -- v' for each missing degree.
  std::vector<Edge> medges(edges.begin(), edges.end());
  std::size_t total = n;
  if (h.regular_degree() != delta) {
    total = 2 * n;
    for (const Edge& e : edges) {
      medges.push_back({static_cast<Vertex>(e.u + n), static_cast<Vertex>(e.v + n)});
    }
    for (Vertex v = 0; v < n; ++v) {
      for (std::size_t k = h.degree(v); k < delta; ++k) {
        medges.push_back({v, static_cast<Vertex>(v + n)});
      }
    }
  }
  const auto layers = two_factorize(total, medges, delta);
  for (std::size_t j = 0; j < layers.size(); ++j) {
    for (std::size_t e : layers[j]) {
      if (e < edges.size()) mult[e] = {2 * j, 2 * j + 1};
    }
  }
  return assemble(h, delta, mult);
}

/// Backtracking over unordered part pairs for each edge, one H-component at
/// a time. Thinness is closed under deleting edges, so every partial part
/// must already be thin.
// Union of parts given as adjacency lists: is the component of `start`
// thin? Degrees are assumed to be at most 3.
bool component_thin(const std::vector<std::vector<Vertex>>& adj, Vertex start) {
  std::vector<Vertex> comp{start};
  std::vector<Vertex> seen{start};
  for (std::size_t head = 0; head < comp.size(); ++head) {
    for (Vertex w : adj[comp[head]]) {
      if (std::find(seen.begin(), seen.end(), w) == seen.end()) {
        seen.push_back(w);
        comp.push_back(w);
      }
    }
  }
  std::size_t branch = 0;
  for (Vertex v : comp) branch += adj[v].size() == 3;
  if (branch <= 2) return true;
  for (Vertex v : comp) {
    if (adj[v].size() == 1) continue;
    std::size_t core = 0;
    for (Vertex w : adj[v]) core += adj[w].size() != 1;
    if (core > 2) return false;
  }
  return true;
}

class PairSearch {
 public:
  PairSearch(const Graph& h, std::size_t delta, std::size_t budget)
      : h_(h), delta_(delta), budget_(budget), edges_(h.edges()), mult_(edges_.size()),
        adj_(delta, std::vector<std::vector<Vertex>>(h.vertex_count())) {
    for (std::size_t a = 0; a < delta; ++a) {
      for (std::size_t b = a + 1; b < delta; ++b) pairs_.push_back({a, b});
    }
    assigned_.assign(edges_.size(), false);
  }

  ThinDecomposition run() {
    std::size_t count = 0;
    const auto comp = connected_components(h_, &count);
    std::vector<std::vector<std::size_t>> by_comp(count);
    for (std::size_t e = 0; e < edges_.size(); ++e) by_comp[comp[edges_[e].u]].push_back(e);
    for (auto& order : by_comp) {
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return weight(a) > weight(b);
      });
      if (!solve(order, 0, 0)) {
        throw DecompositionError("no thin decomposition of the component of vertex " +
                                     str(edges_[order.front()].u) + " exists",
                                 partial());
      }
    }
    return assemble(h_, delta_, mult_);
  }

 private:
  std::size_t weight(std::size_t e) const { return h_.degree(edges_[e].u) + h_.degree(edges_[e].v); }

  std::vector<std::vector<int>> partial() const {
    std::vector<std::vector<int>> out(edges_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (assigned_[e]) out[e] = {static_cast<int>(mult_[e].first), static_cast<int>(mult_[e].second)};
    }
    return out;
  }

  bool part_component_thin(std::size_t p, Vertex start) const { return component_thin(adj_[p], start); }

  void link(std::size_t p, Vertex u, Vertex v) {
    adj_[p][u].push_back(v);
    adj_[p][v].push_back(u);
  }
  void unlink(std::size_t p, Vertex u, Vertex v) {
    adj_[p][u].pop_back();
    adj_[p][v].pop_back();
  }

  bool solve(const std::vector<std::size_t>& order, std::size_t k, std::size_t used_parts) {
    if (k == order.size()) return true;
    const std::size_t e = order[k];
    const Vertex u = edges_[e].u, v = edges_[e].v;
    for (const auto& [a, b] : pairs_) {
      // New part labels are introduced in increasing order.
      if (a > used_parts || b > (a < used_parts ? used_parts : used_parts + 1)) continue;
      if (adj_[a][u].size() >= 3 || adj_[a][v].size() >= 3) continue;
      if (adj_[b][u].size() >= 3 || adj_[b][v].size() >= 3) continue;
      if (++nodes_ > budget_) {
        throw DecompositionError("decomposition search budget of " + str(budget_) + " nodes exhausted",
                                 partial());
      }
      link(a, u, v);
      link(b, u, v);
      mult_[e] = {a, b};
      assigned_[e] = true;
      if (part_component_thin(a, u) && part_component_thin(b, u) &&
          solve(order, k + 1, std::max(used_parts, b + 1))) {
        return true;
      }
      assigned_[e] = false;
      unlink(a, u, v);
      unlink(b, u, v);
    }
    return false;
  }

  const Graph& h_;
  std::size_t delta_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::pair<std::size_t, std::size_t>> mult_;
  std::vector<bool> assigned_;
  std::vector<std::vector<std::vector<Vertex>>> adj_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

class EdgeColouring {
 public:
  EdgeColouring(const Graph& h, std::size_t delta)
      : h_(h), delta_(delta), edges_(h.edges()), colour_(edges_.size(), kNone),
        at_(h.vertex_count() * delta, kNone) {}

  // Greedy colouring with Kempe-chain swaps; returns the uncoloured edges.
  std::vector<std::size_t> run(const std::vector<std::size_t>& order) {
    std::vector<std::size_t> left;
    for (std::size_t e : order) {
      if (!place(e)) left.push_back(e);
    }
    return left;
  }

  std::size_t colour(std::size_t e) const { return colour_[e]; }
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

 private:
  std::size_t& at(Vertex v, std::size_t c) { return at_[v * delta_ + c]; }

  void set(std::size_t e, std::size_t c) {
    colour_[e] = c;
    at(edges_[e].u, c) = e;
    at(edges_[e].v, c) = e;
  }

  bool place(std::size_t e) {
    const Vertex u = edges_[e].u, v = edges_[e].v;
    for (std::size_t c = 0; c < delta_; ++c) {
      if (at(u, c) == kNone && at(v, c) == kNone) {
        set(e, c);
        return true;
      }
    }
    for (int side = 0; side < 2; ++side) {
      const Vertex x = side ? v : u, y = side ? u : v;
      for (std::size_t a = 0; a < delta_; ++a) {
        if (at(x, a) != kNone) continue;
        for (std::size_t b = 0; b < delta_; ++b) {
          if (b == a || at(y, b) != kNone) continue;
          // a is free at x and taken at y; flip the a/b chain leaving y.
          std::vector<std::size_t> chain;
          Vertex w = y;
          std::size_t want = a;
          bool hits_x = false;
          while (at(w, want) != kNone) {
            const std::size_t f = at(w, want);
            chain.push_back(f);
            w = edges_[f].u == w ? edges_[f].v : edges_[f].u;
            if (w == x) {
              hits_x = true;
              break;
            }
            want = want == a ? b : a;
          }
          if (hits_x) continue;
          for (std::size_t f : chain) {
            at(edges_[f].u, colour_[f]) = kNone;
            at(edges_[f].v, colour_[f]) = kNone;
          }
          for (std::size_t f : chain) set(f, colour_[f] == a ? b : a);
          set(e, a);
          return true;
        }
      }
    }
    return false;
  }

  const Graph& h_;
  std::size_t delta_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> colour_;
  std::vector<std::size_t> at_;
};

/// Parts M_c u M_{c+1}: two matchings per part, so every part is a union of
/// paths and cycles. Uncoloured edges go to the first pair of parts that
/// stays thin.
std::optional<ThinDecomposition> colouring_decomposition(const Graph& h, std::size_t delta,
                                                         std::size_t attempts) {
  const auto edges = h.edges();
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return h.degree(edges[a].u) + h.degree(edges[a].v) > h.degree(edges[b].u) + h.degree(edges[b].v);
  });
  std::mt19937_64 rng(0x7468696eull);
  for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
    if (attempt > 0) std::shuffle(order.begin(), order.end(), rng);
    EdgeColouring col(h, delta);
    const auto left = col.run(order);
    std::vector<std::pair<std::size_t, std::size_t>> mult(edges.size());
    std::vector<std::vector<std::vector<Vertex>>> adj(delta, std::vector<std::vector<Vertex>>(h.vertex_count()));
    auto link = [&](std::size_t p, std::size_t e) {
      adj[p][edges[e].u].push_back(edges[e].v);
      adj[p][edges[e].v].push_back(edges[e].u);
    };
    auto unlink = [&](std::size_t p, std::size_t e) {
      adj[p][edges[e].u].pop_back();
      adj[p][edges[e].v].pop_back();
    };
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const std::size_t c = col.colour(e);
      if (c == EdgeColouring::kNone) continue;
      const std::size_t prev = (c + delta - 1) % delta;
      mult[e] = {std::min(c, prev), std::max(c, prev)};
      link(mult[e].first, e);
      link(mult[e].second, e);
    }
    bool ok = true;
    for (std::size_t e : left) {
      const Vertex u = edges[e].u, v = edges[e].v;
      bool placed = false;
      for (std::size_t a = 0; a < delta && !placed; ++a) {
        if (adj[a][u].size() >= 3 || adj[a][v].size() >= 3) continue;
        link(a, e);
        if (!component_thin(adj[a], u)) {
          unlink(a, e);
          continue;
        }
        for (std::size_t b = a + 1; b < delta && !placed; ++b) {
          if (adj[b][u].size() >= 3 || adj[b][v].size() >= 3) continue;
          link(b, e);
          if (component_thin(adj[b], u)) {
            mult[e] = {a, b};
            placed = true;
          } else {
            unlink(b, e);
          }
        }
        if (!placed) unlink(a, e);
      }
      if (!placed) {
        ok = false;
        break;
      }
    }
    if (ok) return assemble(h, delta, mult);
  }
  return std::nullopt;
}

ThinDecomposition with_extra_parts(ThinDecomposition dec, const Graph& h, std::size_t delta) {
  while (dec.parts.size() < delta) dec.parts.emplace_back(h.vertex_count());
  return dec;
}

}  // namespace

ThinDecomposition thin_decompose(const Graph& h, std::size_t delta, DecomposeStrategy strategy,
                                 const DecomposeOptions& options) {
  if (delta < 2) throw ArgumentError("decomposition needs delta >= 2");
  if (h.max_degree() > delta) {
    throw ArgumentError("maximum degree " + str(h.max_degree()) + " exceeds delta = " + str(delta));
  }
  ThinDecomposition dec;
  switch (strategy) {
    case DecomposeStrategy::kEvenPetersen:
      if (delta % 2 != 0) throw ArgumentError("even-petersen strategy needs an even delta");
      dec = even_petersen(h, delta);
      break;
    case DecomposeStrategy::kEdgeColouring: {
      auto c = colouring_decomposition(h, delta, options.colouring_attempts);
      if (!c) {
        throw DecompositionError("edge-colouring construction left an edge that fits no pair of parts", {});
      }
      dec = std::move(*c);
      break;
    }
    case DecomposeStrategy::kSearch:
      dec = PairSearch(h, delta, options.search_budget).run();
      break;
    case DecomposeStrategy::kCustom:
      if (!options.custom) throw ArgumentError("custom strategy selected without a decomposer");
      dec = options.custom(h, delta);
      break;
    case DecomposeStrategy::kAuto:
      if (delta % 2 == 0) {
        dec = even_petersen(h, delta);
      } else if (h.max_degree() <= delta - 1) {
        dec = with_extra_parts(even_petersen(h, delta - 1), h, delta);
      } else if (is_thin(h)) {
        std::vector<std::pair<std::size_t, std::size_t>> mult(h.edge_count(), {0, 1});
        dec = with_extra_parts(assemble(h, 2, mult), h, delta);
      } else if (auto c = colouring_decomposition(h, delta, options.colouring_attempts)) {
        dec = std::move(*c);
      } else {
        dec = PairSearch(h, delta, options.search_budget).run();
      }
      break;
  }
  const auto report = validate_decomposition(h, dec);
  if (!report.ok()) {
    throw DecompositionError("decomposition failed validation: " + report.violations.front().detail, {});
  }
  return dec;
}

std::size_t DecompositionReport::count(DecompositionViolation::Kind k) const {
  return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(),
                                                [k](const auto& v) { return v.kind == k; }));
}

DecompositionReport validate_decomposition(const Graph& h, const ThinDecomposition& dec) {
  using Kind = DecompositionViolation::Kind;
  DecompositionReport report;
  const auto edges = h.edges();
  if (dec.edges != edges || dec.multiplicity.size() != edges.size()) {
    report.violations.push_back({Kind::kShape, 0, "edge list or multiplicity table does not match H"});
  }
  for (std::size_t e = 0; e < dec.multiplicity.size(); ++e) {
    if (std::max(dec.multiplicity[e].first, dec.multiplicity[e].second) >= dec.parts.size()) {
      report.violations.push_back({Kind::kShape, e, "multiplicity entry " + str(e) + " names a missing part"});
    }
  }
  for (std::size_t p = 0; p < dec.parts.size(); ++p) {
    const Graph& part = dec.parts[p];
    if (part.vertex_count() != h.vertex_count()) {
      report.violations.push_back({Kind::kSpanning, p,
                                   "part " + str(p) + " has " + str(part.vertex_count()) +
                                       " vertices, H has " + str(h.vertex_count())});
      continue;
    }
    if (auto w = is_thin(part); !w) {
      report.violations.push_back({Kind::kThinness, p, "part " + str(p) + " is not thin: " + w.reason});
    }
    for (const Edge& e : part.edges()) {
      if (!h.has_edge(e.u, e.v)) {
        report.violations.push_back({Kind::kShape, p,
                                     "part " + str(p) + " contains non-edge {" + str(e.u) + "," +
                                         str(e.v) + "}"});
      }
    }
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    std::vector<std::size_t> holders;
    for (std::size_t p = 0; p < dec.parts.size(); ++p) {
      const Graph& part = dec.parts[p];
      if (part.vertex_count() == h.vertex_count() && part.has_edge(edges[e].u, edges[e].v)) {
        holders.push_back(p);
      }
    }
    const bool table_ok = e < dec.multiplicity.size() && holders.size() == 2 &&
                          dec.multiplicity[e] == std::pair{holders[0], holders[1]};
    if (!table_ok) {
      report.violations.push_back({Kind::kMultiplicity, e,
                                   "edge {" + str(edges[e].u) + "," + str(edges[e].v) + "} lies in " +
                                       str(holders.size()) + " parts"});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Layout into the 4th power of a path

std::size_t layout_stretch(const Graph& g, const PathPowerLayout& layout) {
  std::size_t worst = 0;
  for (const Edge& e : g.edges()) {
    const std::size_t a = layout.phi.at(e.u), b = layout.phi.at(e.v);
    worst = std::max(worst, a > b ? a - b : b - a);
  }
  return worst;
}

std::string check_layout(const Graph& g, const PathPowerLayout& layout, std::size_t n) {
  if (layout.phi.size() != g.vertex_count()) return "layout size differs from the vertex count";
  std::vector<char> taken(n, 0);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const std::size_t p = layout.phi[v];
    if (p >= n) return "phi(" + str(v) + ") = " + str(p) + " is out of range";
    if (taken[p]) return "phi is not injective at position " + str(p);
    taken[p] = 1;
  }
  for (const Edge& e : g.edges()) {
    const std::size_t a = layout.phi[e.u], b = layout.phi[e.v];
    if ((a > b ? a - b : b - a) > kMaxStretch) {
      return "edge {" + str(e.u) + "," + str(e.v) + "} stretched to " + str(a > b ? a - b : b - a);
    }
  }
  return {};
}

namespace {

using Order = std::vector<Vertex>;

/// Walk along a path-like run of unblocked vertices starting at `from`,
/// stopping at its end (or just before closing a cycle).
Order trace(const Graph& g, Vertex from, const std::vector<char>& blocked) {
  Order out{from};
  Vertex prev = from, cur = from;
  for (;;) {
    std::optional<Vertex> next;
    for (Vertex w : g.neighbors(cur)) {
      if (w != prev && w != from && !blocked[w]) {
        next = w;
        break;
      }
    }
    if (!next) return out;
    out.push_back(*next);
    prev = cur;
    cur = *next;
  }
}

/// Zigzag v1, vk, v2, v_{k-1}, ... of a cycle listed in cyclic order.
Order zigzag(const Order& cycle) {
  Order out;
  std::size_t lo = 0, hi = cycle.size();
  while (lo < hi) {
    out.push_back(cycle[lo++]);
    if (lo < hi) out.push_back(cycle[--hi]);
  }
  return out;
}

/// Cyclic order of a connected 2-regular component.
Order cycle_order(const Graph& g, Vertex start) {
  Order out{start};
  Vertex prev = start, cur = g.neighbors(start)[0];
  while (cur != start) {
    out.push_back(cur);
    const auto nb = g.neighbors(cur);
    const Vertex next = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = next;
  }
  return out;
}

/// Two legs hanging off a hub, listed hub-outwards, interleaved so that the
/// sequence runs towards the hub (tips first).
Order interleave_inwards(const Order& a, const Order& b) {
  Order out;
  for (std::size_t i = std::max(a.size(), b.size()); i-- > 0;) {
    if (i < a.size()) out.push_back(a[i]);
    if (i < b.size()) out.push_back(b[i]);
  }
  return out;
}

Order interleave_outwards(const Order& a, const Order& b) {
  Order out;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    if (i < a.size()) out.push_back(a[i]);
    if (i < b.size()) out.push_back(b[i]);
  }
  return out;
}

struct Segment {
  Order path;                   // in path order
  std::vector<Vertex> front_hubs;  // branch neighbours of path.front()
  std::vector<Vertex> back_hubs;   // branch neighbours of path.back()
};

/// Components with one or two vertices of degree 3.
std::optional<Order> route_branched(const Graph& g, const std::vector<Vertex>& comp,
                                    const std::vector<Vertex>& hubs) {
  std::vector<char> is_hub(g.vertex_count(), 0);
  for (Vertex x : hubs) is_hub[x] = 1;
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<Segment> segs;
  for (Vertex v : comp) {
    if (is_hub[v] || seen[v]) continue;
    // Find an end of v's segment.
    Order half = trace(g, v, is_hub);
    const Vertex end = half.back();
    Order path = trace(g, end, is_hub);
    for (Vertex x : path) seen[x] = 1;
    Segment s;
    s.path = path;
    for (Vertex w : g.neighbors(path.front())) {
      if (is_hub[w]) s.front_hubs.push_back(w);
    }
    for (Vertex w : g.neighbors(path.back())) {
      if (is_hub[w]) s.back_hubs.push_back(w);
    }
    segs.push_back(std::move(s));
  }

  // Legs per hub: pendant legs and loop halves, listed hub-outwards.
  std::map<Vertex, std::vector<Order>> pendants;
  std::map<Vertex, std::vector<std::pair<Order, Order>>> loops;
  std::vector<Order> bridges;  // from hubs[0] to hubs[1]
  for (const auto& s : segs) {
    const auto& p = s.path;
    if (p.size() == 1) {
      const auto& hs = s.front_hubs;
      if (hs.size() == 1) {
        pendants[hs[0]].push_back(p);
      } else if (hs.size() == 2) {
        bridges.push_back(p);
      }
      continue;
    }
    const bool f = !s.front_hubs.empty(), b = !s.back_hubs.empty();
    if (f && b) {
      const Vertex hf = s.front_hubs[0], hb = s.back_hubs[0];
      if (hf == hb) {
        const std::size_t half_size = (p.size() + 1) / 2;
        Order a(p.begin(), p.begin() + half_size);
        Order c(p.rbegin(), p.rend() - half_size);
        loops[hf].push_back({a, c});
      } else if (hf == hubs[0]) {
        bridges.push_back(p);
      } else {
        bridges.push_back(Order(p.rbegin(), p.rend()));
      }
    } else if (f) {
      pendants[s.front_hubs[0]].push_back(p);
    } else if (b) {
      pendants[s.back_hubs[0]].push_back(Order(p.rbegin(), p.rend()));
    }
  }
  if (hubs.size() == 2 && g.has_edge(hubs[0], hubs[1])) bridges.push_back({});

  // Two legs for the "tips first" side of a hub.
  auto side_legs = [&](Vertex hub, std::vector<Order>& spare) -> std::optional<std::pair<Order, Order>> {
    auto& lp = loops[hub];
    auto& pp = pendants[hub];
    if (!lp.empty()) {
      auto r = lp.back();
      lp.pop_back();
      spare = pp;
      return r;
    }
    if (pp.size() >= 2) {
      auto r = std::pair{pp[0], pp[1]};
      spare.assign(pp.begin() + 2, pp.end());
      return r;
    }
    Order one = pp.empty() ? Order{} : pp[0];
    spare.clear();
    return std::pair{one, Order{}};
  };

  if (hubs.size() == 1) {
    const Vertex c = hubs[0];
    std::vector<Order> spare;
    auto legs = side_legs(c, spare);
    Order out = interleave_inwards(legs->first, legs->second);
    out.push_back(c);
    for (const auto& leg : spare) out.insert(out.end(), leg.begin(), leg.end());
    return out;
  }

  const Vertex x = hubs[0], y = hubs[1];
  if (bridges.size() == 1) {
    std::vector<Order> sx, sy;
    auto lx = side_legs(x, sx);
    auto ly = side_legs(y, sy);
    if (!sx.empty() || !sy.empty()) return std::nullopt;
    Order out = interleave_inwards(lx->first, lx->second);
    out.push_back(x);
    out.insert(out.end(), bridges[0].begin(), bridges[0].end());
    out.push_back(y);
    const Order tail = interleave_outwards(ly->first, ly->second);
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
  }

  // Two or three x-y bridges: lay a cycle through x and y level by level,
  // with one extra lane (y's pendant leg or the shortest bridge).
  if (bridges.size() != 2 && bridges.size() != 3) return std::nullopt;
  std::sort(bridges.begin(), bridges.end(),
            [](const Order& a, const Order& b) { return a.size() < b.size(); });
  Order lead;                      // placed before the levels
  Order extra;                     // extra lane contents
  std::vector<std::size_t> extra_level;
  Order cyc;                       // x, bridge, y, other bridge reversed
  std::size_t start = 0;           // index of the zigzag start in cyc
  const Order& b_short = bridges.size() == 3 ? bridges[1] : bridges[0];
  const Order& b_long = bridges.size() == 3 ? bridges[2] : bridges[1];
  cyc.push_back(x);
  cyc.insert(cyc.end(), b_short.begin(), b_short.end());
  cyc.push_back(y);
  cyc.insert(cyc.end(), b_long.rbegin(), b_long.rend());
  const std::size_t m = cyc.size();
  const std::size_t l2 = b_short.size() + 1;  // cycle distance x -> y
  if (bridges.size() == 2) {
    if (!loops[x].empty() || !loops[y].empty() || pendants[x].size() != 1 || pendants[y].size() != 1) {
      return std::nullopt;
    }
    lead.assign(pendants[x][0].rbegin(), pendants[x][0].rend());
    start = 0;
    extra = pendants[y][0];
    const std::size_t y_level = std::min(l2, m - l2);
    for (std::size_t k = 0; k < extra.size(); ++k) extra_level.push_back(y_level + 1 + k);
  } else {
    const std::size_t l1 = bridges[0].size() + 1;
    // x sits on level start, y on level start + diff, diff in {l1 - 1, l1}.
    start = (l2 - l1 + 1) / 2;
    const std::size_t diff = l2 - 2 * start;
    extra = bridges[0];
    for (std::size_t k = 1; k <= extra.size(); ++k) {
      extra_level.push_back(start + std::min(k, diff == l1 ? k : diff - 1));
    }
  }
  const std::size_t levels = m / 2 + 1;
  std::size_t total_levels = levels;
  for (std::size_t lv : extra_level) total_levels = std::max(total_levels, lv + 1);
  std::vector<Order> alpha(total_levels), beta(total_levels), mid(total_levels);
  alpha[0].push_back(cyc[start]);
  for (std::size_t i = 1; i < levels; ++i) {
    const std::size_t ia = (start + m - i) % m, ib = (start + i) % m;
    if (ia == ib) {
      alpha[i].push_back(cyc[ia]);
    } else if (i < m - i) {
      alpha[i].push_back(cyc[ia]);
      beta[i].push_back(cyc[ib]);
    }
  }
  for (std::size_t k = 0; k < extra.size(); ++k) mid[extra_level[k]].push_back(extra[k]);
  Order out = lead;
  for (std::size_t i = 0; i < total_levels; ++i) {
    out.insert(out.end(), alpha[i].begin(), alpha[i].end());
    if (bridges.size() == 3) {
      out.insert(out.end(), mid[i].begin(), mid[i].end());
      out.insert(out.end(), beta[i].begin(), beta[i].end());
    } else {
      out.insert(out.end(), beta[i].begin(), beta[i].end());
      out.insert(out.end(), mid[i].begin(), mid[i].end());
    }
  }
  return out;
}

/// Path or cycle core with pendants matched into it.
std::optional<Order> route_augmentation(const Graph& g, const std::vector<Vertex>& comp) {
  std::vector<char> leaf(g.vertex_count(), 0);
  for (Vertex v : comp) leaf[v] = g.degree(v) == 1;
  Order core;
  for (Vertex v : comp) {
    if (!leaf[v]) core.push_back(v);
  }
  if (core.empty()) return std::nullopt;
  auto core_degree = [&](Vertex v) {
    std::size_t d = 0;
    for (Vertex w : g.neighbors(v)) d += !leaf[w];
    return d;
  };
  Order base;
  Vertex endpoint = core[0];
  bool is_cycle = true;
  for (Vertex v : core) {
    if (core_degree(v) < 2) {
      endpoint = v;
      is_cycle = false;
      break;
    }
  }
  base = trace(g, endpoint, leaf);
  if (base.size() != core.size()) return std::nullopt;
  if (is_cycle) base = zigzag(base);
  Order out;
  for (std::size_t i = 0; i < base.size(); ++i) {
    std::vector<Vertex> pend;
    for (Vertex w : g.neighbors(base[i])) {
      if (leaf[w]) pend.push_back(w);
    }
    std::size_t k = 0;
    if (i == 0 && pend.size() >= 2) out.push_back(pend[k++]);
    out.push_back(base[i]);
    for (; k < pend.size(); ++k) out.push_back(pend[k]);
  }
  return out;
}

bool order_ok(const Graph& g, const Order& order) {
  std::map<Vertex, std::size_t> pos;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!pos.emplace(order[i], i).second) return false;
  }
  for (Vertex v : order) {
    for (Vertex w : g.neighbors(v)) {
      auto it = pos.find(w);
      if (it == pos.end()) return false;
      const std::size_t a = pos[v], b = it->second;
      if ((a > b ? a - b : b - a) > kMaxStretch) return false;
    }
  }
  return true;
}

/// Exhaustive search for an ordering with bandwidth <= 4.
std::optional<Order> exhaustive_order(const Graph& g, const std::vector<Vertex>& comp,
                                      std::size_t budget) {
  const std::size_t k = comp.size();
  std::map<Vertex, std::size_t> local;
  for (std::size_t i = 0; i < k; ++i) local[comp[i]] = i;
  std::vector<std::vector<std::size_t>> nb(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (Vertex w : g.neighbors(comp[i])) nb[i].push_back(local[w]);
  }
  std::vector<long> pos(k, -1);
  Order order;
  std::size_t nodes = 0;
  std::function<bool()> rec = [&]() -> bool {
    const std::size_t s = order.size();
    if (s == k) return true;
    // A vertex that can no longer gain neighbours must already be complete.
    if (s > kMaxStretch) {
      const std::size_t old = local[order[s - kMaxStretch - 1]];
      for (std::size_t w : nb[old]) {
        if (pos[w] < 0) return false;
      }
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (pos[c] >= 0) continue;
      bool ok = true;
      for (std::size_t w : nb[c]) {
        if (pos[w] >= 0 && s - static_cast<std::size_t>(pos[w]) > kMaxStretch) ok = false;
      }
      if (!ok) continue;
      if (++nodes > budget) throw BudgetError("layout search budget exhausted");
      pos[c] = static_cast<long>(s);
      order.push_back(comp[c]);
      if (rec()) return true;
      order.pop_back();
      pos[c] = -1;
    }
    return false;
  };
  if (rec()) return order;
  return std::nullopt;
}

Order route_component(const Graph& g, const std::vector<Vertex>& comp, const LayoutOptions& options) {
  std::vector<Vertex> hubs;
  bool all_two = true;
  std::optional<Vertex> end;
  for (Vertex v : comp) {
    if (g.degree(v) == 3) hubs.push_back(v);
    if (g.degree(v) != 2) all_two = false;
    if (g.degree(v) <= 1 && !end) end = v;
  }
  if (all_two) return zigzag(cycle_order(g, comp[0]));
  if (comp.size() <= kMaxStretch + 1) return comp;
  std::optional<Order> order;
  std::vector<char> none(g.vertex_count(), 0);
  if (hubs.empty()) {
    order = trace(g, *end, none);
  } else if (hubs.size() <= 2) {
    order = route_branched(g, comp, hubs);
  }
  if ((!order || !order_ok(g, *order) || order->size() != comp.size()) &&
      is_path_or_cycle_augmentation(g, comp)) {
    order = route_augmentation(g, comp);
  }
  if (order && order->size() == comp.size() && order_ok(g, *order)) return *order;
  try {
    if (auto found = exhaustive_order(g, comp, options.fallback_budget)) return *found;
  } catch (const BudgetError&) {
    throw LayoutError("layout search budget exhausted on the component of vertex " + str(comp.front()),
                      comp.front());
  }
  throw LayoutError("no bandwidth-4 ordering exists for the component of vertex " + str(comp.front()),
                    comp.front());
}

}  // namespace

PathPowerLayout layout_thin(const Graph& g, std::size_t n, const LayoutOptions& options) {
  if (g.vertex_count() > n) {
    throw ArgumentError("graph has " + str(g.vertex_count()) + " vertices, more than n = " + str(n));
  }
  if (auto w = is_thin(g); !w) throw ArgumentError("layout requires a thin graph: " + w.reason);
  PathPowerLayout layout;
  layout.phi.assign(g.vertex_count(), 0);
  std::size_t next = 0;
  for (const auto& comp : component_lists(g)) {
    for (Vertex v : route_component(g, comp, options)) layout.phi[v] = next++;
  }
  if (const auto problem = check_layout(g, layout, n); !problem.empty()) {
    throw IntegrityError("layout failed validation: " + problem);
  }
  return layout;
}

}  // namespace iug
