#include "iug/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <thread>

#include "iug/error.hpp"
#include "iug/serialize.hpp"
#include "iug/thin.hpp"
#include "iug/walks.hpp"

namespace iug {

namespace {

std::string str(std::size_t x) { return std::to_string(x); }

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Bit position of pair (a, b), a < b, in column-major upper-triangle order.
std::size_t pair_index(std::size_t a, std::size_t b) { return b * (b - 1) / 2 + a; }

std::vector<std::uint16_t> adjacency_masks(const Graph& g) {
  std::vector<std::uint16_t> adj(g.vertex_count(), 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= static_cast<std::uint16_t>(1u << e.v);
    adj[e.v] |= static_cast<std::uint16_t>(1u << e.u);
  }
  return adj;
}

// Colour refinement from degrees; colours are ranks of sorted signatures,
// hence invariant under relabelling.
std::vector<std::size_t> refined_colours(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> colour(n);
  for (Vertex v = 0; v < n; ++v) colour[v] = g.degree(v);
  for (std::size_t round = 0; round < n; ++round) {
    std::vector<std::vector<std::size_t>> sig(n);
    for (Vertex v = 0; v < n; ++v) {
      sig[v].push_back(colour[v]);
      std::vector<std::size_t> nb;
      for (Vertex w : g.neighbors(v)) nb.push_back(colour[w]);
      std::sort(nb.begin(), nb.end());
      sig[v].insert(sig[v].end(), nb.begin(), nb.end());
    }
    auto sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::size_t> next(n);
    for (Vertex v = 0; v < n; ++v) {
      next[v] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) -
                                         sorted.begin());
    }
    const bool stable = std::set<std::size_t>(next.begin(), next.end()).size() ==
                        std::set<std::size_t>(colour.begin(), colour.end()).size();
    colour = std::move(next);
    if (stable) break;
  }
  return colour;
}

struct CanonicalSearch {
  std::size_t n;
  std::size_t total_bits;
  std::vector<std::uint16_t> adj;
  std::vector<std::size_t> cell_of_position;  // colour required at each position
  std::vector<std::size_t> colour;
  std::vector<Vertex> placed;
  std::uint16_t used = 0;
  std::uint64_t best = 0;
  bool have_best = false;

  void run(std::size_t p, std::uint64_t prefix) {
    if (p == n) {
      if (!have_best || prefix > best) {
        best = prefix;
        have_best = true;
      }
      return;
    }
    for (Vertex v = 0; v < n; ++v) {
      if ((used >> v) & 1u || colour[v] != cell_of_position[p]) continue;
      std::uint64_t next = prefix;
      for (std::size_t a = 0; a < p; ++a) next = (next << 1) | ((adj[placed[a]] >> v) & 1u);
      const std::size_t len = p * (p + 1) / 2;
      if (have_best && len > 0) {
        const std::uint64_t best_prefix = best >> (total_bits - len);
        if (next < best_prefix) continue;
      }
      placed.push_back(v);
      used |= static_cast<std::uint16_t>(1u << v);
      run(p + 1, next);
      used &= static_cast<std::uint16_t>(~(1u << v));
      placed.pop_back();
    }
  }
};

void labelled_family(std::size_t n, std::size_t delta,
                     const std::function<bool(const Graph&)>& visit) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex b = 1; b < n; ++b) {
    for (Vertex a = 0; a < b; ++a) pairs.emplace_back(a, b);
  }
  std::vector<std::size_t> deg(n, 0);
  std::vector<Edge> chosen;
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (stop) return;
    if (k == pairs.size()) {
      if (!visit(Graph::from_edges(n, chosen))) stop = true;
      return;
    }
    rec(k + 1);
    const auto [a, b] = pairs[k];
    if (deg[a] < delta && deg[b] < delta) {
      ++deg[a];
      ++deg[b];
      chosen.push_back({a, b});
      rec(k + 1);
      chosen.pop_back();
      --deg[a];
      --deg[b];
    }
  };
  rec(0);
}

std::vector<std::uint64_t> class_codes(std::size_t n, std::size_t delta) {
  std::set<std::uint64_t> level{canonical_code(Graph(n))};
  std::vector<std::uint64_t> all(level.begin(), level.end());
  while (!level.empty()) {
    std::set<std::uint64_t> next;
    for (std::uint64_t code : level) {
      const Graph g = graph_from_code(n, code);
      const auto edges = g.edges();
      for (Vertex b = 1; b < n; ++b) {
        for (Vertex a = 0; a < b; ++a) {
          if (g.has_edge(a, b) || g.degree(a) >= delta || g.degree(b) >= delta) continue;
          auto more = edges;
          more.push_back({a, b});
          next.insert(canonical_code(Graph::from_edges(n, more)));
        }
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return all;
}

}  // namespace

std::uint64_t canonical_code(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n > 11) throw ArgumentError("canonical codes are limited to 11 vertices");
  if (n < 2) return 0;
  CanonicalSearch s;
  s.n = n;
  s.total_bits = n * (n - 1) / 2;
  s.adj = adjacency_masks(g);
  s.colour = refined_colours(g);
  s.cell_of_position = s.colour;
  std::sort(s.cell_of_position.begin(), s.cell_of_position.end());
  s.run(0, 0);
  return s.best;
}

Graph graph_from_code(std::size_t n, std::uint64_t code) {
  if (n > 11) throw ArgumentError("canonical codes are limited to 11 vertices");
  const std::size_t bits = n * (n - (n > 0)) / 2;
  std::vector<Edge> edges;
  for (Vertex b = 1; b < n; ++b) {
    for (Vertex a = 0; a < b; ++a) {
      if ((code >> (bits - 1 - pair_index(a, b))) & 1u) edges.push_back({a, b});
    }
  }
  return Graph::from_edges(n, edges);
}

void enumerate_family(const FamilySpec& spec, const std::function<bool(const Graph&)>& visit,
                      std::size_t guard) {
  if (spec.n < 1) throw ArgumentError("family needs n >= 1");
  if (spec.n > guard) {
    throw BudgetError("enumeration of " + str(spec.n) + "-vertex graphs exceeds the guard of " +
                      str(guard));
  }
  if (!spec.dedup) {
    labelled_family(spec.n, spec.delta, visit);
    return;
  }
  if (spec.n > kMaxDedupVertices) {
    throw BudgetError("isomorphism deduplication is limited to " + str(kMaxDedupVertices) +
                      " vertices");
  }
  for (std::uint64_t code : class_codes(spec.n, spec.delta)) {
    if (!visit(graph_from_code(spec.n, code))) return;
  }
}

std::vector<Graph> family(const FamilySpec& spec, std::size_t guard) {
  std::vector<Graph> out;
  enumerate_family(spec, [&](const Graph& g) {
    out.push_back(g);
    return true;
  }, guard);
  return out;
}

std::size_t family_size(const FamilySpec& spec, std::size_t guard) {
  std::size_t count = 0;
  enumerate_family(spec, [&](const Graph&) {
    ++count;
    return true;
  }, guard);
  return count;
}

// ---------------------------------------------------------------------------

namespace {

std::string sweep_key(const std::vector<FamilySpec>& specs, const GammaParams& params,
                      const SweepOptions& options) {
  std::string key = "sweep";
  for (const auto& s : specs) key += "-n" + str(s.n) + "d" + str(s.delta) + (s.dedup ? "c" : "l");
  key += "-" + params.digest();
  key += "-b" + str(options.embed.walk_budget) + "-" + to_string(options.embed.strategy);
  key += "-s" + str(options.embed.min_step_m) + "." + str(options.embed.min_step_z);
  key += "-r" + str(options.policy.max_rounds);
  char c[32];
  std::snprintf(c, sizeof c, "-c%g", options.embed.distribution_constant);
  return key + c;
}

}  // namespace

SweepReport universality_sweep(const std::vector<FamilySpec>& specs, const GammaParams& params,
                               const SweepOptions& options) {
  if (!params.materialised()) {
    throw InfeasibleBuildError("universality sweeps need desk expanders");
  }
  for (const auto& s : specs) {
    if (s.delta > params.delta) {
      throw ArgumentError("family delta " + str(s.delta) + " exceeds Gamma's delta " +
                          str(params.delta));
    }
    if (s.n > params.n) {
      throw ArgumentError("family n " + str(s.n) + " exceeds Gamma's n " + std::to_string(params.n));
    }
  }

  std::filesystem::path cache_file;
  if (!options.cache_dir.empty()) {
    cache_file = std::filesystem::path(options.cache_dir) / (sweep_key(specs, params, options) + ".json");
    std::ifstream in(cache_file);
    if (in) {
      try {
        SweepReport cached = json::parse(in).get<SweepReport>();
        cached.cached = true;
        return cached;
      } catch (const std::exception&) {
        // Unreadable cache entries are recomputed.
      }
    }
  }

  const auto start = Clock::now();
  std::vector<Graph> graphs;
  SweepReport report;
  report.delta = params.delta;
  report.dedup = std::all_of(specs.begin(), specs.end(), [](const FamilySpec& s) { return s.dedup; });
  report.params_digest = params.digest();
  for (const auto& s : specs) {
    report.sizes.push_back(s.n);
    auto members = family(s);
    graphs.insert(graphs.end(), std::make_move_iterator(members.begin()),
                  std::make_move_iterator(members.end()));
  }
  report.total = graphs.size();

  std::vector<std::optional<SweepFailure>> outcome(graphs.size());
  std::vector<std::size_t> pairs(graphs.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < graphs.size(); k = next++) {
      const Graph& h = graphs[k];
      try {
        const EmbeddingResult res = embed(h, params, options.embed, options.policy);
        pairs[k] = res.certificate.induced.pairs_checked;
        if (!res.certificate.passed()) {
          outcome[k] = SweepFailure{k, h.vertex_count(), h.edges(), "certificate failed", res.trail};
        }
      } catch (const EmbeddingFailureError& e) {
        outcome[k] = SweepFailure{k, h.vertex_count(), h.edges(), e.what(), e.trail()};
      } catch (const Error& e) {
        outcome[k] = SweepFailure{k, h.vertex_count(), h.edges(), e.kind() + ": " + e.what(), {}};
      }
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (std::size_t k = 0; k < graphs.size(); ++k) {
    report.pairs_checked += pairs[k];
    if (outcome[k]) {
      report.failures.push_back(std::move(*outcome[k]));
    } else {
      ++report.embedded;
    }
  }
  report.seconds = seconds_since(start);

  if (!cache_file.empty()) {
    std::filesystem::create_directories(cache_file.parent_path());
    std::ofstream out(cache_file);
    out << json(report).dump(2) << '\n';
  }
  return report;
}

SweepReport universality_sweep(const FamilySpec& spec, const GammaParams& params,
                               const SweepOptions& options) {
  return universality_sweep(std::vector<FamilySpec>{spec}, params, options);
}

// ---------------------------------------------------------------------------

std::string to_string(FuzzTarget t) {
  switch (t) {
    case FuzzTarget::kWalks: return "walks";
    case FuzzTarget::kDecomposition: return "decomposition";
    case FuzzTarget::kGamma: return "gamma";
    case FuzzTarget::kEmbedder: return "embedder";
  }
  return "?";
}

FuzzTarget parse_fuzz_target(const std::string& name) {
  for (auto t : {FuzzTarget::kWalks, FuzzTarget::kDecomposition, FuzzTarget::kGamma,
                 FuzzTarget::kEmbedder}) {
    if (to_string(t) == name) return t;
  }
  throw ArgumentError("unknown fuzz target '" + name + "'");
}

namespace {

using Rng = std::mt19937_64;

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Graph random_graph(Rng& rng, std::size_t n, std::size_t delta, double density) {
  std::vector<Edge> edges;
  std::vector<std::size_t> deg(n, 0);
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex b = 1; b < n; ++b) {
    for (Vertex a = 0; a < b; ++a) pairs.emplace_back(a, b);
  }
  std::shuffle(pairs.begin(), pairs.end(), rng);
  for (auto [a, b] : pairs) {
    if (deg[a] < delta && deg[b] < delta && coin(rng, density)) {
      edges.push_back({a, b});
      ++deg[a];
      ++deg[b];
    }
  }
  return Graph::from_edges(n, edges);
}

struct FuzzContext {
  FuzzReport& report;
  void violation(std::string s) {
    if (report.violations.size() < 100) report.violations.push_back(std::move(s));
    else if (report.violations.size() == 100) report.violations.push_back("...");
  }
  void injected(bool caught, const std::string& what) {
    ++report.injected;
    if (caught) {
      ++report.detected;
    } else if (report.missed.size() < 100) {
      report.missed.push_back(what);
    }
  }
};

const GammaParams& default_fuzz_params() {
  static const GammaParams p = make_gamma_params(3, 8, Profile::kDesk);
  return p;
}

void fuzz_walks(Rng& rng, std::size_t round, FuzzContext& ctx) {
  const Graph& f = *default_fuzz_params().r_m;
  const std::size_t ell = f.vertex_count();
  WalkParams wp;
  wp.ell = ell;
  wp.step = uniform(rng, walk_step_for(ell), 8);
  wp.usage_cap = uniform(rng, 1, 3);
  wp.sigma_cap = coin(rng, 0.5) ? kUnboundedSigma : uniform(rng, 1, 4);
  const std::size_t n = uniform(rng, 1, 300);
  ConstraintSchedule sigma(n);
  for (std::size_t t = 0; t < n; ++t) {
    const auto latest = ConstraintSchedule::latest_allowed(t, wp.step);
    if (!latest || !coin(rng, 0.3)) continue;
    const std::size_t want = std::min<std::size_t>(wp.sigma_cap, uniform(rng, 1, 4));
    for (std::size_t k = 0; k < want; ++k) sigma.add(t, uniform(rng, 0, *latest));
  }
  const std::string tag = "round " + str(round) + " (n=" + str(n) + ", step=" + str(wp.step) + ")";
  WalkMap wm;
  try {
    wm = build_walk_map(f, sigma, wp);
  } catch (const Error& e) {
    ctx.violation(tag + ": build failed: " + e.what());
    return;
  }
  ++ctx.report.instances;
  const WalkReport clean = verify_walk_map(f, sigma, wp, wm);
  for (const auto& v : clean.violations) ctx.violation(tag + ": " + to_string(v.property) + " " + v.detail);

  // Fault injection: each fault is built to break one named property.
  WalkMap bad = wm;
  WalkProperty expect = WalkProperty::kShape;
  std::size_t scheduled = n;
  for (std::size_t t = 0; t < n; ++t) {
    if (!sigma.at(t).empty()) scheduled = t;
  }
  switch (round % 4) {
    case 0:
      if (scheduled < n) {
        bad.assignment[scheduled] = bad.assignment[sigma.at(scheduled).front()];
        expect = WalkProperty::kF2;
        break;
      }
      [[fallthrough]];
    case 1:
      if (n >= 2) {
        const std::size_t t = uniform(rng, 1, n - 1);
        Vertex v = bad.assignment[t - 1];
        while (v == bad.assignment[t - 1] || f.has_edge(v, bad.assignment[t - 1])) {
          v = static_cast<Vertex>(uniform(rng, 0, ell - 1));
        }
        bad.assignment[t] = v;
        expect = WalkProperty::kF3;
        break;
      }
      [[fallthrough]];
    case 2:
      if (n > wp.usage_cap) {
        std::fill(bad.assignment.begin(), bad.assignment.end(), bad.assignment[0]);
        expect = WalkProperty::kF1;
        break;
      }
      [[fallthrough]];
    default:
      bad.assignment.push_back(bad.assignment.back());
      expect = WalkProperty::kShape;
  }
  const WalkReport r = verify_walk_map(f, sigma, wp, bad);
  ctx.injected(r.count(expect) > 0, tag + ": injected " + to_string(expect) + " fault not reported");
}

Graph without_edge(const Graph& g, const Edge& drop) {
  std::vector<Edge> keep;
  for (const Edge& e : g.edges()) {
    if (!(e == drop)) keep.push_back(e);
  }
  return Graph::from_edges(g.vertex_count(), keep);
}

void fuzz_decomposition(Rng& rng, std::size_t round, FuzzContext& ctx) {
  const std::size_t delta = uniform(rng, 2, 5);
  const std::size_t n = uniform(rng, 2, 12);
  const Graph h = random_graph(rng, n, delta, 0.6);
  const std::string tag = "round " + str(round) + " (n=" + str(n) + ", delta=" + str(delta) + ")";
  ThinDecomposition dec;
  try {
    dec = thin_decompose(h, delta);
  } catch (const Error& e) {
    ctx.violation(tag + ": " + e.what());
    return;
  }
  ++ctx.report.instances;
  for (const auto& v : validate_decomposition(h, dec).violations) ctx.violation(tag + ": " + v.detail);
  for (std::size_t k = 0; k < dec.parts.size(); ++k) {
    try {
      const auto why = check_layout(dec.parts[k], layout_thin(dec.parts[k], n), n);
      if (!why.empty()) ctx.violation(tag + ": layout of part " + str(k) + ": " + why);
    } catch (const Error& e) {
      ctx.violation(tag + ": layout of part " + str(k) + ": " + e.what());
    }
  }

  ThinDecomposition bad = dec;
  using Kind = DecompositionViolation::Kind;
  Kind expect = Kind::kMultiplicity;
  if (round % 2 == 0 && !dec.edges.empty()) {
    const std::size_t e = uniform(rng, 0, dec.edges.size() - 1);
    const std::size_t part = dec.multiplicity[e].first;
    bad.parts[part] = without_edge(bad.parts[part], dec.edges[e]);
  } else if (n >= 4) {
    std::vector<Edge> k4;
    for (Vertex b = 1; b < 4; ++b) {
      for (Vertex a = 0; a < b; ++a) k4.push_back({a, b});
    }
    bad.parts[0] = Graph::from_edges(n, k4);
    expect = Kind::kThinness;
  } else {
    bad.parts[0] = Graph(n + 1);
    expect = Kind::kSpanning;
  }
  const auto r = validate_decomposition(h, bad);
  ctx.injected(r.count(expect) > 0, tag + ": injected fault not reported");
}

Vertex random_vertex(Rng& rng, const Graph& g) {
  return static_cast<Vertex>(uniform(rng, 0, g.vertex_count() - 1));
}

Vertex near_vertex(Rng& rng, const BallIndex& idx, Vertex v) {
  const auto& b = idx.neighbourhood(v);
  return b[uniform(rng, 0, b.size() - 1)];
}

GammaVertex random_gamma_vertex(Rng& rng, const GammaParams& p) {
  GammaVertex v;
  v.x1 = random_vertex(rng, *p.r_m);
  for (std::size_t k = 1; k < p.delta; ++k) {
    GammaBlock b;
    b.x = random_vertex(rng, *p.r_m);
    b.subset = SubsetBits(p.subset_width());
    const std::size_t bits = uniform(rng, 0, 12);
    for (std::size_t s = 0; s < bits; ++s) b.subset.set(uniform(rng, 0, p.subset_width() - 1));
    b.u = random_vertex(rng, *p.r_z);
    v.blocks.push_back(std::move(b));
  }
  return v;
}

// A vertex close to `a` in every coordinate, with the E2 memberships
// switched on at random (in both endpoints) so that adjacency is common.
GammaVertex related_gamma_vertex(Rng& rng, GammaVertex& a, const GammaParams& p) {
  GammaVertex b = random_gamma_vertex(rng, p);
  if (coin(rng, 0.8)) b.x1 = near_vertex(rng, *p.rho, a.x1);
  for (std::size_t k = 0; k < b.blocks.size(); ++k) {
    auto& ba = a.blocks[k];
    auto& bb = b.blocks[k];
    if (coin(rng, 0.7)) bb.x = near_vertex(rng, *p.rho, ba.x);
    if (coin(rng, 0.7)) bb.u = near_vertex(rng, *p.z_ball, ba.u);
    if (auto r = p.rho->rho(bb.x, ba.x); r && coin(rng, 0.7)) bb.subset.set(*r);
    if (auto r = p.rho->rho(ba.x, bb.x); r && coin(rng, 0.7)) ba.subset.set(*r);
  }
  return b;
}

// Adjacent pair whose only possible witness uses coordinate i = 2: every
// later block has empty subsets.
std::pair<GammaVertex, GammaVertex> single_witness_pair(Rng& rng, const GammaParams& p) {
  GammaVertex a, b;
  a.x1 = random_vertex(rng, *p.r_m);
  b.x1 = near_vertex(rng, *p.rho, a.x1);
  for (std::size_t k = 1; k < p.delta; ++k) {
    GammaBlock ba, bb;
    ba.subset = SubsetBits(p.subset_width());
    bb.subset = SubsetBits(p.subset_width());
    ba.x = random_vertex(rng, *p.r_m);
    ba.u = random_vertex(rng, *p.r_z);
    bb.x = near_vertex(rng, *p.rho, ba.x);
    bb.u = near_vertex(rng, *p.z_ball, ba.u);
    if (k == 1) {
      ba.subset.set(*p.rho->rho(ba.x, bb.x));
      bb.subset.set(*p.rho->rho(bb.x, ba.x));
    }
    a.blocks.push_back(std::move(ba));
    b.blocks.push_back(std::move(bb));
  }
  return {a, b};
}

void fuzz_gamma(Rng& rng, std::size_t round, const GammaParams& p, std::size_t pairs,
                FuzzContext& ctx) {
  const std::string tag = "round " + str(round);
  for (std::size_t k = 0; k < pairs; ++k) {
    GammaVertex a = random_gamma_vertex(rng, p);
    GammaVertex b = coin(rng, 0.75) ? related_gamma_vertex(rng, a, p) : random_gamma_vertex(rng, p);
    ++ctx.report.instances;
    const bool ab = gamma_adjacent(a, b, p);
    if (ab != gamma_adjacent(b, a, p)) ctx.violation(tag + ": asymmetric pair");
    if (gamma_adjacent(a, a, p)) ctx.violation(tag + ": self-loop");
    const Label la = encode_label(a, p), lb = encode_label(b, p);
    if (!(decode_label(label_from_hex(label_to_hex(la)), p) == a)) {
      ctx.violation(tag + ": label round trip failed");
    }
    if (label_adjacent(la, lb, p) != ab) ctx.violation(tag + ": label adjacency disagrees");
    if (ab) {
      GammaVertex bigger = a;
      auto& block = bigger.blocks[uniform(rng, 0, bigger.blocks.size() - 1)];
      for (std::size_t s = 0; s < 20; ++s) block.subset.set(uniform(rng, 0, p.subset_width() - 1));
      if (!gamma_adjacent(bigger, b, p)) ctx.violation(tag + ": enlarging a subset removed an edge");
    }
  }

  auto [a, b] = single_witness_pair(rng, p);
  if (!gamma_adjacent(a, b, p)) {
    ctx.violation(tag + ": constructed adjacent pair is not adjacent");
  } else {
    a.blocks[0].subset = SubsetBits(p.subset_width());
    ctx.injected(!gamma_adjacent(a, b, p), tag + ": clearing X_2 kept the pair adjacent");
  }
  Label l = encode_label(a, p);
  bool caught = false;
  const std::size_t xb = label_layout(p).x_bits;
  const bool ones_out_of_range = (std::uint64_t{1} << xb) - 1 >= p.rm_size();
  if (round % 2 == 0 || !ones_out_of_range) {
    l.bytes.pop_back();
    l.bits = l.bytes.size() * 8;
  } else {
    for (std::size_t s = 0; s < xb; ++s) l.bytes[s / 8] |= static_cast<std::uint8_t>(0x80u >> (s % 8));
  }
  try {
    decode_label(l, p);
  } catch (const CodecError&) {
    caught = true;
  }
  ctx.injected(caught, tag + ": corrupt label decoded");
}

void fuzz_embedder(Rng& rng, std::size_t round, const GammaParams& p, FuzzContext& ctx) {
  const std::size_t n = uniform(rng, 1, std::min<std::uint64_t>(p.n, 8));
  const std::size_t delta = uniform(rng, 0, p.delta);
  const Graph h = random_graph(rng, n, delta, 0.5);
  const std::string tag = "round " + str(round) + " (n=" + str(n) + ", m=" + str(h.edge_count()) + ")";
  EmbeddingResult res;
  try {
    res = embed(h, p);
  } catch (const Error& e) {
    ctx.violation(tag + ": " + e.what());
    return;
  }
  ++ctx.report.instances;
  if (!res.certificate.passed()) ctx.violation(tag + ": certificate failed");
  std::vector<Label> labels;
  for (const auto& g : res.gamma) labels.push_back(encode_label(g, res.params));
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (label_adjacent(labels[u], labels[v], res.params) != h.has_edge(u, v)) {
        ctx.violation(tag + ": labels disagree with H at (" + str(u) + ", " + str(v) + ")");
      }
    }
  }

  auto gamma = res.gamma;
  const auto edges = h.edges();
  if (round % 3 == 0 && !edges.empty()) {
    const std::size_t e = uniform(rng, 0, edges.size() - 1);
    const std::size_t part = res.homs.decomposition.multiplicity[e].second;
    const Vertex u = edges[e].u, v = edges[e].v;
    auto& block = gamma[u].blocks[part - 1];
    block.subset.reset(*res.params.rho->rho(block.x, gamma[v].blocks[part - 1].x));
  } else if (round % 3 == 1 && n >= 2) {
    gamma[1] = gamma[0];
  } else {
    gamma[0].x1 = gamma[0].x1 == 0 ? 1 : 0;
  }
  const auto cert = certify_embedding(h, res.homs, gamma, res.params);
  ctx.injected(!cert.passed(), tag + ": tampered embedding certified");
}

}  // namespace

FuzzReport property_fuzz(FuzzTarget target, std::uint64_t seed, std::size_t rounds,
                         const FuzzOptions& options) {
  const auto start = Clock::now();
  FuzzReport report;
  report.target = target;
  report.seed = seed;
  report.rounds = rounds;
  FuzzContext ctx{report};
  Rng rng(seed);
  const GammaParams& params = options.params ? *options.params : default_fuzz_params();
  if ((target == FuzzTarget::kGamma || target == FuzzTarget::kEmbedder) && !params.materialised()) {
    throw InfeasibleBuildError("fuzzing Gamma needs desk expanders");
  }
  for (std::size_t round = 0; round < rounds; ++round) {
    switch (target) {
      case FuzzTarget::kWalks: fuzz_walks(rng, round, ctx); break;
      case FuzzTarget::kDecomposition: fuzz_decomposition(rng, round, ctx); break;
      case FuzzTarget::kGamma: fuzz_gamma(rng, round, params, options.pairs_per_round, ctx); break;
      case FuzzTarget::kEmbedder: fuzz_embedder(rng, round, params, ctx); break;
    }
  }
  report.seconds = seconds_since(start);
  return report;
}

// ---------------------------------------------------------------------------

SizeReport size_report(const std::vector<std::size_t>& deltas, const std::vector<std::uint64_t>& ns) {
  SizeReport report;
  for (std::size_t delta : deltas) {
    double lo = INFINITY, hi = -INFINITY;
    for (std::uint64_t n : ns) {
      if (n == 0) throw ArgumentError("size report needs n >= 1");
      const GammaParams p = make_gamma_params(delta, n, Profile::kPaper);
      SizeRow row;
      row.delta = delta;
      row.n = n;
      row.count = gamma_vertex_count(p);
      row.log10_count = row.count.log10();
      // The 2^exponent2 factor depends on delta alone, so the spread is
      // taken over the mantissa part where double precision suffices.
      long e = 0;
      const double mant = mpz_get_d_2exp(&e, row.count.mantissa.get_mpz_t());
      const double varying = std::log10(mant) + static_cast<double>(e) * std::log10(2.0) -
                             0.5 * static_cast<double>(delta) * std::log10(static_cast<double>(n));
      row.log10_ratio = varying + static_cast<double>(row.count.exponent2) * std::log10(2.0);
      lo = std::min(lo, varying);
      hi = std::max(hi, varying);
      report.rows.push_back(std::move(row));
    }
    if (!ns.empty()) report.log10_spread[delta] = hi - lo;
  }
  return report;
}

}  // namespace iug
