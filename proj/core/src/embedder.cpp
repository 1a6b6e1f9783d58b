#include "iug/embedder.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <set>

#include "iug/error.hpp"

namespace iug {

namespace {

std::string str(std::size_t x) { return std::to_string(x); }

std::size_t as_size(const mpz_class& x) {
  if (!x.fits_ulong_p()) throw ArgumentError("expander size " + x.get_str() + " is not materialisable");
  return x.get_ui();
}

void require_materialised(const GammaParams& params) {
  if (!params.materialised()) {
    throw InfeasibleBuildError("the paper profile is formula-only; embedding needs desk expanders");
  }
}

std::vector<std::size_t> positions_of(const std::vector<Vertex>& order) {
  std::vector<std::size_t> pos(order.size());
  for (std::size_t t = 0; t < order.size(); ++t) pos[order[t]] = t;
  return pos;
}

// First edge of `part` whose image under `map` is not an edge of the
// radius-4 power indexed by `balls`.
std::optional<Edge> homomorphism_breach(const Graph& part, const std::vector<Vertex>& map,
                                        const BallIndex& balls) {
  for (const Edge& e : part.edges()) {
    if (!balls.adjacent(map[e.u], map[e.v])) return e;
  }
  return std::nullopt;
}

// Some j < k has f_j(a), f_j(b) adjacent in R_m^4.
bool earlier_adjacent(const std::vector<std::vector<Vertex>>& f, std::size_t k, Vertex a, Vertex b,
                      const BallIndex& rho) {
  for (std::size_t j = 0; j < k; ++j) {
    if (rho.adjacent(f[j][a], f[j][b])) return true;
  }
  return false;
}

WalkParams rm_walk_params(std::size_t n, const GammaParams& params, const EmbedOptions& options) {
  WalkParams wp;
  wp.ell = as_size(params.ell_m);
  wp.step = step_m(params, options);
  wp.usage_cap = distribution_cap(n, params, options);
  wp.avoid_radius = 5;
  return wp;
}

std::vector<Vertex> by_vertex(const std::vector<Vertex>& order, const std::vector<Vertex>& walk) {
  std::vector<Vertex> out(order.size());
  for (std::size_t t = 0; t < order.size(); ++t) out[order[t]] = walk[t];
  return out;
}

void expect_homomorphism(const Graph& part, const std::vector<Vertex>& map, const BallIndex& balls,
                         const std::string& what) {
  if (auto e = homomorphism_breach(part, map, balls)) {
    throw IntegrityError(what + " is not a homomorphism: edge {" + str(e->u) + ", " + str(e->v) +
                         "} is not mapped to an edge of the fourth power");
  }
}

}  // namespace

std::size_t step_m(const GammaParams& params, const EmbedOptions& options) {
  return std::max(walk_step_for(as_size(params.ell_m)), options.min_step_m);
}

std::size_t step_z(const GammaParams& params, const EmbedOptions& options) {
  return std::max(walk_step_for(as_size(params.ell_z)), options.min_step_z);
}

std::size_t distribution_cap(std::size_t n, const GammaParams& params, const EmbedOptions& options) {
  const double ell = static_cast<double>(as_size(params.ell_m));
  const double blocks = std::ceil(options.distribution_constant * static_cast<double>(n) / ell);
  return std::max<std::size_t>(1, static_cast<std::size_t>(blocks) * 40);
}

std::vector<Vertex> layout_order(const PathPowerLayout& layout) {
  const std::size_t n = layout.phi.size();
  std::vector<Vertex> order(n, static_cast<Vertex>(n));
  for (Vertex h = 0; h < n; ++h) {
    if (layout.phi[h] >= n || order[layout.phi[h]] != n) {
      throw ArgumentError("layout is not a bijection onto 0..n-1");
    }
    order[layout.phi[h]] = h;
  }
  return order;
}

std::vector<Vertex> build_f1(const Graph& h1, const PathPowerLayout& layout,
                             const GammaParams& params, const EmbedOptions& options) {
  require_materialised(params);
  const auto order = layout_order(layout);
  const std::size_t n = order.size();
  const WalkMap wm = build_walk_map(*params.r_m, ConstraintSchedule(n),
                                    rm_walk_params(n, params, options), options.walk_budget);
  auto f1 = by_vertex(order, wm.assignment);
  expect_homomorphism(h1, f1, *params.rho, "f_1");
  return f1;
}

ConstraintSchedule compute_sigma_i(std::size_t i, const Graph& h,
                                   const std::vector<std::vector<Vertex>>& f,
                                   const std::vector<Vertex>& order, const GammaParams& params,
                                   const EmbedOptions& options) {
  require_materialised(params);
  if (i < 2 || f.size() < i - 1) throw ArgumentError("compute_sigma_i needs i >= 2 and f_1..f_{i-1}");
  const std::size_t n = order.size();
  const std::size_t q = step_m(params, options);
  const BallIndex& rho = *params.rho;
  ConstraintSchedule sigma(n);
  for (std::size_t t = 0; t < n; ++t) {
    const auto t0 = ConstraintSchedule::latest_allowed(t, q);
    if (!t0) continue;
    const Vertex ht = order[t];
    std::size_t d1 = 0, d3 = 0;
    for (std::size_t tp = 0; tp <= *t0; ++tp) {
      const Vertex hp = order[tp];
      const bool in_d1 = f[0][ht] == f[0][hp];
      const bool in_d3 = !h.has_edge(ht, hp) && earlier_adjacent(f, i - 1, ht, hp, rho);
      d1 += in_d1;
      d3 += in_d3;
      if (in_d1 || in_d3) sigma.add(t, tp);
    }
    if (options.d1_cap && d1 > *options.d1_cap) {
      throw ScheduleOverflowError("|D_1(" + str(t) + ")| = " + str(d1) + " exceeds its cap", t, d1,
                                  *options.d1_cap);
    }
    if (options.d3_cap && d3 > *options.d3_cap) {
      throw ScheduleOverflowError("|D_3(" + str(t) + ")| = " + str(d3) + " exceeds its cap", t, d3,
                                  *options.d3_cap);
    }
  }
  return sigma;
}

std::vector<Vertex> build_fi(std::size_t i, const Graph& h,
                             const std::vector<std::vector<Vertex>>& f,
                             const std::vector<Vertex>& order, const ConstraintSchedule& schedule,
                             const GammaParams& params, const EmbedOptions& options) {
  require_materialised(params);
  if (i < 2 || f.size() < i - 1) throw ArgumentError("build_fi needs i >= 2 and f_1..f_{i-1}");
  const std::size_t n = order.size();
  const std::size_t qm = step_m(params, options), qz = step_z(params, options);
  const std::size_t d = params.d;
  const BallIndex& rho = *params.rho;

  // Would positions a and b (both placed at images ia, ib) form a bad pair?
  auto bad_pair = [&](std::size_t a, std::size_t b, Vertex ia, Vertex ib) {
    const std::size_t gap = a > b ? a - b : b - a;
    if (gap <= 4) return false;
    const Vertex ha = order[a], hb = order[b];
    return !h.has_edge(ha, hb) && rho.adjacent(ia, ib) && earlier_adjacent(f, i - 1, ha, hb, rho);
  };

  WalkOptions wo;
  wo.extra = [&](std::size_t t, Vertex c, std::span<const Vertex> placed) {
    const auto t0 = ConstraintSchedule::latest_allowed(t, qm);
    const auto zlim = ConstraintSchedule::latest_allowed(t, qz);
    const std::size_t lo = t0 ? *t0 + 1 : 0;
    std::size_t count_t = 0;
    for (std::size_t tp = lo; tp + 4 < t; ++tp) {
      if (!bad_pair(t, tp, c, placed[tp])) continue;
      if (!zlim || tp > *zlim) return false;
      if (++count_t > d) return false;
      std::size_t count_p = 1;
      const std::size_t from = tp > 2 * qm ? tp - 2 * qm : 0;
      for (std::size_t s = from; s < t && s <= tp + 2 * qm; ++s) {
        if (s != tp && bad_pair(tp, s, placed[tp], placed[s])) ++count_p;
      }
      if (count_p > d) return false;
    }
    return true;
  };

  const WalkMap wm = build_walk_map(*params.r_m, schedule, rm_walk_params(n, params, options),
                                    options.walk_budget, wo);
  return by_vertex(order, wm.assignment);
}

std::vector<std::vector<Vertex>> compute_bad_sets(std::size_t i, const Graph& h,
                                                  const std::vector<std::vector<Vertex>>& f,
                                                  const std::vector<std::size_t>& position,
                                                  const GammaParams& params) {
  require_materialised(params);
  if (i < 2 || f.size() < i) throw ArgumentError("compute_bad_sets needs i >= 2 and f_1..f_i");
  const std::size_t n = position.size();
  const BallIndex& rho = *params.rho;
  std::vector<std::vector<Vertex>> bad(n);
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      const std::size_t gap = position[a] > position[b] ? position[a] - position[b]
                                                        : position[b] - position[a];
      if (gap <= 4 || h.has_edge(a, b)) continue;
      if (!rho.adjacent(f[i - 1][a], f[i - 1][b])) continue;
      if (!earlier_adjacent(f, i - 1, a, b, rho)) continue;
      bad[a].push_back(b);
      bad[b].push_back(a);
    }
  }
  for (auto& s : bad) std::sort(s.begin(), s.end());
  return bad;
}

void check_bad_sets(const std::vector<std::vector<Vertex>>& bad,
                    const std::vector<std::size_t>& position, const GammaParams& params,
                    const EmbedOptions& options) {
  const std::size_t qz = step_z(params, options);
  for (Vertex a = 0; a < bad.size(); ++a) {
    if (bad[a].size() > params.d) {
      throw PropertyFailureError("H3", "|B(" + str(a) + ")| = " + str(bad[a].size()) +
                                           " exceeds d = " + str(params.d));
    }
    for (Vertex b : bad[a]) {
      const std::size_t hi = std::max(position[a], position[b]);
      const std::size_t lo = std::min(position[a], position[b]);
      if (mpz_class(static_cast<unsigned long>(hi - lo)) <= 2 * params.z) {
        throw PropertyFailureError("H3", "bad pair (" + str(a) + ", " + str(b) +
                                             ") has index gap at most 2z");
      }
      const auto allowed = ConstraintSchedule::latest_allowed(hi, qz);
      if (!allowed || lo > *allowed) {
        throw PropertyFailureError("H3", "bad pair (" + str(a) + ", " + str(b) +
                                             ") is too close for the R_z walk schedule");
      }
    }
  }
}

std::vector<Vertex> build_ri(std::size_t i, const Graph& hi, const std::vector<Vertex>& order,
                             const std::vector<std::vector<Vertex>>& bad,
                             const GammaParams& params, const EmbedOptions& options,
                             ConstraintSchedule* schedule_out) {
  require_materialised(params);
  if (i < 2) throw ArgumentError("build_ri needs i >= 2");
  const std::size_t n = order.size();
  const auto position = positions_of(order);
  ConstraintSchedule sigma(n);
  for (std::size_t t = 0; t < n; ++t) {
    for (Vertex b : bad[order[t]]) {
      if (position[b] < t) sigma.add(t, position[b]);
    }
  }
  WalkParams wp;
  wp.ell = as_size(params.ell_z);
  wp.step = step_z(params, options);
  wp.usage_cap = std::max<std::size_t>(1, (n + wp.ell - 1) / wp.ell) * 40;
  wp.avoid_radius = 5;
  wp.sigma_cap = params.d;
  try {
    sigma.validate(wp.step, wp.sigma_cap);
  } catch (const ArgumentError& e) {
    throw PropertyFailureError("H3", std::string("r_") + str(i) + " schedule: " + e.what());
  }
  const WalkMap wm = build_walk_map(*params.r_z, sigma, wp, options.walk_budget);
  auto ri = by_vertex(order, wm.assignment);
  expect_homomorphism(hi, ri, *params.z_ball, "r_" + str(i));
  if (schedule_out) *schedule_out = std::move(sigma);
  return ri;
}

// ---------------------------------------------------------------------------

bool EmbeddingCertificate::passed() const {
  return induced.ok() &&
         std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.passed; });
}

const PropertyCheck* EmbeddingCertificate::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::vector<GammaVertex> assemble_gamma(const Graph& h, const HomomorphismSet& homs,
                                        const GammaParams& params) {
  require_materialised(params);
  const std::size_t n = h.vertex_count();
  const std::size_t parts = homs.f.size();
  if (parts != params.delta || homs.r.size() != parts || homs.decomposition.parts.size() != parts) {
    throw ArgumentError("homomorphism set does not match delta");
  }
  const BallIndex& rho = *params.rho;
  const std::size_t width = params.subset_width();
  std::vector<GammaVertex> gamma(n);
  for (Vertex v = 0; v < n; ++v) {
    gamma[v].x1 = homs.f[0][v];
    for (std::size_t k = 1; k < parts; ++k) {
      GammaBlock b;
      b.x = homs.f[k][v];
      b.u = homs.r[k][v];
      b.subset = SubsetBits(width);
      for (Vertex w : homs.decomposition.parts[k].neighbors(v)) {
        const auto idx = rho.rho(homs.f[k][v], homs.f[k][w]);
        if (!idx || *idx >= width) {
          throw IntegrityError("Phi_" + str(k + 1) + "(" + str(v) + ") would reference " +
                               str(w) + ", which is not mapped into the R_m^4-neighbourhood");
        }
        b.subset.set(*idx);
      }
      gamma[v].blocks.push_back(std::move(b));
    }
  }
  return gamma;
}

InducedReport verify_induced(const Graph& h, const std::vector<GammaVertex>& gamma,
                             const GammaParams& params, std::size_t jobs) {
  const std::size_t n = h.vertex_count();
  if (gamma.size() != n) throw ArgumentError("embedding size differs from |V(H)|");
  auto rows = [&](std::size_t first, std::size_t stride) {
    std::vector<InducedViolation> out;
    for (std::size_t u = first; u < n; u += stride) {
      for (std::size_t v = u + 1; v < n; ++v) {
        const auto w = gamma_witness(gamma[u], gamma[v], params);
        const bool edge = h.has_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
        if (edge != w.has_value()) {
          out.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), edge, w});
        }
      }
    }
    return out;
  };
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(n, 1));
  InducedReport report;
  report.pairs_checked = n * (n - (n > 0)) / 2;
  if (jobs == 1) {
    report.violations = rows(0, 1);
  } else {
    std::vector<std::future<std::vector<InducedViolation>>> parts;
    for (std::size_t j = 0; j < jobs; ++j) parts.push_back(std::async(std::launch::async, rows, j, jobs));
    for (auto& p : parts) {
      auto v = p.get();
      report.violations.insert(report.violations.end(), v.begin(), v.end());
    }
    std::sort(report.violations.begin(), report.violations.end(),
              [](const InducedViolation& a, const InducedViolation& b) {
                return std::pair{a.u, a.v} < std::pair{b.u, b.v};
              });
  }
  return report;
}

EmbeddingCertificate certify_embedding(const Graph& h, const HomomorphismSet& homs,
                                       const std::vector<GammaVertex>& gamma,
                                       const GammaParams& params, const EmbedOptions& options) {
  require_materialised(params);
  const std::size_t n = h.vertex_count();
  const std::size_t parts = params.delta;
  const BallIndex& rho = *params.rho;
  const BallIndex& zb = *params.z_ball;
  const auto& dec = homs.decomposition;
  EmbeddingCertificate cert;
  auto check = [&cert](std::string name) -> PropertyCheck& {
    cert.checks.push_back({std::move(name), true, {}});
    return cert.checks.back();
  };
  auto fail = [](PropertyCheck& c, std::string msg) {
    c.passed = false;
    if (c.violations.size() < 50) c.violations.push_back(std::move(msg));
  };
  auto pair_str = [](std::size_t k, Vertex a, Vertex b) {
    return "i=" + str(k + 1) + " (" + str(a) + ", " + str(b) + ")";
  };

  auto& shape = check("shape");
  if (homs.f.size() != parts || homs.r.size() != parts || dec.parts.size() != parts ||
      homs.layouts.size() != parts || homs.order.size() != parts || homs.bad.size() != parts ||
      gamma.size() != n) {
    fail(shape, "component counts do not match delta and |V(H)|");
    return cert;
  }
  for (std::size_t k = 0; k < parts; ++k) {
    if (homs.f[k].size() != n || (k > 0 && (homs.r[k].size() != n || homs.bad[k].size() != n))) {
      fail(shape, "map for i=" + str(k + 1) + " has the wrong length");
    }
  }
  if (!shape.passed) return cert;

  auto& decomposition = check("decomposition");
  for (const auto& v : validate_decomposition(h, dec).violations) fail(decomposition, v.detail);

  auto& layout = check("layout");
  std::vector<std::vector<std::size_t>> position(parts);
  for (std::size_t k = 0; k < parts; ++k) {
    const std::string why = check_layout(dec.parts[k], homs.layouts[k], n);
    if (!why.empty()) fail(layout, "i=" + str(k + 1) + ": " + why);
    position[k] = homs.layouts[k].phi;
  }
  if (!layout.passed) return cert;

  auto& hom_f = check("homomorphism_f");
  auto& hom_r = check("homomorphism_r");
  for (std::size_t k = 0; k < parts; ++k) {
    if (auto e = homomorphism_breach(dec.parts[k], homs.f[k], rho)) {
      fail(hom_f, "f_" + str(k + 1) + " breaks edge " + pair_str(k, e->u, e->v));
    }
    if (k > 0) {
      if (auto e = homomorphism_breach(dec.parts[k], homs.r[k], zb)) {
        fail(hom_r, "r_" + str(k + 1) + " breaks edge " + pair_str(k, e->u, e->v));
      }
    }
  }

  auto& well = check("well_distributed");
  const std::size_t cap = distribution_cap(n, params, options);
  for (std::size_t k = 0; k < parts; ++k) {
    std::map<Vertex, std::size_t> fibre;
    for (Vertex v : homs.f[k]) ++fibre[v];
    for (const auto& [x, c] : fibre) {
      if (c > cap) fail(well, "f_" + str(k + 1) + " uses vertex " + str(x) + " " + str(c) + " times");
    }
  }

  auto& h1 = check("H1");
  {
    std::map<Vertex, std::vector<Vertex>> fibre;
    for (Vertex v = 0; v < n; ++v) fibre[homs.f[0][v]].push_back(v);
    for (const auto& [x, vs] : fibre) {
      for (std::size_t a = 0; a < vs.size(); ++a) {
        for (std::size_t b = a + 1; b < vs.size(); ++b) {
          for (std::size_t k = 1; k < parts; ++k) {
            if (homs.f[k][vs[a]] == homs.f[k][vs[b]]) fail(h1, pair_str(k, vs[a], vs[b]));
          }
        }
      }
    }
  }

  auto& h2 = check("H2");
  for (std::size_t k = 0; k < parts; ++k) {
    const auto& order = homs.order[k];
    for (std::size_t t = 0; t < n; ++t) {
      for (std::size_t s = t + 1; s < n && s <= t + 8; ++s) {
        if (homs.f[k][order[t]] == homs.f[k][order[s]]) fail(h2, pair_str(k, order[t], order[s]));
      }
    }
  }

  auto& h3 = check("H3");
  auto& h4 = check("H4");
  for (std::size_t k = 1; k < parts; ++k) {
    const auto bad = compute_bad_sets(k + 1, h, homs.f, position[k], params);
    if (bad != homs.bad[k]) fail(h3, "recorded B_" + str(k + 1) + " differs from a recount");
    try {
      check_bad_sets(bad, position[k], params, options);
    } catch (const PropertyFailureError& e) {
      fail(h3, "i=" + str(k + 1) + ": " + e.what());
    }
    for (Vertex a = 0; a < n; ++a) {
      for (Vertex b : bad[a]) {
        if (a < b && zb.adjacent(homs.r[k][a], homs.r[k][b])) fail(h4, pair_str(k, a, b));
      }
    }
  }

  auto& phi = check("phi");
  auto& injective = check("injective");
  try {
    const auto expected = assemble_gamma(h, homs, params);
    for (Vertex v = 0; v < n; ++v) {
      if (!(expected[v] == gamma[v])) fail(phi, "gamma(" + str(v) + ") differs from its definition");
    }
  } catch (const Error& e) {
    fail(phi, e.what());
  }
  {
    std::map<std::string, Vertex> seen;
    for (Vertex v = 0; v < n; ++v) {
      try {
        auto [it, fresh] = seen.emplace(label_to_hex(encode_label(gamma[v], params)), v);
        if (!fresh) fail(injective, "gamma(" + str(it->second) + ") = gamma(" + str(v) + ")");
      } catch (const Error& e) {
        fail(injective, e.what());
      }
    }
  }

  auto& witness = check("edge_witness");
  for (std::size_t e = 0; e < dec.edges.size(); ++e) {
    const auto [a, b] = dec.multiplicity[e];
    const Vertex u = dec.edges[e].u, v = dec.edges[e].v;
    const std::string where = "edge {" + str(u) + ", " + str(v) + "} via (" + str(a + 1) + ", " +
                              str(b + 1) + ")";
    if (a >= b || b == 0 || b >= parts) {
      fail(witness, where + ": bad part pair");
      continue;
    }
    auto x = [&](Vertex w, std::size_t k) { return k == 0 ? gamma[w].x1 : gamma[w].blocks[k - 1].x; };
    const auto& bu = gamma[u].blocks[b - 1];
    const auto& bv = gamma[v].blocks[b - 1];
    const auto ru = rho.rho(bu.x, bv.x), rv = rho.rho(bv.x, bu.x);
    const bool e1 = rho.adjacent(x(u, a), x(v, a)) && rho.adjacent(x(u, b), x(v, b));
    const bool e2 = ru && rv && bu.subset.test(*ru) && bv.subset.test(*rv);
    const bool e3 = zb.adjacent(bu.u, bv.u);
    if (!(e1 && e2 && e3)) {
      fail(witness, where + ": E1=" + str(e1) + " E2=" + str(e2) + " E3=" + str(e3));
    }
  }

  cert.induced = verify_induced(h, gamma, params, options.jobs);
  return cert;
}

// ---------------------------------------------------------------------------

namespace {

EmbeddingResult run_pipeline(const Graph& h, const HomomorphismSet& base, const GammaParams& params,
                             const EmbedOptions& options) {
  const std::size_t parts = params.delta;
  const std::size_t n = h.vertex_count();
  EmbeddingResult res;
  res.params = params;
  res.params_digest = params.digest();
  HomomorphismSet& homs = res.homs;
  homs = base;
  homs.f.assign(parts, {});
  homs.r.assign(parts, {});
  homs.bad.assign(parts, {});
  homs.f_schedules.assign(parts, ConstraintSchedule(n));
  homs.r_schedules.assign(parts, ConstraintSchedule(n));

  const auto& dec = homs.decomposition;
  homs.f[0] = build_f1(dec.parts[0], homs.layouts[0], params, options);
  for (std::size_t k = 1; k < parts; ++k) {
    const std::size_t i = k + 1;
    const auto& order = homs.order[k];
    homs.f_schedules[k] = compute_sigma_i(i, h, homs.f, order, params, options);
    homs.f[k] = build_fi(i, h, homs.f, order, homs.f_schedules[k], params, options);
    expect_homomorphism(dec.parts[k], homs.f[k], *params.rho, "f_" + str(i));
    homs.bad[k] = compute_bad_sets(i, h, homs.f, homs.layouts[k].phi, params);
    check_bad_sets(homs.bad[k], homs.layouts[k].phi, params, options);
    homs.r[k] = build_ri(i, dec.parts[k], order, homs.bad[k], params, options, &homs.r_schedules[k]);
  }
  res.gamma = assemble_gamma(h, homs, params);
  res.certificate = certify_embedding(h, homs, res.gamma, params, options);
  return res;
}

std::string failed_checks(const EmbeddingCertificate& c) {
  std::string out;
  for (const auto& p : c.checks) {
    if (!p.passed) out += (out.empty() ? "" : ", ") + p.name;
  }
  if (!c.induced.ok()) out += (out.empty() ? "" : ", ") + std::string("induced");
  return out;
}

}  // namespace

EmbeddingResult embed(const Graph& h, const GammaParams& params, const EmbedOptions& options,
                      const RetryPolicy& policy) {
  require_materialised(params);
  const std::size_t n = h.vertex_count();
  if (h.max_degree() > params.delta) {
    throw ArgumentError("maximum degree " + str(h.max_degree()) + " exceeds delta = " +
                        str(params.delta));
  }
  if (n > params.n) {
    throw ArgumentError("H has " + str(n) + " vertices but Gamma was built for n = " +
                        std::to_string(params.n));
  }

  HomomorphismSet base;
  DecomposeOptions dopt;
  dopt.search_budget = options.decompose_budget;
  base.decomposition = thin_decompose(h, params.delta, options.strategy, dopt);
  LayoutOptions lopt;
  lopt.fallback_budget = options.layout_budget;
  for (const Graph& part : base.decomposition.parts) {
    base.layouts.push_back(layout_thin(part, n, lopt));
    base.order.push_back(layout_order(base.layouts.back()));
  }

  GammaParams current = params;
  EmbedOptions opts = options;
  std::vector<std::string> trail;
  const std::size_t rounds = std::max<std::size_t>(policy.max_rounds, 1);
  for (std::size_t round = 0; round < rounds; ++round) {
    const std::string tag = "round " + str(round) + " (budget " + str(opts.walk_budget) +
                            ", params " + current.digest() + "): ";
    try {
      EmbeddingResult res = run_pipeline(h, base, current, opts);
      if (res.certificate.passed()) {
        trail.push_back(tag + "ok");
        res.trail = std::move(trail);
        return res;
      }
      trail.push_back(tag + "certificate failed: " + failed_checks(res.certificate));
    } catch (const ArgumentError&) {
      throw;
    } catch (const Error& e) {
      trail.push_back(tag + e.kind() + ": " + e.what());
    }
    if (round + 1 == rounds) break;

    // Escalate: walk budget, then a larger R_z, then a larger R_m.
    const std::size_t step = round % 3;
    GammaOverrides ov = current.overrides;
    if (step == 0) {
      opts.walk_budget *= std::max<std::size_t>(policy.budget_growth, 1);
    } else if (step == 1 && policy.grow_rz && current.rz_params && !ov.r_z) {
      ov.rz_min_q = current.rz_params->q + 1;
      current = make_gamma_params(current.delta, current.n, Profile::kDesk, ov);
    } else if (step == 2 && policy.grow_rm && current.rm_params && !ov.r_m) {
      ov.rm_min_q = current.rm_params->q + 1;
      current = make_gamma_params(current.delta, current.n, Profile::kDesk, ov);
    } else {
      opts.walk_budget *= std::max<std::size_t>(policy.budget_growth, 1);
    }
  }
  throw EmbeddingFailureError("embedding failed after " + str(rounds) + " rounds", std::move(trail));
}

}  // namespace iug
