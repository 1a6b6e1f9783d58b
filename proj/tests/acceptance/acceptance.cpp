// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria. Pass criterion numbers as arguments to run a
// subset.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "iug/embedder.hpp"
#include "iug/gamma.hpp"
#include "iug/graph.hpp"
#include "iug/harness.hpp"
#include "iug/lps.hpp"
#include "iug/thin.hpp"
#include "iug/walks.hpp"
#include "oracles.hpp"

using namespace iug;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Outcome lps_construction() {
  const auto t0 = Clock::now();
  auto g = build_lps_graph({5, 29});
  auto cert = certify_expander(g, LpsParams{5, 29});
  const double secs = since(t0);
  const double bound = 2 * std::sqrt(5.0) + 1e-4;
  const double lambda = cert.second_eigenvalue_bound.value_or(INFINITY);
  const bool ok = g.vertex_count() == 12180 && g.regular_degree() == 6u && cert.connected &&
                  cert.non_bipartite && lambda <= bound && cert.girth_found.value_or(0) >= 3 &&
                  secs < 120;
  std::ostringstream s;
  s << g.vertex_count() << " vertices, degree " << cert.degree << ", lambda " << fmt("%.6f", lambda)
    << " <= " << fmt("%.6f", bound) << ", girth " << cert.girth_found.value_or(0) << ", "
    << fmt("%.2f", secs) << " s";
  return {ok, s.str()};
}

Outcome expanding_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<std::size_t> nd(4, 40);
  std::uniform_int_distribution<std::size_t> qd(1, 3);
  std::size_t checks = 0, agree = 0, positives = 0;
  for (int graph = 0; graph < 200; ++graph) {
    const std::size_t n = nd(rng);
    const std::size_t q = qd(rng);
    // Denser graphs for q = 1 so that both answers occur.
    const double lo = q == 1 ? 0.4 : q == 2 ? 0.15 : 0.06;
    const double hi = q == 1 ? 0.95 : q == 2 ? 0.5 : 0.2;
    const double p = std::uniform_real_distribution<double>(lo, hi)(rng);
    auto f = oracle::random_graph(rng, n, p);
    std::vector<std::vector<Vertex>> sets(q);
    std::uniform_int_distribution<Vertex> vd(0, static_cast<Vertex>(n - 1));
    for (auto& s : sets) {
      for (std::size_t k = 0; k < n / 20 + 1; ++k) s.push_back(vd(rng));
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    for (int probe = 0; probe < 3; ++probe) {
      const Vertex v = vd(rng);
      const bool want = oracle::q_expanding(f, v, sets, q);
      agree += is_q_expanding(f, v, sets, q) == want;
      positives += want;
      ++checks;
    }
  }
  const double secs = since(t0);
  std::ostringstream s;
  s << agree << "/" << checks << " agree on 200 graphs (" << positives << " expanding), "
    << fmt("%.2f", secs) << " s";
  return {agree == checks && secs < 60, s.str()};
}

Outcome walk_lemma() {
  auto r = property_fuzz(FuzzTarget::kWalks, 2024, 500);
  std::ostringstream s;
  s << r.instances << " instances, " << r.violations.size() << " violations, " << r.detected << "/"
    << r.injected << " faults detected, " << fmt("%.2f", r.seconds) << " s";
  if (!r.violations.empty()) s << "; first: " << r.violations[0];
  return {r.ok() && r.instances == 500 && r.seconds < 180, s.str()};
}

struct Criterion4State {
  std::vector<std::pair<Graph, std::size_t>> parts;  // part and its host's n
};

Outcome decomposition(Criterion4State& state) {
  const auto t0 = Clock::now();
  std::size_t graphs = 0, valid = 0, regular = 0, two_regular = 0;
  std::string first;
  for (std::size_t n = 1; n <= 8; ++n) {
    enumerate_family({n, 3, true}, [&](const Graph& h) {
      ++graphs;
      try {
        auto dec = thin_decompose(h, 3, DecomposeStrategy::kAuto);
        if (validate_decomposition(h, dec).ok()) {
          ++valid;
          for (auto& p : dec.parts) state.parts.emplace_back(std::move(p), n);
        } else if (first.empty()) {
          first = format_edge_list(h);
        }
      } catch (const std::exception& e) {
        if (first.empty()) first = e.what();
      }
      return true;
    });
    enumerate_family({n, 4, true}, [&](const Graph& h) {
      if (h.regular_degree() != 4u) return true;
      ++regular;
      try {
        auto dec = thin_decompose(h, 4, DecomposeStrategy::kEvenPetersen);
        bool ok = validate_decomposition(h, dec).ok();
        for (const auto& p : dec.parts) ok = ok && p.regular_degree() == 2u;
        two_regular += ok;
      } catch (const std::exception& e) {
        if (first.empty()) first = e.what();
      }
      return true;
    });
  }
  const double secs = since(t0);
  std::ostringstream s;
  s << valid << "/" << graphs << " subcubic classes decomposed and valid, " << two_regular << "/" << regular
    << " 4-regular classes split into 2-factors, " << fmt("%.2f", secs) << " s";
  if (!first.empty()) s << "; first failure: " << first;
  return {valid == graphs && two_regular == regular && secs < 300, s.str()};
}

Outcome layouts(const Criterion4State& state) {
  const auto t0 = Clock::now();
  std::size_t bad = 0, max_stretch = 0;
  std::string first;
  for (const auto& [part, n] : state.parts) {
    try {
      auto l = layout_thin(part, n);
      auto why = check_layout(part, l, n);
      std::set<std::size_t> image(l.phi.begin(), l.phi.end());
      max_stretch = std::max(max_stretch, layout_stretch(part, l));
      if (!why.empty() || image.size() != part.vertex_count()) {
        ++bad;
        if (first.empty()) first = why;
      }
    } catch (const std::exception& e) {
      ++bad;
      if (first.empty()) first = e.what();
    }
  }
  std::ostringstream s;
  s << state.parts.size() << " thin parts, " << bad << " violations, max stretch " << max_stretch << ", "
    << fmt("%.2f", since(t0)) << " s";
  if (!first.empty()) s << "; first: " << first;
  return {bad == 0 && !state.parts.empty() && max_stretch <= kMaxStretch, s.str()};
}

Outcome universality() {
  const auto t0 = Clock::now();
  auto params = make_gamma_params(3, 7, Profile::kDesk);
  std::vector<FamilySpec> specs;
  for (std::size_t n = 1; n <= 7; ++n) specs.push_back({n, 3, true});
  auto r = universality_sweep(specs, params);
  const double secs = since(t0);
  std::ostringstream s;
  s << r.embedded << "/" << r.total << " classes embedded, " << r.pairs_checked << " pairs checked, "
    << r.failures.size() << " failures, " << fmt("%.2f", secs) << " s";
  if (!r.failures.empty()) s << "; first: " << r.failures[0].error;
  return {r.ok() && r.total == 1 + 2 + 4 + 11 + 23 + 62 + 150 && secs < 600, s.str()};
}

Outcome size_scaling() {
  const auto t0 = Clock::now();
  auto r = size_report({2, 3, 4, 5}, {100, 1000, 10000, 100000, 1000000, 10000000, 100000000});
  const double secs = since(t0);
  double worst = 0;
  std::ostringstream s;
  s << "log10 spread";
  for (auto [delta, spread] : r.log10_spread) {
    worst = std::max(worst, spread);
    s << " D=" << delta << ":" << fmt("%.4f", spread);
  }
  s << " (limit 4), " << fmt("%.3f", secs) << " s";
  return {r.log10_spread.size() == 4 && worst <= 4.0 && secs < 1.0, s.str()};
}

Outcome gamma_properties() {
  FuzzOptions o;
  o.params = make_gamma_params(3, 49, Profile::kDesk);
  o.pairs_per_round = 100;
  auto r = property_fuzz(FuzzTarget::kGamma, 8, 1000, o);
  std::ostringstream s;
  s << r.rounds * o.pairs_per_round << " pairs, " << r.violations.size() << " violations, " << r.detected
    << "/" << r.injected << " faults detected, " << fmt("%.2f", r.seconds) << " s";
  if (!r.violations.empty()) s << "; first: " << r.violations[0];
  return {r.ok() && r.seconds < 60, s.str()};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  Criterion4State c4;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"LPS construction", lps_construction},
      {"expanding-vertex oracle equivalence", expanding_oracle},
      {"walk lemma properties", walk_lemma},
      {"decomposition contract", [&] { return decomposition(c4); }},
      {"layout bound", [&] {
         if (c4.parts.empty()) decomposition(c4);
         return layouts(c4);
       }},
      {"end-to-end universality", universality},
      {"size scaling", size_scaling},
      {"gamma oracle properties", gamma_properties},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k + 1);
    if (!only.empty() && !only.count(id)) continue;
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %d (%s): %s  [%s]\n", id, criteria[k].first, o.pass ? "PASS" : "FAIL",
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed;
}
