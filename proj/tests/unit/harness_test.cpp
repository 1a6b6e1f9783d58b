#include <gtest/gtest.h>

#include <filesystem>
#include <map>
#include <random>

#include "iug/error.hpp"
#include "iug/harness.hpp"
#include "oracles.hpp"

using namespace iug;

TEST(Family, SpecCounts) {
  EXPECT_EQ(family_size({3, 2, false}), 8u);
  EXPECT_EQ(family_size({3, 1, false}), 4u);
  EXPECT_EQ(family_size({1, 0, false}), 1u);
  EXPECT_EQ(family_size({1, 5, true}), 1u);
  EXPECT_THROW(family_size({11, 3, false}), BudgetError);
  EXPECT_THROW(family_size({9, 3, true}), BudgetError);
  EXPECT_THROW(family_size({0, 3, false}), ArgumentError);
}

TEST(Family, IsomorphismClassesMatchOeis) {
  const std::vector<std::size_t> all{1, 2, 4, 11, 34, 156, 1044, 12346};
  for (std::size_t n = 1; n <= 8; ++n) EXPECT_EQ(family_size({n, n - 1 ? n - 1 : 1, true}), all[n - 1]) << n;
  const std::vector<std::size_t> subcubic{1, 2, 4, 11, 23, 62, 150, 424};
  for (std::size_t n = 1; n <= 8; ++n) EXPECT_EQ(family_size({n, 3, true}), subcubic[n - 1]) << n;
}

TEST(Family, MatchesPowersetOracle) {
  for (std::size_t n = 1; n <= 5; ++n) {
    for (std::size_t delta = 0; delta < n + 1; ++delta) {
      auto ref = oracle::all_graphs(n, delta);
      EXPECT_EQ(family_size({n, delta, false}), ref.size()) << n << " " << delta;
      std::set<std::vector<bool>> classes;
      for (const auto& g : ref) classes.insert(oracle::permutation_key(g));
      EXPECT_EQ(family_size({n, delta, true}), classes.size()) << n << " " << delta;
    }
  }
}

TEST(Family, MembersRespectDegreeAndAreDistinct) {
  std::set<std::uint64_t> seen;
  enumerate_family({6, 2, true}, [&](const Graph& g) {
    EXPECT_LE(g.max_degree(), 2u);
    EXPECT_TRUE(seen.insert(canonical_code(g)).second);
    return true;
  });
  std::size_t visited = 0;
  enumerate_family({5, 4, false}, [&](const Graph&) { return ++visited < 10; });
  EXPECT_EQ(visited, 10u);
}

TEST(Canonical, AgreesWithPermutationOracle) {
  for (std::size_t n = 2; n <= 6; ++n) {
    auto graphs = oracle::all_graphs(n, n - 1);
    std::map<std::vector<bool>, std::uint64_t> key_to_code;
    std::set<std::uint64_t> codes;
    for (const auto& g : graphs) {
      const auto key = oracle::permutation_key(g);
      const auto code = canonical_code(g);
      auto [it, fresh] = key_to_code.emplace(key, code);
      EXPECT_EQ(it->second, code);
      if (fresh) EXPECT_TRUE(codes.insert(code).second);
    }
  }
}

TEST(Canonical, RoundTripAndRandomRelabelling) {
  std::mt19937_64 rng(9);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = 2 + round % 10;
    auto g = oracle::random_graph(rng, n, 0.35);
    std::vector<Vertex> perm(n);
    for (Vertex i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> e;
    for (auto [u, v] : g.edges()) e.push_back({std::min(perm[u], perm[v]), std::max(perm[u], perm[v])});
    auto h = Graph::from_edges(n, e);
    const auto code = canonical_code(g);
    EXPECT_EQ(canonical_code(h), code);
    EXPECT_EQ(canonical_code(graph_from_code(n, code)), code);
  }
}

TEST(Sweep, SmallFamilies) {
  auto p = make_gamma_params(3, 5, Profile::kDesk);
  auto r = universality_sweep(FamilySpec{5, 3, true}, p);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.total, family_size({5, 3, true}));
  EXPECT_EQ(r.embedded, r.total);
  EXPECT_GT(r.pairs_checked, 0u);
  EXPECT_EQ(r.params_digest, p.digest());
}

TEST(Sweep, EdgelessFamily) {
  auto p = make_gamma_params(2, 6, Profile::kDesk);
  auto r = universality_sweep(FamilySpec{6, 0, false}, p);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.total, 1u);
}

TEST(Sweep, DeltaAboveParams) {
  auto p = make_gamma_params(2, 6, Profile::kDesk);
  EXPECT_THROW(universality_sweep(FamilySpec{4, 3, true}, p), ArgumentError);
  EXPECT_THROW(universality_sweep(FamilySpec{7, 2, true}, p), ArgumentError);
}

TEST(Sweep, CacheAndThreads) {
  auto dir = std::filesystem::temp_directory_path() / "iug_sweep_cache_test";
  std::filesystem::remove_all(dir);
  auto p = make_gamma_params(3, 4, Profile::kDesk);
  SweepOptions o;
  o.cache_dir = dir.string();
  o.jobs = 3;
  std::vector<FamilySpec> specs{{3, 3, true}, {4, 3, true}};
  auto first = universality_sweep(specs, p, o);
  EXPECT_FALSE(first.cached);
  auto second = universality_sweep(specs, p, o);
  EXPECT_TRUE(second.cached);
  EXPECT_EQ(second.total, first.total);
  EXPECT_EQ(second.pairs_checked, first.pairs_checked);
  o.jobs = 1;
  o.cache_dir.clear();
  auto serial = universality_sweep(specs, p, o);
  EXPECT_EQ(serial.total, first.total);
  EXPECT_EQ(serial.pairs_checked, first.pairs_checked);
  std::filesystem::remove_all(dir);
}

TEST(Fuzz, TargetsAreClean) {
  for (auto t : {FuzzTarget::kWalks, FuzzTarget::kDecomposition, FuzzTarget::kGamma, FuzzTarget::kEmbedder}) {
    FuzzOptions o;
    o.pairs_per_round = 20;
    auto r = property_fuzz(t, 1234, 12, o);
    EXPECT_TRUE(r.ok()) << to_string(t) << ": " << (r.violations.empty() ? "" : r.violations[0])
                        << (r.missed.empty() ? "" : r.missed[0]);
    EXPECT_GT(r.instances, 0u);
    EXPECT_GT(r.injected, 0u);
    EXPECT_EQ(r.detected, r.injected);
  }
}

TEST(Fuzz, Deterministic) {
  auto a = property_fuzz(FuzzTarget::kWalks, 77, 8);
  auto b = property_fuzz(FuzzTarget::kWalks, 77, 8);
  EXPECT_EQ(a.instances, b.instances);
  EXPECT_EQ(a.injected, b.injected);
  EXPECT_EQ(parse_fuzz_target("gamma"), FuzzTarget::kGamma);
  EXPECT_THROW(parse_fuzz_target("nope"), ArgumentError);
}

TEST(SizeReport, ShapeAndSpread) {
  auto r = size_report({2, 3}, {100, 10000, 1000000});
  EXPECT_EQ(r.rows.size(), 6u);
  for (auto [delta, spread] : r.log10_spread) EXPECT_LE(spread, 4.0) << delta;
  for (const auto& row : r.rows)
    EXPECT_NEAR(row.log10_ratio, row.log10_count - row.delta / 2.0 * std::log10(double(row.n)), 1e-3);
  EXPECT_THROW(size_report({2}, {0}), ArgumentError);
}
