#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "iug/error.hpp"
#include "iug/harness.hpp"
#include "iug/thin.hpp"
#include "oracles.hpp"

using namespace iug;

namespace {

Graph c6_with_pendants(std::size_t pendants) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < 6; ++i) e.push_back({i, (i + 1) % 6});
  for (Vertex i = 0; i < pendants; ++i) e.push_back({static_cast<Vertex>(2 * i), static_cast<Vertex>(6 + i)});
  return Graph::from_edges(6 + pendants, e);
}

Graph with_extra_edges(const Graph& g, std::vector<Edge> extra) {
  auto e = g.edges();
  e.insert(e.end(), extra.begin(), extra.end());
  return Graph::from_edges(g.vertex_count(), e);
}

}  // namespace

TEST(Thin, SpecExamples) {
  EXPECT_TRUE(is_thin(cycle_graph(9)));
  EXPECT_TRUE(is_thin(c6_with_pendants(3)));
  auto k4 = is_thin(complete_graph(4));
  EXPECT_FALSE(k4);
  EXPECT_EQ(k4.component, 0u);
  EXPECT_FALSE(is_thin(complete_graph(5)));
}

TEST(Thin, AgreesWithDefinitionOnSmallGraphs) {
  for (std::size_t n = 1; n <= 8; ++n) {
    enumerate_family({n, 4, true}, [&](const Graph& g) {
      EXPECT_EQ(static_cast<bool>(is_thin(g)), oracle::thin(g)) << format_edge_list(g);
      return true;
    });
  }
}

TEST(Thin, AugmentationRecogniser) {
  auto g = c6_with_pendants(3);
  std::vector<Vertex> all(9);
  for (Vertex v = 0; v < 9; ++v) all[v] = v;
  EXPECT_TRUE(is_path_or_cycle_augmentation(g, all));
  auto k4 = complete_graph(4);
  EXPECT_FALSE(is_path_or_cycle_augmentation(k4, {0, 1, 2, 3}));
}

TEST(Decompose, CycleForced) {
  auto c8 = cycle_graph(8);
  auto dec = thin_decompose(c8, 2);
  ASSERT_EQ(dec.parts.size(), 2u);
  EXPECT_EQ(dec.parts[0], c8);
  EXPECT_EQ(dec.parts[1], c8);
  EXPECT_TRUE(validate_decomposition(c8, dec).ok());
}

TEST(Decompose, K4) {
  auto k4 = complete_graph(4);
  auto dec = thin_decompose(k4, 3);
  ASSERT_EQ(dec.parts.size(), 3u);
  EXPECT_TRUE(validate_decomposition(k4, dec).ok());
  for (const auto& p : dec.parts) EXPECT_TRUE(oracle::thin(p));
}

TEST(Decompose, EmptyGraph) {
  auto dec = thin_decompose(Graph(5), 4);
  ASSERT_EQ(dec.parts.size(), 4u);
  for (const auto& p : dec.parts) EXPECT_EQ(p.edge_count(), 0u);
}

TEST(Decompose, Preconditions) {
  EXPECT_THROW(thin_decompose(complete_graph(5), 3), ArgumentError);
  EXPECT_THROW(thin_decompose(path_graph(3), 1), ArgumentError);
  EXPECT_THROW(thin_decompose(cycle_graph(5), 3, DecomposeStrategy::kEvenPetersen), ArgumentError);
}

TEST(Decompose, EvenPetersenGivesTwoFactors) {
  // 4-regular circulant on 11 vertices and K5.
  std::vector<Edge> e;
  for (Vertex i = 0; i < 11; ++i) {
    e.push_back({i, (i + 1) % 11});
    e.push_back({i, (i + 3) % 11});
  }
  for (const Graph& h : {Graph::from_edges(11, e), complete_graph(5)}) {
    auto dec = thin_decompose(h, 4, DecomposeStrategy::kEvenPetersen);
    EXPECT_TRUE(validate_decomposition(h, dec).ok());
    for (const auto& p : dec.parts) EXPECT_EQ(p.regular_degree(), 2u);
  }
}

TEST(Decompose, DegreeSumIdentity) {
  for (std::size_t n = 2; n <= 7; ++n) {
    enumerate_family({n, 3, true}, [&](const Graph& h) {
      auto dec = thin_decompose(h, 3);
      auto report = validate_decomposition(h, dec);
      EXPECT_TRUE(report.ok()) << format_edge_list(h);
      for (Vertex v = 0; v < n; ++v) {
        std::size_t sum = 0;
        for (const auto& p : dec.parts) sum += p.degree(v);
        EXPECT_EQ(sum, 2 * h.degree(v));
      }
      return true;
    });
  }
}

TEST(Decompose, OddDeltaBySearch) {
  auto dec = thin_decompose(complete_graph(6), 5, DecomposeStrategy::kSearch);
  EXPECT_TRUE(validate_decomposition(complete_graph(6), dec).ok());
}

Graph petersen() {
  std::vector<Edge> e;
  for (Vertex i = 0; i < 5; ++i) {
    e.push_back({i, (i + 1) % 5});
    e.push_back({i, i + 5});
    e.push_back({5 + i, 5 + (i + 2) % 5});
  }
  return Graph::from_edges(10, e);
}

TEST(Decompose, EdgeColouringOnClassTwoGraph) {
  // Petersen needs four colours, so at least one edge is placed greedily.
  auto g = petersen();
  auto dec = thin_decompose(g, 3, DecomposeStrategy::kEdgeColouring);
  EXPECT_TRUE(validate_decomposition(g, dec).ok());
}

TEST(Decompose, EdgeColouringOnRandomCubicGraphs) {
  std::mt19937_64 rng(77);
  for (int round = 0; round < 5; ++round) {
    // Union of three random perfect matchings, duplicates dropped.
    const std::size_t n = 400;
    std::vector<Edge> e;
    for (int m = 0; m < 3; ++m) {
      std::vector<Vertex> perm(n);
      for (Vertex i = 0; i < n; ++i) perm[i] = i;
      std::shuffle(perm.begin(), perm.end(), rng);
      for (std::size_t i = 0; i < n; i += 2) e.push_back({perm[i], perm[i + 1]});
    }
    std::vector<Edge> simple;
    for (auto x : e) {
      Edge k{std::min(x.u, x.v), std::max(x.u, x.v)};
      if (std::find_if(simple.begin(), simple.end(), [&](const Edge& y) {
            return y.u == k.u && y.v == k.v;
          }) == simple.end())
        simple.push_back(k);
    }
    auto g = Graph::from_edges(n, simple);
    for (auto strategy : {DecomposeStrategy::kEdgeColouring, DecomposeStrategy::kAuto}) {
      auto dec = thin_decompose(g, 3, strategy);
      EXPECT_TRUE(validate_decomposition(g, dec).ok()) << to_string(strategy);
    }
  }
}

TEST(Decompose, EdgeColouringFiveRegular) {
  auto g = complete_graph(6);
  auto dec = thin_decompose(g, 5, DecomposeStrategy::kEdgeColouring);
  EXPECT_TRUE(validate_decomposition(g, dec).ok());
  EXPECT_EQ(parse_decompose_strategy("edge-coloring"), DecomposeStrategy::kEdgeColouring);
}

TEST(Decompose, CustomStrategyIsValidated) {
  DecomposeOptions opt;
  opt.custom = [](const Graph& h, std::size_t delta) {
    ThinDecomposition d;
    d.parts.assign(delta, Graph(h.vertex_count()));
    return d;
  };
  EXPECT_THROW(thin_decompose(cycle_graph(5), 2, DecomposeStrategy::kCustom, opt), Error);
}

TEST(ValidateDecomposition, Faults) {
  auto h = cycle_graph(6);
  auto dec = thin_decompose(h, 3);
  ASSERT_TRUE(validate_decomposition(h, dec).ok());

  auto dropped = dec;
  for (auto& p : dropped.parts) {
    if (p.edge_count() == 0) continue;
    auto e = p.edges();
    e.pop_back();
    p = Graph::from_edges(p.vertex_count(), e);
    break;
  }
  auto r1 = validate_decomposition(h, dropped);
  EXPECT_EQ(r1.count(DecompositionViolation::Kind::kMultiplicity), 1u);

  auto hub = Graph::from_edges(5, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}});
  auto hdec = thin_decompose(hub, 3);
  auto fat = hdec;
  std::vector<Edge> extra;
  for (Vertex w = 1; w < 5 && fat.parts[0].degree(0) + extra.size() < 4; ++w)
    if (!fat.parts[0].has_edge(0, w)) extra.push_back({0, w});
  fat.parts[0] = with_extra_edges(fat.parts[0], extra);
  EXPECT_EQ(validate_decomposition(hub, fat).count(DecompositionViolation::Kind::kThinness), 1u);

  auto short_dec = dec;
  short_dec.parts.resize(1);
  EXPECT_GE(validate_decomposition(h, short_dec).count(DecompositionViolation::Kind::kShape), 1u);
}

TEST(Layout, PathIsIdentity) {
  auto p = path_graph(9);
  auto l = layout_thin(p, 9);
  EXPECT_EQ(layout_stretch(p, l), 1u);
  EXPECT_EQ(check_layout(p, l, 9), "");
}

TEST(Layout, FiveCycleZigzag) {
  auto c5 = cycle_graph(5);
  auto l = layout_thin(c5, 5);
  EXPECT_LE(layout_stretch(c5, l), 2u);
  EXPECT_EQ(check_layout(c5, l, 5), "");
}

TEST(Layout, AugmentedCycle) {
  auto g = c6_with_pendants(2);
  auto l = layout_thin(g, 8);
  EXPECT_LE(layout_stretch(g, l), kMaxStretch);
  EXPECT_EQ(check_layout(g, l, 8), "");
}

TEST(Layout, EveryThinGraphUpToEight) {
  for (std::size_t n = 1; n <= 8; ++n) {
    enumerate_family({n, 3, true}, [&](const Graph& g) {
      if (!oracle::thin(g)) return true;
      auto l = layout_thin(g, n + 2);
      EXPECT_EQ(check_layout(g, l, n + 2), "") << format_edge_list(g);
      return true;
    });
  }
}

TEST(Layout, Preconditions) {
  EXPECT_THROW(layout_thin(complete_graph(4), 4), ArgumentError);
  EXPECT_THROW(layout_thin(cycle_graph(5), 4), ArgumentError);
  PathPowerLayout bad{{0, 0, 1}};
  EXPECT_NE(check_layout(path_graph(3), bad, 3), "");
  PathPowerLayout far{{0, 5, 1}};
  EXPECT_NE(check_layout(path_graph(3), far, 6), "");
}
