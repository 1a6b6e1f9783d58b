#include <gtest/gtest.h>

#include <random>

#include "iug/error.hpp"
#include "iug/lps.hpp"
#include "iug/walks.hpp"
#include "oracles.hpp"

using namespace iug;

namespace {

using Sets = std::vector<std::vector<Vertex>>;

const Graph& x5_29() {
  static const Graph g = build_lps_graph({5, 29});
  return g;
}

Sets random_sets(std::mt19937_64& rng, std::size_t n, std::size_t q, std::size_t max_size) {
  Sets sets(q);
  std::uniform_int_distribution<std::size_t> size(0, max_size);
  std::uniform_int_distribution<Vertex> vertex(0, static_cast<Vertex>(n - 1));
  for (auto& s : sets) {
    std::size_t k = size(rng);
    for (std::size_t i = 0; i < k; ++i) s.push_back(vertex(rng));
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return sets;
}

}  // namespace

TEST(QExpanding, SpecExamples) {
  Sets empty1(1);
  auto c6 = cycle_graph(6);
  for (Vertex v = 0; v < 6; ++v) EXPECT_FALSE(is_q_expanding(c6, v, empty1, 1));
  EXPECT_EQ(count_q_expanding(c6, empty1, 1).count, 0u);

  auto k5 = complete_graph(5);
  for (Vertex v = 0; v < 5; ++v) EXPECT_TRUE(is_q_expanding(k5, v, empty1, 1));

  Sets all(2);
  for (Vertex v = 0; v < 5; ++v) all[1].push_back(v);
  EXPECT_EQ(count_q_expanding(k5, all, 2).count, 0u);
  EXPECT_FALSE(count_q_expanding(k5, all, 2).lemma_regime);
}

TEST(QExpanding, RejectsMalformedSets) {
  auto k5 = complete_graph(5);
  Sets wrong(1);
  EXPECT_THROW(is_q_expanding(k5, 0, wrong, 2), ArgumentError);
  Sets out_of_range{{7}};
  EXPECT_THROW(is_q_expanding(k5, 0, out_of_range, 1), ArgumentError);
  Sets ok(1);
  EXPECT_THROW(is_q_expanding(k5, 9, ok, 1), ArgumentError);
}

TEST(QExpanding, BudgetError) {
  Sets empty(3);
  EXPECT_THROW(is_q_expanding(complete_graph(30), 0, empty, 3, 100), BudgetError);
}

TEST(QExpanding, AgreesWithNaiveOracle) {
  std::mt19937_64 rng(20240601);
  std::size_t positives = 0, total = 0;
  for (int round = 0; round < 60; ++round) {
    std::uniform_int_distribution<std::size_t> nd(4, 16);
    std::uniform_real_distribution<double> pd(0.15, 0.9);
    std::uniform_int_distribution<std::size_t> qd(1, 3);
    const std::size_t n = nd(rng);
    auto g = oracle::random_graph(rng, n, pd(rng));
    const std::size_t q = qd(rng);
    auto sets = random_sets(rng, n, q, 2);
    for (Vertex v = 0; v < n; ++v) {
      const bool want = oracle::q_expanding(g, v, sets, q);
      EXPECT_EQ(is_q_expanding(g, v, sets, q), want) << "round " << round << " v " << v;
      positives += want;
      ++total;
    }
  }
  // The random mix must exercise both answers.
  EXPECT_GT(positives, 0u);
  EXPECT_LT(positives, total);
}

TEST(QExpanding, DeskLpsGolden) {
  std::mt19937_64 rng(11);
  auto sets = random_sets(rng, x5_29().vertex_count(), 2, 10);
  auto c = count_q_expanding(x5_29(), sets, 2);
  // A 2-step path reaches at most 30 vertices, far below half of 12180.
  EXPECT_EQ(c.count, 0u);
  EXPECT_TRUE(c.lemma_regime);
}

TEST(Schedule, LatestAllowed) {
  EXPECT_FALSE(ConstraintSchedule::latest_allowed(0, 3));
  EXPECT_FALSE(ConstraintSchedule::latest_allowed(5, 3));
  EXPECT_EQ(ConstraintSchedule::latest_allowed(6, 3), 2u);
  EXPECT_EQ(ConstraintSchedule::latest_allowed(8, 3), 2u);
  EXPECT_EQ(ConstraintSchedule::latest_allowed(9, 3), 5u);
}

TEST(Schedule, Validate) {
  ConstraintSchedule s(12);
  s.add(6, 2);
  s.add(6, 2);
  EXPECT_EQ(s.at(6).size(), 1u);
  EXPECT_NO_THROW(s.validate(3, 1));
  s.add(6, 1);
  EXPECT_THROW(s.validate(3, 1), ArgumentError);
  ConstraintSchedule late(12);
  late.add(7, 3);
  EXPECT_THROW(late.validate(3, kUnboundedSigma), ArgumentError);
  EXPECT_NE(s.digest(), late.digest());
  EXPECT_EQ(s.digest().size(), 16u);
}

TEST(WalkMap, SingleBlockIsPath) {
  auto g = cycle_graph(20);
  WalkParams p{20, 5, 1, 5, kUnboundedSigma};
  auto wm = build_walk_map(g, ConstraintSchedule(5), p);
  EXPECT_TRUE(is_path(g, wm.assignment));
}

TEST(WalkMap, DeskLpsUnconstrained) {
  const auto& g = x5_29();
  WalkParams p{g.vertex_count(), walk_step_for(g.vertex_count()), 1, 5, kUnboundedSigma};
  ConstraintSchedule s(3000);
  auto wm = build_walk_map(g, s, p);
  EXPECT_TRUE(verify_walk_map(g, s, p, wm).ok());
  EXPECT_TRUE(is_walk(g, wm.assignment));
}

TEST(WalkMap, ScheduledAvoidance) {
  const auto& g = x5_29();
  const std::size_t q = 5, n = 400;
  WalkParams p{g.vertex_count(), q, 1, 5, kUnboundedSigma};
  ConstraintSchedule s(n);
  for (std::size_t t = 2 * q; t < n; ++t) s.add(t, 0);
  auto wm = build_walk_map(g, s, p);
  auto d = oracle::bfs(g, wm.assignment[0]);
  for (std::size_t t = 2 * q; t < n; ++t) EXPECT_GE(d[wm.assignment[t]], 5) << t;
}

TEST(WalkMap, Deterministic) {
  const auto& g = x5_29();
  WalkParams p{g.vertex_count(), 5, 1, 5, kUnboundedSigma};
  std::mt19937_64 rng(5);
  ConstraintSchedule s(300);
  std::uniform_int_distribution<std::size_t> pick(0, 1000);
  for (std::size_t t = 10; t < 300; ++t) {
    auto hi = *ConstraintSchedule::latest_allowed(t, 5);
    s.add(t, pick(rng) % (hi + 1));
  }
  EXPECT_EQ(build_walk_map(g, s, p), build_walk_map(g, s, p));
}

TEST(WalkMap, MonotoneInSchedule) {
  std::mt19937_64 rng(99);
  const auto& g = x5_29();
  WalkParams p{g.vertex_count(), 5, 1, 5, kUnboundedSigma};
  for (int round = 0; round < 5; ++round) {
    ConstraintSchedule big(200), small(200);
    for (std::size_t t = 10; t < 200; ++t) {
      auto hi = *ConstraintSchedule::latest_allowed(t, 5);
      std::uniform_int_distribution<std::size_t> pick(0, hi);
      for (int k = 0; k < 3; ++k) {
        auto tp = pick(rng);
        big.add(t, tp);
        if (k == 0) small.add(t, tp);
      }
    }
    auto a = build_walk_map(g, big, p);
    EXPECT_TRUE(verify_walk_map(g, big, p, a).ok());
    EXPECT_NO_THROW(build_walk_map(g, small, p));
  }
}

TEST(WalkMap, CapacityExceeded) {
  auto g = cycle_graph(8);
  WalkParams p{8, 1, 1, 5, kUnboundedSigma};
  EXPECT_THROW(build_walk_map(g, ConstraintSchedule(9), p), Error);
}

TEST(VerifyWalkMap, DetectsFaults) {
  const auto& g = x5_29();
  const std::size_t q = 5, n = 100;
  WalkParams p{g.vertex_count(), q, 1, 5, kUnboundedSigma};
  ConstraintSchedule s(n);
  s.add(50, 3);
  auto wm = build_walk_map(g, s, p);
  ASSERT_TRUE(verify_walk_map(g, s, p, wm).ok());

  auto f2 = wm;
  f2.assignment[50] = wm.assignment[3];
  auto r2 = verify_walk_map(g, s, p, f2);
  ASSERT_EQ(r2.count(WalkProperty::kF2), 1u);
  for (const auto& v : r2.violations)
    if (v.property == WalkProperty::kF2) EXPECT_EQ(v.where, 50u);

  auto f3 = wm;
  f3.assignment[12] = f3.assignment[10];
  auto r3 = verify_walk_map(g, s, p, f3);
  EXPECT_GE(r3.count(WalkProperty::kF3), 1u);

  auto shape = wm;
  shape.assignment.pop_back();
  EXPECT_GE(verify_walk_map(g, s, p, shape).count(WalkProperty::kShape), 1u);
}

TEST(VerifyWalkMap, UsageCap) {
  auto g = cycle_graph(4);
  WalkParams p{4, 1, 2, 5, kUnboundedSigma};
  WalkMap wm;
  wm.assignment = {0, 1, 0, 1, 0};
  wm.schedule = ConstraintSchedule(5);
  EXPECT_EQ(verify_walk_map(g, wm.schedule, p, wm).count(WalkProperty::kF1), 1u);
}

TEST(WalkParams, PaperConstants) {
  auto p = paper_walk_params(12180, 1000, 6);
  EXPECT_EQ(p.step, 5u);
  EXPECT_EQ(p.usage_cap, 40u);
  EXPECT_EQ(p.avoid_radius, 5u);
  EXPECT_EQ(p.sigma_cap, 12180u / (160u * 6 * 6 * 6 * 6));
  EXPECT_EQ(walk_step_for(10), 1u);
  EXPECT_EQ(walk_step_for(11), 2u);
  WalkParams bad{10, 0, 1, 5, 0};
  EXPECT_THROW(bad.validate(), ArgumentError);
}
