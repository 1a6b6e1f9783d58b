#include <gtest/gtest.h>

#include "iug/error.hpp"
#include "iug/serialize.hpp"

using namespace iug;

TEST(Serialize, GraphRoundTrip) {
  auto g = cycle_graph(7);
  json j = g;
  EXPECT_EQ(j.at("n"), 7);
  EXPECT_EQ(j.get<Graph>(), g);
  EXPECT_THROW(json::parse(R"({"n": 3})").get<Graph>(), ParseError);
  EXPECT_THROW(json::parse(R"({"n": 2, "edges": [[0, 5]]})").get<Graph>(), Error);
}

TEST(Serialize, ParamsRoundTripDesk) {
  auto p = make_gamma_params(3, 49, Profile::kDesk);
  auto j = params_to_json(p);
  EXPECT_EQ(j.at("d"), 6);
  EXPECT_EQ(j.at("label_bits"), 10440);
  auto back = params_from_json(json::parse(j.dump()));
  EXPECT_EQ(back.digest(), p.digest());
  EXPECT_EQ(back.delta, 3u);
}

TEST(Serialize, ParamsRoundTripPaper) {
  auto p = make_gamma_params(4, 1000, Profile::kPaper);
  auto back = params_from_json(params_to_json(p));
  EXPECT_EQ(back.m, p.m);
  EXPECT_EQ(back.ell_z, p.ell_z);
  EXPECT_EQ(back.digest(), p.digest());
  EXPECT_THROW(params_from_json(json::parse(R"({"delta": 3})")), ParseError);
}

TEST(Serialize, EmbeddingRoundTrip) {
  auto p = make_gamma_params(2, 10, Profile::kDesk);
  auto h = cycle_graph(10);
  auto r = embed(h, p);
  auto j = json::parse(embedding_to_json(r).dump());
  EXPECT_EQ(j.at("schema"), kSchemaVersion);
  EXPECT_EQ(j.at("kind"), "embedding");
  EXPECT_TRUE(j.at("certificate").at("passed").get<bool>());
  auto stored = embedding_from_json(j);
  EXPECT_EQ(stored.params_digest, r.params_digest);
  ASSERT_EQ(stored.labels.size(), 10u);
  for (std::size_t k = 0; k < 10; ++k)
    EXPECT_EQ(decode_label(label_from_hex(stored.labels[k]), stored.params), r.gamma[k]);
  auto bare = embedding_to_json(r, false);
  EXPECT_FALSE(bare.contains("gamma"));
  EXPECT_THROW(embedding_from_json(json::parse(R"({"schema": 1})")), ParseError);
}

TEST(Serialize, SweepReportRoundTrip) {
  SweepReport r;
  r.delta = 3;
  r.sizes = {3, 4};
  r.total = 15;
  r.embedded = 14;
  r.pairs_checked = 70;
  r.params_digest = "abc";
  r.failures.push_back({2, 4, {{0, 1}}, "walk_stuck: x", {"round 0: walk_stuck"}});
  json j = r;
  auto back = j.get<SweepReport>();
  EXPECT_EQ(back.total, 15u);
  EXPECT_EQ(back.embedded, 14u);
  ASSERT_EQ(back.failures.size(), 1u);
  EXPECT_EQ(back.failures[0].edges, (std::vector<Edge>{{0, 1}}));
  EXPECT_EQ(back.failures[0].trail, r.failures[0].trail);
  EXPECT_FALSE(back.ok());
}

TEST(Serialize, Reports) {
  json fuzz = property_fuzz(FuzzTarget::kDecomposition, 3, 4);
  EXPECT_EQ(fuzz.at("target"), "decomposition");
  json size = size_report({2}, {100});
  EXPECT_EQ(size.at("rows").size(), 1u);
  json walk = WalkReport{};
  EXPECT_TRUE(walk.at("ok").get<bool>());
}
