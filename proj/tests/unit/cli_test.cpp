#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "iug/graph.hpp"
#include "iug/serialize.hpp"

using namespace iug;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "iug");
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("iug_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const Graph& g) {
    auto path = (dir_ / name).string();
    std::ofstream(path) << format_edge_list(g);
    return path;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, Help) {
  auto r = invoke({"--help"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.out.find("embed"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(invoke({}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, cli::kExitUsage);
  auto r = invoke({"decompose", "--input", path("missing.txt"), "--delta", "2"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("\"kind\""), std::string::npos);
}

TEST_F(CliTest, BuildExpander) {
  auto edges = path("x.txt");
  auto r = invoke({"build-expander", "--p", "5", "--q", "29", "--certify", "--write-edges", edges});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j.at("kind"), "expander");
  EXPECT_EQ(load_edge_list(edges).vertex_count(), 12180u);
  EXPECT_EQ(invoke({"build-expander", "--p", "5", "--q", "13"}).code, cli::kExitUsage);
}

TEST_F(CliTest, DecomposeAndLayout) {
  auto in = write("k4.txt", complete_graph(4));
  auto r = invoke({"decompose", "--input", in, "--delta", "3"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j.at("decomposition").at("parts").size(), 3u);
  auto c = write("c7.txt", cycle_graph(7));
  auto l = invoke({"layout", "--input", c, "--table"});
  EXPECT_EQ(l.code, cli::kExitOk) << l.err;
  EXPECT_EQ(invoke({"layout", "--input", in}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"decompose", "--input", in, "--delta", "2"}).code, cli::kExitUsage);
}

TEST_F(CliTest, GammaParams) {
  auto r = invoke({"gamma-params", "--delta", "3", "--n", "1000000", "--profile", "paper"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("202199334117814402155110400000"), std::string::npos);
  auto b = invoke({"gamma-params", "--delta", "3", "--n", "100", "--profile", "paper", "--build"});
  EXPECT_EQ(b.code, cli::kExitUsage);
  EXPECT_NE(b.err.find("infeasible_build"), std::string::npos);
  auto d = invoke({"gamma-params", "--delta", "3", "--n", "49", "--profile", "desk"});
  ASSERT_EQ(d.code, cli::kExitOk) << d.err;
  EXPECT_EQ(json::parse(d.out).at("params").at("label_bits"), 10440);
}

TEST_F(CliTest, EmbedVerifyAndTamper) {
  auto in = write("c6.txt", cycle_graph(6));
  auto out = path("emb.json");
  auto r = invoke({"embed", "--input", in, "--delta", "2", "--emit-labels", "-o", out});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  auto v = invoke({"verify", "--embedding", out, "--input", in});
  EXPECT_EQ(v.code, cli::kExitOk) << v.err << v.out;

  auto j = json::parse(std::ifstream(out));
  std::string label = j["gamma"][1];
  // The first digit after the 8-digit header holds the top bits of x_1.
  label[8] = label[8] == '0' ? '1' : '0';
  j["gamma"][1] = label;
  auto tampered = path("bad.json");
  std::ofstream(tampered) << j.dump();
  auto t = invoke({"verify", "--embedding", tampered, "--input", in});
  EXPECT_EQ(t.code, cli::kExitPropertyFailure);

  auto wrong = write("k4.txt", complete_graph(4));
  EXPECT_EQ(invoke({"embed", "--input", wrong, "--delta", "2"}).code, cli::kExitUsage);
}

TEST_F(CliTest, Sweep) {
  auto r = invoke({"sweep", "--n", "4", "--delta", "2", "--table"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  auto j = invoke({"sweep", "--n", "3", "--delta", "3", "--cache", path("cache")});
  ASSERT_EQ(j.code, cli::kExitOk) << j.err;
  EXPECT_EQ(json::parse(j.out).at("report").at("total"), 1u + 2u + 4u);
}

TEST_F(CliTest, SizeReportAndFuzz) {
  auto s = invoke({"size-report", "--delta", "2,3", "--n-list", "1e2,1e4"});
  ASSERT_EQ(s.code, cli::kExitOk) << s.err;
  EXPECT_EQ(json::parse(s.out).at("report").at("rows").size(), 4u);
  auto f = invoke({"fuzz", "--target", "decomposition", "--seed", "5", "--rounds", "5"});
  EXPECT_EQ(f.code, cli::kExitOk) << f.err;
  EXPECT_EQ(invoke({"fuzz", "--target", "nothing"}).code, cli::kExitUsage);
}
