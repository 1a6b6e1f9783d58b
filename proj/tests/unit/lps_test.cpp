#include <gtest/gtest.h>

#include <cmath>

#include "iug/error.hpp"
#include "iug/lps.hpp"
#include "oracles.hpp"

using namespace iug;
using namespace iug::number_theory;

TEST(Arithmetic, Primes) {
  std::vector<std::uint64_t> small;
  for (std::uint64_t n = 0; n < 60; ++n)
    if (is_prime(n)) small.push_back(n);
  EXPECT_EQ(small, (std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59}));
  EXPECT_TRUE(is_prime(1'000'000'007ull));
  EXPECT_FALSE(is_prime(3215031751ull));  // strong pseudoprime to bases 2, 3, 5, 7
  EXPECT_EQ(pow_mod(3, 200, 1'000'000'007ull), 136318165ull);
}

TEST(Arithmetic, QuadraticResidue) {
  EXPECT_TRUE(is_quadratic_residue(5, 29));
  EXPECT_FALSE(is_quadratic_residue(5, 13));
  EXPECT_TRUE(is_quadratic_residue(17, 13));
  for (std::uint64_t a = 1; a < 23; ++a) {
    bool square = false;
    for (std::uint64_t x = 1; x < 23; ++x) square |= x * x % 23 == a;
    EXPECT_EQ(is_quadratic_residue(a, 23), square) << a;
  }
}

TEST(Arithmetic, IntegerCubeRoot) {
  EXPECT_EQ(icbrt(0), 0u);
  EXPECT_EQ(icbrt(26), 2u);
  EXPECT_EQ(icbrt(27), 3u);
  u128 big = u128{1} << 90;
  EXPECT_EQ(icbrt(big), std::uint64_t{1} << 30);
  EXPECT_EQ(icbrt(big - 1), (std::uint64_t{1} << 30) - 1);
}

TEST(Lps, ParameterValidation) {
  EXPECT_NO_THROW((LpsParams{5, 29}.validate()));
  EXPECT_THROW((LpsParams{5, 13}.validate()), ArgumentError);  // 5 is not a square mod 13
  EXPECT_THROW((LpsParams{7, 29}.validate()), ArgumentError);
  EXPECT_THROW((LpsParams{13, 5}.validate()), ArgumentError);
  EXPECT_EQ(to_string((LpsParams{5, 29}.vertex_count())), "12180");
}

TEST(Lps, PrimeSearch) {
  auto p = find_lps_params(5, 1, 4);
  EXPECT_EQ(p.q, 29u);
  auto big = find_lps_params(5, 20000, 4);
  EXPECT_GE(big.vertex_count(), u128{20000});
  EXPECT_NO_THROW(big.validate());
  auto res = find_lps_params(5, 1, 16);
  EXPECT_EQ(res.q % 16, 1u);
  LpsSearchOptions opt;
  opt.ceiling = 20;
  EXPECT_THROW(find_lps_params(5, 1, 4, opt), ExhaustedSearchError);
}

TEST(Lps, Quaternions) {
  for (std::uint64_t p : {5ull, 13ull, 17ull, 29ull}) {
    auto qs = lps_quaternions(p);
    EXPECT_EQ(qs.size(), p + 1);
    for (auto [a, b, c, d] : qs) {
      EXPECT_EQ(static_cast<std::uint64_t>(a * a + b * b + c * c + d * d), p);
      EXPECT_GT(a, 0);
      EXPECT_EQ(a % 2, 1);
      EXPECT_EQ(b % 2, 0);
    }
  }
}

TEST(Lps, X5_29Golden) {
  auto g = build_lps_graph({5, 29});
  EXPECT_EQ(g.vertex_count(), 12180u);
  EXPECT_EQ(g.regular_degree(), 6u);
  EXPECT_EQ(girth(g), 9u);
  auto cert = certify_expander(g, LpsParams{5, 29});
  EXPECT_TRUE(cert.passed()) << cert.note;
  ASSERT_TRUE(cert.second_eigenvalue_bound.has_value());
  EXPECT_NEAR(*cert.second_eigenvalue_bound, 4.44201644259, 1e-5);
  EXPECT_LE(*cert.second_eigenvalue_bound, 2 * std::sqrt(5.0) + kRamanujanTolerance);
}

TEST(Lps, EigenvalueMatchesDenseSolver) {
  auto g = build_lps_graph({17, 13});
  EXPECT_EQ(g.vertex_count(), 1092u);
  EXPECT_EQ(g.regular_degree(), 18u);
  const double dense = oracle::dense_second_eigenvalue(g);
  EXPECT_NEAR(second_eigenvalue(g, 1e-9), dense, 1e-6);
  EXPECT_LE(dense, 2 * std::sqrt(17.0) + 1e-9);
}

TEST(Lps, EigenvalueSmallGraphs) {
  EXPECT_NEAR(second_eigenvalue(cycle_graph(5), 1e-10), (std::sqrt(5.0) + 1) / 2, 1e-7);
  EXPECT_NEAR(second_eigenvalue(cycle_graph(6), 1e-10), 1.0, 1e-7);
  EXPECT_NEAR(second_eigenvalue(complete_graph(6), 1e-10), 1.0, 1e-7);
}

TEST(Lps, BipartiteCaseIsSuppressedNotHidden) {
  // p not a square mod q gives the bipartite PGL graph, refused up front.
  EXPECT_THROW(build_lps_graph({5, 13}), ArgumentError);
}

TEST(Lps, CertificateRejectsNonExpander) {
  auto cert = certify_expander(cycle_graph(40));
  EXPECT_FALSE(cert.passed());
  EXPECT_FALSE(cert.ramanujan && cert.non_bipartite);
}
