#ifndef IUG_LPS_HPP
#define IUG_LPS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iug/graph.hpp"

namespace iug {

using u128 = unsigned __int128;

std::string to_string(u128 value);

namespace number_theory {

bool is_prime(std::uint64_t n);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);
/// Euler's criterion; requires an odd prime modulus not dividing `a`.
bool is_quadratic_residue(std::uint64_t a, std::uint64_t prime);
/// floor(cbrt(x)) for 128-bit inputs.
std::uint64_t icbrt(u128 x);

}  // namespace number_theory

/// Parameters of the non-bipartite LPS graph X^{p,q}.
struct LpsParams {
  std::uint64_t p = 0;
  std::uint64_t q = 0;

  std::uint64_t degree() const { return p + 1; }
  /// q(q^2-1)/2, the order of PSL(2, F_q).
  u128 vertex_count() const;
  /// Throws ArgumentError unless p, q are distinct primes = 1 (mod 4),
  /// q > 2 sqrt(p) and p is a quadratic residue mod q.
  void validate() const;

  friend bool operator==(const LpsParams&, const LpsParams&) = default;
};

struct LpsSearchOptions {
  /// Only q >= min_q are considered.
  std::uint64_t min_q = 0;
  /// Exhausted-search ceiling on q.
  std::uint64_t ceiling = 1'000'000'000'000ull;
};

/// Smallest admissible q with q(q^2-1)/2 >= min_vertices. When
/// residue_class_modulus > 4, q is additionally = 1 (mod residue_class_modulus).
LpsParams find_lps_params(std::uint64_t degree_minus_one, u128 min_vertices,
                          std::uint64_t residue_class_modulus,
                          const LpsSearchOptions& options = {});

/// Quaternion solutions of a^2+b^2+c^2+d^2 = p with a > 0 odd and b, c, d
/// even. There are exactly p+1 of them for p = 1 (mod 4).
std::vector<std::array<int, 4>> lps_quaternions(std::uint64_t p);

/// Graphs above this many vertices are refused by build_lps_graph.
inline constexpr std::uint64_t kMaxBuildVertices = 5'000'000;

/// Cayley graph of PSL(2, F_q) with the p+1 LPS generators. Group elements
/// are scaled so the first non-zero entry (row-major) is 1 and numbered in
/// lexicographic order of (a, b, c, d).
Graph build_lps_graph(const LpsParams& params);

/// Largest |lambda| over the non-trivial adjacency eigenvalues (the degree,
/// and minus the degree for bipartite graphs, are trivial). Lanczos with full
/// reorthogonalisation on the deflated operator.
double second_eigenvalue(const Graph& g, double tolerance = 1e-6,
                         std::size_t max_iterations = 0);

struct ExpanderCertificate {
  std::size_t vertices = 0;
  std::size_t degree = 0;
  bool regular = false;
  bool connected = false;
  bool non_bipartite = false;
  std::optional<std::size_t> girth_found;
  /// (1/2) log_{degree-1}(vertices).
  double girth_bound = 0.0;
  bool girth_ok = false;
  /// Largest non-trivial |eigenvalue|; nullopt when not computable
  /// (irregular, disconnected, or no convergence).
  std::optional<double> second_eigenvalue_bound;
  double ramanujan_bound = 0.0;
  bool ramanujan = false;
  /// Vertex count and degree match the LPS parameters (true when none given).
  bool matches_params = true;
  std::string note;

  bool passed() const {
    return regular && connected && non_bipartite && girth_ok && ramanujan &&
           matches_params;
  }
};

inline constexpr double kRamanujanTolerance = 1e-4;

ExpanderCertificate certify_expander(const Graph& g,
                                     const std::optional<LpsParams>& params = std::nullopt,
                                     double tolerance = 1e-6);

}  // namespace iug

#endif  // IUG_LPS_HPP
