#include "iug/lps.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "iug/error.hpp"

namespace iug {

std::string to_string(u128 value) {
  if (value == 0) return "0";
  std::string digits;
  while (value > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

namespace number_theory {

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % mod);
}

}  // namespace

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1u) result = mul_mod(result, base, mod);
    base = mul_mod(base, base, mod);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                              19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1u) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for all 64-bit integers.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_quadratic_residue(std::uint64_t a, std::uint64_t prime) {
  if (prime < 3 || a % prime == 0) {
    throw ArgumentError("quadratic residue test needs an odd prime not dividing a");
  }
  return pow_mod(a, (prime - 1) / 2, prime) == 1;
}

std::uint64_t icbrt(u128 x) {
  std::uint64_t lo = 0;
  std::uint64_t hi = 1;
  while (static_cast<u128>(hi) * hi * hi <= x) hi *= 2;
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (static_cast<u128>(mid) * mid * mid <= x) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace number_theory

u128 LpsParams::vertex_count() const {
  const u128 qq = q;
  return qq * (qq * qq - 1) / 2;
}

void LpsParams::validate() const {
  using number_theory::is_prime;
  if (!is_prime(p) || p % 4 != 1) {
    throw ArgumentError("p = " + std::to_string(p) + " must be a prime = 1 (mod 4)");
  }
  if (!is_prime(q) || q % 4 != 1) {
    throw ArgumentError("q = " + std::to_string(q) + " must be a prime = 1 (mod 4)");
  }
  if (p == q) throw ArgumentError("p and q must be distinct");
  if (static_cast<u128>(q) * q <= static_cast<u128>(4) * p) {
    throw ArgumentError("q must exceed 2 sqrt(p)");
  }
  if (!number_theory::is_quadratic_residue(p % q, q)) {
    throw ArgumentError("p = " + std::to_string(p) +
                        " is not a quadratic residue mod q = " + std::to_string(q));
  }
}

LpsParams find_lps_params(std::uint64_t degree_minus_one, u128 min_vertices,
                          std::uint64_t residue_class_modulus,
                          const LpsSearchOptions& options) {
  const std::uint64_t p = degree_minus_one;
  if (!number_theory::is_prime(p) || p % 4 != 1) {
    throw ArgumentError("degree-1 = " + std::to_string(p) +
                        " must be a prime = 1 (mod 4)");
  }
  if (min_vertices < 1) throw ArgumentError("min_vertices must be >= 1");
  std::uint64_t step = 4;
  if (residue_class_modulus > 4) {
    step = std::lcm<std::uint64_t>(4, residue_class_modulus);
  }
  std::uint64_t start = std::max<std::uint64_t>(
      options.min_q, number_theory::icbrt(2 * min_vertices));
  start = std::max<std::uint64_t>(start, 2);
  // First candidate = 1 (mod step) at or above start.
  std::uint64_t q = start - (start % step) + 1;
  if (q < start) q += step;
  for (; q <= options.ceiling; q += step) {
    if (q == p) continue;
    if (static_cast<u128>(q) * q <= static_cast<u128>(4) * p) continue;
    const LpsParams candidate{p, q};
    if (candidate.vertex_count() < min_vertices) continue;
    if (!number_theory::is_prime(q)) continue;
    if (!number_theory::is_quadratic_residue(p % q, q)) continue;
    return candidate;
  }
  throw ExhaustedSearchError(
      "no admissible q <= " + std::to_string(options.ceiling) + " for p = " +
          std::to_string(p) + " and " + to_string(min_vertices) + " vertices",
      options.ceiling);
}

std::vector<std::array<int, 4>> lps_quaternions(std::uint64_t p) {
  const int bound = static_cast<int>(std::sqrt(static_cast<double>(p))) + 1;
  const long long target = static_cast<long long>(p);
  std::vector<std::array<int, 4>> out;
  for (int a = 1; a <= bound; a += 2) {
    for (int b = -bound - (bound % 2); b <= bound; b += 2) {
      for (int c = -bound - (bound % 2); c <= bound; c += 2) {
        for (int d = -bound - (bound % 2); d <= bound; d += 2) {
          const long long s = 1LL * a * a + 1LL * b * b + 1LL * c * c + 1LL * d * d;
          if (s == target) out.push_back({a, b, c, d});
        }
      }
    }
  }
  return out;
}

namespace {

/// 2x2 matrix over F_q, row-major.
using Mat = std::array<std::int64_t, 4>;

struct Field {
  std::int64_t q;
  std::vector<std::int64_t> inverse;
  std::vector<char> nonzero_square;

  explicit Field(std::int64_t modulus) : q(modulus), inverse(modulus, 0), nonzero_square(modulus, 0) {
    for (std::int64_t x = 1; x < q; ++x) {
      inverse[x] = static_cast<std::int64_t>(
          number_theory::pow_mod(static_cast<std::uint64_t>(x), q - 2, q));
      nonzero_square[x * x % q] = 1;
    }
  }

  std::int64_t reduce(std::int64_t x) const {
    x %= q;
    return x < 0 ? x + q : x;
  }

  Mat multiply(const Mat& a, const Mat& b) const {
    return {reduce(a[0] * b[0] + a[1] * b[2]), reduce(a[0] * b[1] + a[1] * b[3]),
            reduce(a[2] * b[0] + a[3] * b[2]), reduce(a[2] * b[1] + a[3] * b[3])};
  }

  /// Projective representative: first non-zero entry scaled to 1.
  Mat canonical(Mat m) const {
    std::int64_t lead = 0;
    for (std::int64_t x : m) {
      if (x != 0) {
        lead = x;
        break;
      }
    }
    if (lead == 0) throw IntegrityError("zero matrix in PSL construction");
    const std::int64_t s = inverse[lead];
    for (auto& x : m) x = x * s % q;
    return m;
  }

  std::int64_t det(const Mat& m) const { return reduce(m[0] * m[3] - m[1] * m[2]); }
};

/// Dense index of canonical matrices: (0,1,c,d) -> c*q+d, (1,b,c,d) -> q^2 + (b*q+c)*q+d.
std::size_t slot(const Mat& m, std::int64_t q) {
  if (m[0] == 0) return static_cast<std::size_t>(m[2] * q + m[3]);
  return static_cast<std::size_t>(q * q + (m[1] * q + m[2]) * q + m[3]);
}

}  // namespace

Graph build_lps_graph(const LpsParams& params) {
  params.validate();
  if (params.vertex_count() > kMaxBuildVertices) {
    throw InfeasibleBuildError("X^{" + std::to_string(params.p) + "," +
                               std::to_string(params.q) + "} would have " +
                               to_string(params.vertex_count()) +
                               " vertices; build limit is " +
                               std::to_string(kMaxBuildVertices));
  }
  const auto q = static_cast<std::int64_t>(params.q);
  const Field field(q);

  std::int64_t sqrt_minus_one = -1;
  for (std::int64_t x = 1; x < q; ++x) {
    if (x * x % q == q - 1) {
      sqrt_minus_one = x;
      break;
    }
  }
  if (sqrt_minus_one < 0) throw IntegrityError("no square root of -1 mod q");

  const auto quaternions = lps_quaternions(params.p);
  if (quaternions.size() != params.p + 1) {
    throw IntegrityError("found " + std::to_string(quaternions.size()) +
                         " quaternion generators, expected p+1 = " +
                         std::to_string(params.p + 1));
  }
  std::vector<Mat> generators;
  generators.reserve(quaternions.size());
  const std::int64_t i = sqrt_minus_one;
  for (const auto& [a, b, c, d] : quaternions) {
    const Mat m{field.reduce(a + b * i), field.reduce(c + d * i),
                field.reduce(-c + d * i), field.reduce(a - b * i)};
    generators.push_back(field.canonical(m));
  }
  {
    auto sorted = generators;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw IntegrityError("LPS generators are not distinct in PSL(2,q)");
    }
    for (const Mat& g : generators) {
      // Adjugate is the inverse up to a scalar.
      const Mat inv = field.canonical({g[3], field.reduce(-g[1]), field.reduce(-g[2]), g[0]});
      if (!std::binary_search(sorted.begin(), sorted.end(), inv)) {
        throw IntegrityError("LPS generator set is not closed under inverses");
      }
    }
  }

  // Canonical representatives with non-zero square determinant, in
  // lexicographic order.
  std::vector<Mat> elements;
  elements.reserve(static_cast<std::size_t>(params.vertex_count()));
  for (std::int64_t c = 0; c < q; ++c) {
    for (std::int64_t d = 0; d < q; ++d) {
      const Mat m{0, 1, c, d};
      if (field.nonzero_square[field.det(m)]) elements.push_back(m);
    }
  }
  for (std::int64_t b = 0; b < q; ++b) {
    for (std::int64_t c = 0; c < q; ++c) {
      for (std::int64_t d = 0; d < q; ++d) {
        const Mat m{1, b, c, d};
        if (field.nonzero_square[field.det(m)]) elements.push_back(m);
      }
    }
  }
  if (elements.size() != params.vertex_count()) {
    throw IntegrityError("enumerated " + std::to_string(elements.size()) +
                         " group elements, expected " +
                         to_string(params.vertex_count()));
  }

  std::vector<std::uint32_t> index(static_cast<std::size_t>(q * q * q + q * q), kUnreached);
  for (std::size_t k = 0; k < elements.size(); ++k) {
    index[slot(elements[k], q)] = static_cast<std::uint32_t>(k);
  }

  std::vector<std::vector<Vertex>> adjacency(elements.size());
  for (std::size_t k = 0; k < elements.size(); ++k) {
    auto& row = adjacency[k];
    row.reserve(generators.size());
    for (const Mat& s : generators) {
      const Mat product = field.canonical(field.multiply(elements[k], s));
      const std::uint32_t target = index[slot(product, q)];
      if (target == kUnreached) {
        throw IntegrityError("product left the square-determinant subgroup");
      }
      row.push_back(target);
    }
  }
  Graph g = Graph::from_adjacency(std::move(adjacency));
  if (g.regular_degree() != params.p + 1) {
    throw IntegrityError("LPS graph is not (p+1)-regular");
  }
  return g;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

double second_eigenvalue(const Graph& g, double tolerance,
                         std::size_t max_iterations) {
  if (tolerance <= 0) throw ArgumentError("tolerance must be positive");
  const auto degree = g.regular_degree();
  if (!degree) throw ArgumentError("second_eigenvalue needs a regular graph");
  if (!is_connected(g)) throw ArgumentError("second_eigenvalue needs a connected graph");
  const std::size_t n = g.vertex_count();

  // Trivial eigenvectors: constant, plus the bipartition sign vector.
  std::vector<Eigen::VectorXd> trivial;
  trivial.push_back(Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n))));
  if (is_bipartite(g)) {
    std::vector<int> side(n, -1);
    side[0] = 0;
    std::vector<Vertex> queue{0};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (Vertex w : g.neighbors(queue[head])) {
        if (side[w] < 0) {
          side[w] = 1 - side[queue[head]];
          queue.push_back(w);
        }
      }
    }
    Eigen::VectorXd s(n);
    for (std::size_t v = 0; v < n; ++v) s[v] = side[v] ? -1.0 : 1.0;
    trivial.push_back(s / std::sqrt(static_cast<double>(n)));
  }
  const std::size_t dimension = n - trivial.size();
  if (dimension == 0) return 0.0;

  auto project = [&trivial](Eigen::VectorXd& x) {
    for (const auto& t : trivial) x -= t.dot(x) * t;
  };
  auto apply = [&g, n](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    for (std::size_t v = 0; v < n; ++v) {
      double sum = 0.0;
      for (Vertex w : g.neighbors(static_cast<Vertex>(v))) sum += x[w];
      y[v] = sum;
    }
  };

  std::size_t budget = max_iterations == 0 ? std::min<std::size_t>(dimension, 800) : max_iterations;
  budget = std::min(budget, dimension);

  std::uint64_t seed = 0x5eed5eedull ^ g.fingerprint();
  Eigen::VectorXd v(n);
  for (std::size_t k = 0; k < n; ++k) {
    v[k] = static_cast<double>(splitmix64(seed) >> 11) * 0x1.0p-53 - 0.5;
  }
  project(v);
  v.normalize();

  std::vector<Eigen::VectorXd> basis;
  basis.reserve(budget);
  std::vector<double> alpha;
  std::vector<double> beta;
  Eigen::VectorXd w(n);
  double estimate = 0.0;
  double previous = -1.0;
  std::size_t stable = 0;
  for (std::size_t k = 0; k < budget; ++k) {
    basis.push_back(v);
    apply(v, w);
    project(w);
    const double a = v.dot(w);
    alpha.push_back(a);
    w -= a * v;
    if (k > 0) w -= beta.back() * basis[k - 1];
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) w -= b.dot(w) * b;
    }
    const double b = w.norm();

    const std::size_t m = alpha.size();
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd sub(m > 0 ? m - 1 : 0);
    for (std::size_t r = 0; r + 1 < m; ++r) sub[r] = beta[r];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const auto& theta = tri.eigenvalues();
    const auto& vectors = tri.eigenvectors();
    const double residual_low = std::abs(b * vectors(m - 1, 0));
    const double residual_high = std::abs(b * vectors(m - 1, m - 1));
    estimate = std::max(std::abs(theta[0]), std::abs(theta[m - 1]));

    const bool exhausted = b < 1e-12 || m == dimension;
    const bool residual_small = residual_low <= tolerance && residual_high <= tolerance;
    if (std::abs(estimate - previous) <= tolerance * 1e-2) {
      ++stable;
    } else {
      stable = 0;
    }
    previous = estimate;
    if (exhausted || residual_small || stable >= 25) return estimate;

    beta.push_back(b);
    v = w / b;
  }
  throw ConvergenceError("Lanczos did not converge within " + std::to_string(budget) +
                             " iterations",
                         estimate);
}

ExpanderCertificate certify_expander(const Graph& g,
                                     const std::optional<LpsParams>& params,
                                     double tolerance) {
  ExpanderCertificate cert;
  cert.vertices = g.vertex_count();
  const auto degree = g.regular_degree();
  cert.regular = degree.has_value();
  cert.degree = degree.value_or(g.max_degree());
  cert.connected = is_connected(g);
  cert.non_bipartite = !is_bipartite(g);
  cert.girth_found = girth(g);
  if (cert.degree >= 3 && cert.vertices > 1) {
    cert.girth_bound = 0.5 * std::log(static_cast<double>(cert.vertices)) /
                       std::log(static_cast<double>(cert.degree - 1));
  }
  cert.girth_ok = !cert.girth_found.has_value() ||
                  static_cast<double>(*cert.girth_found) >= std::ceil(cert.girth_bound - 1e-9);
  cert.ramanujan_bound =
      cert.degree >= 1 ? 2.0 * std::sqrt(static_cast<double>(cert.degree) - 1.0) : 0.0;
  if (cert.regular && cert.connected) {
    try {
      cert.second_eigenvalue_bound = second_eigenvalue(g, tolerance);
      cert.ramanujan = *cert.second_eigenvalue_bound <= cert.ramanujan_bound + kRamanujanTolerance;
    } catch (const ConvergenceError& e) {
      cert.note = e.what();
    }
  } else {
    cert.note = cert.regular ? "disconnected: eigenvalue check skipped"
                             : "irregular: eigenvalue check skipped";
  }
  if (params) {
    cert.matches_params = static_cast<u128>(cert.vertices) == params->vertex_count() &&
                          cert.regular && cert.degree == params->degree();
  }
  return cert;
}

}  // namespace iug
