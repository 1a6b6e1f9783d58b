#ifndef IUG_GAMMA_HPP
#define IUG_GAMMA_HPP

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iug/graph.hpp"
#include "iug/lps.hpp"

namespace iug {

/// Sorted radius-4 neighbourhoods of a fixed graph, computed on first use.
/// rho(v, w) is the position of w in v's neighbourhood, which realises the
/// ordering rho_v of N_{G^4}(v) onto an initial segment of the integers.
class BallIndex {
 public:
  explicit BallIndex(std::shared_ptr<const Graph> g, std::size_t radius = 4);

  const Graph& graph() const noexcept { return *g_; }
  std::size_t radius() const noexcept { return radius_; }

  const std::vector<Vertex>& neighbourhood(Vertex v) const;
  /// {v, w} is an edge of the radius-th power.
  bool adjacent(Vertex v, Vertex w) const;
  std::optional<std::size_t> rho(Vertex v, Vertex w) const;
  std::size_t max_neighbourhood() const;

 private:
  std::shared_ptr<const Graph> g_;
  std::size_t radius_;
  std::unique_ptr<std::once_flag[]> once_;
  mutable std::vector<std::vector<Vertex>> balls_;
};

enum class Profile { kPaper, kDesk };

std::string to_string(Profile p);
Profile parse_profile(const std::string& name);

/// Count of the form mantissa * 2^exponent2 (the subset coordinates alone
/// contribute 2^{(4d^4+1)(Delta-1)}).
struct BigCount {
  mpz_class mantissa = 0;
  std::uint64_t exponent2 = 0;

  double log10() const;
  /// Exact decimal when the value has at most `max_digits` digits, otherwise
  /// a scientific rendering "a.bcdEk".
  std::string to_string(std::size_t max_digits = 200) const;
};

struct GammaOverrides {
  /// DESK: the expanders are LPS graphs X^{p,q} with degree d = p + 1.
  std::uint64_t p = 5;
  /// DESK: m = ceil(m_multiplier * sqrt(n)).
  double m_multiplier = 1.0;
  /// DESK: R_z has at least this many vertices.
  std::uint64_t z_target = 1;
  /// Lower bounds on the LPS prime q (used to grow the expanders on retry).
  std::uint64_t rm_min_q = 0;
  std::uint64_t rz_min_q = 0;
  /// Residue modulus passed to the prime search for R_m.
  std::uint64_t rm_residue_modulus = 4;
  /// User-supplied expanders (DESK); they must pass certify_expander.
  std::shared_ptr<const Graph> r_m;
  std::shared_ptr<const Graph> r_z;
  /// Skip the eigenvalue/girth certification of built LPS graphs.
  bool skip_certification = false;
  /// PAPER: request materialised expanders (always refused).
  bool build = false;
};

struct GammaParams {
  std::size_t delta = 0;
  std::uint64_t n = 0;
  Profile profile = Profile::kDesk;
  std::uint64_t d = 0;
  mpz_class z = 0;
  mpz_class m = 0;
  std::optional<LpsParams> rm_params;
  std::optional<LpsParams> rz_params;
  /// |V(R_m)| and |V(R_z)|.
  mpz_class ell_m = 0;
  mpz_class ell_z = 0;
  /// Materialised only in the DESK profile.
  std::shared_ptr<const Graph> r_m;
  std::shared_ptr<const Graph> r_z;
  std::shared_ptr<const BallIndex> rho;     // radius-4 index of R_m
  std::shared_ptr<const BallIndex> z_ball;  // radius-4 index of R_z
  std::optional<ExpanderCertificate> rm_certificate;
  std::optional<ExpanderCertificate> rz_certificate;
  GammaOverrides overrides;

  /// 4 d^4; subsets live in {0, ..., 4d^4}.
  std::uint64_t subset_universe() const { return 4 * d * d * d * d; }
  std::size_t subset_width() const { return static_cast<std::size_t>(subset_universe() + 1); }
  bool materialised() const { return r_m != nullptr; }
  std::size_t rm_size() const;
  std::size_t rz_size() const;
  /// Hex digest of the defining constants and expander fingerprints.
  std::string digest() const;
};

/// Constants and expanders for Gamma(delta, n). DESK builds certified LPS
/// graphs (cached per process); PAPER computes the literal constants only.
GammaParams make_gamma_params(std::size_t delta, std::uint64_t n, Profile profile,
                              const GammaOverrides& overrides = {});

/// Fixed-width subset of {0, ..., width-1}.
class SubsetBits {
 public:
  SubsetBits() = default;
  explicit SubsetBits(std::size_t width) : width_(width), words_((width + 63) / 64, 0) {}

  std::size_t width() const noexcept { return width_; }
  bool test(std::size_t i) const { return i < width_ && ((words_[i / 64] >> (i % 64)) & 1u); }
  void set(std::size_t i);
  void reset(std::size_t i);
  std::size_t count() const;
  bool is_subset_of(const SubsetBits& other) const;
  std::vector<std::size_t> members() const;

  friend bool operator==(const SubsetBits&, const SubsetBits&) = default;

 private:
  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

struct GammaBlock {
  Vertex x = 0;
  SubsetBits subset;
  Vertex u = 0;
  friend bool operator==(const GammaBlock&, const GammaBlock&) = default;
};

/// (x_1, (x_2, X_2, u_2), ..., (x_Delta, X_Delta, u_Delta)).
struct GammaVertex {
  Vertex x1 = 0;
  std::vector<GammaBlock> blocks;
  friend bool operator==(const GammaVertex&, const GammaVertex&) = default;
};

/// Throws ArgumentError unless the vertex fits the (materialised) params.
void check_gamma_vertex(const GammaVertex& v, const GammaParams& params);

/// Smallest witness (j, i), 1-based with j < i, of adjacency in Gamma.
std::optional<std::pair<std::size_t, std::size_t>> gamma_witness(const GammaVertex& a,
                                                                 const GammaVertex& b,
                                                                 const GammaParams& params);

bool gamma_adjacent(const GammaVertex& a, const GammaVertex& b, const GammaParams& params);

/// |V(R_m)| * (|V(R_m)| * 2^{4d^4+1} * |V(R_z)|)^{Delta-1}.
BigCount gamma_vertex_count(const GammaParams& params);

struct LabelLayout {
  std::size_t x_bits = 0;
  std::size_t subset_bits = 0;
  std::size_t u_bits = 0;
  std::size_t blocks = 0;
  std::size_t total() const { return x_bits + blocks * (x_bits + subset_bits + u_bits); }
};

LabelLayout label_layout(const GammaParams& params);

/// Bit string, most significant bit first within each byte.
struct Label {
  std::size_t bits = 0;
  std::vector<std::uint8_t> bytes;
  friend bool operator==(const Label&, const Label&) = default;
};

Label encode_label(const GammaVertex& v, const GammaParams& params);
GammaVertex decode_label(const Label& label, const GammaParams& params);

/// Hex rendering with a 4-byte big-endian bit-width header.
std::string label_to_hex(const Label& label);
Label label_from_hex(const std::string& hex);

bool label_adjacent(const Label& a, const Label& b, const GammaParams& params);

}  // namespace iug

#endif  // IUG_GAMMA_HPP
