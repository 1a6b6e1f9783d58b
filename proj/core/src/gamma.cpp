#include "iug/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "iug/error.hpp"

namespace iug {

namespace {

std::string str(std::size_t x) { return std::to_string(x); }

mpz_class to_mpz(u128 x) {
  mpz_class hi = static_cast<unsigned long>(static_cast<std::uint64_t>(x >> 64));
  mpz_class lo = static_cast<unsigned long>(static_cast<std::uint64_t>(x));
  return (hi << 64) + lo;
}

u128 to_u128(const mpz_class& x) {
  if (x < 0 || mpz_sizeinbase(x.get_mpz_t(), 2) > 127) {
    throw ArgumentError("value " + x.get_str() + " does not fit in 128 bits");
  }
  mpz_class hi = x >> 64;
  mpz_class lo = x - (hi << 64);
  return (static_cast<u128>(hi.get_ui()) << 64) | static_cast<u128>(lo.get_ui());
}

std::size_t ceil_log2(const mpz_class& x) {
  if (x <= 1) return 0;
  mpz_class y = x - 1;
  return mpz_sizeinbase(y.get_mpz_t(), 2);
}

struct CachedExpander {
  std::shared_ptr<const Graph> graph;
  std::shared_ptr<const BallIndex> balls;
  std::optional<ExpanderCertificate> certificate;
};

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

CachedExpander lps_expander(const LpsParams& params, bool certify) {
  static std::map<std::pair<std::uint64_t, std::uint64_t>, CachedExpander> cache;
  std::lock_guard lock(cache_mutex());
  auto& entry = cache[{params.p, params.q}];
  if (!entry.graph) {
    entry.graph = std::make_shared<const Graph>(build_lps_graph(params));
    entry.balls = std::make_shared<const BallIndex>(entry.graph);
  }
  if (certify && !entry.certificate) entry.certificate = certify_expander(*entry.graph, params);
  return entry;
}

CachedExpander supplied_expander(const std::shared_ptr<const Graph>& g, const char* which) {
  CachedExpander e;
  e.graph = g;
  e.balls = std::make_shared<const BallIndex>(g);
  e.certificate = certify_expander(*g);
  if (!e.certificate->passed()) {
    throw CertificationError(std::string("supplied ") + which + " failed certification: " +
                             e.certificate->note);
  }
  return e;
}

}  // namespace

// ---------------------------------------------------------------------------

BallIndex::BallIndex(std::shared_ptr<const Graph> g, std::size_t radius)
    : g_(std::move(g)),
      radius_(radius),
      once_(std::make_unique<std::once_flag[]>(g_->vertex_count())),
      balls_(g_->vertex_count()) {}

const std::vector<Vertex>& BallIndex::neighbourhood(Vertex v) const {
  if (v >= g_->vertex_count()) throw ArgumentError("vertex out of range: " + str(v));
  std::call_once(once_[v], [&] { balls_[v] = ball(*g_, v, radius_); });
  return balls_[v];
}

bool BallIndex::adjacent(Vertex v, Vertex w) const {
  const auto& b = neighbourhood(v);
  return std::binary_search(b.begin(), b.end(), w);
}

std::optional<std::size_t> BallIndex::rho(Vertex v, Vertex w) const {
  const auto& b = neighbourhood(v);
  auto it = std::lower_bound(b.begin(), b.end(), w);
  if (it == b.end() || *it != w) return std::nullopt;
  return static_cast<std::size_t>(it - b.begin());
}

std::size_t BallIndex::max_neighbourhood() const {
  std::size_t m = 0;
  for (Vertex v = 0; v < g_->vertex_count(); ++v) m = std::max(m, neighbourhood(v).size());
  return m;
}

std::string to_string(Profile p) { return p == Profile::kPaper ? "paper" : "desk"; }

Profile parse_profile(const std::string& name) {
  if (name == "paper") return Profile::kPaper;
  if (name == "desk") return Profile::kDesk;
  throw ArgumentError("unknown profile '" + name + "' (expected paper or desk)");
}

double BigCount::log10() const {
  if (mantissa <= 0) return -INFINITY;
  long exp = 0;
  const double d = mpz_get_d_2exp(&exp, mantissa.get_mpz_t());
  return std::log10(d) + (static_cast<double>(exp) + static_cast<double>(exponent2)) * std::log10(2.0);
}

std::string BigCount::to_string(std::size_t max_digits) const {
  if (mantissa == 0) return "0";
  const double lg = log10();
  if (lg < static_cast<double>(max_digits) - 1) {
    mpz_class v = mantissa;
    mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), exponent2);
    return v.get_str();
  }
  const double exponent = std::floor(lg);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6fe%.0f", std::pow(10.0, lg - exponent), exponent);
  return buf;
}

std::size_t GammaParams::rm_size() const { return r_m ? r_m->vertex_count() : 0; }
std::size_t GammaParams::rz_size() const { return r_z ? r_z->vertex_count() : 0; }

std::string GammaParams::digest() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  };
  mix(str(delta));
  mix(std::to_string(n));
  mix(to_string(profile));
  mix(std::to_string(d));
  mix(z.get_str());
  mix(m.get_str());
  mix(ell_m.get_str());
  mix(ell_z.get_str());
  if (r_m) mix(std::to_string(r_m->fingerprint()));
  if (r_z) mix(std::to_string(r_z->fingerprint()));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

GammaParams make_gamma_params(std::size_t delta, std::uint64_t n, Profile profile,
                              const GammaOverrides& overrides) {
  if (delta < 2) throw ArgumentError("Gamma needs delta >= 2");
  if (n < 1) throw ArgumentError("Gamma needs n >= 1");
  GammaParams gp;
  gp.delta = delta;
  gp.n = n;
  gp.profile = profile;
  gp.overrides = overrides;

  if (profile == Profile::kPaper) {
    if (overrides.build) {
      throw InfeasibleBuildError("paper-profile constants (d = 734) give expanders far too large to build");
    }
    gp.d = 734;
    const std::uint64_t p = gp.d - 1;
    mpz_class d5, d8;
    mpz_ui_pow_ui(d5.get_mpz_t(), gp.d, 5);
    mpz_ui_pow_ui(d8.get_mpz_t(), gp.d, 8);
    gp.z = 160 * d5;
    // m = 5 * 160 * delta * d^8 * sqrt(n), rounded up.
    const mpz_class k = mpz_class(800) * static_cast<unsigned long>(delta) * d8;
    const mpz_class square = k * k * mpz_class(static_cast<unsigned long>(n));
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), square.get_mpz_t());
    if (root * root < square) root += 1;
    gp.m = root;

    LpsSearchOptions rm_opt;
    rm_opt.min_q = number_theory::icbrt(to_u128(8 * gp.m)) + 1;
    gp.rm_params = find_lps_params(p, to_u128(gp.m), 4 * p, rm_opt);
    LpsSearchOptions rz_opt;
    rz_opt.min_q = number_theory::icbrt(to_u128(8 * gp.z)) + 1;
    gp.rz_params = find_lps_params(p, to_u128(gp.z), 4, rz_opt);
    gp.ell_m = to_mpz(gp.rm_params->vertex_count());
    gp.ell_z = to_mpz(gp.rz_params->vertex_count());
    return gp;
  }

  const bool certify = !overrides.skip_certification;
  gp.m = static_cast<unsigned long>(
      std::max<double>(1.0, std::ceil(overrides.m_multiplier * std::sqrt(static_cast<double>(n)))));
  gp.z = static_cast<unsigned long>(std::max<std::uint64_t>(overrides.z_target, 1));

  CachedExpander rm, rz;
  if (overrides.r_m) {
    rm = supplied_expander(overrides.r_m, "R_m");
  } else {
    LpsSearchOptions opt;
    opt.min_q = overrides.rm_min_q;
    gp.rm_params = find_lps_params(overrides.p, to_u128(gp.m), overrides.rm_residue_modulus, opt);
    rm = lps_expander(*gp.rm_params, certify);
  }
  if (overrides.r_z) {
    rz = supplied_expander(overrides.r_z, "R_z");
  } else {
    LpsSearchOptions opt;
    opt.min_q = overrides.rz_min_q;
    gp.rz_params = find_lps_params(overrides.p, to_u128(gp.z), 4, opt);
    rz = lps_expander(*gp.rz_params, certify);
  }
  for (const auto* e : {&rm, &rz}) {
    if (e->certificate && !e->certificate->passed()) {
      throw CertificationError("expander failed certification: " + e->certificate->note);
    }
  }
  const auto dm = rm.graph->regular_degree(), dz = rz.graph->regular_degree();
  if (!dm || !dz || *dm != *dz) throw ArgumentError("R_m and R_z must be regular of the same degree");
  gp.d = *dm;
  gp.r_m = rm.graph;
  gp.r_z = rz.graph;
  gp.rho = rm.balls;
  gp.z_ball = rz.balls;
  gp.rm_certificate = rm.certificate;
  gp.rz_certificate = rz.certificate;
  gp.ell_m = static_cast<unsigned long>(gp.r_m->vertex_count());
  gp.ell_z = static_cast<unsigned long>(gp.r_z->vertex_count());
  return gp;
}

// ---------------------------------------------------------------------------

void SubsetBits::set(std::size_t i) {
  if (i >= width_) throw ArgumentError("subset element " + str(i) + " outside width " + str(width_));
  words_[i / 64] |= std::uint64_t{1} << (i % 64);
}

void SubsetBits::reset(std::size_t i) {
  if (i >= width_) throw ArgumentError("subset element " + str(i) + " outside width " + str(width_));
  words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
}

std::size_t SubsetBits::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
  return c;
}

bool SubsetBits::is_subset_of(const SubsetBits& other) const {
  if (other.width_ != width_) return false;
  for (std::size_t k = 0; k < words_.size(); ++k) {
    if (words_[k] & ~other.words_[k]) return false;
  }
  return true;
}

std::vector<std::size_t> SubsetBits::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < width_; ++i) {
    if (test(i)) out.push_back(i);
  }
  return out;
}

void check_gamma_vertex(const GammaVertex& v, const GammaParams& params) {
  if (!params.materialised()) {
    throw ArgumentError("Gamma adjacency needs materialised expanders (desk profile)");
  }
  const std::size_t lm = params.rm_size(), lz = params.rz_size();
  if (v.blocks.size() + 1 != params.delta) {
    throw ArgumentError("Gamma vertex has " + str(v.blocks.size()) + " blocks, expected " +
                        str(params.delta - 1));
  }
  if (v.x1 >= lm) throw ArgumentError("x_1 out of range");
  for (const auto& b : v.blocks) {
    if (b.x >= lm) throw ArgumentError("x_i out of range");
    if (b.u >= lz) throw ArgumentError("u_i out of range");
    if (b.subset.width() != params.subset_width()) throw ArgumentError("subset has the wrong width");
  }
}

std::optional<std::pair<std::size_t, std::size_t>> gamma_witness(const GammaVertex& a,
                                                                 const GammaVertex& b,
                                                                 const GammaParams& params) {
  check_gamma_vertex(a, params);
  check_gamma_vertex(b, params);
  const BallIndex& rho = *params.rho;
  const std::size_t delta = params.delta;
  auto x_of = [](const GammaVertex& v, std::size_t k) { return k == 0 ? v.x1 : v.blocks[k - 1].x; };
  std::vector<char> e1(delta);
  for (std::size_t k = 0; k < delta; ++k) e1[k] = rho.adjacent(x_of(a, k), x_of(b, k));
  std::optional<std::size_t> first;
  for (std::size_t i = 0; i < delta; ++i) {
    if (!e1[i]) continue;
    if (first) {
      const auto& ba = a.blocks[i - 1];
      const auto& bb = b.blocks[i - 1];
      const auto ra = rho.rho(ba.x, bb.x), rb = rho.rho(bb.x, ba.x);
      if (ra && rb && ba.subset.test(*ra) && bb.subset.test(*rb) &&
          params.z_ball->adjacent(ba.u, bb.u)) {
        return std::pair{*first + 1, i + 1};
      }
    } else {
      first = i;
    }
  }
  return std::nullopt;
}

bool gamma_adjacent(const GammaVertex& a, const GammaVertex& b, const GammaParams& params) {
  return gamma_witness(a, b, params).has_value();
}

BigCount gamma_vertex_count(const GammaParams& params) {
  BigCount c;
  mpz_class block = params.ell_m * params.ell_z;
  mpz_class power;
  mpz_pow_ui(power.get_mpz_t(), block.get_mpz_t(), params.delta - 1);
  c.mantissa = params.ell_m * power;
  c.exponent2 = static_cast<std::uint64_t>(params.subset_universe() + 1) * (params.delta - 1);
  return c;
}

// ---------------------------------------------------------------------------
// Labels

LabelLayout label_layout(const GammaParams& params) {
  LabelLayout l;
  l.x_bits = std::max<std::size_t>(1, ceil_log2(params.ell_m));
  l.u_bits = std::max<std::size_t>(1, ceil_log2(params.ell_z));
  l.subset_bits = params.subset_width();
  l.blocks = params.delta - 1;
  return l;
}

namespace {

class BitWriter {
 public:
  explicit BitWriter(std::size_t bits) : bits_(bits), bytes_((bits + 7) / 8, 0) {}
  void push(bool bit) {
    if (bit) bytes_[pos_ / 8] |= static_cast<std::uint8_t>(0x80u >> (pos_ % 8));
    ++pos_;
  }
  void push(std::uint64_t value, std::size_t width) {
    for (std::size_t k = width; k-- > 0;) push(((value >> k) & 1u) != 0);
  }
  Label finish() { return {bits_, std::move(bytes_)}; }

 private:
  std::size_t bits_;
  std::vector<std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

class BitReader {
 public:
  explicit BitReader(const Label& l) : l_(l) {}
  bool bit() {
    const bool b = (l_.bytes[pos_ / 8] >> (7 - pos_ % 8)) & 1u;
    ++pos_;
    return b;
  }
  std::uint64_t take(std::size_t width) {
    std::uint64_t v = 0;
    for (std::size_t k = 0; k < width; ++k) v = (v << 1) | (bit() ? 1u : 0u);
    return v;
  }

 private:
  const Label& l_;
  std::size_t pos_ = 0;
};

}  // namespace

Label encode_label(const GammaVertex& v, const GammaParams& params) {
  check_gamma_vertex(v, params);
  const LabelLayout l = label_layout(params);
  BitWriter w(l.total());
  w.push(v.x1, l.x_bits);
  for (const auto& b : v.blocks) {
    w.push(b.x, l.x_bits);
    for (std::size_t k = 0; k < l.subset_bits; ++k) w.push(b.subset.test(k));
    w.push(b.u, l.u_bits);
  }
  return w.finish();
}

GammaVertex decode_label(const Label& label, const GammaParams& params) {
  if (!params.materialised()) throw CodecError("labels need materialised expanders (desk profile)");
  const LabelLayout l = label_layout(params);
  if (label.bits != l.total() || label.bytes.size() != (l.total() + 7) / 8) {
    throw CodecError("label has " + str(label.bits) + " bits, expected " + str(l.total()));
  }
  if (l.total() % 8 != 0) {
    const std::uint8_t pad = static_cast<std::uint8_t>(0xffu >> (l.total() % 8));
    if (label.bytes.back() & pad) throw CodecError("label padding bits are not zero");
  }
  BitReader r(label);
  GammaVertex v;
  v.x1 = static_cast<Vertex>(r.take(l.x_bits));
  if (v.x1 >= params.rm_size()) throw CodecError("x_1 field out of range");
  for (std::size_t i = 0; i < l.blocks; ++i) {
    GammaBlock b;
    b.x = static_cast<Vertex>(r.take(l.x_bits));
    if (b.x >= params.rm_size()) throw CodecError("x_" + str(i + 2) + " field out of range");
    b.subset = SubsetBits(l.subset_bits);
    for (std::size_t k = 0; k < l.subset_bits; ++k) {
      if (r.bit()) b.subset.set(k);
    }
    b.u = static_cast<Vertex>(r.take(l.u_bits));
    if (b.u >= params.rz_size()) throw CodecError("u_" + str(i + 2) + " field out of range");
    v.blocks.push_back(std::move(b));
  }
  return v;
}

std::string label_to_hex(const Label& label) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(8 + 2 * label.bytes.size());
  const auto bits = static_cast<std::uint32_t>(label.bits);
  for (int shift = 28; shift >= 0; shift -= 4) out.push_back(digits[(bits >> shift) & 0xf]);
  for (std::uint8_t b : label.bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

Label label_from_hex(const std::string& hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (hex.size() < 8 || hex.size() % 2 != 0) throw CodecError("malformed label hex string");
  std::uint32_t bits = 0;
  for (int k = 0; k < 8; ++k) {
    const int v = nibble(hex[k]);
    if (v < 0) throw CodecError("non-hex character in label");
    bits = (bits << 4) | static_cast<std::uint32_t>(v);
  }
  Label l;
  l.bits = bits;
  for (std::size_t k = 8; k < hex.size(); k += 2) {
    const int hi = nibble(hex[k]), lo = nibble(hex[k + 1]);
    if (hi < 0 || lo < 0) throw CodecError("non-hex character in label");
    l.bytes.push_back(static_cast<std::uint8_t>(hi * 16 + lo));
  }
  if (l.bytes.size() != (l.bits + 7) / 8) throw CodecError("label length disagrees with its header");
  return l;
}

bool label_adjacent(const Label& a, const Label& b, const GammaParams& params) {
  return gamma_adjacent(decode_label(a, params), decode_label(b, params), params);
}

}  // namespace iug
