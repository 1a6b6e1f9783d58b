#ifndef IUG_HARNESS_HPP
#define IUG_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "iug/embedder.hpp"
#include "iug/gamma.hpp"
#include "iug/graph.hpp"

namespace iug {

/// Graphs on n vertices with maximum degree at most delta.
struct FamilySpec {
  std::size_t n = 1;
  std::size_t delta = 0;
  /// One representative per isomorphism class.
  bool dedup = false;
};

inline constexpr std::size_t kMaxEnumerationVertices = 10;
inline constexpr std::size_t kMaxDedupVertices = 8;

/// Canonical adjacency code (n <= 11): the largest upper-triangle bit string
/// over all relabellings, read column by column. Isomorphic graphs share it.
std::uint64_t canonical_code(const Graph& g);
Graph graph_from_code(std::size_t n, std::uint64_t code);

/// Visits every member of the family; stops early when `visit` returns
/// false. Throws BudgetError above the vertex guards.
void enumerate_family(const FamilySpec& spec, const std::function<bool(const Graph&)>& visit,
                      std::size_t guard = kMaxEnumerationVertices);
std::vector<Graph> family(const FamilySpec& spec, std::size_t guard = kMaxEnumerationVertices);
std::size_t family_size(const FamilySpec& spec, std::size_t guard = kMaxEnumerationVertices);

struct SweepFailure {
  std::size_t index = 0;
  std::size_t n = 0;
  std::vector<Edge> edges;
  std::string error;
  std::vector<std::string> trail;
};

struct SweepReport {
  std::size_t delta = 0;
  std::vector<std::size_t> sizes;
  bool dedup = true;
  std::string params_digest;
  std::size_t total = 0;
  std::size_t embedded = 0;
  /// Total number of vertex pairs checked by verify_induced.
  std::size_t pairs_checked = 0;
  std::vector<SweepFailure> failures;
  double seconds = 0.0;
  bool cached = false;
  bool ok() const { return failures.empty() && embedded == total; }
};

struct SweepOptions {
  EmbedOptions embed;
  RetryPolicy policy;
  /// Family members embedded in parallel.
  std::size_t jobs = 1;
  /// Directory for cached reports keyed by family and params digest (empty
  /// disables the on-disk cache).
  std::string cache_dir;
};

/// Embeds every member of every family (one per entry of `specs`) into the
/// given DESK Gamma and checks each with verify_induced. Failures are
/// reported, not thrown; a spec whose delta exceeds params.delta is an
/// ArgumentError.
SweepReport universality_sweep(const std::vector<FamilySpec>& specs, const GammaParams& params,
                               const SweepOptions& options = {});
SweepReport universality_sweep(const FamilySpec& spec, const GammaParams& params,
                               const SweepOptions& options = {});

enum class FuzzTarget { kWalks, kDecomposition, kGamma, kEmbedder };

std::string to_string(FuzzTarget t);
FuzzTarget parse_fuzz_target(const std::string& name);

struct FuzzReport {
  FuzzTarget target = FuzzTarget::kWalks;
  std::uint64_t seed = 0;
  std::size_t rounds = 0;
  /// Clean instances checked and the violations found on them.
  std::size_t instances = 0;
  std::vector<std::string> violations;
  /// Fault-injected instances and how many of them were caught.
  std::size_t injected = 0;
  std::size_t detected = 0;
  std::vector<std::string> missed;
  double seconds = 0.0;
  bool ok() const { return violations.empty() && detected == injected; }
};

struct FuzzOptions {
  /// Gamma and embedder targets use these params (built with defaults for
  /// delta = 3, n = 8 when absent).
  std::optional<GammaParams> params;
  /// Pairs per round for the gamma target.
  std::size_t pairs_per_round = 100;
};

FuzzReport property_fuzz(FuzzTarget target, std::uint64_t seed, std::size_t rounds,
                         const FuzzOptions& options = {});

struct SizeRow {
  std::size_t delta = 0;
  std::uint64_t n = 0;
  BigCount count;
  double log10_count = 0.0;
  /// log10(count / n^{delta/2}).
  double log10_ratio = 0.0;
};

struct SizeReport {
  std::vector<SizeRow> rows;
  /// Per delta, max minus min of log10_ratio over the n sweep.
  std::map<std::size_t, double> log10_spread;
};

/// PAPER-profile vertex counts against n^{delta/2}.
SizeReport size_report(const std::vector<std::size_t>& deltas, const std::vector<std::uint64_t>& ns);

}  // namespace iug

#endif  // IUG_HARNESS_HPP
