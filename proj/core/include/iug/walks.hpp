#ifndef IUG_WALKS_HPP
#define IUG_WALKS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "iug/error.hpp"
#include "iug/graph.hpp"

namespace iug {

inline constexpr std::size_t kUnboundedSigma = std::numeric_limits<std::size_t>::max();

/// Knobs of the constrained walk: F has `ell` vertices, blocks have `step`
/// positions, each vertex is used at most `usage_cap` times, scheduled pairs
/// end up at distance >= `avoid_radius`, and schedules hold at most
/// `sigma_cap` indices per position.
struct WalkParams {
  std::size_t ell = 0;
  std::size_t step = 1;
  std::size_t usage_cap = 1;
  std::size_t avoid_radius = 5;
  std::size_t sigma_cap = kUnboundedSigma;

  void validate() const;
};

/// ceil(log10(ell)) (at least 1).
std::size_t walk_step_for(std::size_t ell);

/// Literal constants: step ceil(log10 ell), usage cap 40 ceil(n/ell),
/// distance 5, schedule cap floor(ell / (160 d^4)).
WalkParams paper_walk_params(std::size_t ell, std::size_t n, std::size_t d);

/// Per-position sets of earlier indices whose images must stay far away.
class ConstraintSchedule {
 public:
  ConstraintSchedule() = default;
  explicit ConstraintSchedule(std::size_t n) : sigma_(n) {}
  ConstraintSchedule(std::vector<std::vector<std::size_t>> sigma);

  std::size_t size() const noexcept { return sigma_.size(); }
  std::span<const std::size_t> at(std::size_t t) const { return sigma_[t]; }
  /// Adds t' to sigma(t) (kept sorted, duplicates ignored).
  void add(std::size_t t, std::size_t t_prime);
  std::size_t max_set_size() const noexcept;
  std::size_t total_size() const noexcept;

  /// Largest admissible index for sigma(t): (floor(t/step) - 1) * step - 1,
  /// or nullopt when no index is admissible.
  static std::optional<std::size_t> latest_allowed(std::size_t t, std::size_t step);

  /// Throws ArgumentError naming the first position that breaks either
  /// schedule invariant.
  void validate(std::size_t step, std::size_t sigma_cap) const;

  /// FNV-1a digest, rendered as 16 hex digits.
  std::string digest() const;

  const std::vector<std::vector<std::size_t>>& sets() const noexcept { return sigma_; }

  friend bool operator==(const ConstraintSchedule&, const ConstraintSchedule&) = default;

 private:
  std::vector<std::vector<std::size_t>> sigma_;
};

/// f: [n-1] -> V(F) together with the schedule it was built against.
struct WalkMap {
  std::vector<Vertex> assignment;
  ConstraintSchedule schedule;
  std::vector<std::size_t> usage;

  friend bool operator==(const WalkMap&, const WalkMap&) = default;
};

/// q-expanding test: for every path P with at most q vertices, at least
/// ell/2 vertices w_{q-1} close a path (v, w_0, ..., w_{q-1}) with
/// w_i outside S_i and P. Throws BudgetError when the enumeration estimate
/// exceeds `budget`.
bool is_q_expanding(const Graph& f, Vertex v,
                    std::span<const std::vector<Vertex>> sets, std::size_t q,
                    std::size_t budget = 50'000'000);

struct ExpandingCount {
  std::size_t count = 0;
  /// All |S_i| <= ell/20 (the regime of the counting lemma).
  bool lemma_regime = true;
};

ExpandingCount count_q_expanding(const Graph& f,
                                 std::span<const std::vector<Vertex>> sets,
                                 std::size_t q, std::size_t budget = 50'000'000);

/// Raised when no admissible continuation exists within the search budget.
/// Carries the deepest prefix reached so a caller can resume from it.
class WalkStuckError : public Error {
 public:
  struct Blocking {
    std::size_t position = 0;
    std::size_t block = 0;
    std::size_t scheduled_forbidden = 0;  // |D_k(i)| at the failing position
    std::size_t saturated = 0;            // |A_k|: vertices at the usage cap
    std::size_t window = 0;               // previous-block vertices excluded
  };

  WalkStuckError(const std::string& message, Blocking blocking,
                 std::vector<Vertex> deepest_prefix)
      : Error("walk_stuck", message),
        blocking_(blocking),
        prefix_(std::move(deepest_prefix)) {}

  const Blocking& blocking() const noexcept { return blocking_; }
  const std::vector<Vertex>& deepest_prefix() const noexcept { return prefix_; }

 private:
  Blocking blocking_;
  std::vector<Vertex> prefix_;
};

struct WalkOptions {
  /// Positions [0, prefix.size()) are fixed to these vertices.
  std::vector<Vertex> prefix;
  /// Additional admissibility test for placing `candidate` at position t,
  /// given the assignment of positions < t.
  std::function<bool(std::size_t t, Vertex candidate, std::span<const Vertex> placed)> extra;
};

inline constexpr std::size_t kDefaultWalkBudget = 2'000'000;

/// Constrained walk satisfying (F1)-(F3); the result is verified before it is
/// returned. Depth-first search over positions with candidates ordered by
/// (usage, vertex id).
WalkMap build_walk_map(const Graph& f, const ConstraintSchedule& schedule,
                       const WalkParams& params,
                       std::size_t search_budget = kDefaultWalkBudget,
                       const WalkOptions& options = {});

enum class WalkProperty { kShape, kF1, kF2, kF3 };

std::string to_string(WalkProperty p);

struct WalkViolation {
  WalkProperty property;
  /// Position t (F2), vertex (F1) or block k (F3).
  std::size_t where = 0;
  std::string detail;
};

struct WalkReport {
  std::vector<WalkViolation> violations;
  bool ok() const { return violations.empty(); }
  std::size_t count(WalkProperty p) const;
};

/// Independent re-check of (F1)-(F3) using fresh BFS distances.
WalkReport verify_walk_map(const Graph& f, const ConstraintSchedule& schedule,
                           const WalkParams& params, const WalkMap& wm);

}  // namespace iug

#endif  // IUG_WALKS_HPP
