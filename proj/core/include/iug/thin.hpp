#ifndef IUG_THIN_HPP
#define IUG_THIN_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iug/graph.hpp"

namespace iug {

/// Outcome of the thinness test. When `thin` is false, `component` is the
/// smallest vertex of a failing component (or of a vertex of degree > 3).
struct ThinWitness {
  bool thin = true;
  std::optional<Vertex> component;
  std::string reason;

  explicit operator bool() const noexcept { return thin; }
};

/**
  Maximum degree at most 3, and every component either has at most two
  vertices of degree 3 or arises from a path or cycle by attaching pendant
  vertices through a matching.
*/
ThinWitness is_thin(const Graph& g);

/// Augmentation of a path or cycle (the connected graph `component` of `g`,
/// given by its vertex list).
bool is_path_or_cycle_augmentation(const Graph& g, const std::vector<Vertex>& component);

struct ThinDecomposition {
  std::vector<Graph> parts;
  /// Edges of H in `Graph::edges()` order and, for each, the two part
  /// indices containing it (first < second).
  std::vector<Edge> edges;
  std::vector<std::pair<std::size_t, std::size_t>> multiplicity;
};

enum class DecomposeStrategy { kAuto, kEvenPetersen, kEdgeColouring, kSearch, kCustom };

std::string to_string(DecomposeStrategy s);
DecomposeStrategy parse_decompose_strategy(const std::string& name);

struct DecomposeOptions {
  /// Node budget for the backtracking search.
  std::size_t search_budget = 5'000'000;
  /// Edge orders tried by the colouring construction.
  std::size_t colouring_attempts = 24;
  /// Used by kCustom. The result is validated like any other.
  std::function<ThinDecomposition(const Graph&, std::size_t)> custom;
};

/// Delta spanning thin subgraphs covering every edge of H exactly twice.
/// kEdgeColouring pairs consecutive colour classes of a delta-edge-colouring
/// (edges left uncoloured are placed greedily); kAuto uses even-petersen for
/// even delta and tries the colouring before the search for odd delta.
/// Throws ArgumentError when the maximum degree exceeds delta and
/// DecompositionError when the search gives up.
ThinDecomposition thin_decompose(const Graph& h, std::size_t delta,
                                 DecomposeStrategy strategy = DecomposeStrategy::kAuto,
                                 const DecomposeOptions& options = {});

struct DecompositionViolation {
  enum class Kind { kSpanning, kMultiplicity, kThinness, kShape } kind;
  std::size_t where = 0;  // part index or edge index
  std::string detail;
};

struct DecompositionReport {
  std::vector<DecompositionViolation> violations;
  bool ok() const { return violations.empty(); }
  std::size_t count(DecompositionViolation::Kind k) const;
};

DecompositionReport validate_decomposition(const Graph& h, const ThinDecomposition& dec);

/// Injective map V(g) -> {0..n-1} with every edge stretched by at most 4.
struct PathPowerLayout {
  std::vector<std::size_t> phi;
};

inline constexpr std::size_t kMaxStretch = 4;

struct LayoutOptions {
  /// Node budget of the exhaustive ordering search used as a fallback.
  std::size_t fallback_budget = 2'000'000;
};

/// Throws ArgumentError for non-thin input or n < |V(g)|, LayoutError when
/// a component defeats both the constructive router and the fallback.
PathPowerLayout layout_thin(const Graph& g, std::size_t n, const LayoutOptions& options = {});

/// Largest |phi(u) - phi(v)| over edges (0 for edgeless graphs).
std::size_t layout_stretch(const Graph& g, const PathPowerLayout& layout);

/// Empty string when the layout is injective, in range and within stretch 4.
std::string check_layout(const Graph& g, const PathPowerLayout& layout, std::size_t n);

}  // namespace iug

#endif  // IUG_THIN_HPP
