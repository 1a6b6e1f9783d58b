#ifndef IUG_EMBEDDER_HPP
#define IUG_EMBEDDER_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iug/gamma.hpp"
#include "iug/graph.hpp"
#include "iug/thin.hpp"
#include "iug/walks.hpp"

namespace iug {

struct EmbedOptions {
  DecomposeStrategy strategy = DecomposeStrategy::kAuto;
  std::size_t decompose_budget = DecomposeOptions{}.search_budget;
  std::size_t layout_budget = LayoutOptions{}.fallback_budget;
  std::size_t walk_budget = kDefaultWalkBudget;
  /// Well-distribution cap is max(1, ceil(c * n / ell_m) * 40).
  double distribution_constant = 1.0;
  /// Optional caps on |D_1(t)| and |D_3(t)|.
  std::optional<std::size_t> d1_cap;
  std::optional<std::size_t> d3_cap;
  /// Lower bounds on the walk block lengths in R_m and R_z.
  std::size_t min_step_m = 8;
  std::size_t min_step_z = 4;
  /// Threads used by verify_induced.
  std::size_t jobs = 1;
};

struct RetryPolicy {
  std::size_t max_rounds = 4;
  std::size_t budget_growth = 4;
  bool grow_rz = true;
  bool grow_rm = true;
};

std::size_t step_m(const GammaParams& params, const EmbedOptions& options = {});
std::size_t step_z(const GammaParams& params, const EmbedOptions& options = {});
std::size_t distribution_cap(std::size_t n, const GammaParams& params,
                             const EmbedOptions& options = {});

/// The maps of the pipeline, all indexed by vertex of H. Part k (0-based)
/// corresponds to coordinate i = k + 1.
struct HomomorphismSet {
  ThinDecomposition decomposition;
  std::vector<PathPowerLayout> layouts;
  /// order[k][t] is the vertex at position t of layout k.
  std::vector<std::vector<Vertex>> order;
  std::vector<std::vector<Vertex>> f;
  /// r[0] is empty.
  std::vector<std::vector<Vertex>> r;
  std::vector<ConstraintSchedule> f_schedules;
  std::vector<ConstraintSchedule> r_schedules;
  /// bad[k][h] = B_{k+1}(h), sorted; bad[0] is empty.
  std::vector<std::vector<std::vector<Vertex>>> bad;
};

/// Vertices ordered by position: order[layout.phi[h]] = h.
std::vector<Vertex> layout_order(const PathPowerLayout& layout);

std::vector<Vertex> build_f1(const Graph& h1, const PathPowerLayout& layout,
                             const GammaParams& params, const EmbedOptions& options = {});

/// sigma(t) = D_1(t) u D_3(t) for coordinate i (1-based, i >= 2), given
/// f_1..f_{i-1}. Throws ScheduleOverflowError when a configured cap is hit.
ConstraintSchedule compute_sigma_i(std::size_t i, const Graph& h,
                                   const std::vector<std::vector<Vertex>>& f,
                                   const std::vector<Vertex>& order,
                                   const GammaParams& params, const EmbedOptions& options = {});

/// f_i built against `schedule`. Near pairs (inside the last two blocks)
/// are screened while walking so that bad sets stay within d and far
/// enough apart for the r_i walk.
std::vector<Vertex> build_fi(std::size_t i, const Graph& h,
                             const std::vector<std::vector<Vertex>>& f,
                             const std::vector<Vertex>& order,
                             const ConstraintSchedule& schedule, const GammaParams& params,
                             const EmbedOptions& options = {});

/// B_i(h) for every h, by definition; f must hold f_1..f_i and `position`
/// is phi_i.
std::vector<std::vector<Vertex>> compute_bad_sets(std::size_t i, const Graph& h,
                                                  const std::vector<std::vector<Vertex>>& f,
                                                  const std::vector<std::size_t>& position,
                                                  const GammaParams& params);

/// Throws PropertyFailureError("H3") unless every |B_i(h)| <= d, the gaps
/// exceed 2z and every pair is admissible for the r_i schedule.
void check_bad_sets(const std::vector<std::vector<Vertex>>& bad,
                    const std::vector<std::size_t>& position, const GammaParams& params,
                    const EmbedOptions& options = {});

std::vector<Vertex> build_ri(std::size_t i, const Graph& hi, const std::vector<Vertex>& order,
                             const std::vector<std::vector<Vertex>>& bad,
                             const GammaParams& params, const EmbedOptions& options = {},
                             ConstraintSchedule* schedule_out = nullptr);

struct PropertyCheck {
  std::string name;
  bool passed = true;
  std::vector<std::string> violations;
};

struct InducedViolation {
  Vertex u = 0;
  Vertex v = 0;
  bool missing = false;  // H-edge absent from Gamma; otherwise an extra edge
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

struct InducedReport {
  std::size_t pairs_checked = 0;
  std::vector<InducedViolation> violations;
  bool ok() const { return violations.empty(); }
};

struct EmbeddingCertificate {
  std::vector<PropertyCheck> checks;
  InducedReport induced;
  bool passed() const;
  const PropertyCheck* find(const std::string& name) const;
};

struct EmbeddingResult {
  std::vector<GammaVertex> gamma;
  HomomorphismSet homs;
  EmbeddingCertificate certificate;
  GammaParams params;
  std::string params_digest;
  /// One line per attempt of the retry policy.
  std::vector<std::string> trail;
};

/// gamma(h) = (f_1(h), f_2(h), Phi_2(h), r_2(h), ...). Throws IntegrityError
/// when an H_i-neighbour is not an R_m^4-neighbour under f_i.
std::vector<GammaVertex> assemble_gamma(const Graph& h, const HomomorphismSet& homs,
                                        const GammaParams& params);

/// Every pair of H: adjacency in Gamma iff adjacency in H.
InducedReport verify_induced(const Graph& h, const std::vector<GammaVertex>& gamma,
                             const GammaParams& params, std::size_t jobs = 1);

/// Re-checks homomorphisms, well-distribution, H1-H4, Phi, injectivity,
/// per-edge witnesses and the induced property.
EmbeddingCertificate certify_embedding(const Graph& h, const HomomorphismSet& homs,
                                       const std::vector<GammaVertex>& gamma,
                                       const GammaParams& params,
                                       const EmbedOptions& options = {});

/// Full pipeline with the retry policy. Throws ArgumentError when the
/// maximum degree of h exceeds params.delta, InfeasibleBuildError for
/// formula-only params and EmbeddingFailureError when all rounds fail.
EmbeddingResult embed(const Graph& h, const GammaParams& params, const EmbedOptions& options = {},
                      const RetryPolicy& policy = {});

}  // namespace iug

#endif  // IUG_EMBEDDER_HPP
