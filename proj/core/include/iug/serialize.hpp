#ifndef IUG_SERIALIZE_HPP
#define IUG_SERIALIZE_HPP

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "iug/embedder.hpp"
#include "iug/gamma.hpp"
#include "iug/graph.hpp"
#include "iug/harness.hpp"
#include "iug/lps.hpp"
#include "iug/thin.hpp"
#include "iug/walks.hpp"

namespace iug {

using json = nlohmann::json;

/// Version tag written to the "schema" field of every top-level document.
inline constexpr int kSchemaVersion = 1;

// Everything below plugs into nlohmann's ADL hooks, so `json j = value;`
// works for these types.
void to_json(json& j, const Graph& g);
void from_json(const json& j, Graph& g);
void to_json(json& j, const LpsParams& p);
void to_json(json& j, const ExpanderCertificate& c);
void to_json(json& j, const ThinDecomposition& d);
void to_json(json& j, const PathPowerLayout& l);
void to_json(json& j, const ConstraintSchedule& s);
void to_json(json& j, const WalkMap& w);
void to_json(json& j, const WalkReport& r);
void to_json(json& j, const BigCount& c);
void to_json(json& j, const PropertyCheck& c);
void to_json(json& j, const InducedReport& r);
void to_json(json& j, const EmbeddingCertificate& c);
void to_json(json& j, const SweepReport& r);
void from_json(const json& j, SweepReport& r);
void to_json(json& j, const FuzzReport& r);
void to_json(json& j, const SizeReport& r);

/// {delta, n, profile, d, z, m, ...}. Expanders given as files are recorded
/// by path so the params can be rebuilt.
json params_to_json(const GammaParams& params, const std::string& r_m_file = "",
                    const std::string& r_z_file = "");

/// Rebuilds params from params_to_json output (DESK expanders are rebuilt
/// or reloaded; PAPER params are recomputed).
GammaParams params_from_json(const json& j);

/// {schema, params, params_digest, gamma: [hex labels], certificate, ...}.
json embedding_to_json(const EmbeddingResult& result, bool emit_labels = true,
                       const std::string& r_m_file = "", const std::string& r_z_file = "");

struct StoredEmbedding {
  GammaParams params;
  std::string params_digest;
  std::vector<std::string> labels;
};

StoredEmbedding embedding_from_json(const json& j);

}  // namespace iug

#endif  // IUG_SERIALIZE_HPP
