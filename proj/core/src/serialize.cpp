#include "iug/serialize.hpp"

#include <cmath>

#include "iug/error.hpp"

namespace iug {

namespace {

json edge_list(const std::vector<Edge>& edges) {
  json out = json::array();
  for (const Edge& e : edges) out.push_back({e.u, e.v});
  return out;
}

template <typename T>
T field(const json& j, const char* key, T fallback) {
  const auto it = j.find(key);
  return it == j.end() || it->is_null() ? fallback : it->get<T>();
}

}  // namespace

void to_json(json& j, const Graph& g) {
  j = {{"n", g.vertex_count()}, {"edges", edge_list(g.edges())}};
}

void from_json(const json& j, Graph& g) {
  try {
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) edges.push_back({e.at(0).get<Vertex>(), e.at(1).get<Vertex>()});
    g = Graph::from_edges(j.at("n").get<std::size_t>(), edges);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed graph JSON: ") + e.what());
  }
}

void to_json(json& j, const LpsParams& p) {
  j = {{"p", p.p}, {"q", p.q}, {"degree", p.degree()}, {"vertices", to_string(p.vertex_count())}};
}

void to_json(json& j, const ExpanderCertificate& c) {
  j = {{"vertices", c.vertices},
       {"degree", c.degree},
       {"regular", c.regular},
       {"connected", c.connected},
       {"non_bipartite", c.non_bipartite},
       {"girth", c.girth_found ? json(*c.girth_found) : json(nullptr)},
       {"girth_bound", c.girth_bound},
       {"girth_ok", c.girth_ok},
       {"second_eigenvalue",
        c.second_eigenvalue_bound ? json(*c.second_eigenvalue_bound) : json(nullptr)},
       {"ramanujan_bound", c.ramanujan_bound},
       {"ramanujan", c.ramanujan},
       {"matches_params", c.matches_params},
       {"passed", c.passed()},
       {"note", c.note}};
}

void to_json(json& j, const ThinDecomposition& d) {
  json mult = json::array();
  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    mult.push_back({{"edge", {d.edges[e].u, d.edges[e].v}},
                    {"parts", {d.multiplicity[e].first, d.multiplicity[e].second}}});
  }
  json parts = json::array();
  for (const Graph& p : d.parts) parts.push_back(edge_list(p.edges()));
  j = {{"parts", parts}, {"multiplicity", mult}};
}

void to_json(json& j, const PathPowerLayout& l) { j = {{"phi", l.phi}}; }

void to_json(json& j, const ConstraintSchedule& s) {
  j = {{"size", s.size()},
       {"max_set_size", s.max_set_size()},
       {"total_size", s.total_size()},
       {"digest", s.digest()},
       {"sets", s.sets()}};
}

void to_json(json& j, const WalkMap& w) {
  j = {{"assignment", w.assignment}, {"usage", w.usage}, {"schedule", w.schedule}};
}

void to_json(json& j, const WalkReport& r) {
  json v = json::array();
  for (const auto& x : r.violations) {
    v.push_back({{"property", to_string(x.property)}, {"where", x.where}, {"detail", x.detail}});
  }
  j = {{"ok", r.ok()}, {"violations", v}};
}

void to_json(json& j, const BigCount& c) {
  j = {{"value", c.to_string()}, {"log10", c.log10()}};
}

void to_json(json& j, const PropertyCheck& c) {
  j = {{"name", c.name}, {"passed", c.passed}, {"violations", c.violations}};
}

void to_json(json& j, const InducedReport& r) {
  json v = json::array();
  for (const auto& x : r.violations) {
    json w = x.witness ? json({x.witness->first, x.witness->second}) : json(nullptr);
    v.push_back({{"pair", {x.u, x.v}}, {"kind", x.missing ? "missing_edge" : "extra_edge"},
                 {"witness", w}});
  }
  j = {{"ok", r.ok()}, {"pairs_checked", r.pairs_checked}, {"violations", v}};
}

void to_json(json& j, const EmbeddingCertificate& c) {
  json props = json::object();
  for (const auto& p : c.checks) props[p.name] = p.passed;
  props["induced"] = c.induced.ok();
  j = {{"passed", c.passed()}, {"properties", props}, {"checks", c.checks}, {"induced", c.induced}};
}

void to_json(json& j, const SweepReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"index", f.index},
                        {"n", f.n},
                        {"edges", edge_list(f.edges)},
                        {"error", f.error},
                        {"trail", f.trail}});
  }
  j = {{"delta", r.delta},
       {"sizes", r.sizes},
       {"dedup", r.dedup},
       {"params_digest", r.params_digest},
       {"total", r.total},
       {"embedded", r.embedded},
       {"pairs_checked", r.pairs_checked},
       {"failures", failures},
       {"seconds", r.seconds},
       {"ok", r.ok()}};
}

void from_json(const json& j, SweepReport& r) {
  r.delta = j.at("delta").get<std::size_t>();
  r.sizes = j.at("sizes").get<std::vector<std::size_t>>();
  r.dedup = j.at("dedup").get<bool>();
  r.params_digest = j.at("params_digest").get<std::string>();
  r.total = j.at("total").get<std::size_t>();
  r.embedded = j.at("embedded").get<std::size_t>();
  r.pairs_checked = j.at("pairs_checked").get<std::size_t>();
  r.seconds = j.at("seconds").get<double>();
  r.failures.clear();
  for (const auto& f : j.at("failures")) {
    SweepFailure s;
    s.index = f.at("index").get<std::size_t>();
    s.n = f.at("n").get<std::size_t>();
    for (const auto& e : f.at("edges")) s.edges.push_back({e.at(0).get<Vertex>(), e.at(1).get<Vertex>()});
    s.error = f.at("error").get<std::string>();
    s.trail = f.at("trail").get<std::vector<std::string>>();
    r.failures.push_back(std::move(s));
  }
}

void to_json(json& j, const FuzzReport& r) {
  j = {{"target", to_string(r.target)},
       {"seed", r.seed},
       {"rounds", r.rounds},
       {"instances", r.instances},
       {"violations", r.violations},
       {"injected", r.injected},
       {"detected", r.detected},
       {"missed", r.missed},
       {"seconds", r.seconds},
       {"ok", r.ok()}};
}

void to_json(json& j, const SizeReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"delta", row.delta},
                    {"n", row.n},
                    {"count", row.count.to_string(40)},
                    {"log10_count", row.log10_count},
                    {"log10_n_pow", 0.5 * static_cast<double>(row.delta) *
                                        std::log10(static_cast<double>(row.n))},
                    {"log10_ratio", row.log10_ratio}});
  }
  json spread = json::object();
  for (const auto& [delta, s] : r.log10_spread) spread[std::to_string(delta)] = s;
  j = {{"rows", rows}, {"log10_spread", spread}};
}

// ---------------------------------------------------------------------------

json params_to_json(const GammaParams& p, const std::string& r_m_file, const std::string& r_z_file) {
  const auto& o = p.overrides;
  json j = {{"delta", p.delta},
            {"n", p.n},
            {"profile", to_string(p.profile)},
            {"d", p.d},
            {"z", p.z.get_str()},
            {"m", p.m.get_str()},
            {"ell_m", p.ell_m.get_str()},
            {"ell_z", p.ell_z.get_str()},
            {"r_m", p.rm_params ? json(*p.rm_params) : json(nullptr)},
            {"r_z", p.rz_params ? json(*p.rz_params) : json(nullptr)},
            {"r_m_file", r_m_file.empty() ? json(nullptr) : json(r_m_file)},
            {"r_z_file", r_z_file.empty() ? json(nullptr) : json(r_z_file)},
            {"subset_universe", p.subset_universe()},
            {"subset_width", p.subset_width()},
            {"materialised", p.materialised()},
            {"vertex_count", gamma_vertex_count(p)},
            {"overrides",
             {{"p", o.p},
              {"m_multiplier", o.m_multiplier},
              {"z_target", o.z_target},
              {"rm_min_q", o.rm_min_q},
              {"rz_min_q", o.rz_min_q},
              {"rm_residue_modulus", o.rm_residue_modulus},
              {"skip_certification", o.skip_certification}}},
            {"digest", p.digest()}};
  const LabelLayout l = label_layout(p);
  j["label_bits"] = l.total();
  if (p.rm_certificate) j["r_m_certificate"] = *p.rm_certificate;
  if (p.rz_certificate) j["r_z_certificate"] = *p.rz_certificate;
  return j;
}

GammaParams params_from_json(const json& j) {
  try {
    const auto delta = j.at("delta").get<std::size_t>();
    const auto n = j.at("n").get<std::uint64_t>();
    const Profile profile = parse_profile(j.at("profile").get<std::string>());
    GammaOverrides o;
    if (const auto it = j.find("overrides"); it != j.end()) {
      const json& ov = *it;
      o.p = field<std::uint64_t>(ov, "p", o.p);
      o.m_multiplier = field<double>(ov, "m_multiplier", o.m_multiplier);
      o.z_target = field<std::uint64_t>(ov, "z_target", o.z_target);
      o.rm_min_q = field<std::uint64_t>(ov, "rm_min_q", 0);
      o.rz_min_q = field<std::uint64_t>(ov, "rz_min_q", 0);
      o.rm_residue_modulus = field<std::uint64_t>(ov, "rm_residue_modulus", o.rm_residue_modulus);
      o.skip_certification = field<bool>(ov, "skip_certification", false);
    }
    const std::string rm_file = field<std::string>(j, "r_m_file", "");
    const std::string rz_file = field<std::string>(j, "r_z_file", "");
    if (!rm_file.empty()) o.r_m = std::make_shared<const Graph>(load_edge_list(rm_file));
    if (!rz_file.empty()) o.r_z = std::make_shared<const Graph>(load_edge_list(rz_file));
    if (profile == Profile::kDesk) {
      // Pin the primes that were actually used.
      if (!o.r_m && j.contains("r_m") && !j["r_m"].is_null()) o.rm_min_q = j["r_m"].at("q").get<std::uint64_t>();
      if (!o.r_z && j.contains("r_z") && !j["r_z"].is_null()) o.rz_min_q = j["r_z"].at("q").get<std::uint64_t>();
    }
    return make_gamma_params(delta, n, profile, o);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed params JSON: ") + e.what());
  }
}

json embedding_to_json(const EmbeddingResult& r, bool emit_labels, const std::string& r_m_file,
                       const std::string& r_z_file) {
  json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "embedding";
  j["params"] = params_to_json(r.params, r_m_file, r_z_file);
  j["params_digest"] = r.params_digest;
  if (emit_labels) {
    json labels = json::array();
    for (const auto& g : r.gamma) labels.push_back(label_to_hex(encode_label(g, r.params)));
    j["gamma"] = labels;
  }
  j["certificate"] = r.certificate;
  j["decomposition"] = r.homs.decomposition;
  j["layouts"] = r.homs.layouts;
  j["maps"] = {{"f", r.homs.f}, {"r", r.homs.r}, {"bad_sets", r.homs.bad}};
  json schedules = json::array();
  for (std::size_t k = 0; k < r.homs.f_schedules.size(); ++k) {
    schedules.push_back({{"f", r.homs.f_schedules[k].digest()},
                         {"f_max", r.homs.f_schedules[k].max_set_size()},
                         {"r", r.homs.r_schedules[k].digest()},
                         {"r_max", r.homs.r_schedules[k].max_set_size()}});
  }
  j["schedules"] = schedules;
  j["trail"] = r.trail;
  return j;
}

StoredEmbedding embedding_from_json(const json& j) {
  try {
    if (j.at("schema").get<int>() != kSchemaVersion) throw ParseError("unsupported embedding schema");
    StoredEmbedding s;
    s.params = params_from_json(j.at("params"));
    s.params_digest = j.at("params_digest").get<std::string>();
    s.labels = j.at("gamma").get<std::vector<std::string>>();
    return s;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed embedding JSON: ") + e.what());
  }
}

}  // namespace iug
