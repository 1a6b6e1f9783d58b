#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "iug/embedder.hpp"
#include "iug/error.hpp"
#include "iug/gamma.hpp"
#include "iug/graph.hpp"
#include "iug/harness.hpp"
#include "iug/lps.hpp"
#include "iug/serialize.hpp"
#include "iug/thin.hpp"

namespace iug::cli {

namespace {

// Budgets may be raised or lowered from the environment; flags win.
std::size_t env_size(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    return static_cast<std::size_t>(std::stoull(v));
  } catch (const std::exception&) {
    throw ArgumentError(std::string("environment variable ") + name + " is not a number");
  }
}

struct Common {
  std::string output;
  bool table = false;
  std::size_t jobs = 1;
};

struct GammaFlags {
  std::size_t delta = 2;
  std::uint64_t n = 0;
  std::string profile = "desk";
  std::uint64_t p = 5;
  double m_multiplier = 1.0;
  std::uint64_t z_target = 1;
  std::uint64_t rm_min_q = 0;
  std::uint64_t rz_min_q = 0;
  std::string rm_file;
  std::string rz_file;
  bool skip_certification = false;
  bool build = false;

  void attach(CLI::App* app, bool with_delta_n) {
    if (with_delta_n) {
      app->add_option("--delta", delta, "maximum degree of the family")->required();
      app->add_option("--n", n, "number of vertices of the family")->required();
    }
    app->add_option("--profile", profile, "paper or desk")->check(CLI::IsMember({"paper", "desk"}));
    app->add_option("--p", p, "LPS generator prime for desk expanders (d = p + 1)");
    app->add_option("--m-multiplier", m_multiplier, "desk: m = ceil(c * sqrt(n))");
    app->add_option("--z-target", z_target, "desk: minimum size of R_z");
    app->add_option("--rm-min-q", rm_min_q, "smallest LPS prime q allowed for R_m");
    app->add_option("--rz-min-q", rz_min_q, "smallest LPS prime q allowed for R_z");
    app->add_option("--rm-file", rm_file, "edge list used as R_m instead of an LPS graph")
        ->check(CLI::ExistingFile);
    app->add_option("--rz-file", rz_file, "edge list used as R_z instead of an LPS graph")
        ->check(CLI::ExistingFile);
    app->add_flag("--skip-certification", skip_certification, "do not certify built LPS graphs");
    app->add_flag("--build", build, "materialise the expanders (refused for the paper profile)");
  }

  GammaParams make() const {
    GammaOverrides o;
    o.p = p;
    o.m_multiplier = m_multiplier;
    o.z_target = z_target;
    o.rm_min_q = rm_min_q;
    o.rz_min_q = rz_min_q;
    o.skip_certification = skip_certification;
    o.build = build;
    if (!rm_file.empty()) o.r_m = std::make_shared<const Graph>(load_edge_list(rm_file));
    if (!rz_file.empty()) o.r_z = std::make_shared<const Graph>(load_edge_list(rz_file));
    return make_gamma_params(delta, n, parse_profile(profile), o);
  }
};

struct EmbedFlags {
  std::string strategy = "auto";
  std::optional<std::size_t> walk_budget;
  std::optional<std::size_t> search_budget;
  std::size_t rounds = RetryPolicy{}.max_rounds;

  void attach(CLI::App* app) {
    app->add_option("--strategy", strategy, "decomposition strategy: auto, even-petersen, edge-colouring or search");
    app->add_option("--walk-budget", walk_budget, "walk search budget (env IUG_WALK_BUDGET)");
    app->add_option("--search-budget", search_budget,
                    "decomposition search budget (env IUG_SEARCH_BUDGET)");
    app->add_option("--rounds", rounds, "retry rounds of the embedder");
  }

  EmbedOptions options(std::size_t jobs) const {
    EmbedOptions o;
    o.strategy = parse_decompose_strategy(strategy);
    o.walk_budget = walk_budget.value_or(env_size("IUG_WALK_BUDGET", o.walk_budget));
    o.decompose_budget = search_budget.value_or(env_size("IUG_SEARCH_BUDGET", o.decompose_budget));
    o.layout_budget = env_size("IUG_LAYOUT_BUDGET", o.layout_budget);
    o.jobs = jobs;
    return o;
  }
  RetryPolicy policy() const {
    RetryPolicy p;
    p.max_rounds = rounds;
    return p;
  }
};

json envelope(const std::string& kind) { return {{"schema", kSchemaVersion}, {"kind", kind}}; }

std::string fixed(double x, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << x;
  return s.str();
}

// Aligned plain-text table.
std::string render_table(const std::vector<std::string>& head,
                         const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> w(head.size());
  for (std::size_t c = 0; c < head.size(); ++c) w[c] = head[c].size();
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size() && c < w.size(); ++c) w[c] = std::max(w[c], r[c].size());
  }
  std::ostringstream s;
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      s << std::left << std::setw(static_cast<int>(w[c])) << r[c] << (c + 1 < r.size() ? "  " : "");
    }
    s << '\n';
  };
  line(head);
  std::vector<std::string> rule;
  for (auto x : w) rule.emplace_back(x, '-');
  line(rule);
  for (const auto& r : rows) line(r);
  return s.str();
}

std::string key_value_table(const json& j) {
  std::vector<std::vector<std::string>> rows;
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::string v = it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
    if (v.size() > 100) v = v.substr(0, 97) + "...";
    rows.push_back({it.key(), v});
  }
  return render_table({"field", "value"}, rows);
}

class Emitter {
 public:
  Emitter(const Common& c, std::ostream& out) : c_(c), out_(out) {}

  void emit(const json& j, const std::string& table) const {
    const std::string text = c_.table ? table : j.dump(2) + "\n";
    if (c_.output.empty()) {
      out_ << text;
    } else {
      std::ofstream f(c_.output);
      if (!f) throw ArgumentError("cannot write " + c_.output);
      f << text;
    }
  }

 private:
  const Common& c_;
  std::ostream& out_;
};

void diagnose(std::ostream& err, const std::string& kind, const std::string& message,
              json details = nullptr) {
  json j = envelope("error");
  j["error"] = {{"kind", kind}, {"message", message}};
  if (!details.is_null()) j["error"]["details"] = std::move(details);
  err << j.dump() << '\n';
}

int exit_code_for(const Error& e) {
  const std::string& k = e.kind();
  if (k == "argument" || k == "parse" || k == "infeasible_build" || k == "codec") return kExitUsage;
  return kExitPropertyFailure;
}

json details_of(const Error& e) {
  if (const auto* x = dynamic_cast<const EmbeddingFailureError*>(&e)) return {{"trail", x->trail()}};
  if (const auto* x = dynamic_cast<const PropertyFailureError*>(&e)) return {{"property", x->property()}};
  if (const auto* x = dynamic_cast<const ScheduleOverflowError*>(&e)) {
    return {{"index", x->index()}, {"size", x->size()}, {"cap", x->cap()}};
  }
  if (const auto* x = dynamic_cast<const LayoutError*>(&e)) return {{"component", x->component()}};
  if (const auto* x = dynamic_cast<const DecompositionError*>(&e)) {
    return {{"partial_assignment", x->partial_assignment()}};
  }
  if (const auto* x = dynamic_cast<const ExhaustedSearchError*>(&e)) return {{"ceiling", x->ceiling()}};
  return nullptr;
}

std::vector<std::uint64_t> parse_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      double v = std::stod(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(static_cast<std::uint64_t>(std::llround(v)));
    } catch (const std::exception&) {
      throw ArgumentError("'" + item + "' is not a non-negative number");
    }
  }
  if (out.empty()) throw ArgumentError("empty list");
  return out;
}

// ---------------------------------------------------------------------------
// Subcommands. Each returns its exit code.

int cmd_build_expander(const Common& c, std::ostream& out, std::uint64_t p, std::uint64_t q,
                       bool certify, const std::string& edges_out) {
  LpsParams params{p, q};
  const Graph g = build_lps_graph(params);
  json j = envelope("expander");
  j["params"] = params;
  j["vertices"] = g.vertex_count();
  j["edges"] = g.edge_count();
  j["degree"] = g.regular_degree() ? json(*g.regular_degree()) : json(nullptr);
  j["fingerprint"] = std::to_string(g.fingerprint());
  int code = kExitOk;
  if (certify) {
    const auto cert = certify_expander(g, params);
    j["certificate"] = cert;
    if (!cert.passed()) code = kExitPropertyFailure;
  }
  if (!edges_out.empty()) {
    std::ofstream f(edges_out);
    if (!f) throw ArgumentError("cannot write " + edges_out);
    write_edge_list(f, g);
    j["edge_list"] = edges_out;
  }
  Emitter(c, out).emit(j, key_value_table(j));
  return code;
}

int cmd_decompose(const Common& c, std::ostream& out, const std::string& input, std::size_t delta,
                  const std::string& strategy, std::optional<std::size_t> budget) {
  const Graph h = load_edge_list(input);
  DecomposeOptions opt;
  opt.search_budget = budget.value_or(env_size("IUG_SEARCH_BUDGET", opt.search_budget));
  const auto dec = thin_decompose(h, delta, parse_decompose_strategy(strategy), opt);
  const auto report = validate_decomposition(h, dec);
  json j = envelope("decomposition");
  j["delta"] = delta;
  j["strategy"] = strategy;
  j["decomposition"] = dec;
  j["valid"] = report.ok();
  std::vector<std::vector<std::string>> rows;
  for (std::size_t k = 0; k < dec.parts.size(); ++k) {
    const auto w = is_thin(dec.parts[k]);
    rows.push_back({std::to_string(k + 1), std::to_string(dec.parts[k].edge_count()),
                    std::to_string(dec.parts[k].max_degree()), w.thin ? "yes" : "no"});
  }
  Emitter(c, out).emit(j, render_table({"part", "edges", "max_degree", "thin"}, rows));
  return report.ok() ? kExitOk : kExitPropertyFailure;
}

int cmd_layout(const Common& c, std::ostream& out, const std::string& input,
               std::optional<std::size_t> n_opt) {
  const Graph g = load_edge_list(input);
  const std::size_t n = n_opt.value_or(g.vertex_count());
  LayoutOptions opt;
  opt.fallback_budget = env_size("IUG_LAYOUT_BUDGET", opt.fallback_budget);
  const auto layout = layout_thin(g, n, opt);
  const std::string why = check_layout(g, layout, n);
  json j = envelope("layout");
  j["n"] = n;
  j["phi"] = layout.phi;
  j["stretch"] = layout_stretch(g, layout);
  j["valid"] = why.empty();
  if (!why.empty()) j["problem"] = why;
  std::vector<std::vector<std::string>> rows;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    rows.push_back({std::to_string(v), std::to_string(layout.phi[v])});
  }
  Emitter(c, out).emit(j, render_table({"vertex", "phi"}, rows) +
                              "stretch " + std::to_string(layout_stretch(g, layout)) + "\n");
  return why.empty() ? kExitOk : kExitPropertyFailure;
}

int cmd_gamma_params(const Common& c, std::ostream& out, const GammaFlags& g) {
  const GammaParams p = g.make();
  json j = envelope("gamma_params");
  j["params"] = params_to_json(p, g.rm_file, g.rz_file);
  Emitter(c, out).emit(j, key_value_table(j["params"]));
  return kExitOk;
}

int cmd_embed(const Common& c, std::ostream& out, const std::string& input, GammaFlags g,
              const EmbedFlags& e, bool emit_labels) {
  const Graph h = load_edge_list(input);
  if (h.max_degree() > g.delta) {
    throw ArgumentError("maximum degree " + std::to_string(h.max_degree()) + " exceeds --delta " +
                        std::to_string(g.delta));
  }
  // Families with delta < 2 embed into Gamma(2, n).
  g.delta = std::max<std::size_t>(g.delta, 2);
  if (g.n == 0) g.n = std::max<std::size_t>(h.vertex_count(), 1);
  const GammaParams params = g.make();
  const EmbeddingResult res = embed(h, params, e.options(c.jobs), e.policy());
  json j = embedding_to_json(res, emit_labels, g.rm_file, g.rz_file);
  j["graph"] = h;
  std::vector<std::vector<std::string>> rows;
  for (const auto& check : res.certificate.checks) {
    rows.push_back({check.name, check.passed ? "pass" : "FAIL"});
  }
  rows.push_back({"induced", res.certificate.induced.ok() ? "pass" : "FAIL"});
  Emitter(c, out).emit(j, render_table({"property", "status"}, rows));
  return res.certificate.passed() ? kExitOk : kExitPropertyFailure;
}

int cmd_verify(const Common& c, std::ostream& out, const std::string& embedding_file,
               const std::string& input) {
  const Graph h = load_edge_list(input);
  std::ifstream f(embedding_file);
  if (!f) throw ArgumentError("cannot read " + embedding_file);
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::exception& e) {
    throw ParseError(std::string("embedding file is not JSON: ") + e.what());
  }
  const StoredEmbedding stored = embedding_from_json(doc);
  json j = envelope("verification");
  json problems = json::array();
  const std::string digest = stored.params.digest();
  if (digest != stored.params_digest) {
    problems.push_back("params digest " + stored.params_digest + " does not match rebuilt " + digest);
  }
  if (stored.labels.size() != h.vertex_count()) {
    problems.push_back("file holds " + std::to_string(stored.labels.size()) + " labels for " +
                       std::to_string(h.vertex_count()) + " vertices");
  }
  std::vector<GammaVertex> gamma;
  for (std::size_t k = 0; k < stored.labels.size(); ++k) {
    try {
      gamma.push_back(decode_label(label_from_hex(stored.labels[k]), stored.params));
    } catch (const CodecError& e) {
      problems.push_back("label " + std::to_string(k) + ": " + e.what());
    }
  }
  if (problems.empty()) {
    for (std::size_t a = 0; a < gamma.size(); ++a) {
      for (std::size_t b = a + 1; b < gamma.size(); ++b) {
        if (gamma[a] == gamma[b]) {
          problems.push_back("labels " + std::to_string(a) + " and " + std::to_string(b) + " coincide");
        }
      }
    }
    const auto report = verify_induced(h, gamma, stored.params, c.jobs);
    j["induced"] = report;
    if (!report.ok()) problems.push_back(std::to_string(report.violations.size()) + " induced violations");
  }
  j["problems"] = problems;
  j["ok"] = problems.empty();
  std::vector<std::vector<std::string>> rows;
  for (const auto& p : problems) rows.push_back({p.get<std::string>()});
  Emitter(c, out).emit(j, problems.empty() ? std::string("ok\n") : render_table({"problem"}, rows));
  return problems.empty() ? kExitOk : kExitPropertyFailure;
}

int cmd_sweep(const Common& c, std::ostream& out, std::size_t n, std::size_t delta, bool labelled,
              const std::string& cache, GammaFlags g, const EmbedFlags& e) {
  g.delta = std::max<std::size_t>(delta, 2);
  g.n = n;
  g.profile = "desk";
  const GammaParams params = g.make();
  std::vector<FamilySpec> specs;
  for (std::size_t k = 1; k <= n; ++k) specs.push_back({k, delta, !labelled});
  SweepOptions so;
  so.embed = e.options(1);
  so.policy = e.policy();
  so.jobs = c.jobs;
  so.cache_dir = cache;
  const SweepReport r = universality_sweep(specs, params, so);
  json j = envelope("sweep");
  j["report"] = r;
  j["cached"] = r.cached;
  const std::string table = render_table(
      {"total", "embedded", "failures", "pairs", "seconds"},
      {{std::to_string(r.total), std::to_string(r.embedded), std::to_string(r.failures.size()),
        std::to_string(r.pairs_checked), fixed(r.seconds, 2)}});
  Emitter(c, out).emit(j, table);
  return r.ok() ? kExitOk : kExitPropertyFailure;
}

int cmd_size_report(const Common& c, std::ostream& out, const std::string& deltas,
                    const std::string& ns) {
  std::vector<std::size_t> ds;
  for (auto d : parse_list(deltas)) ds.push_back(static_cast<std::size_t>(d));
  const SizeReport r = size_report(ds, parse_list(ns));
  json j = envelope("size_report");
  j["report"] = r;
  std::vector<std::vector<std::string>> rows;
  for (const auto& row : r.rows) {
    rows.push_back({std::to_string(row.delta), std::to_string(row.n), fixed(row.log10_count, 3),
                    fixed(0.5 * static_cast<double>(row.delta) * std::log10(static_cast<double>(row.n)), 3),
                    fixed(row.log10_ratio, 3)});
  }
  std::string table = render_table({"delta", "n", "log10|V|", "log10 n^(d/2)", "log10 ratio"}, rows);
  for (const auto& [d, s] : r.log10_spread) {
    table += "delta " + std::to_string(d) + ": ratio spread 10^" + fixed(s, 6) + "\n";
  }
  Emitter(c, out).emit(j, table);
  return kExitOk;
}

int cmd_fuzz(const Common& c, std::ostream& out, const std::string& target, std::uint64_t seed,
             std::size_t rounds) {
  const FuzzReport r = property_fuzz(parse_fuzz_target(target), seed, rounds);
  json j = envelope("fuzz");
  j["report"] = r;
  const std::string table = render_table(
      {"target", "instances", "violations", "injected", "detected", "seconds"},
      {{target, std::to_string(r.instances), std::to_string(r.violations.size()),
        std::to_string(r.injected), std::to_string(r.detected), fixed(r.seconds, 2)}});
  Emitter(c, out).emit(j, table);
  return r.ok() ? kExitOk : kExitPropertyFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Induced-universal graphs for bounded-degree families", "iug"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output,-o", common.output, "write the report to this file");
    sub->add_flag("--table", common.table, "human-readable table instead of JSON");
    sub->add_option("--jobs,-j", common.jobs, "worker threads")->check(CLI::PositiveNumber);
  };

  std::uint64_t lps_p = 0, lps_q = 0;
  bool certify = false;
  std::string edges_out;
  auto* build = app.add_subcommand("build-expander", "build the LPS graph X^{p,q}");
  build->add_option("--p", lps_p, "generator prime, 1 mod 4")->required();
  build->add_option("--q", lps_q, "field prime, 1 mod 4")->required();
  build->add_flag("--certify", certify, "check regularity, girth and the spectral bound");
  build->add_option("--write-edges", edges_out, "also write the graph as an edge list");
  add_common(build);

  std::string input, strategy = "auto";
  std::size_t delta = 2;
  std::optional<std::size_t> budget;
  auto* decompose = app.add_subcommand("decompose", "split H into delta thin graphs");
  decompose->add_option("--input", input, "edge list of H")->required()->check(CLI::ExistingFile);
  decompose->add_option("--delta", delta, "number of parts")->required();
  decompose->add_option("--strategy", strategy, "auto, even-petersen, edge-colouring or search");
  decompose->add_option("--search-budget", budget, "search budget (env IUG_SEARCH_BUDGET)");
  add_common(decompose);

  std::optional<std::size_t> layout_n;
  auto* layout = app.add_subcommand("layout", "lay a thin graph out in the fourth power of a path");
  layout->add_option("--input", input, "edge list of a thin graph")->required()->check(CLI::ExistingFile);
  layout->add_option("--n", layout_n, "length of the path (default |V|)");
  add_common(layout);

  GammaFlags gamma_flags;
  auto* params = app.add_subcommand("gamma-params", "constants and expanders of Gamma(delta, n)");
  gamma_flags.attach(params, true);
  add_common(params);

  GammaFlags embed_gamma;
  EmbedFlags embed_flags;
  bool emit_labels = false;
  auto* emb = app.add_subcommand("embed", "embed H into Gamma and certify the result");
  emb->add_option("--input", input, "edge list of H")->required()->check(CLI::ExistingFile);
  emb->add_option("--delta", embed_gamma.delta, "maximum degree bound")->required();
  emb->add_option("--n", embed_gamma.n, "Gamma's n (default |V(H)|)");
  emb->add_flag("--emit-labels", emit_labels, "include the hex labels of gamma(h)");
  embed_gamma.attach(emb, false);
  embed_flags.attach(emb);
  add_common(emb);

  std::string embedding_file;
  auto* verify = app.add_subcommand("verify", "re-check an embedding file against H");
  verify->add_option("--embedding", embedding_file, "output of embed --emit-labels")
      ->required()
      ->check(CLI::ExistingFile);
  verify->add_option("--input", input, "edge list of H")->required()->check(CLI::ExistingFile);
  add_common(verify);

  std::size_t sweep_n = 7;
  bool labelled = false;
  std::string cache;
  GammaFlags sweep_gamma;
  EmbedFlags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "embed every graph on at most n vertices");
  sweep->add_option("--n", sweep_n, "largest family size")->required();
  sweep->add_option("--delta", delta, "maximum degree")->required();
  sweep->add_flag("--labelled", labelled, "all labelled graphs instead of isomorphism classes");
  sweep->add_option("--cache", cache, "directory for cached sweep reports");
  sweep_gamma.attach(sweep, false);
  sweep_flags.attach(sweep);
  add_common(sweep);

  std::string deltas = "2,3,4,5", ns = "1e2,1e3,1e4,1e5,1e6,1e7,1e8";
  auto* size = app.add_subcommand("size-report", "paper-profile |V(Gamma)| against n^(delta/2)");
  size->add_option("--delta", deltas, "comma-separated delta values");
  size->add_option("--n-list", ns, "comma-separated n values");
  add_common(size);

  std::string target = "walks";
  std::uint64_t seed = 1;
  std::size_t rounds = 100;
  auto* fuzz = app.add_subcommand("fuzz", "randomised property checks with fault injection");
  fuzz->add_option("--target", target, "walks, decomposition, gamma or embedder")
      ->check(CLI::IsMember({"walks", "decomposition", "gamma", "embedder"}));
  fuzz->add_option("--seed", seed, "random seed");
  fuzz->add_option("--rounds", rounds, "number of rounds");
  add_common(fuzz);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();  // program name
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    diagnose(err, "usage", e.what());
    return kExitUsage;
  }

  try {
    if (build->parsed()) return cmd_build_expander(common, out, lps_p, lps_q, certify, edges_out);
    if (decompose->parsed()) return cmd_decompose(common, out, input, delta, strategy, budget);
    if (layout->parsed()) return cmd_layout(common, out, input, layout_n);
    if (params->parsed()) return cmd_gamma_params(common, out, gamma_flags);
    if (emb->parsed()) return cmd_embed(common, out, input, embed_gamma, embed_flags, emit_labels);
    if (verify->parsed()) return cmd_verify(common, out, embedding_file, input);
    if (sweep->parsed()) {
      return cmd_sweep(common, out, sweep_n, delta, labelled, cache, sweep_gamma, sweep_flags);
    }
    if (size->parsed()) return cmd_size_report(common, out, deltas, ns);
    if (fuzz->parsed()) return cmd_fuzz(common, out, target, seed, rounds);
  } catch (const Error& e) {
    diagnose(err, e.kind(), e.what(), details_of(e));
    return exit_code_for(e);
  } catch (const std::exception& e) {
    diagnose(err, "internal", e.what());
    return kExitPropertyFailure;
  }
  diagnose(err, "usage", "no subcommand given");
  return kExitUsage;
}

}  // namespace iug::cli
