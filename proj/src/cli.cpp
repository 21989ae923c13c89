// Copyright 2026 The patternq Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "patternq/cli.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "patternq/catalog.hpp"
#include "patternq/error.hpp"
#include "patternq/render.hpp"

namespace patternq {
namespace {

class StageFailure : public std::runtime_error {
 public:
  StageFailure(std::string stage, const std::string& what)
      : std::runtime_error(what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

template <class F>
auto in_stage(const char* stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageFailure&) {
    throw;
  } catch (const std::exception& e) {
    throw StageFailure(stage, e.what());
  }
}

spdlog::logger& log() {
  static std::shared_ptr<spdlog::logger> logger = [] {
    auto l = spdlog::stderr_logger_mt("patternq");
    l->set_pattern("[%l] %v");
    return l;
  }();
  return *logger;
}

void configure_logging() {
  spdlog::level::level_enum level = spdlog::level::warn;
  if (const char* env = std::getenv("PATTERNQ_LOG")) {
    const std::string name(env);
    if (name == "error") level = spdlog::level::err;
    if (name == "info") level = spdlog::level::info;
    if (name == "debug") level = spdlog::level::debug;
  }
  log().set_level(level);
}

void emit(const Json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << dump_json(j);
  } else {
    write_json_file(path, j);
  }
}

std::string minus(std::string s) {
  if (!s.empty() && s[0] == '-') return "−" + s.substr(1);
  return s;
}

constexpr double kZeroEigenvalue = 1e-12;

std::string format_number(double x) { return minus(fmt::format("{:.6g}", x)); }

// Graph inputs shared by several subcommands.
struct GraphSource {
  std::string graph_path;
  std::string gen;
  std::string example;
};

struct LoadedGraph {
  WeightedGraph graph;
  std::string source;
  std::optional<LatticeSpec> lattice;
  std::optional<Partition> example_partition;
  std::vector<Permutation> example_generators;
};

LoadedGraph load_graph(const GraphSource& src) {
  const int given = !src.graph_path.empty() + !src.gen.empty() + !src.example.empty();
  if (given != 1) {
    throw Error(ErrorCode::kParse, "give exactly one of --graph, --gen, --example");
  }
  if (!src.graph_path.empty()) {
    return {graph_from_json(read_json_file(src.graph_path)), "file:" + src.graph_path,
            std::nullopt, std::nullopt, {}};
  }
  if (!src.gen.empty()) {
    const LatticeSpec spec = LatticeSpec::parse(src.gen);
    return {generate(spec), "gen:" + spec.to_string(), spec, std::nullopt, {}};
  }
  const CatalogEntry& entry = catalog_entry(src.example);
  return {generate(entry.lattice), "example:" + entry.name, entry.lattice, entry.partition,
          entry.generators};
}

HillMap load_model(const std::string& path) { return model_from_json(read_json_file(path)); }

Json spectrum_summary(const QuotientModel& q) {
  Json j = quotient_to_json(q);
  j["eigenvalues"] = eigen_reversible(q.pbar, q.dbar).eigenvalues;
  return j;
}

std::string hex_digest(const unsigned char* bytes, unsigned int len) {
  std::string out;
  out.reserve(2 * len);
  for (unsigned int k = 0; k < len; ++k) out += fmt::format("{:02x}", bytes[k]);
  return out;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// ---------------------------------------------------------------- bundle

class BundleBuilder {
 public:
  void add(const std::string& name, Json data, const std::vector<std::string>& inputs) {
    Json upstream = Json::array();
    for (const std::string& in : inputs) upstream.push_back(stages_.at(in).at("output_hash"));
    const std::string out_hash = content_hash(data);
    stages_[name] = {{"data", std::move(data)},
                     {"inputs", inputs},
                     {"input_hash", content_hash(upstream)},
                     {"output_hash", out_hash}};
  }

  Json finish(const std::string& timestamp) const {
    Json bundle = {{"schema", kBundleSchema},
                   {"tool", "patternq"},
                   {"version", kToolVersion},
                   {"timestamp", timestamp},
                   {"stages", stages_}};
    Json hashes = Json::object();
    for (const char* name : {"graph", "model", "partition"}) {
      hashes[name] = stages_.at(name).at("output_hash");
    }
    bundle["input_hashes"] = hashes;
    return bundle;
  }

 private:
  Json stages_ = Json::object();
};

const std::vector<std::string>& required_stages() {
  static const std::vector<std::string> names = {
      "graph", "model", "partition", "quotient", "certificate", "pattern", "stability", "summary"};
  return names;
}

// ---------------------------------------------------------------- commands

struct GenArgs {
  std::string kind;
  int n = 0;
  int rows = 0;
  int cols = 0;
  std::string example;
  std::string out;
  std::string partition_out;
  std::string perms_out;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  LatticeSpec spec;
  std::optional<CatalogEntry> entry;
  if (!a.example.empty()) {
    entry = catalog_entry(a.example);
    spec = entry->lattice;
  } else {
    if (a.kind.empty()) throw Error(ErrorCode::kParse, "gen needs --kind or --example");
    spec.kind = lattice_kind_from_name(a.kind);
    spec.n = a.n;
    spec.rows = a.rows;
    spec.cols = a.cols;
  }
  const WeightedGraph g = generate(spec);
  emit(graph_to_json(g), a.out, out);
  if (!a.partition_out.empty()) {
    if (!entry) throw Error(ErrorCode::kParse, "--partition-out needs --example");
    write_json_file(a.partition_out, partition_to_json(entry->partition));
  }
  if (!a.perms_out.empty()) {
    write_json_file(a.perms_out,
                    perms_to_json(entry ? entry->generators : lattice_automorphisms(spec)));
  }
  log().info("generated {} ({} cells, {} edges)", spec.to_string(), g.n(), g.edges().size());
  return 0;
}

struct PartitionArgs {
  std::string graph;
  std::string mode = "refine";
  std::string partition;
  std::string seed;
  std::string perms;
  std::string out;
};

int cmd_partition(const PartitionArgs& a, std::ostream& out) {
  const WeightedGraph g = in_stage("load", [&] { return graph_from_json(read_json_file(a.graph)); });
  auto load_partition = [&](const std::string& path, const char* flag) {
    if (path.empty()) throw Error(ErrorCode::kParse, fmt::format("mode {} needs {}", a.mode, flag));
    return partition_from_json(read_json_file(path), g.n());
  };
  Partition pi = Partition::trivial(g.n());
  if (a.mode == "check") {
    pi = in_stage("load", [&] { return load_partition(a.partition, "--partition"); });
  } else if (a.mode == "refine") {
    std::optional<Partition> seed;
    if (!a.seed.empty()) seed = in_stage("load", [&] { return load_partition(a.seed, "--seed"); });
    pi = in_stage("partition", [&] { return coarsest_equitable_refinement(g, seed); });
  } else if (a.mode == "orbits") {
    if (a.perms.empty()) throw Error(ErrorCode::kParse, "mode orbits needs --perms");
    const auto perms = in_stage("load", [&] { return perms_from_json(read_json_file(a.perms)); });
    pi = in_stage("partition", [&] { return orbits_from_generators(g, perms); });
  } else if (a.mode == "bipartite") {
    const auto sides = bipartition(g);
    if (!sides) throw StageFailure("partition", "graph is not bipartite");
    pi = Partition::from_classes(g.n(), {sides->first, sides->second});
  } else {
    throw Error(ErrorCode::kParse, fmt::format("unknown mode '{}'", a.mode));
  }

  const EquitabilityCheck check = is_equitable(g, pi);
  Json j = {{"mode", a.mode}, {"classes", pi.classes()}, {"equitable", check.equitable}};
  if (check.witness) {
    const EquitabilityWitness& w = *check.witness;
    j["witness"] = {{"class_i", w.class_i}, {"class_j", w.class_j}, {"u", w.u},
                    {"v", w.v},             {"sum_u", w.sum_u},     {"sum_v", w.sum_v}};
  }
  if (check.equitable) j["quotient"] = spectrum_summary(quotient(g, pi));
  emit(j, a.out, out);
  return check.equitable ? 0 : kExitInconclusive;
}

struct QuotientArgs {
  std::string graph;
  std::string partition;
  std::string out;
};

int cmd_quotient(const QuotientArgs& a, std::ostream& out) {
  const WeightedGraph g = in_stage("load", [&] { return graph_from_json(read_json_file(a.graph)); });
  const Partition pi =
      in_stage("load", [&] { return partition_from_json(read_json_file(a.partition), g.n()); });
  Json j = in_stage("quotient", [&] { return spectrum_summary(quotient(g, pi)); });
  const BlockDecomposition decomp = in_stage("quotient", [&] { return block_decompose(g, pi); });
  j["lower_left_max"] = decomp.lower_left_max;
  emit(j, a.out, out);
  return 0;
}

struct ExistArgs {
  std::string graph;
  std::string partition;
  std::string model;
  std::string strategy = "newton";
  std::string out;
};

SolveOptions solve_options(const std::string& strategy) {
  SolveOptions opts;
  opts.strategy = strategy_from_name(strategy);
  opts.progress = [](long step, double norm) {
    log().debug("reduced solve step {} |dz| {:.3e}", step, norm);
  };
  return opts;
}

int cmd_exist(const ExistArgs& a, std::ostream& out) {
  const WeightedGraph g = in_stage("load", [&] { return graph_from_json(read_json_file(a.graph)); });
  const Partition pi =
      in_stage("load", [&] { return partition_from_json(read_json_file(a.partition), g.n()); });
  const HillMap model = in_stage("load", [&] { return load_model(a.model); });
  const SolveOptions opts = in_stage("load", [&] { return solve_options(a.strategy); });
  const QuotientModel q = in_stage("quotient", [&] { return quotient(g, pi); });
  const ExistenceCertificate cert = in_stage("certify", [&] { return certify(q, model); });
  const PatternSolution solved = in_stage("solve", [&] { return solve_reduced(q, model, opts); });
  const PatternSolution lifted = in_stage("lift", [&] { return lift(g, pi, solved, model); });
  Json j = pattern_to_json(lifted);
  j["verdict"] = verdict_name(cert.verdict);
  j["lambda_r"] = cert.lambda_r;
  j["certificate"] = certificate_to_json(cert);
  emit(j, a.out, out);
  return cert.verdict == ExistenceVerdict::kCertified ? 0 : kExitInconclusive;
}

struct StabilityArgs {
  std::string graph;
  std::string partition;
  std::string model;
  std::string pattern;
  std::string method = "all";
  std::string out;
};

int stability_exit(const StabilityReport& r) {
  if (r.full) return r.full->verdict == StabilityVerdict::kStable ? 0 : kExitUnstable;
  if (r.block) {
    double top = -std::numeric_limits<double>::infinity();
    for (double mu : r.block->full_eigenvalues) top = std::max(top, mu);
    return top < -kMarginalBand ? 0 : kExitUnstable;
  }
  return r.small_gain->verdict == SmallGainVerdict::kCertifiedStable ? 0 : kExitInconclusive;
}

int cmd_stability(const StabilityArgs& a, std::ostream& out) {
  const WeightedGraph g = in_stage("load", [&] { return graph_from_json(read_json_file(a.graph)); });
  const Partition pi =
      in_stage("load", [&] { return partition_from_json(read_json_file(a.partition), g.n()); });
  const HillMap model = in_stage("load", [&] { return load_model(a.model); });
  const Eigen::VectorXd z =
      in_stage("load", [&] { return pattern_z_from_json(read_json_file(a.pattern)); });
  const StabilityMethod method = in_stage("load", [&] { return stability_method_from_name(a.method); });
  const StabilityReport report =
      in_stage("stability", [&] { return analyze_stability(g, pi, model, z, method); });
  emit(stability_to_json(report), a.out, out);
  return stability_exit(report);
}

struct SimulateArgs {
  std::string graph;
  std::string model;
  std::string x0;
  std::string perturb = "vr";
  std::string partition;
  double eps = 0.01;
  double step = 0.01;
  double max_time = 1e4;
  double conv_tol = 1e-9;
  double cluster_tol = 0.0;
  std::string trace;
  std::string out;
};

Eigen::VectorXd initial_state(const SimulateArgs& a, const WeightedGraph& g,
                              const HillMap& model, std::string& label) {
  const double u_star = fixed_point(model).u_star;
  if (!a.x0.empty()) {
    label = "file:" + a.x0;
    const Json j = read_json_file(a.x0);
    const Eigen::VectorXd x0 = vector_from_json(j.is_object() ? j.at("x0") : j);
    if (x0.size() != g.n()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  fmt::format("x0 has {} entries, graph has {} cells", x0.size(), g.n()));
    }
    return x0;
  }
  label = a.perturb;
  Eigen::VectorXd direction = Eigen::VectorXd::Zero(g.n());
  if (a.perturb == "vr") {
    if (!a.partition.empty()) {
      const Partition pi = partition_from_json(read_json_file(a.partition), g.n());
      const ExistenceCertificate cert = certify(quotient(g, pi), model);
      for (int i = 0; i < g.n(); ++i) direction(i) = cert.v_r(pi.class_of()[i]);
    } else {
      const ScaledAdjacency sa = scaled_adjacency(g);
      const Spectrum s = eigen_reversible(sa.p, sa.d);
      direction = s.eigenvectors.col(s.eigenvectors.cols() - 1);
    }
  } else if (a.perturb.rfind("cell:", 0) == 0) {
    const int k = std::stoi(a.perturb.substr(5));
    if (k < 0 || k >= g.n()) throw Error(ErrorCode::kBadIndex, fmt::format("cell {} out of range", k));
    direction(k) = 1.0;
  } else if (a.perturb.rfind("random:", 0) == 0) {
    std::mt19937_64 rng(std::stoull(a.perturb.substr(7)));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int i = 0; i < g.n(); ++i) direction(i) = unit(rng);
  } else {
    throw Error(ErrorCode::kParse, fmt::format("unknown perturbation '{}'", a.perturb));
  }
  return perturbed_start(u_star, direction, a.eps, model.bound());
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const WeightedGraph g = in_stage("load", [&] { return graph_from_json(read_json_file(a.graph)); });
  const HillMap model = in_stage("load", [&] { return load_model(a.model); });
  std::string label;
  const Eigen::VectorXd x0 = in_stage("load", [&] { return initial_state(a, g, model, label); });
  SimulationOptions opts;
  opts.step = a.step;
  opts.max_time = a.max_time;
  opts.conv_tol = a.conv_tol;
  const SimulationTrace trace = in_stage("simulate", [&] { return integrate(g, model, x0, opts); });
  if (!a.trace.empty()) {
    std::ofstream csv(a.trace);
    if (!csv) throw StageFailure("write", "cannot open " + a.trace);
    write_trace_csv(csv, trace);
  }
  Json j = {{"initial", label},
            {"converged", trace.converged},
            {"final_time", trace.final_time},
            {"final_derivative_norm", trace.final_derivative_norm},
            {"final_state", to_json(trace.final_state)}};
  if (!a.trace.empty()) j["trace"] = a.trace;
  if (trace.converged) {
    const double tol = a.cluster_tol > 0.0 ? a.cluster_tol : 1e-4 * model.bound();
    j["classification"] = classification_to_json(classify(trace, tol));
  } else {
    j["classification"] = nullptr;
  }
  emit(j, a.out, out);
  return 0;
}

struct RenderArgs {
  std::string trace;
  std::string layout = "torus";
  int rows = 0;
  int cols = 0;
  double gap = 0.0;
  std::string svg;
};

int cmd_render(const RenderArgs& a, std::ostream& out) {
  const Eigen::VectorXd x = in_stage("load", [&] {
    std::ifstream in(a.trace);
    if (!in) throw Error(ErrorCode::kParse, "cannot open " + a.trace);
    return read_trace_final_state(in);
  });
  const LayoutGrid grid = in_stage("render", [&] {
    return resolve_grid(layout_from_name(a.layout), static_cast<int>(x.size()), a.rows, a.cols);
  });
  const double gap = a.gap > 0.0 ? a.gap : 1e-4 * std::max(x.cwiseAbs().maxCoeff(), 1e-12);
  const std::vector<int> ranks =
      group_ranks(std::vector<double>(x.data(), x.data() + x.size()), gap);
  out << render_ascii(grid, ranks);
  if (!a.svg.empty()) {
    std::ofstream svg(a.svg);
    if (!svg) throw StageFailure("write", "cannot open " + a.svg);
    svg << render_svg(grid, ranks);
  }
  return 0;
}

struct AnalyzeArgs {
  GraphSource source;
  std::string partition;
  std::string perms;
  bool auto_bipartite = false;
  bool auto_refine = false;
  std::string model;
  std::string strategy = "newton";
  bool simulate = false;
  double eps = 0.01;
  std::string out;
  std::string timestamp;
};

// Moves the first root with a stable full Jacobian to the front.
void prefer_stable_root(const WeightedGraph& g, const Partition& pi, const HillMap& model,
                        const ExistenceCertificate& cert, PatternSolution& solved) {
  if (solved.homogeneous || solved.alternatives.empty()) return;
  std::vector<Eigen::VectorXd> roots = {solved.z};
  roots.insert(roots.end(), solved.alternatives.begin(), solved.alternatives.end());
  for (size_t k = 0; k < roots.size(); ++k) {
    const PatternSolution candidate = lift(g, pi, roots[k], model);
    if (full_jacobian_stability(g, model, candidate.u).verdict != StabilityVerdict::kStable) {
      continue;
    }
    if (k == 0) return;
    std::swap(roots[0], roots[k]);
    solved.z = roots[0];
    solved.alternatives.assign(roots.begin() + 1, roots.end());
    const double along = (solved.z.array() - cert.u_star).matrix().dot(cert.v_r);
    solved.side = along < 0.0 ? -1 : 1;
    log().info("root {} is stable; reporting it first", k);
    return;
  }
}

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const LoadedGraph lg = in_stage("load", [&] { return load_graph(a.source); });
  const WeightedGraph& g = lg.graph;
  const HillMap model = in_stage("load", [&] { return load_model(a.model); });
  const SolveOptions opts = in_stage("load", [&] { return solve_options(a.strategy); });

  const int choices = !a.partition.empty() + !a.perms.empty() + a.auto_bipartite + a.auto_refine;
  if (choices > 1) {
    throw StageFailure("partition",
                       "give at most one of --partition, --perms, --auto-bipartite, --auto-refine");
  }
  std::string method;
  const Partition pi = [&]() -> Partition {
    if (!a.partition.empty()) {
      method = "file";
      return in_stage("load",
                      [&] { return partition_from_json(read_json_file(a.partition), g.n()); });
    }
    if (!a.perms.empty()) {
      method = "orbits";
      const auto perms = in_stage("load", [&] { return perms_from_json(read_json_file(a.perms)); });
      return in_stage("partition", [&] { return orbits_from_generators(g, perms); });
    }
    if (a.auto_bipartite) {
      method = "auto-bipartite";
      const auto sides = in_stage("partition", [&] { return bipartition(g); });
      if (!sides) throw StageFailure("partition", "graph is not bipartite");
      return Partition::from_classes(g.n(), {sides->first, sides->second});
    }
    if (a.auto_refine) {
      method = "auto-refine";
      return in_stage("partition", [&] { return coarsest_equitable_refinement(g); });
    }
    if (lg.example_partition) {
      method = "example";
      return *lg.example_partition;
    }
    throw StageFailure("partition",
                       "no partition: use --partition, --perms, --auto-bipartite or --auto-refine");
  }();
  log().info("partition ({}): {} classes", method, pi.size());

  const QuotientModel q = in_stage("quotient", [&] { return quotient(g, pi); });
  const ExistenceCertificate cert = in_stage("certify", [&] { return certify(q, model); });
  log().info("certificate {} (lambda_r {:.6g}, |T'(u*)| {:.6g})", verdict_name(cert.verdict),
             cert.lambda_r, std::abs(cert.t_prime_star));
  PatternSolution solved = in_stage("solve", [&] { return solve_reduced(q, model, opts); });
  if (solved.warning) log().warn("{}", *solved.warning);
  in_stage("stability", [&] { prefer_stable_root(g, pi, model, cert, solved); });
  const PatternSolution lifted = in_stage("lift", [&] { return lift(g, pi, solved, model); });
  const StabilityReport stab = in_stage(
      "stability", [&] { return analyze_stability(g, pi, model, lifted.z, StabilityMethod::kAll); });

  int code = kExitInconclusive;
  if (cert.verdict == ExistenceVerdict::kCertified) code = stability_exit(stab);

  BundleBuilder bundle;
  Json graph_data = {{"source", lg.source}, {"graph", graph_to_json(g)}};
  if (lg.lattice) graph_data["lattice"] = lg.lattice->to_string();
  bundle.add("graph", std::move(graph_data), {});
  bundle.add("model", model_to_json(model), {});
  bundle.add("partition", {{"method", method}, {"classes", pi.classes()}}, {"graph"});
  bundle.add("quotient", spectrum_summary(q), {"graph", "partition"});
  bundle.add("certificate", certificate_to_json(cert), {"quotient", "model"});
  bundle.add("pattern", pattern_to_json(lifted), {"graph", "partition", "model", "certificate"});
  bundle.add("stability", stability_to_json(stab), {"graph", "partition", "model", "pattern"});
  std::vector<std::string> summary_inputs = {"certificate", "stability"};
  if (a.simulate) {
    const PatternSolution& pattern = lifted;
    const VerificationReport report = in_stage(
        "simulate", [&] { return verify_certificate(g, pi, model, pattern, a.eps); });
    bundle.add("simulation", verification_to_json(report),
               {"graph", "partition", "model", "pattern"});
    summary_inputs.push_back("simulation");
  }
  Json summary = {{"existence", verdict_name(cert.verdict)},
                  {"homogeneous", lifted.homogeneous},
                  {"exit_code", code}};
  summary["stability"] = stab.full ? Json(verdict_name(stab.full->verdict)) : Json(nullptr);
  bundle.add("summary", std::move(summary), summary_inputs);

  const Json result = bundle.finish(a.timestamp.empty() ? utc_timestamp() : a.timestamp);
  in_stage("write", [&] { emit(result, a.out, out); });
  return code;
}

struct ReportArgs {
  std::string bundle;
  std::string svg;
};

std::optional<std::pair<LayoutGrid, std::vector<int>>> pattern_picture(const Json& bundle) {
  const Json& stages = bundle.at("stages");
  const Json& graph = stages.at("graph").at("data");
  if (!graph.contains("lattice")) return std::nullopt;
  const LatticeSpec spec = LatticeSpec::parse(graph.at("lattice").get<std::string>());
  Layout layout;
  try {
    layout = layout_for(spec.kind);
  } catch (const Error&) {
    return std::nullopt;
  }
  const std::vector<double> x = stages.at("pattern").at("data").at("x").get<std::vector<double>>();
  const double amplitude = stages.at("model").at("data").at("A").get<double>();
  LayoutGrid grid = resolve_grid(layout, static_cast<int>(x.size()), spec.rows, spec.cols);
  return std::pair(grid, group_ranks(x, 1e-6 * amplitude));
}

int cmd_report(const ReportArgs& a, std::ostream& out) {
  const Json bundle = in_stage("load", [&] { return read_json_file(a.bundle); });
  const std::string text = in_stage("report", [&] { return render_report(bundle); });
  out << text;
  if (!a.svg.empty()) {
    const auto picture = in_stage("report", [&] { return pattern_picture(bundle); });
    if (!picture) throw StageFailure("report", "bundle graph has no lattice layout");
    std::ofstream svg(a.svg);
    if (!svg) throw StageFailure("write", "cannot open " + a.svg);
    svg << render_svg(picture->first, picture->second);
  }
  return 0;
}

std::string matrix_text(const Json& m) {
  std::string s = "[";
  for (size_t i = 0; i < m.size(); ++i) {
    s += i ? ",[" : "[";
    for (size_t k = 0; k < m[i].size(); ++k) {
      if (k) s += ",";
      s += format_fraction(m[i][k].get<double>());
    }
    s += "]";
  }
  return s + "]";
}

std::string list_text(const Json& v, bool fractions) {
  std::string s;
  for (size_t k = 0; k < v.size(); ++k) {
    if (k) s += ", ";
    const double x = v[k].get<double>();
    s += fractions ? format_fraction(x) : format_number(x);
  }
  return s;
}

}  // namespace

std::string content_hash(const Json& value) {
  const std::string text = value.dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kBadBundle, "sha256 failed");
  }
  return hex_digest(digest, len);
}

void verify_bundle(const Json& bundle) {
  try {
    if (!bundle.is_object() || bundle.value("schema", 0) != kBundleSchema) {
      throw Error(ErrorCode::kBadBundle, "unsupported or missing schema");
    }
    const Json& stages = bundle.at("stages");
    for (const std::string& name : required_stages()) {
      if (!stages.contains(name)) throw Error(ErrorCode::kBadBundle, "missing stage " + name);
    }
    for (const auto& [name, stage] : stages.items()) {
      if (content_hash(stage.at("data")) != stage.at("output_hash").get<std::string>()) {
        throw Error(ErrorCode::kBadBundle, "stage " + name + ": output hash mismatch");
      }
      Json upstream = Json::array();
      for (const Json& in : stage.at("inputs")) {
        const std::string dep = in.get<std::string>();
        if (!stages.contains(dep)) {
          throw Error(ErrorCode::kBadBundle, "stage " + name + ": unknown input " + dep);
        }
        upstream.push_back(stages.at(dep).at("output_hash"));
      }
      if (content_hash(upstream) != stage.at("input_hash").get<std::string>()) {
        throw Error(ErrorCode::kBadBundle, "stage " + name + ": input hash mismatch");
      }
    }
    for (const auto& [name, hash] : bundle.at("input_hashes").items()) {
      if (!stages.contains(name) || stages.at(name).at("output_hash") != hash) {
        throw Error(ErrorCode::kBadBundle, "input hash of " + name + " does not match");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kBadBundle, e.what());
  }
}

std::string format_fraction(double x) {
  if (!std::isfinite(x)) return fmt::format("{}", x);
  for (int q = 1; q <= 64; ++q) {
    const double p = std::round(x * q);
    if (std::abs(x - p / q) < 1e-9 * std::max(1.0, std::abs(x))) {
      const long num = static_cast<long>(p);
      if (num == 0) return "0";
      return minus(q == 1 ? fmt::format("{}", num) : fmt::format("{}/{}", num, q));
    }
  }
  return format_number(x);
}

std::string render_report(const Json& bundle) {
  verify_bundle(bundle);
  try {
    const Json& st = bundle.at("stages");
    const Json& graph = st.at("graph").at("data");
    const Json& model = st.at("model").at("data");
    const Json& classes = st.at("partition").at("data").at("classes");
    const Json& quot = st.at("quotient").at("data");
    const Json& cert = st.at("certificate").at("data");
    const Json& pattern = st.at("pattern").at("data");
    const Json& stab = st.at("stability").at("data");
    const Json& summary = st.at("summary").at("data");

    std::ostringstream out;
    out << fmt::format("patternq {} bundle (schema {})\n", bundle.at("version").get<std::string>(),
                       bundle.at("schema").get<int>());
    out << fmt::format("graph: {} ({} cells, {} edges)\n", graph.at("source").get<std::string>(),
                       graph.at("graph").at("n").get<int>(), graph.at("graph").at("edges").size());
    out << fmt::format("model: A = {}, K = {}, h = {}, tau = {}\n",
                       format_number(model.at("A")), format_number(model.at("K")),
                       format_number(model.at("h")), format_number(model.at("tau")));
    std::string sizes;
    for (size_t k = 0; k < classes.size(); ++k) {
      sizes += (k ? "/" : "") + std::to_string(classes[k].size());
    }
    out << fmt::format("partition: {} classes ({}), sizes {}\n", classes.size(),
                       st.at("partition").at("data").at("method").get<std::string>(), sizes);

    const double lambda = cert.at("lambda_r").get<double>();
    std::string threshold = "threshold: none (λ_r ≥ 0)";
    if (lambda < -kZeroEigenvalue) threshold = "threshold |T'(u*)| > " + format_fraction(-1.0 / lambda);
    out << fmt::format("P̄ = {}, λ_r = {}, {}\n", matrix_text(quot.at("pbar")),
                       format_fraction(lambda), threshold);
    out << fmt::format("quotient eigenvalues: {}\n", list_text(quot.at("eigenvalues"), true));
    if (cert.at("lambda_r_multiplicity").get<int>() > 1) {
      out << fmt::format("λ_r multiplicity: {}\n", cert.at("lambda_r_multiplicity").get<int>());
    }
    out << fmt::format("reduced graph bipartite: {}\n",
                       quot.at("reduced_bipartite").get<bool>() ? "yes" : "no");
    out << fmt::format("u* = {}, |T'(u*)| = {}\n", format_number(cert.at("u_star")),
                       format_number(std::abs(cert.at("t_prime_star").get<double>())));
    out << fmt::format("existence: {}\n", cert.at("verdict").get<std::string>());

    if (pattern.at("homogeneous").get<bool>()) {
      out << fmt::format("homogeneous fixed point u* = {}\n", format_number(cert.at("u_star")));
    } else {
      out << fmt::format("pattern: z = [{}] (strategy {})\n", list_text(pattern.at("z"), false),
                         pattern.at("strategy").get<std::string>());
      for (const Json& alt : pattern.at("alternatives")) {
        out << fmt::format("alternative root: z = [{}]\n", list_text(alt, false));
      }
    }
    out << fmt::format("residuals: reduced {:.3e}, full {:.3e}\n",
                       pattern.at("residuals").at("reduced").get<double>(),
                       pattern.at("residuals").at("full").get<double>());
    if (pattern.contains("warning")) {
      out << "warning: " << pattern.at("warning").get<std::string>() << "\n";
    }
    if (stab.contains("full")) {
      out << fmt::format("stability (full Jacobian): {}, spectral abscissa {}\n",
                         stab["full"].at("verdict").get<std::string>(),
                         format_number(stab["full"].at("spectral_abscissa")));
    }
    if (stab.contains("block")) {
      out << fmt::format("block decomposition: representative [{}], consistency {:.3e}\n",
                         list_text(stab["block"].at("representative_eigenvalues"), false),
                         stab["block"].at("block_consistency").get<double>());
    }
    if (stab.contains("small_gain")) {
      const Json& sg = stab["small_gain"];
      out << fmt::format("small gain: ρ(PΓ) = {}, ρ(P̄Γ̄) = {}, {}\n",
                         format_number(sg.at("rho_full")), format_number(sg.at("rho_reduced")),
                         sg.at("verdict").get<std::string>());
    }
    if (st.contains("simulation")) {
      const Json& sim = st.at("simulation").at("data");
      out << fmt::format("simulation: {} ({})\n", sim.at("outcome").get<std::string>(),
                         sim.at("note").get<std::string>());
    }
    out << fmt::format("exit code: {}\n", summary.at("exit_code").get<int>());
    if (const auto picture = pattern_picture(bundle)) {
      out << render_ascii(picture->first, picture->second);
    }
    return out.str();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kBadBundle, e.what());
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  configure_logging();
  CLI::App app{"Steady-state pattern certificates for lateral-inhibition networks", "patternq"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Write a built-in lattice as graph JSON");
  gen_cmd->add_option("--kind", gen.kind, "path|cycle|torus_mesh|hex_torus|buckyball|fig5");
  gen_cmd->add_option("--n", gen.n, "Cells of a path or cycle");
  gen_cmd->add_option("--rows", gen.rows);
  gen_cmd->add_option("--cols", gen.cols);
  gen_cmd->add_option("--example", gen.example, "Named catalog entry");
  gen_cmd->add_option("--out", gen.out);
  gen_cmd->add_option("--partition-out", gen.partition_out);
  gen_cmd->add_option("--perms-out", gen.perms_out);

  PartitionArgs part;
  CLI::App* part_cmd = app.add_subcommand("partition", "Check, refine or compute orbit partitions");
  part_cmd->add_option("--graph", part.graph)->required();
  part_cmd->add_option("--mode", part.mode, "check|refine|orbits|bipartite");
  part_cmd->add_option("--partition", part.partition);
  part_cmd->add_option("--seed", part.seed);
  part_cmd->add_option("--perms", part.perms);
  part_cmd->add_option("--out", part.out);

  QuotientArgs quot;
  CLI::App* quot_cmd = app.add_subcommand("quotient", "Quotient matrix and its spectrum");
  quot_cmd->add_option("--graph", quot.graph)->required();
  quot_cmd->add_option("--partition", quot.partition)->required();
  quot_cmd->add_option("--out", quot.out);

  ExistArgs exist;
  CLI::App* exist_cmd = app.add_subcommand("exist", "Existence certificate and reduced solve");
  exist_cmd->add_option("--graph", exist.graph)->required();
  exist_cmd->add_option("--partition", exist.partition)->required();
  exist_cmd->add_option("--model", exist.model)->required();
  exist_cmd->add_option("--strategy", exist.strategy, "newton|ode");
  exist_cmd->add_option("--out", exist.out);

  StabilityArgs stab;
  CLI::App* stab_cmd = app.add_subcommand("stability", "Local stability of a pattern");
  stab_cmd->add_option("--graph", stab.graph)->required();
  stab_cmd->add_option("--partition", stab.partition)->required();
  stab_cmd->add_option("--model", stab.model)->required();
  stab_cmd->add_option("--pattern", stab.pattern)->required();
  stab_cmd->add_option("--method", stab.method, "full|block|smallgain|all");
  stab_cmd->add_option("--out", stab.out);

  SimulateArgs sim;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Integrate the network from a start state");
  sim_cmd->add_option("--graph", sim.graph)->required();
  sim_cmd->add_option("--model", sim.model)->required();
  sim_cmd->add_option("--x0", sim.x0, "JSON array of initial states");
  sim_cmd->add_option("--perturb", sim.perturb, "vr|cell:<k>|random:<seed>");
  sim_cmd->add_option("--partition", sim.partition, "Partition whose lambda_r direction vr uses");
  sim_cmd->add_option("--eps", sim.eps);
  sim_cmd->add_option("--step", sim.step, "RK4 step in units of tau");
  sim_cmd->add_option("--max-time", sim.max_time, "Horizon in units of tau");
  sim_cmd->add_option("--conv-tol", sim.conv_tol);
  sim_cmd->add_option("--cluster-tol", sim.cluster_tol);
  sim_cmd->add_option("--trace", sim.trace, "CSV trace output");
  sim_cmd->add_option("--out", sim.out);

  RenderArgs render;
  CLI::App* render_cmd = app.add_subcommand("render", "Draw the final state of a trace");
  render_cmd->add_option("--trace", render.trace)->required();
  render_cmd->add_option("--layout", render.layout, "torus|hex|bucky");
  render_cmd->add_option("--rows", render.rows);
  render_cmd->add_option("--cols", render.cols);
  render_cmd->add_option("--gap", render.gap, "Grouping gap");
  render_cmd->add_option("--svg", render.svg);

  AnalyzeArgs analyze;
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Run the whole pipeline into a bundle");
  analyze_cmd->add_option("--graph", analyze.source.graph_path);
  analyze_cmd->add_option("--gen", analyze.source.gen, "kind:args, e.g. torus_mesh:4,4");
  analyze_cmd->add_option("--example", analyze.source.example);
  analyze_cmd->add_option("--partition", analyze.partition);
  analyze_cmd->add_option("--perms", analyze.perms);
  analyze_cmd->add_flag("--auto-bipartite", analyze.auto_bipartite);
  analyze_cmd->add_flag("--auto-refine", analyze.auto_refine);
  analyze_cmd->add_option("--model", analyze.model)->required();
  analyze_cmd->add_option("--strategy", analyze.strategy, "newton|ode");
  analyze_cmd->add_flag("--simulate", analyze.simulate);
  analyze_cmd->add_option("--eps", analyze.eps);
  analyze_cmd->add_option("--out", analyze.out);
  analyze_cmd->add_option("--timestamp", analyze.timestamp, "Recorded instead of the clock");

  ReportArgs report;
  CLI::App* report_cmd = app.add_subcommand("report", "Summarize an analysis bundle");
  report_cmd->add_option("--bundle", report.bundle)->required();
  report_cmd->add_option("--svg", report.svg);

  std::vector<std::string> argv_store = {"patternq"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error [args]: " << e.what() << "\n";
    return kExitError;
  }

  const CLI::App* cmd = app.get_subcommands().front();
  try {
    if (cmd == gen_cmd) return cmd_gen(gen, out);
    if (cmd == part_cmd) return cmd_partition(part, out);
    if (cmd == quot_cmd) return cmd_quotient(quot, out);
    if (cmd == exist_cmd) return cmd_exist(exist, out);
    if (cmd == stab_cmd) return cmd_stability(stab, out);
    if (cmd == sim_cmd) return cmd_simulate(sim, out);
    if (cmd == render_cmd) return cmd_render(render, out);
    if (cmd == analyze_cmd) return cmd_analyze(analyze, out);
    return cmd_report(report, out);
  } catch (const StageFailure& e) {
    err << "error [" << e.stage() << "]: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error [" << cmd->get_name() << "]: " << e.what() << "\n";
  }
  return kExitError;
}

}  // namespace patternq
