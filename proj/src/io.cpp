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

#include "patternq/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "patternq/error.hpp"

namespace patternq {

namespace {

template <typename F>
auto parse_guard(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string(what) + ": " + e.what());
  }
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open '" + path + "'");
  return parse_guard(path.c_str(), [&] { return Json::parse(in); });
}

void write_json_file(const std::string& path, const Json& value) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kParse, "cannot write '" + path + "'");
  out << dump_json(value);
}

std::string dump_json(const Json& value) { return value.dump(2) + "\n"; }

Json to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

Json to_json(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (int i = 0; i < m.rows(); ++i) out.push_back(to_json(Eigen::VectorXd(m.row(i))));
  return out;
}

Json to_json(const std::vector<double>& v) { return Json(v); }

Eigen::VectorXd vector_from_json(const Json& j) {
  return parse_guard("vector", [&] {
    const auto values = j.get<std::vector<double>>();
    return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(values.data(), values.size()));
  });
}

Json graph_to_json(const WeightedGraph& g) {
  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.i, e.j, e.w});
  return {{"n", g.n()}, {"edges", edges}};
}

WeightedGraph graph_from_json(const Json& j) {
  auto [n, edges] = parse_guard("graph", [&] {
    std::vector<Edge> out;
    for (const Json& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) {
        throw Error(ErrorCode::kParse, "graph: each edge must be [i, j, w]");
      }
      out.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
    }
    return std::pair(j.at("n").get<int>(), std::move(out));
  });
  return build_graph(n, std::move(edges));
}

Json partition_to_json(const Partition& pi) { return {{"classes", pi.classes()}}; }

Partition partition_from_json(const Json& j, int n) {
  auto classes = parse_guard("partition", [&] {
    return j.at("classes").get<std::vector<std::vector<int>>>();
  });
  return Partition::from_classes(n, std::move(classes));
}

Json perms_to_json(const std::vector<Permutation>& perms) { return {{"perms", perms}}; }

std::vector<Permutation> perms_from_json(const Json& j) {
  return parse_guard("perms", [&] { return j.at("perms").get<std::vector<Permutation>>(); });
}

Json model_to_json(const HillMap& m) {
  return {{"A", m.amplitude()}, {"K", m.threshold()}, {"h", m.exponent()}, {"tau", m.tau()}};
}

HillMap model_from_json(const Json& j) {
  return parse_guard("model", [&] {
    return HillMap(j.at("A").get<double>(), j.at("K").get<double>(), j.at("h").get<double>(),
                   j.value("tau", 1.0));
  });
}

Json quotient_to_json(const QuotientModel& q) {
  Json edges = Json::array();
  for (auto [a, b] : q.reduced_edges) edges.push_back({a, b});
  Json out = {{"pbar", to_json(q.pbar)},
              {"dbar", to_json(q.dbar)},
              {"classes", q.partition.classes()},
              {"reduced_edges", edges},
              {"reduced_bipartite", q.reduced_coloring.has_value()}};
  if (q.reduced_coloring) out["reduced_coloring"] = *q.reduced_coloring;
  return out;
}

Json certificate_to_json(const ExistenceCertificate& c) {
  return {{"verdict", verdict_name(c.verdict)},
          {"u_star", c.u_star},
          {"t_prime_star", c.t_prime_star},
          {"lambda_r", c.lambda_r},
          {"lambda_r_multiplicity", c.lambda_r_multiplicity},
          {"v_r", to_json(c.v_r)},
          {"quotient_eigenvalues", c.quotient_eigenvalues},
          {"condition_value", c.condition_value},
          {"assumption1", c.assumption1}};
}

Json pattern_to_json(const PatternSolution& p) {
  Json alternatives = Json::array();
  for (const auto& z : p.alternatives) alternatives.push_back(to_json(z));
  Json out = {{"z", to_json(p.z)},
              {"u", to_json(p.u)},
              {"x", to_json(p.x)},
              {"residuals", {{"reduced", p.residual_reduced}, {"full", p.residual_full}}},
              {"homogeneous", p.homogeneous},
              {"side", p.side},
              {"alternatives", alternatives},
              {"strategy", p.strategy_used}};
  if (p.warning) out["warning"] = *p.warning;
  return out;
}

Eigen::VectorXd pattern_z_from_json(const Json& j) {
  if (!j.contains("z")) throw Error(ErrorCode::kParse, "pattern: missing \"z\"");
  return vector_from_json(j.at("z"));
}

Json stability_to_json(const StabilityReport& r) {
  Json out = Json::object();
  if (r.full) {
    out["full"] = {{"spectral_abscissa", r.full->abscissa},
                   {"verdict", verdict_name(r.full->verdict)},
                   {"eigenvalues", r.full->spectrum.eigenvalues}};
  }
  if (r.block) {
    out["block"] = {{"representative_eigenvalues", r.block->representative.eigenvalues},
                    {"transverse_eigenvalues", r.block->transverse_eigenvalues},
                    {"matching_distance", r.block->matching_distance},
                    {"trace_residual", r.block->trace_residual},
                    {"structure_residual", r.block->structure_residual},
                    {"block_consistency", r.block->consistency}};
  }
  if (r.small_gain) {
    out["small_gain"] = {{"rho_full", r.small_gain->rho_full},
                         {"rho_reduced", r.small_gain->rho_reduced},
                         {"gamma", to_json(r.small_gain->gains.gamma_bar)},
                         {"verdict", verdict_name(r.small_gain->verdict)},
                         {"m_matrix", r.small_gain->m_matrix}};
  }
  return out;
}

Json classification_to_json(const EmpiricalPattern& p) {
  Json sizes = Json::array();
  for (const auto& g : p.groups) sizes.push_back(g.size());
  return {{"groups", p.groups}, {"values", p.values}, {"sizes", sizes}};
}

Json verification_to_json(const VerificationReport& r) {
  Json out = {{"certified", r.certified},
              {"note", r.note},
              {"converged", r.trace.converged},
              {"final_time", r.trace.final_time},
              {"final_derivative_norm", r.trace.final_derivative_norm},
              {"outcome", r.outcome()},
              {"max_deviation", r.trace.converged ? Json(r.max_deviation) : Json(nullptr)}};
  if (r.trace.converged) out["classification"] = classification_to_json(r.observed);
  return out;
}

void write_trace_csv(std::ostream& out, const SimulationTrace& trace) {
  const auto n = trace.final_state.size();
  out << "t";
  for (Eigen::Index i = 0; i < n; ++i) out << ",x_" << i;
  out << "\n" << std::setprecision(17);
  for (size_t k = 0; k < trace.times.size(); ++k) {
    out << trace.times[k];
    for (Eigen::Index i = 0; i < n; ++i) out << "," << trace.states[k](i);
    out << "\n";
  }
}

Eigen::VectorXd read_trace_final_state(std::istream& in) {
  std::string line, last;
  if (!std::getline(in, line) || line.rfind("t", 0) != 0) {
    throw Error(ErrorCode::kParse, "trace: missing header");
  }
  while (std::getline(in, line)) {
    if (!line.empty()) last = line;
  }
  if (last.empty()) throw Error(ErrorCode::kParse, "trace: no samples");
  std::vector<double> values;
  std::stringstream ss(last);
  std::string cell;
  bool first = true;
  while (std::getline(ss, cell, ',')) {
    if (first) {
      first = false;
      continue;
    }
    try {
      values.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParse, "trace: bad number '" + cell + "'");
    }
  }
  return Eigen::Map<const Eigen::VectorXd>(values.data(), values.size());
}

}  // namespace patternq
