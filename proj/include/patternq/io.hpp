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

// JSON and CSV encodings of the project's data types.
//
//   graph       {"n": 4, "edges": [[0, 1, 1.0], ...]}
//   partition   {"classes": [[0, 2], [1, 3]]}
//   generators  {"perms": [[1, 2, 3, 0], ...]}
//   model       {"A": 2.0, "K": 1.0, "h": 6.0, "tau": 1.0}
//   pattern     {"z": [...], "u": [...], ...}

#ifndef PATTERNQ_IO_HPP_
#define PATTERNQ_IO_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "patternq/cell_model.hpp"
#include "patternq/existence.hpp"
#include "patternq/graph.hpp"
#include "patternq/partition.hpp"
#include "patternq/simulate.hpp"
#include "patternq/stability.hpp"

namespace patternq {

using Json = nlohmann::json;

/// Throws kParse when the file is missing or malformed.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& value);
/// Two-space indented dump followed by a newline.
std::string dump_json(const Json& value);

Json to_json(const Eigen::VectorXd& v);
Json to_json(const Eigen::MatrixXd& m);
Json to_json(const std::vector<double>& v);
Eigen::VectorXd vector_from_json(const Json& j);

Json graph_to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const Json& j);

Json partition_to_json(const Partition& pi);
Partition partition_from_json(const Json& j, int n);

Json perms_to_json(const std::vector<Permutation>& perms);
std::vector<Permutation> perms_from_json(const Json& j);

Json model_to_json(const HillMap& m);
HillMap model_from_json(const Json& j);

Json quotient_to_json(const QuotientModel& q);
Json certificate_to_json(const ExistenceCertificate& c);
Json pattern_to_json(const PatternSolution& p);
/// Reads the class values "z" of a pattern file.
Eigen::VectorXd pattern_z_from_json(const Json& j);

Json stability_to_json(const StabilityReport& r);
Json classification_to_json(const EmpiricalPattern& p);
Json verification_to_json(const VerificationReport& r);

/// "t,x_0,...,x_{N-1}" header and one row per sample.
void write_trace_csv(std::ostream& out, const SimulationTrace& trace);
/// Final row of a trace CSV.
Eigen::VectorXd read_trace_final_state(std::istream& in);

}  // namespace patternq

#endif  // PATTERNQ_IO_HPP_
