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

#ifndef PATTERNQ_CLI_HPP_
#define PATTERNQ_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "patternq/io.hpp"

namespace patternq {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kBundleSchema = 1;

/// Exit codes of `analyze`.
enum ExitCode : int {
  kExitCertifiedStable = 0,
  kExitError = 1,
  kExitInconclusive = 2,
  kExitUnstable = 3,
};

/// Runs the command line (args excludes the program name). Machine-readable
/// results go to out, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Lowercase hex SHA-256 of the compact dump of value.
std::string content_hash(const Json& value);

/// Checks every stage's recorded hashes. Throws kBadBundle.
void verify_bundle(const Json& bundle);

/// Human-readable summary of an analysis bundle.
std::string render_report(const Json& bundle);

/// p/q with q <= 64 when x is that close to a fraction, else a decimal.
std::string format_fraction(double x);

}  // namespace patternq

#endif  // PATTERNQ_CLI_HPP_
