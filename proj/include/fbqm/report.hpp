// Copyright 2026 The fbqm Authors
//
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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fbqm {

struct CheckResult {
  std::string name;
  std::string equation;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// One row of the expectation/residual trajectory emitted by `run`.
struct TrajectoryRow {
  double t = 0.0;
  std::vector<double> hilbert;  // one per observable
  std::vector<double> bundle;
  double unitarity_residual = 0.0;
  double central_identity_residual = 0.0;
  double bundle_schrodinger_residual = 0.0;
};

struct InstanceSummary {
  int index = 0;
  int dim = 0;
  bool passed = true;
  std::vector<std::string> failed_checks;
};

struct Report {
  std::string kind;  // "run" or "verify"
  std::string scenario;
  std::vector<CheckResult> checks;  // sorted by name
  std::vector<std::string> observable_names;
  std::vector<TrajectoryRow> trajectory;

  // run metadata
  int dim = 0;
  int steps = 0;
  double fd_step = 0.0;
  std::string kernel;

  // verify metadata
  std::string suite;
  std::uint64_t seed = 0;
  int dim_min = 0;
  int dim_max = 0;
  std::vector<InstanceSummary> instances;

  double wall_time_seconds = 0.0;

  bool all_passed() const;
  void sort_checks();
};

/// Pretty-printed JSON. With `include_timing` false the wall-time field is
/// omitted, which makes reports of deterministic runs byte-identical.
std::string to_json(const Report& report, bool include_timing = true);

/// Header `t,<obs>_hilbert,<obs>_bundle,...,unitarity_residual,d5_10_residual,
/// d5_13_residual`; values with 15 significant digits.
std::string to_csv(const Report& report);

}  // namespace fbqm
