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

// The catalogue of identity checks and the scenario runner.

#include <string>
#include <vector>

#include "fbqm/report.hpp"
#include "fbqm/scenario.hpp"

namespace fbqm {

struct CheckInfo {
  const char* name;
  const char* equation;
  double default_tolerance;
  bool requires_zero_drift;
  bool requires_constant_hamiltonian;
  bool requires_gauge;
};

/// Every check known to the runner, sorted by name.
const std::vector<CheckInfo>& check_catalogue();
/// nullptr when unknown.
const CheckInfo* find_check(const std::string& name);

/// Tolerance for order checks: the residual is the shortfall of the observed
/// order below 2, and 2 - log2(3.5) corresponds to a 3.5x error reduction
/// when the step halves.
double order_deficit_tolerance();

/// Observed-order shortfall max(0, 2 - log2(coarse/fine)); zero when the
/// coarse error is already at the rounding floor.
double order_deficit(double coarse_error, double fine_error, double floor = 1e-11);

/// Builds propagator, transport, coefficients and bundle Hamiltonian for the
/// scenario, evaluates every requested check and samples the expectation
/// trajectory. Numerical failures inside a check are rethrown with the check
/// name attached.
Report run_scenario(const Scenario& scenario);

}  // namespace fbqm
