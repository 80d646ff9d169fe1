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

// Randomized conformance harness: generates Rabi-class systems with analytic
// frames and gauges and runs a named subset of the check catalogue on each.

#include <cstdint>
#include <string>
#include <vector>

#include "fbqm/report.hpp"
#include "fbqm/scenario.hpp"

namespace fbqm {

struct VerifyOptions {
  std::string suite = "all";
  std::uint64_t seed = 0;
  int dim_min = 2;
  int dim_max = 6;
  int instances = 20;
  int steps = 2000;
};

/// Suite names: all, evolution, transport, gauge, observables.
const std::vector<std::string>& verify_suites();
/// Check names exercised by a suite; throws kInvalidArgument for unknown suites.
std::vector<std::string> suite_checks(const std::string& suite);

/// Random scenarios for one instance. `kind` is "main" (time-dependent H,
/// analytic frame and gauge), "closed" (constant H over a window of length pi)
/// or "drift" (constant anti-Hermitian basis drift). Deterministic in
/// (seed, index, dim).
Scenario random_scenario(std::uint64_t seed, int index, int dim, const std::string& kind,
                         int steps = 2000);

/// Runs the suite on `instances` random systems. Per-check residuals are
/// aggregated as the worst case over instances; numerical failures become
/// failing entries.
Report verify(const VerifyOptions& options);

}  // namespace fbqm
