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

// Scenario files: a JSON document describing one system (Hamiltonian terms,
// frame, basis drift, optional gauge, observables) and the identity checks to
// run on it. See README.md for the schema.

#include <optional>
#include <string>
#include <vector>

#include "fbqm/evolution.hpp"
#include "fbqm/frames.hpp"
#include "fbqm/observables.hpp"

namespace fbqm {

enum class OutputFormat { kJson, kCsv };

struct CheckRequest {
  std::string name;
  std::optional<double> tolerance;
};

struct IntegratorOptions {
  MagnusKernel kernel = MagnusKernel::kGauss4;
  /// Finite-difference step as a fraction of the window length.
  double fd_step = 1e-4;
};

struct OutputOptions {
  OutputFormat format = OutputFormat::kJson;
  std::string path;  // empty: stdout
  int sample_every = 1;
};

struct GaugeSpec {
  bool heisenberg = false;
  std::optional<GaugeTransform> transform;  // set unless heisenberg
};

struct Scenario {
  std::string name;
  Eigen::Index dim = 0;
  double hbar = 1.0;
  double t0 = 0.0;
  double t1 = 1.0;
  int steps = 0;
  TimeMatrix hamiltonian;
  FrameField frame;
  BasisDrift drift;
  std::optional<GaugeSpec> gauge;
  std::vector<ObservableSpec> observables;
  Vector initial_state;
  std::vector<CheckRequest> checks;
  IntegratorOptions integrator;
  OutputOptions output;

  HamiltonianSpec hamiltonian_spec() const { return HamiltonianSpec(hamiltonian, hbar); }
  TimeGrid grid() const { return TimeGrid{t0, t1, steps}; }
  double fd_step() const { return integrator.fd_step * (t1 - t0); }
};

/// Reads and validates a scenario file. Errors carry kParse (with the field
/// path or line/column), kDimensionMismatch, kNotHermitian or
/// kSingularMatrix.
Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& text);

/// Re-runs the load-time validation, e.g. after overriding steps or hbar.
void validate_scenario(const Scenario& scenario);

/// Resolves the matrix shorthands sx, sy, sz, n, a, adag, id, zero.
Matrix shorthand_matrix(const std::string& name, Eigen::Index dim);

}  // namespace fbqm
