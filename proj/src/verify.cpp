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

#include "fbqm/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "fbqm/checks.hpp"

namespace fbqm {

namespace {

const std::map<std::string, std::vector<std::string>>& suite_table() {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"evolution",
       {"closed_form_propagator", "composition", "drift_independence", "hamiltonian_recovery",
        "unitarity"}},
      {"transport",
       {"bundle_hamiltonian_forms", "bundle_schrodinger_order", "bundle_schrodinger_section",
        "bundle_schrodinger_transport", "central_identity", "central_identity_order",
        "metric_unitarity", "transport_correspondence"}},
      {"gauge",
       {"gauge_coefficients", "gauge_covariance", "gauge_hamiltonian", "gauge_transport",
        "heisenberg_gauge", "heisenberg_spectrum", "spectrum_invariance"}},
      {"observables",
       {"bundle_hamiltonian_morphism", "commutator_lift", "expectation_equality",
        "hermiticity_correspondence", "hermiticity_negative", "matrix_morphism_schrodinger",
        "morphism_derivative", "morphism_derivative_order", "product_law",
        "spectrum_invariance", "two_time_morphism"}},
  };
  return table;
}

class Sampler {
 public:
  Sampler(std::uint64_t seed, int index, int dim) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(dim)};
    rng_.seed(seq);
  }

  double uniform(double a, double b) {
    return a + (b - a) * std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }

  /// Complex Gaussian matrix with entries of variance 1/n.
  Matrix gaussian(Eigen::Index n) {
    Matrix m(n, n);
    const double s = 1.0 / std::sqrt(2.0 * static_cast<double>(n));
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(normal() * s, normal() * s);
    return m;
  }
  Matrix hermitian(Eigen::Index n, double scale) {
    const Matrix g = gaussian(n);
    return scale * 0.5 * (g + g.adjoint());
  }
  Vector state(Eigen::Index n) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(normal(), normal());
    return v / v.norm();
  }

 private:
  std::mt19937_64 rng_;
};

Term constant_term(std::string name, Matrix m) {
  return Term{std::move(name), std::move(m), Coefficient::constant(1.0)};
}

std::vector<CheckRequest> requests(const std::vector<std::string>& names) {
  std::vector<CheckRequest> out;
  for (const auto& n : names) out.push_back({n, std::nullopt});
  return out;
}

struct Outcome {
  double residual;
  bool pass;
};

/// Runs the checks; if the run fails numerically, each check is retried on
/// its own so only the failing ones are reported as failures.
std::map<std::string, Outcome> run_checks(Scenario s) {
  std::map<std::string, Outcome> out;
  if (s.checks.empty()) return out;
  try {
    for (const CheckResult& r : run_scenario(s).checks) out[r.name] = {r.residual, r.pass};
    return out;
  } catch (const Error&) {
  }
  const std::vector<CheckRequest> all = s.checks;
  for (const CheckRequest& req : all) {
    s.checks = {req};
    try {
      const CheckResult r = run_scenario(s).checks.at(0);
      out[r.name] = {r.residual, r.pass};
    } catch (const Error&) {
      out[req.name] = {std::numeric_limits<double>::quiet_NaN(), false};
    }
  }
  return out;
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names = {"all", "evolution", "gauge", "observables",
                                                 "transport"};
  return names;
}

std::vector<std::string> suite_checks(const std::string& suite) {
  if (suite == "all") {
    std::set<std::string> names;
    for (const auto& [_, checks] : suite_table()) names.insert(checks.begin(), checks.end());
    return {names.begin(), names.end()};
  }
  const auto it = suite_table().find(suite);
  if (it == suite_table().end())
    throw Error(ErrorCode::kInvalidArgument, "unknown suite '" + suite + "'");
  return it->second;
}

Scenario random_scenario(std::uint64_t seed, int index, int dim, const std::string& kind,
                         int steps) {
  if (dim < 1) throw Error(ErrorCode::kInvalidArgument, "random_scenario: dim < 1");
  const Eigen::Index n = dim;
  Sampler rng(seed, index, dim);

  const Matrix h0 = rng.hermitian(n, 1.0);
  const Matrix v = rng.hermitian(n, 0.5);
  const double omega = rng.uniform(0.5, 2.0);
  const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double window = rng.uniform(1.0, 3.0);
  const Matrix l0 = identity(n) + 0.3 * rng.gaussian(n);
  const Matrix k = 0.3 * rng.gaussian(n);
  const Matrix omega0 = identity(n) + 0.3 * rng.gaussian(n);
  const Matrix m = 0.3 * rng.gaussian(n);
  const Matrix a1 = rng.hermitian(n, 1.0);
  const Matrix a2 = rng.hermitian(n, 1.0);
  const Matrix b0 = rng.hermitian(n, 1.0);
  const Matrix b1 = rng.hermitian(n, 0.5);
  const double omega_b = rng.uniform(0.5, 2.0);
  const Vector psi0 = rng.state(n);
  const Matrix e = rng.gaussian(n);
  const Matrix drift = 0.3 * 0.5 * (e - e.adjoint());

  std::vector<Term> h_terms = {constant_term("H0", h0)};
  if (kind != "closed")
    h_terms.push_back(Term{"V", v, Coefficient::cos(1.0, omega, phase)});

  std::vector<ObservableSpec> observables;
  observables.emplace_back("A1", TimeMatrix::constant(a1));
  observables.emplace_back("A2", TimeMatrix::constant(a2));
  observables.emplace_back(
      "A3", TimeMatrix::terms(n, {constant_term("B0", b0),
                                  Term{"B1", b1, Coefficient::sin(1.0, omega_b, 0.0)}}));

  const double t1 = kind == "closed" ? std::numbers::pi : window;
  Scenario s{
      .name = "random-" + kind + "-" + std::to_string(index),
      .dim = n,
      .hbar = 1.0,
      .t0 = 0.0,
      .t1 = t1,
      .steps = steps,
      .hamiltonian = TimeMatrix::terms(n, std::move(h_terms)),
      .frame = FrameField(TimeMatrix::exp_flow(l0, k)),
      .drift = kind == "drift" ? BasisDrift(TimeMatrix::constant(drift)) : BasisDrift::zero(n),
      .gauge = kind == "main" ? std::optional<GaugeSpec>(GaugeSpec{
                                    false, GaugeTransform::from_omega(
                                               TimeMatrix::exp_flow(omega0, m))})
                              : std::nullopt,
      .observables = std::move(observables),
      .initial_state = psi0,
      .checks = {},
      .integrator = IntegratorOptions{},
      .output = OutputOptions{OutputFormat::kJson, "", steps},
  };
  return s;
}

Report verify(const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (options.dim_min < 1 || options.dim_max < options.dim_min)
    throw Error(ErrorCode::kInvalidArgument, "verify: need 1 <= dim_min <= dim_max");
  if (options.instances < 1)
    throw Error(ErrorCode::kInvalidArgument, "verify: need at least one instance");
  if (options.steps < 2) throw Error(ErrorCode::kInvalidArgument, "verify: steps < 2");
  const std::vector<std::string> names = suite_checks(options.suite);

  // Checks that need a dedicated system rather than the main one.
  const std::set<std::string> closed_only = {"closed_form_propagator"};
  const std::set<std::string> drift_only = {"drift_independence"};
  std::vector<std::string> main_checks, closed_checks, drift_checks;
  for (const auto& name : names) {
    if (closed_only.count(name)) closed_checks.push_back(name);
    else if (drift_only.count(name)) drift_checks.push_back(name);
    else main_checks.push_back(name);
  }

  Report report;
  report.kind = "verify";
  report.scenario = "random";
  report.suite = options.suite;
  report.seed = options.seed;
  report.dim_min = options.dim_min;
  report.dim_max = options.dim_max;
  report.steps = options.steps;
  report.fd_step = IntegratorOptions{}.fd_step;
  report.kernel = "gauss4";

  std::map<std::string, CheckResult> aggregate;
  for (const auto& name : names) {
    const CheckInfo* info = find_check(name);
    CheckResult r;
    r.name = name;
    r.equation = info->equation;
    r.tolerance = info->default_tolerance;
    r.pass = true;
    r.residual = name == "hermiticity_negative" ? std::numeric_limits<double>::infinity() : 0.0;
    aggregate[name] = r;
  }

  const int span = options.dim_max - options.dim_min + 1;
  for (int i = 0; i < options.instances; ++i) {
    const int dim = options.dim_min + i % span;
    InstanceSummary summary;
    summary.index = i;
    summary.dim = dim;
    std::map<std::string, Outcome> outcomes;
    for (const auto& [kind, checks] :
         {std::pair{std::string("main"), main_checks}, std::pair{std::string("closed"), closed_checks},
          std::pair{std::string("drift"), drift_checks}}) {
      if (checks.empty()) continue;
      Scenario s = random_scenario(options.seed, i, dim, kind, options.steps);
      s.checks = requests(checks);
      outcomes.merge(run_checks(std::move(s)));
    }
    for (const auto& [name, outcome] : outcomes) {
      CheckResult& agg = aggregate.at(name);
      if (!outcome.pass) {
        summary.passed = false;
        summary.failed_checks.push_back(name);
        agg.pass = false;
      }
      if (std::isnan(outcome.residual) || std::isnan(agg.residual))
        agg.residual = std::numeric_limits<double>::quiet_NaN();
      else if (name == "hermiticity_negative")
        agg.residual = std::min(agg.residual, outcome.residual);
      else
        agg.residual = std::max(agg.residual, outcome.residual);
    }
    report.instances.push_back(std::move(summary));
  }
  for (auto& [_, r] : aggregate) report.checks.push_back(r);
  report.sort_checks();
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace fbqm
