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

// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fbqm/checks.hpp"
#include "fbqm/evolution.hpp"
#include "fbqm/frames.hpp"
#include "fbqm/observables.hpp"
#include "fbqm/verify.hpp"
#include "oracles.hpp"

using namespace fbqm;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* format, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c, d);
  return buf;
}

// Worst residual per check across random scenarios with dims 2..6.
std::map<std::string, double> random_suite(const std::vector<std::string>& checks,
                                           int instances, int steps) {
  std::map<std::string, double> worst;
  for (int i = 0; i < instances; ++i) {
    Scenario s = random_scenario(42, i, 2 + i % 5, "main", steps);
    s.checks.clear();
    for (const std::string& name : checks) s.checks.push_back({name, std::nullopt});
    for (const CheckResult& c : run_scenario(s).checks)
      worst[c.name] = std::max(worst[c.name], c.residual);
  }
  return worst;
}

Outcome closed_form() {
  oracle::Random rng(101);
  const Matrix h = rng.hermitian(3);
  const double window = 3.141592653589793;
  const auto start = Clock::now();
  const Propagator u = propagate(
      MatrixHamiltonian(3, 1.0, [h](double) { return h; }), 0.0, window, 2000,
      MagnusKernel::kGauss4);
  const double elapsed = seconds_since(start);
  double worst = 0.0;
  for (int k = 0; k <= 2000; k += 50) {
    const double t = u.grid().time(k);
    worst = std::max(worst, oracle::max_abs(Matrix(u.from_start(k) -
                                                   oracle::taylor_exp(Matrix(-kI * t * h)))));
  }
  return {worst <= 1e-8 && elapsed < 1.0,
          fmt("max error %.2e (tol 1e-8), %.3f s", worst, elapsed)};
}

Outcome central_identity() {
  const auto start = Clock::now();
  auto worst = random_suite({"central_identity", "central_identity_order"}, 20, 2000);
  const double elapsed = seconds_since(start);
  const double residual = worst["central_identity"];
  const double deficit = worst["central_identity_order"];
  return {residual <= 1e-5 && deficit <= order_deficit_tolerance() && elapsed < 30.0,
          fmt("max residual %.2e (tol 1e-5), worst order deficit %.3f (tol %.3f), %.1f s",
              residual, deficit, order_deficit_tolerance(), elapsed)};
}

Outcome bundle_schrodinger() {
  double worst = 0.0;
  double shrink = 1e300;
  for (int i = 0; i < 10; ++i) {
    Scenario s = random_scenario(42, i, 2 + i % 5, "main", 2000);
    s.checks = {{"bundle_schrodinger_section", std::nullopt},
                {"bundle_schrodinger_transport", std::nullopt}};
    const Report coarse = run_scenario(s);
    s.steps *= 2;
    const Report fine = run_scenario(s);
    for (const CheckResult& c : coarse.checks) worst = std::max(worst, c.residual);
    // checks are sorted, so index 1 is the transport residual
    shrink = std::min(shrink, coarse.checks[1].residual / fine.checks[1].residual);
  }
  return {worst <= 1e-4 && shrink >= 3.5,
          fmt("max residual %.2e (tol 1e-4), min shrink on doubling %.2fx (need 3.5x)", worst,
              shrink)};
}

Outcome gauge() {
  auto worst = random_suite({"gauge_coefficients", "gauge_covariance", "gauge_hamiltonian",
                             "spectrum_invariance"},
                            20, 2000);
  const bool ok = worst["gauge_coefficients"] <= 1e-5 && worst["spectrum_invariance"] <= 1e-10 &&
                  worst["gauge_covariance"] <= 1e-9 && worst["gauge_hamiltonian"] <= 1e-10;
  return {ok, fmt("coefficients %.2e (tol 1e-5), spectrum %.2e (tol 1e-10), "
                  "covariance %.2e, Hb law %.2e",
                  worst["gauge_coefficients"], worst["spectrum_invariance"],
                  worst["gauge_covariance"], worst["gauge_hamiltonian"])};
}

Outcome heisenberg() {
  auto worst = random_suite({"heisenberg_gauge", "heisenberg_spectrum"}, 20, 2000);
  return {worst["heisenberg_gauge"] <= 1e-4 && worst["heisenberg_spectrum"] == 0.0,
          fmt("max |Hb| in gauge %.2e (tol 1e-4), spectrum change %.1e (must be 0)",
              worst["heisenberg_gauge"], worst["heisenberg_spectrum"])};
}

FrameField random_frame(oracle::Random& rng, Eigen::Index n) {
  return FrameField(TimeMatrix::exp_flow(rng.near_identity(n, 0.5), rng.gaussian(n, 0.3)));
}

Outcome expectations() {
  oracle::Random rng(606);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Eigen::Index n = 2 + i % 7;
    const FrameField frame = random_frame(rng, n);
    const double t = rng.uniform(0.0, 2.0);
    const Matrix a = rng.hermitian(n);
    const Vector psi = rng.state(n);
    const Matrix l = frame.at(t);
    // Bundle side built by hand from the components.
    const Vector big_psi = l.partialPivLu().solve(psi);
    const Matrix g = l.adjoint() * l;
    const double hilbert = (psi.adjoint() * a * psi)(0, 0).real();
    const double bundle = expectation_bundle(lift_operator(frame, a, t), big_psi, g);
    worst = std::max(worst, std::abs(hilbert - bundle) / std::max(1.0, std::abs(hilbert)));
  }
  return {worst <= 1e-11, fmt("max relative difference %.2e over 100 triples (tol 1e-11)", worst)};
}

Outcome hermiticity() {
  oracle::Random rng(707);
  double worst_hermitian = 0.0;
  double least_defect = 1e300;
  for (int i = 0; i < 50; ++i) {
    const Eigen::Index n = 2 + i % 7;
    const FrameField frame = random_frame(rng, n);
    const double t = rng.uniform(0.0, 2.0);
    const Matrix g = fibre_metric(frame, t);
    const Matrix a = rng.hermitian(n);
    const Matrix am = lift_operator(frame, a, t);
    worst_hermitian =
        std::max(worst_hermitian, metric_hermiticity_defect(am, g) / std::max(1.0, max_norm(am)));

    Matrix b = rng.hermitian(n);
    b(0, n - 1) += 1.0 + max_norm(b);
    least_defect = std::min(least_defect, metric_hermiticity_defect(lift_operator(frame, b, t), g));
  }
  return {worst_hermitian <= 1e-11 && least_defect > 1e-3,
          fmt("Hermitian defect %.2e (tol 1e-11), smallest non-Hermitian defect %.2e (need > 1e-3)",
              worst_hermitian, least_defect)};
}

Outcome morphisms() {
  auto worst = random_suite({"product_law", "commutator_lift", "two_time_morphism",
                             "morphism_derivative", "morphism_derivative_order",
                             "matrix_morphism_schrodinger"},
                            20, 2000);
  const bool ok = worst["product_law"] <= 1e-10 && worst["commutator_lift"] <= 1e-11 &&
                  worst["two_time_morphism"] <= 1e-11 && worst["morphism_derivative"] <= 1e-5 &&
                  worst["morphism_derivative_order"] <= order_deficit_tolerance() &&
                  worst["matrix_morphism_schrodinger"] <= 1e-5;
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "product %.1e, commutator %.1e, two-time %.1e, derivative %.1e (order deficit "
                "%.3f), dual path %.1e",
                worst["product_law"], worst["commutator_lift"], worst["two_time_morphism"],
                worst["morphism_derivative"], worst["morphism_derivative_order"],
                worst["matrix_morphism_schrodinger"]);
  return {ok, buf};
}

Outcome unitarity() {
  auto worst = random_suite({"unitarity", "metric_unitarity"}, 20, 2000);
  return {worst["unitarity"] <= 1e-8 && worst["metric_unitarity"] <= 1e-7,
          fmt("unitarity %.2e (tol 1e-8), metric unitarity %.2e (tol 1e-7)", worst["unitarity"],
              worst["metric_unitarity"])};
}

Outcome determinism() {
  VerifyOptions o;
  o.seed = 42;
  const auto start = Clock::now();
  const Report first = verify(o);
  const std::string a = to_json(first, false);
  const std::string b = to_json(verify(o), false);
  const bool same = a == b;
  return {same && first.all_passed(),
          std::string(same ? "reports identical" : "reports DIFFER") +
              (first.all_passed() ? ", all checks pass" : ", some checks FAIL") +
              fmt(", %.1f s for two runs", seconds_since(start))};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"closed-form propagator", closed_form},
      {"central identity", central_identity},
      {"bundle Schrodinger residual", bundle_schrodinger},
      {"gauge covariance", gauge},
      {"Heisenberg gauge", heisenberg},
      {"expectation equality", expectations},
      {"hermiticity correspondence", hermiticity},
      {"morphism calculus", morphisms},
      {"unitarity", unitarity},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("error: ") + e.what()};
    }
    failed += out.pass ? 0 : 1;
    std::printf("[%s] criterion %zu: %s: %s\n", out.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), out.detail.c_str());
    std::fflush(stdout);
  }
  return failed;
}
