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

#include <doctest.h>

#include <cmath>
#include <string>

#include "fbqm/time_function.hpp"
#include "oracles.hpp"

using namespace fbqm;
using oracle::max_abs;

TEST_CASE("coefficient library values and derivatives") {
  const double t = 0.7;
  CHECK(Coefficient::constant(2.5).value(t) == 2.5);
  CHECK(Coefficient::constant(2.5).derivative(t) == 0.0);
  CHECK(Coefficient::constant(2.5).is_constant());

  const Coefficient p = Coefficient::polynomial({1.0, -2.0, 0.5, 0.0, 3.0});
  CHECK(p.value(t) == doctest::Approx(1.0 - 2.0 * t + 0.5 * t * t + 3.0 * std::pow(t, 4)));
  CHECK(p.derivative(t) == doctest::Approx(-2.0 + t + 12.0 * std::pow(t, 3)));
  CHECK_FALSE(p.is_constant());
  CHECK(Coefficient::polynomial({4.0}).is_constant());
  CHECK_THROWS_AS(Coefficient::polynomial({1, 2, 3, 4, 5, 6}), Error);

  const Coefficient c = Coefficient::cos(2.0, 3.0, 0.1);
  CHECK(c.value(t) == doctest::Approx(2.0 * std::cos(3.0 * t + 0.1)));
  CHECK(c.derivative(t) == doctest::Approx(-6.0 * std::sin(3.0 * t + 0.1)));
  const Coefficient s = Coefficient::sin(2.0, 3.0, 0.1);
  CHECK(s.derivative(t) == doctest::Approx(6.0 * std::cos(3.0 * t + 0.1)));
  const Coefficient e = Coefficient::exp(1.5, -0.4);
  CHECK(e.value(t) == doctest::Approx(1.5 * std::exp(-0.4 * t)));
  CHECK(e.derivative(t) == doctest::Approx(-0.6 * std::exp(-0.4 * t)));
}

TEST_CASE("cos(omega t + phi) with omega 1, phi 0 has weight 1 at t = 0") {
  CHECK(Coefficient::cos(1.0, 1.0, 0.0).value(0.0) == 1.0);
}

TEST_CASE("analytic coefficient derivatives agree with finite differences") {
  const double h = 1e-5;
  for (const Coefficient& c :
       {Coefficient::polynomial({0.1, 0.2, -0.3, 0.4}), Coefficient::cos(1.2, 2.0, 0.5),
        Coefficient::sin(0.7, -1.5, 0.2), Coefficient::exp(0.9, 0.8)}) {
    for (double t : {-0.5, 0.0, 1.3}) {
      const double fd = (c.value(t + h) - c.value(t - h)) / (2 * h);
      CHECK(std::abs(c.derivative(t) - fd) < 1e-8);
    }
  }
}

TEST_CASE("term sums") {
  const Matrix sx = pauli_x(), sz = pauli_z();
  const TimeMatrix m = TimeMatrix::terms(
      2, {Term{"z", sz, Coefficient::constant(0.5)}, Term{"x", sx, Coefficient::cos(1.0, 2.0, 0.0)}});
  const double t = 0.4;
  CHECK(max_abs(Matrix(m(t) - (0.5 * sz + std::cos(2.0 * t) * sx))) < 1e-15);
  CHECK(max_abs(Matrix(m.derivative(t) + 2.0 * std::sin(2.0 * t) * sx)) < 1e-15);
  CHECK(m.has_analytic_derivative());
  CHECK_FALSE(m.is_constant());
  CHECK(TimeMatrix::terms(2, {Term{"z", sz, Coefficient::constant(1.0)}}).is_constant());
  CHECK(TimeMatrix::zero(3).is_zero());
  CHECK_FALSE(TimeMatrix::identity(3).is_zero());
}

TEST_CASE("a mis-sized term is reported by name") {
  try {
    (void)TimeMatrix::terms(2, {Term{"bad_term", Matrix::Zero(2, 3), Coefficient::constant(1.0)}});
    FAIL("expected a dimension mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDimensionMismatch);
    CHECK(std::string(e.what()).find("bad_term") != std::string::npos);
  }
}

TEST_CASE("exponential flow and its derivative") {
  oracle::Random rng(11);
  const Matrix base = rng.near_identity(3), gen = rng.gaussian(3, 0.5);
  const TimeMatrix f = TimeMatrix::exp_flow(base, gen);
  const double t = 0.8;
  CHECK(max_abs(Matrix(f(t) - base * oracle::taylor_exp(Matrix(t * gen)))) < 1e-13);
  CHECK(max_abs(Matrix(f.derivative(t) - f(t) * gen)) < 1e-13);
  const Matrix fd = central_difference([&](double s) { return f(s); }, t, 1e-5);
  CHECK(max_abs(Matrix(fd - f.derivative(t))) < 1e-9);
}

TEST_CASE("finite-difference fallback when no derivative is given") {
  const TimeMatrix f(
      1, [](double t) { return Matrix::Constant(1, 1, Complex(std::sin(t), 0.0)); },
      std::nullopt, 1e-4);
  CHECK_FALSE(f.has_analytic_derivative());
  CHECK(std::abs(f.derivative(0.3)(0, 0) - std::cos(0.3)) < 1e-8);
  CHECK(f.with_fd_step(1e-3).fd_step() == 1e-3);
}

TEST_CASE("tabulated spline interpolates its nodes and tracks smooth data") {
  std::vector<double> times;
  std::vector<Matrix> samples;
  for (int k = 0; k <= 40; ++k) {
    const double t = 0.05 * k;
    times.push_back(t);
    samples.push_back(Matrix::Constant(2, 2, Complex(std::sin(t), std::cos(t))));
  }
  const TimeMatrix f = TimeMatrix::tabulated(times, samples);
  for (int k = 0; k <= 40; k += 7) CHECK(max_abs(Matrix(f(times[k]) - samples[k])) < 1e-15);
  CHECK(std::abs(f(0.73)(0, 1) - Complex(std::sin(0.73), std::cos(0.73))) < 1e-5);
  CHECK(std::abs(f.derivative(1.01)(1, 0) - Complex(std::cos(1.01), -std::sin(1.01))) < 1e-3);
  CHECK_THROWS_AS(TimeMatrix::tabulated({0.0, 0.0}, {samples[0], samples[1]}), Error);
}
