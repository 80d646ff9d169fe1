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

#include "fbqm/frames.hpp"
#include "oracles.hpp"

using namespace fbqm;
using oracle::max_abs;

namespace {

Matrix diag2(Complex a, Complex b) {
  Matrix m = zeros(2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

FrameField random_flow_frame(oracle::Random& rng, Eigen::Index n) {
  return FrameField(TimeMatrix::exp_flow(rng.near_identity(n), rng.gaussian(n, 0.4)));
}

}  // namespace

TEST_CASE("fibre metric of simple frames") {
  CHECK(max_abs(Matrix(fibre_metric(FrameField::identity(3), 0.2) - identity(3))) == 0.0);
  const FrameField f(TimeMatrix::constant(diag2(2.0, 1.0)));
  CHECK(max_abs(Matrix(fibre_metric(f, 0.0) - diag2(4.0, 1.0))) == 0.0);
}

TEST_CASE("fibre metric reproduces the Hilbert scalar product") {
  oracle::Random rng(21);
  for (int n = 2; n <= 6; ++n) {
    const FrameField f = random_flow_frame(rng, n);
    const double t = 0.37;
    const Matrix g = fibre_metric(f, t);
    const Vector u = rng.state(n), v = rng.state(n);
    const Complex lhs = u.dot(g * v);  // u^dagger G v
    const Complex rhs = (f.at(t) * u).dot(f.at(t) * v);
    CHECK(std::abs(lhs - rhs) < 1e-12);
    CHECK(hermiticity_defect(g) < 1e-12);
    for (double ev : hermitian_eigenvalues(g)) CHECK(ev > 0.0);
  }
}

TEST_CASE("singular frames are rejected") {
  const FrameField f(TimeMatrix::constant(diag2(1.0, 0.0)));
  CHECK_THROWS_AS(fibre_metric(f, 0.0), Error);
  CHECK_THROWS_AS(f.inverse_at(0.0), Error);
}

TEST_CASE("vector transformation law") {
  Vector v(2);
  v << 1.0, 2.0;
  CHECK(max_abs(Vector(transform_vector(identity(2), v) - v)) == 0.0);
  Vector expected(2);
  expected << 0.5, 2.0;
  CHECK(max_abs(Vector(transform_vector(diag2(2.0, 1.0), v) - expected)) < 1e-15);

  oracle::Random rng(22);
  const Matrix omega = rng.near_identity(4);
  const Vector w = rng.state(4);
  CHECK(max_abs(Vector(inverse_transform_vector(omega, transform_vector(omega, w)) - w)) < 1e-12);
}

TEST_CASE("operator transformation law") {
  oracle::Random rng(23);
  const Matrix a = rng.gaussian(3);
  CHECK(max_abs(Matrix(transform_operator(identity(3), a) - a)) == 0.0);

  // Cyclic permutation of a diagonal matrix permutes its entries.
  Matrix p = zeros(3);
  p(0, 1) = p(1, 2) = p(2, 0) = 1.0;
  Matrix d = zeros(3);
  d(0, 0) = 1.0;
  d(1, 1) = 2.0;
  d(2, 2) = 3.0;
  const Matrix pd = transform_operator(p, d);
  CHECK(max_abs(Matrix(pd - pd.diagonal().asDiagonal().toDenseMatrix())) == 0.0);
  std::vector<double> entries = {pd(0, 0).real(), pd(1, 1).real(), pd(2, 2).real()};
  CHECK(entries != std::vector<double>{1.0, 2.0, 3.0});
  std::sort(entries.begin(), entries.end());
  CHECK(entries == std::vector<double>{1.0, 2.0, 3.0});

  for (int n = 2; n <= 8; ++n) {
    const Matrix omega = rng.near_identity(n), b = rng.gaussian(n);
    CHECK(spectrum_mismatch(eigenvalues(b), eigenvalues(transform_operator(omega, b))) <
          1e-10);
  }
}

TEST_CASE("operator and vector laws are consistent") {
  oracle::Random rng(24);
  for (int n = 2; n <= 6; ++n) {
    const Matrix omega = rng.near_identity(n), a = rng.gaussian(n);
    const Vector v = rng.state(n);
    const Vector lhs = transform_operator(omega, a) * transform_vector(omega, v);
    CHECK(max_abs(Vector(lhs - transform_vector(omega, a * v))) < 1e-11);
  }
}

TEST_CASE("two-point transformation law") {
  oracle::Random rng(25);
  const Matrix u = rng.gaussian(3), omega = rng.near_identity(3);
  CHECK(max_abs(Matrix(transform_two_point(identity(3), identity(3), u) - u)) == 0.0);
  CHECK(max_abs(Matrix(transform_two_point(omega, omega, identity(3)) - identity(3))) < 1e-14);
  // Composition survives when the intermediate gauge matches.
  const Matrix u1 = rng.gaussian(3), u2 = rng.gaussian(3);
  const Matrix wt = rng.near_identity(3), wm = rng.near_identity(3), ws = rng.near_identity(3);
  const Matrix lhs = transform_two_point(wt, ws, Matrix(u1 * u2));
  const Matrix rhs = transform_two_point(wt, wm, u1) * transform_two_point(wm, ws, u2);
  CHECK(max_abs(Matrix(lhs - rhs)) < 1e-13);
}

TEST_CASE("flat transport") {
  oracle::Random rng(26);
  const FrameField f = random_flow_frame(rng, 4);
  CHECK(max_abs(Matrix(flat_transport(f, 0.5, 0.5) - identity(4))) < 1e-14);
  CHECK(max_abs(Matrix(flat_transport(FrameField::identity(4), 0.1, 0.9) - identity(4))) == 0.0);
  const double s = 0.0, r = 0.3, t = 1.0;
  CHECK(max_abs(Matrix(flat_transport(f, s, t) * flat_transport(f, r, s) -
                       flat_transport(f, r, t))) < 1e-12);
  CHECK(max_abs(Matrix(flat_transport(f, s, t) * flat_transport(f, t, s) - identity(4))) < 1e-11);
}

TEST_CASE("logarithmic derivative of frames") {
  oracle::Random rng(27);
  const Matrix k = rng.gaussian(3, 0.5);
  CHECK(max_abs(frame_logarithmic_derivative(FrameField(TimeMatrix::constant(rng.near_identity(3))),
                                             0.4)) == 0.0);
  const FrameField flow(TimeMatrix::exp_flow(identity(3), k));
  CHECK(max_abs(Matrix(frame_logarithmic_derivative(flow, 0.7) + k)) < 1e-13);

  // Without an analytic derivative the frame falls back to central differences.
  const TimeMatrix analytic = TimeMatrix::exp_flow(rng.near_identity(3), k);
  const FrameField fd_frame(TimeMatrix(3, [analytic](double t) { return analytic(t); },
                                       std::nullopt, 1e-5));
  CHECK(max_abs(Matrix(frame_logarithmic_derivative(fd_frame, 0.7) + k)) < 1e-8);
}

TEST_CASE("gauge-transformed frame is L Omega^T with the product rule") {
  oracle::Random rng(28);
  const FrameField f = random_flow_frame(rng, 3);
  const GaugeTransform w =
      GaugeTransform::from_omega(TimeMatrix::exp_flow(rng.near_identity(3), rng.gaussian(3, 0.4)));
  const FrameField g = gauge_transformed(f, w);
  const double t = 0.6;
  CHECK(max_abs(Matrix(g.at(t) - f.at(t) * w.transposed(t))) < 1e-14);
  const Matrix fd = central_difference([&](double s) { return g.at(s); }, t, 1e-5);
  CHECK(max_abs(Matrix(g.derivative(t) - fd)) < 1e-8);
  CHECK(max_abs(Matrix(w.omega(t) - transpose(w.transposed(t)))) == 0.0);
}
