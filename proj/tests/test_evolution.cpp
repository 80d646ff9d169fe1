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
#include <numbers>

#include "fbqm/evolution.hpp"
#include "oracles.hpp"

using namespace fbqm;
using oracle::max_abs;

namespace {

const Complex i1(0.0, 1.0);

MatrixHamiltonian rabi(double delta, double omega0, double w) {
  const HamiltonianSpec spec(TimeMatrix::terms(
      2, {Term{"detuning", pauli_z(), Coefficient::constant(0.5 * delta)},
          Term{"drive", pauli_x(), Coefficient::cos(0.5 * omega0, w, 0.0)}}));
  return matrix_hamiltonian(spec, BasisDrift::zero(2));
}

MatrixHamiltonian constant_generator(const Matrix& h, double hbar = 1.0) {
  return MatrixHamiltonian(h.rows(), hbar, [h](double) { return h; });
}

}  // namespace

TEST_CASE("matrix Hamiltonian H - i hbar E") {
  const HamiltonianSpec sz(TimeMatrix::constant(pauli_z()));
  CHECK(max_abs(Matrix(matrix_hamiltonian(sz, BasisDrift::zero(2)).at(0.3) - pauli_z())) == 0.0);

  const HamiltonianSpec zero(TimeMatrix::zero(2), 1.7);
  const Matrix hm = matrix_hamiltonian(zero, BasisDrift(TimeMatrix::identity(2))).at(0.0);
  CHECK(max_abs(Matrix(hm + i1 * 1.7 * identity(2))) < 1e-15);

  Matrix expected(2, 2);
  expected << 1.0, -i1, -i1, -1.0;
  CHECK(max_abs(Matrix(matrix_hamiltonian(sz, BasisDrift(TimeMatrix::constant(pauli_x()))).at(0.0) -
                       expected)) == 0.0);
}

TEST_CASE("non-Hermitian Hamiltonians are rejected") {
  oracle::Random rng(31);
  const HamiltonianSpec bad(TimeMatrix::constant(rng.gaussian(3)));
  CHECK_THROWS_AS(bad.at(0.0), Error);
}

TEST_CASE("zero generator gives the identity propagator") {
  const Propagator p = propagate(constant_generator(zeros(3)), 0.0, 2.0, 50);
  CHECK(max_abs(Matrix(p(2.0, 0.0) - identity(3))) == 0.0);
  CHECK(max_abs(Matrix(p(1.234, 0.1) - identity(3))) == 0.0);
  const Vector psi0 = oracle::Random(32).state(3);
  for (const Vector& psi : solve_schrodinger(p, psi0)) CHECK(max_abs(Vector(psi - psi0)) == 0.0);
}

TEST_CASE("constant sigma_z over a window of length pi gives -I") {
  for (MagnusKernel k : {MagnusKernel::kMidpoint, MagnusKernel::kGauss4}) {
    const Propagator p = propagate(constant_generator(pauli_z()), 0.0, std::numbers::pi, 2000, k);
    CHECK(max_abs(Matrix(p(std::numbers::pi, 0.0) + identity(2))) < 1e-12);
  }
}

TEST_CASE("eigenstate acquires a phase") {
  Vector psi0(2);
  psi0 << 1.0, 0.0;
  const TimeGrid grid{0.0, 2.0, 400};
  const auto traj = solve_schrodinger(constant_generator(pauli_z()), psi0, grid);
  for (int k = 0; k <= grid.steps; k += 50) {
    const double t = grid.time(k);
    CHECK(std::abs(traj[k](0) - std::exp(-i1 * t)) < 1e-12);
    CHECK(std::abs(traj[k](1)) == 0.0);
  }
}

TEST_CASE("Rabi propagator matches a fine-step product oracle") {
  const MatrixHamiltonian hm = rabi(1.0, 0.2, 1.0);
  const Propagator p = propagate(hm, 0.0, 20.0, 4000, MagnusKernel::kGauss4);
  const Matrix ref = oracle::rabi_product(1.0, 0.2, 1.0, 0.0, 20.0, 1000000);
  CHECK(max_abs(Matrix(p(20.0, 0.0) - ref)) < 1e-6);

  // Populations along the trajectory.
  Vector psi0(2);
  psi0 << 1.0, 0.0;
  const auto traj = solve_schrodinger(p, psi0);
  for (int k : {500, 1000, 2500, 4000}) {
    const double t = p.grid().time(k);
    const Vector ref_psi = oracle::rabi_product(1.0, 0.2, 1.0, 0.0, t, 250 * k) * psi0;
    CHECK(std::abs(std::norm(traj[k](1)) - std::norm(ref_psi(1))) < 1e-6);
  }
}

TEST_CASE("observed order of the Magnus kernels") {
  const MatrixHamiltonian hm = rabi(1.0, 0.8, 1.3);
  const Matrix ref = oracle::rabi_product(1.0, 0.8, 1.3, 0.0, 5.0, 2000000);
  auto error = [&](int steps, MagnusKernel k) {
    return max_abs(Matrix(propagate(hm, 0.0, 5.0, steps, k)(5.0, 0.0) - ref));
  };
  const double m1 = error(100, MagnusKernel::kMidpoint), m2 = error(200, MagnusKernel::kMidpoint);
  CHECK(m1 / m2 >= 3.5);
  const double g1 = error(50, MagnusKernel::kGauss4), g2 = error(100, MagnusKernel::kGauss4);
  CHECK(g1 / g2 >= 14.0);
}

TEST_CASE("unitarity and composition on the grid") {
  oracle::Random rng(33);
  const Matrix h0 = rng.hermitian(4), v = rng.hermitian(4, 0.5);
  const HamiltonianSpec spec(TimeMatrix::terms(
      4, {Term{"h0", h0, Coefficient::constant(1.0)}, Term{"v", v, Coefficient::sin(1.0, 2.0, 0.3)}}));
  const Propagator p = propagate(matrix_hamiltonian(spec, BasisDrift::zero(4)), 0.0, 2.0, 1000);
  for (int k = 0; k <= 1000; k += 37) {
    const Matrix& u = p.from_start(k);
    CHECK(max_abs(Matrix(u.adjoint() * u - identity(4))) < 1e-12);
  }
  const TimeGrid& g = p.grid();
  for (auto [a, b, c] : {std::tuple{0, 300, 1000}, std::tuple{999, 2, 500}, std::tuple{10, 10, 700}}) {
    const Matrix lhs = p(g.time(c), g.time(b)) * p(g.time(b), g.time(a));
    CHECK(max_abs(Matrix(lhs - p(g.time(c), g.time(a)))) < 1e-10);
  }
  // Unitarity drift grows at most linearly with the step count.
  const Propagator fine = propagate(matrix_hamiltonian(spec, BasisDrift::zero(4)), 0.0, 2.0, 8000);
  const Matrix& uf = fine.from_start(8000);
  CHECK(max_abs(Matrix(uf.adjoint() * uf - identity(4))) < 8000 * 1e-15);
}

TEST_CASE("off-grid queries and window limits") {
  const MatrixHamiltonian hm = rabi(1.0, 0.5, 2.0);
  const Propagator p = propagate(hm, 0.0, 1.0, 100, MagnusKernel::kGauss4);
  const Matrix ref = oracle::rabi_product(1.0, 0.5, 2.0, 0.123, 0.877, 200000);
  CHECK(max_abs(Matrix(p(0.877, 0.123) - ref)) < 1e-8);
  CHECK(max_abs(Matrix(p(0.5, 0.5) - identity(2))) == 0.0);
  CHECK(p.contains(1.0));
  CHECK_FALSE(p.contains(1.01));
  CHECK_THROWS_AS(p(1.5, 0.0), Error);
  CHECK_THROWS_AS(propagate(hm, 1.0, 0.0, 10), Error);
  CHECK_THROWS_AS(propagate(hm, 0.0, 1.0, 0), Error);
}

TEST_CASE("non-finite generator samples are reported") {
  const MatrixHamiltonian bad(2, 1.0, [](double t) {
    return Matrix(t > 0.5 ? Matrix::Constant(2, 2, std::nan("")) : zeros(2));
  });
  CHECK_THROWS_AS(propagate(bad, 0.0, 1.0, 10), Error);
}

TEST_CASE("generator recovered from the propagator") {
  const Propagator z = propagate(constant_generator(zeros(2)), 0.0, 1.0, 100);
  CHECK(max_abs(hamiltonian_from_propagator(z, 0.5, 1e-4).value) < 1e-10);

  const Propagator s = propagate(constant_generator(pauli_z()), 0.0, 1.0, 100);
  CHECK(max_abs(Matrix(hamiltonian_from_propagator(s, 0.5, 1e-4).value - pauli_z())) < 1e-6);
  const FiniteDifference edge = hamiltonian_from_propagator(s, 0.0, 1e-4);
  CHECK(edge.one_sided);
  CHECK(max_abs(Matrix(edge.value - pauli_z())) < 1e-6);

  const MatrixHamiltonian hm = rabi(1.0, 0.2, 1.0);
  const Propagator r = propagate(hm, 0.0, 20.0, 4000, MagnusKernel::kGauss4);
  CHECK(max_abs(Matrix(hamiltonian_from_propagator(r, 5.0, 1e-4).value - hm.at(5.0))) < 1e-5);
}

TEST_CASE("propagation does not depend on how the basis drifts") {
  // A drifting orthonormal basis B(t) = exp(t K), K anti-Hermitian, gives
  // E = B^-1 dB/dt = K and H = B^-1 H_fixed B in the drifting basis.
  oracle::Random rng(34);
  const int n = 3;
  const Matrix h0 = rng.hermitian(n), v = rng.hermitian(n, 0.5), k = rng.skew_hermitian(n, 0.6);
  const TimeMatrix b = TimeMatrix::exp_flow(identity(n), k);
  const TimeMatrix h_fixed = TimeMatrix::terms(
      n, {Term{"h0", h0, Coefficient::constant(1.0)}, Term{"v", v, Coefficient::cos(1.0, 1.5, 0.0)}});
  const TimeMatrix h_drift(
      n, [b, h_fixed](double t) { return Matrix(b(t).adjoint() * h_fixed(t) * b(t)); },
      std::nullopt);
  const Propagator fixed =
      propagate(matrix_hamiltonian(HamiltonianSpec(h_fixed), BasisDrift::zero(n)), 0.0, 2.0,
                2000, MagnusKernel::kGauss4);
  const Propagator drifting =
      propagate(matrix_hamiltonian(HamiltonianSpec(h_drift), BasisDrift(TimeMatrix::constant(k))),
                0.0, 2.0, 2000, MagnusKernel::kGauss4);
  for (auto [t, s] : {std::pair{2.0, 0.0}, std::pair{1.3, 0.4}, std::pair{0.2, 1.9}}) {
    // U_drift(t,s) = B(t)^-1 U_fixed(t,s) B(s); transform_two_point takes Omega = B^T.
    const Matrix law = transform_two_point(transpose(b(t)), transpose(b(s)), fixed(t, s));
    CHECK(max_abs(Matrix(drifting(t, s) - law)) < 1e-7);
  }
}
