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

// Hilbert-space dynamics: the matrix Hamiltonian, time-ordered propagators
// built from Magnus exponentials, state trajectories, and recovery of the
// generator from a propagator.

#include <memory>
#include <vector>

#include "fbqm/frames.hpp"
#include "fbqm/linalg.hpp"
#include "fbqm/time_function.hpp"

namespace fbqm {

/// Abstract Hamiltonian H(t) in a fixed orthonormal basis, plus hbar.
class HamiltonianSpec {
 public:
  explicit HamiltonianSpec(TimeMatrix h, double hbar = 1.0);

  /// H(t); throws kNotHermitian when ||H - H^dagger||_max exceeds
  /// 1e-12 * ||H||_max.
  Matrix at(double t) const;
  Matrix derivative(double t) const { return h_.derivative(t); }

  double hbar() const { return hbar_; }
  Eigen::Index dim() const { return h_.dim(); }
  bool is_constant() const { return h_.is_constant(); }
  bool is_zero() const { return h_.is_zero(); }
  const TimeMatrix& matrix() const { return h_; }
  HamiltonianSpec with_hbar(double hbar) const { return HamiltonianSpec(h_, hbar); }

 private:
  TimeMatrix h_;
  double hbar_;
};

/// Generator of the component Schroedinger equation,
/// i hbar dpsi/dt = Hm(t) psi.
class MatrixHamiltonian {
 public:
  MatrixHamiltonian(Eigen::Index dim, double hbar, TimeMatrix::Fn hm);

  /// Throws kNonFinite if the sample is not finite.
  Matrix at(double t) const;
  double hbar() const { return hbar_; }
  Eigen::Index dim() const { return dim_; }

 private:
  Eigen::Index dim_;
  double hbar_;
  TimeMatrix::Fn hm_;
};

/// Hm(t) = H(t) - i hbar E(t).
MatrixHamiltonian matrix_hamiltonian(const HamiltonianSpec& spec,
                                     const BasisDrift& drift);

struct TimeGrid {
  double t0 = 0.0;
  double t1 = 1.0;
  int steps = 1;

  double dt() const { return (t1 - t0) / steps; }
  double time(int k) const;
  /// Throws kInvalidArgument unless steps >= 1 and t1 > t0.
  void validate() const;
};

enum class MagnusKernel {
  kMidpoint,  // exp(dt/(i hbar) Hm(t_mid)), second order
  kGauss4,    // two-point Gauss-Legendre Magnus, fourth order
};

/// U(t, s) on a uniform grid. Grid factors are multiplied into cumulative
/// products U(t_k, t0) and U(t0, t_k); values between grid points are
/// completed with a fourth-order Magnus step from the nearest grid point.
class Propagator {
 public:
  /// U(t, s) for t, s in the window. U(t, t) is exactly the identity.
  Matrix operator()(double t, double s) const;
  /// U(t_k, t0)
  const Matrix& from_start(int k) const { return forward_.at(k); }
  /// U(t0, t_k)
  const Matrix& to_start(int k) const { return backward_.at(k); }

  const TimeGrid& grid() const { return grid_; }
  double hbar() const { return hm_.hbar(); }
  Eigen::Index dim() const { return hm_.dim(); }
  MagnusKernel kernel() const { return kernel_; }
  const MatrixHamiltonian& generator() const { return hm_; }
  bool contains(double t) const;

 private:
  friend Propagator propagate(const MatrixHamiltonian&, const TimeGrid&, MagnusKernel);
  Propagator(MatrixHamiltonian hm, TimeGrid grid, MagnusKernel kernel)
      : hm_(std::move(hm)), grid_(grid), kernel_(kernel) {}

  int nearest_index(double t) const;
  /// Magnus exponent for the flow from grid point k to time t.
  Matrix local_exponent(int k, double t) const;

  MatrixHamiltonian hm_;
  TimeGrid grid_;
  MagnusKernel kernel_;
  std::vector<Matrix> forward_;
  std::vector<Matrix> backward_;
};

Propagator propagate(const MatrixHamiltonian& hm, const TimeGrid& grid,
                     MagnusKernel kernel = MagnusKernel::kMidpoint);
Propagator propagate(const MatrixHamiltonian& hm, double t0, double t1, int steps,
                     MagnusKernel kernel = MagnusKernel::kMidpoint);

/// Magnus exponent of one step [a, b] for i hbar dU/dt = Hm U.
Matrix magnus_exponent(const MatrixHamiltonian& hm, double a, double b,
                       MagnusKernel kernel);

/// psi(t_k) = U(t_k, t0) psi0 for every grid point.
std::vector<Vector> solve_schrodinger(const Propagator& propagator, const Vector& psi0);
std::vector<Vector> solve_schrodinger(const MatrixHamiltonian& hm, const Vector& psi0,
                                      const TimeGrid& grid,
                                      MagnusKernel kernel = MagnusKernel::kMidpoint);

/// A finite-difference result; `one_sided` marks the one-sided stencil used at
/// window boundaries.
struct FiniteDifference {
  Matrix value;
  bool one_sided = false;
};

/// Hm(t) = i hbar (dU(t,t0)/dt) U(t0,t), by central difference with step h.
FiniteDifference hamiltonian_from_propagator(const Propagator& propagator, double t,
                                             double h);

}  // namespace fbqm
