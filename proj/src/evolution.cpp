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

#include "fbqm/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fbqm {

HamiltonianSpec::HamiltonianSpec(TimeMatrix h, double hbar)
    : h_(std::move(h)), hbar_(hbar) {
  if (!(hbar > 0.0) || !std::isfinite(hbar))
    throw Error(ErrorCode::kInvalidArgument, "HamiltonianSpec: hbar must be > 0");
}

Matrix HamiltonianSpec::at(double t) const {
  Matrix h = h_(t);
  require_finite(h, "Hamiltonian");
  const double defect = hermiticity_defect(h);
  if (defect > 1e-12 * max_norm(h)) {
    std::ostringstream os;
    os << "Hamiltonian at t=" << t << " is not Hermitian (defect " << defect << ")";
    throw Error(ErrorCode::kNotHermitian, os.str());
  }
  return h;
}

MatrixHamiltonian::MatrixHamiltonian(Eigen::Index dim, double hbar, TimeMatrix::Fn hm)
    : dim_(dim), hbar_(hbar), hm_(std::move(hm)) {
  if (dim <= 0) throw Error(ErrorCode::kInvalidArgument, "MatrixHamiltonian: dim <= 0");
  if (!(hbar > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "MatrixHamiltonian: hbar must be > 0");
}

Matrix MatrixHamiltonian::at(double t) const {
  Matrix m = hm_(t);
  if (!is_finite(m)) {
    std::ostringstream os;
    os << "matrix Hamiltonian sample at t=" << t << " is not finite";
    throw Error(ErrorCode::kNonFinite, os.str());
  }
  return m;
}

MatrixHamiltonian matrix_hamiltonian(const HamiltonianSpec& spec,
                                     const BasisDrift& drift) {
  if (spec.dim() != drift.dim())
    throw Error(ErrorCode::kDimensionMismatch,
                "matrix_hamiltonian: Hamiltonian and basis drift dims differ");
  if (drift.is_zero())
    return MatrixHamiltonian(spec.dim(), spec.hbar(),
                             [spec](double t) { return spec.at(t); });
  const double hbar = spec.hbar();
  return MatrixHamiltonian(spec.dim(), hbar, [spec, drift, hbar](double t) {
    return Matrix(spec.at(t) - kI * hbar * drift.at(t));
  });
}

double TimeGrid::time(int k) const {
  // Exact endpoints; interior points by linear interpolation.
  if (k == steps) return t1;
  return t0 + (t1 - t0) * (static_cast<double>(k) / steps);
}

void TimeGrid::validate() const {
  if (steps < 1)
    throw Error(ErrorCode::kInvalidArgument, "time grid: steps must be >= 1");
  if (!(t1 > t0) || !std::isfinite(t0) || !std::isfinite(t1))
    throw Error(ErrorCode::kInvalidArgument, "time grid: need finite t1 > t0");
}

Matrix magnus_exponent(const MatrixHamiltonian& hm, double a, double b,
                       MagnusKernel kernel) {
  const double tau = b - a;
  const Complex scale = 1.0 / (kI * hm.hbar());
  if (kernel == MagnusKernel::kMidpoint) return (tau * scale) * hm.at(a + 0.5 * tau);
  static const double offset = std::sqrt(3.0) / 6.0;
  const Matrix a1 = scale * hm.at(a + (0.5 - offset) * tau);
  const Matrix a2 = scale * hm.at(a + (0.5 + offset) * tau);
  return (0.5 * tau) * (a1 + a2) -
         (std::sqrt(3.0) / 12.0 * tau * tau) * (a1 * a2 - a2 * a1);
}

Propagator propagate(const MatrixHamiltonian& hm, const TimeGrid& grid,
                     MagnusKernel kernel) {
  grid.validate();
  Propagator p(hm, grid, kernel);
  const Eigen::Index n = hm.dim();
  p.forward_.reserve(grid.steps + 1);
  p.backward_.reserve(grid.steps + 1);
  p.forward_.push_back(Matrix::Identity(n, n));
  p.backward_.push_back(Matrix::Identity(n, n));
  for (int k = 1; k <= grid.steps; ++k) {
    const Matrix omega = magnus_exponent(hm, grid.time(k - 1), grid.time(k), kernel);
    // U(t_k, t0) = F_k U(t_{k-1}, t0) and U(t0, t_k) = U(t0, t_{k-1}) F_k^{-1}.
    p.forward_.push_back(mat_exp(omega) * p.forward_.back());
    p.backward_.push_back(p.backward_.back() * mat_exp(-omega));
  }
  return p;
}

Propagator propagate(const MatrixHamiltonian& hm, double t0, double t1, int steps,
                     MagnusKernel kernel) {
  return propagate(hm, TimeGrid{t0, t1, steps}, kernel);
}

bool Propagator::contains(double t) const {
  const double slack = 1e-12 * std::max(1.0, std::abs(grid_.t1 - grid_.t0));
  return t >= grid_.t0 - slack && t <= grid_.t1 + slack;
}

int Propagator::nearest_index(double t) const {
  const double x = (t - grid_.t0) / grid_.dt();
  return std::clamp(static_cast<int>(std::lround(x)), 0, grid_.steps);
}

Matrix Propagator::local_exponent(int k, double t) const {
  return magnus_exponent(hm_, grid_.time(k), t, MagnusKernel::kGauss4);
}

Matrix Propagator::operator()(double t, double s) const {
  if (!contains(t) || !contains(s)) {
    std::ostringstream os;
    os << "propagator queried at (" << t << ", " << s << ") outside window ["
       << grid_.t0 << ", " << grid_.t1 << "]";
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
  const Eigen::Index n = dim();
  if (t == s) return Matrix::Identity(n, n);

  const double dt = grid_.dt();
  const double snap = 1e-9 * dt;
  const int kt = nearest_index(t);
  const int ks = nearest_index(s);
  const bool t_on_grid = std::abs(t - grid_.time(kt)) <= snap;
  const bool s_on_grid = std::abs(s - grid_.time(ks)) <= snap;

  if (!(t_on_grid && s_on_grid) && std::abs(t - s) < dt) {
    // Short separations use one anchor so that difference quotients never
    // straddle a coarse grid factor.
    const int anchor = kt;
    return mat_exp(local_exponent(anchor, t)) * mat_exp(-local_exponent(anchor, s));
  }
  Matrix u = forward_[kt] * backward_[ks];
  if (!t_on_grid) u = mat_exp(local_exponent(kt, t)) * u;
  if (!s_on_grid) u = u * mat_exp(-local_exponent(ks, s));
  return u;
}

std::vector<Vector> solve_schrodinger(const Propagator& propagator, const Vector& psi0) {
  if (psi0.size() != propagator.dim())
    throw Error(ErrorCode::kDimensionMismatch, "solve_schrodinger: state size");
  if (!(psi0.norm() > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "solve_schrodinger: zero initial state");
  std::vector<Vector> out;
  out.reserve(propagator.grid().steps + 1);
  for (int k = 0; k <= propagator.grid().steps; ++k)
    out.push_back(propagator.from_start(k) * psi0);
  return out;
}

std::vector<Vector> solve_schrodinger(const MatrixHamiltonian& hm, const Vector& psi0,
                                      const TimeGrid& grid, MagnusKernel kernel) {
  if (grid.steps < 1)
    throw Error(ErrorCode::kInvalidArgument, "solve_schrodinger: empty time grid");
  return solve_schrodinger(propagate(hm, grid, kernel), psi0);
}

FiniteDifference hamiltonian_from_propagator(const Propagator& propagator, double t,
                                             double h) {
  if (!(h > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "hamiltonian_from_propagator: h <= 0");
  if (!propagator.contains(t))
    throw Error(ErrorCode::kInvalidArgument,
                "hamiltonian_from_propagator: t outside the window");
  const Complex ih = kI * propagator.hbar();
  const Eigen::Index n = propagator.dim();
  const TimeGrid& g = propagator.grid();
  // U(t+h, t0) U(t0, t) = U(t+h, t), so differences are taken against t.
  if (t - h < g.t0) {
    return {ih * (4.0 * propagator(t + h, t) - propagator(t + 2.0 * h, t) -
                 3.0 * Matrix::Identity(n, n)) / (2.0 * h),
            true};
  }
  if (t + h > g.t1) {
    return {ih * (3.0 * Matrix::Identity(n, n) - 4.0 * propagator(t - h, t) +
                 propagator(t - 2.0 * h, t)) / (2.0 * h),
            true};
  }
  return {ih * (propagator(t + h, t) - propagator(t - h, t)) / (2.0 * h), false};
}

}  // namespace fbqm
