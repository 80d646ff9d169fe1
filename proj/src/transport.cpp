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

#include "fbqm/transport.hpp"

#include <algorithm>
#include <cmath>

namespace fbqm {

BundleTransport::BundleTransport(FrameField frame,
                                 std::shared_ptr<const Propagator> propagator)
    : frame_(std::move(frame)), propagator_(std::move(propagator)) {
  if (!propagator_)
    throw Error(ErrorCode::kInvalidArgument, "BundleTransport: null propagator");
  if (frame_.dim() != propagator_->dim())
    throw Error(ErrorCode::kDimensionMismatch, "BundleTransport: frame/propagator dims");
}

BundleTransport BundleTransport::direct(
    std::shared_ptr<const Propagator> bundle_propagator) {
  const Eigen::Index n = bundle_propagator ? bundle_propagator->dim() : 1;
  return BundleTransport(FrameField::identity(n), std::move(bundle_propagator));
}

Matrix BundleTransport::operator()(double t, double s) const {
  const Matrix u = (*propagator_)(t, s);
  if (frame_.is_identity()) return u;
  return solve(frame_.at(t), u * frame_.at(s), frame_.max_condition());
}

BundleTransport bundle_transport(const FrameField& frame, const Propagator& propagator) {
  return BundleTransport(frame, std::make_shared<const Propagator>(propagator));
}

BundleHamiltonianMatrix::BundleHamiltonianMatrix(Eigen::Index dim, double hbar,
                                                 TimeMatrix::Fn hb)
    : dim_(dim), hbar_(hbar), hb_(std::move(hb)) {}

BundleHamiltonianMatrix matrix_bundle_hamiltonian(const FrameField& frame,
                                                  const HamiltonianSpec& spec,
                                                  const BasisDrift& drift) {
  if (frame.dim() != spec.dim() || drift.dim() != spec.dim())
    throw Error(ErrorCode::kDimensionMismatch, "matrix_bundle_hamiltonian: dims differ");
  const double hbar = spec.hbar();
  return BundleHamiltonianMatrix(
      spec.dim(), hbar, [frame, spec, drift, hbar](double t) -> Matrix {
        const Matrix h = spec.at(t);
        if (frame.is_identity() && drift.is_zero()) return h;
        const Matrix l = frame.at(t);
        const Matrix l_inv = frame.inverse_at(t);
        Matrix rate = frame.derivative(t);
        if (!drift.is_zero()) rate += drift.at(t) * l;
        return l_inv * h * l - kI * hbar * (l_inv * rate);
      });
}

BundleHamiltonianMatrix matrix_bundle_hamiltonian(const FrameField& frame,
                                                  const MatrixHamiltonian& hm) {
  if (frame.dim() != hm.dim())
    throw Error(ErrorCode::kDimensionMismatch, "matrix_bundle_hamiltonian: dims differ");
  const double hbar = hm.hbar();
  return BundleHamiltonianMatrix(hm.dim(), hbar, [frame, hm, hbar](double t) -> Matrix {
    if (frame.is_identity()) return hm.at(t);
    const Matrix l_inv = frame.inverse_at(t);
    return l_inv * hm.at(t) * frame.at(t) - kI * hbar * (l_inv * frame.derivative(t));
  });
}

FiniteDifference transport_coefficients(const BundleTransport& transport, double t,
                                        double h) {
  if (!(h > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "transport_coefficients: h <= 0");
  const TimeGrid& g = transport.grid();
  const Eigen::Index n = transport.dim();
  // Second-order one-sided stencils at the window ends.
  if (t - h < g.t0)
    return {(4.0 * transport(t, t + h) - transport(t, t + 2.0 * h) -
             3.0 * Matrix::Identity(n, n)) / (2.0 * h),
            true};
  if (t + h > g.t1)
    return {(3.0 * Matrix::Identity(n, n) - 4.0 * transport(t, t - h) +
             transport(t, t - 2.0 * h)) / (2.0 * h),
            true};
  return {(transport(t, t + h) - transport(t, t - h)) / (2.0 * h), false};
}

TransportCoefficients::TransportCoefficients(Eigen::Index dim, TimeMatrix::Fn gamma)
    : dim_(dim), gamma_(std::move(gamma)) {}

TransportCoefficients TransportCoefficients::from_transport(BundleTransport transport,
                                                            double h) {
  const Eigen::Index n = transport.dim();
  return TransportCoefficients(n, [transport = std::move(transport), h](double t) {
    return transport_coefficients(transport, t, h).value;
  });
}

TransportCoefficients TransportCoefficients::from_bundle_hamiltonian(
    BundleHamiltonianMatrix hb) {
  const Eigen::Index n = hb.dim();
  return TransportCoefficients(n, [hb = std::move(hb)](double t) {
    return Matrix(-hb.at(t) / (kI * hb.hbar()));
  });
}

double central_identity_residual(const FrameField& frame, const HamiltonianSpec& spec,
                                 const BasisDrift& drift,
                                 const BundleTransport& transport, double t, double h) {
  const Matrix gamma = transport_coefficients(transport, t, h).value;
  const Matrix hb = matrix_bundle_hamiltonian(frame, spec, drift).at(t);
  return max_norm(Matrix(gamma + hb / (kI * spec.hbar())));
}

StateSection::StateSection(Fn psi, double t0, double t1)
    : psi_(std::move(psi)), t0_(t0), t1_(t1) {
  if (!(t1 > t0)) throw Error(ErrorCode::kInvalidArgument, "StateSection: t1 <= t0");
}

StateSection StateSection::transported(BundleTransport transport, double s,
                                       const Vector& psi0) {
  if (psi0.size() != transport.dim())
    throw Error(ErrorCode::kDimensionMismatch, "StateSection: state size");
  const double t0 = transport.grid().t0;
  const double t1 = transport.grid().t1;
  return StateSection(
      [transport = std::move(transport), s, psi0](double t) -> Vector {
        return transport(t, s) * psi0;
      },
      t0, t1);
}

Vector derive_along_path(const TransportCoefficients& gamma, const StateSection& chi,
                         double t, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::kInvalidArgument, "derive_along_path: h <= 0");
  const Vector here = chi.at(t);
  if (here.size() != gamma.dim())
    throw Error(ErrorCode::kDimensionMismatch, "derive_along_path: section size");
  Vector rate;
  if (t - h < chi.t0())
    rate = (4.0 * chi.at(t + h) - chi.at(t + 2.0 * h) - 3.0 * here) / (2.0 * h);
  else if (t + h > chi.t1())
    rate = (3.0 * here - 4.0 * chi.at(t - h) + chi.at(t - 2.0 * h)) / (2.0 * h);
  else
    rate = (chi.at(t + h) - chi.at(t - h)) / (2.0 * h);
  return rate + gamma.at(t) * here;
}

std::vector<double> bundle_schrodinger_residuals(const BundleTransport& transport,
                                                 const TransportCoefficients& gamma) {
  const TimeGrid& g = transport.grid();
  const int n = g.steps;
  std::vector<Matrix> u(n + 1);
  for (int k = 0; k <= n; ++k) u[k] = transport(g.time(k), g.t0);
  std::vector<double> out(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    Matrix rate;
    if (n == 1 || k == 0)
      rate = (u[std::min(k + 1, n)] - u[k]) / (g.time(std::min(k + 1, n)) - g.time(k));
    else if (k == n)
      rate = (u[n] - u[n - 1]) / (g.time(n) - g.time(n - 1));
    else
      rate = (u[k + 1] - u[k - 1]) / (g.time(k + 1) - g.time(k - 1));
    out[k] = max_norm(Matrix(rate + gamma.at(g.time(k)) * u[k]));
  }
  return out;
}

double bundle_schrodinger_residual(const BundleTransport& transport,
                                   const TransportCoefficients& gamma) {
  const auto all = bundle_schrodinger_residuals(transport, gamma);
  if (all.size() <= 2) return *std::max_element(all.begin(), all.end());
  return *std::max_element(all.begin() + 1, all.end() - 1);
}

Matrix gauge_transform_coefficients(const GaugeTransform& gauge, const Matrix& gamma,
                                    double t) {
  require_square(gamma, "gauge_transform_coefficients");
  if (gamma.rows() != gauge.dim())
    throw Error(ErrorCode::kDimensionMismatch, "gauge_transform_coefficients: dims");
  const Matrix w = gauge.transposed(t);
  const Matrix rhs = gamma * w + gauge.transposed_derivative(t);
  return solve(w, rhs);
}

Matrix gauge_transform_bundle_hamiltonian(const GaugeTransform& gauge, const Matrix& hb,
                                          double t, double hbar) {
  require_square(hb, "gauge_transform_bundle_hamiltonian");
  if (hb.rows() != gauge.dim())
    throw Error(ErrorCode::kDimensionMismatch, "gauge_transform_bundle_hamiltonian: dims");
  const Matrix w = gauge.transposed(t);
  const Matrix rhs = hb * w - kI * hbar * gauge.transposed_derivative(t);
  return solve(w, rhs);
}

BundleTransport gauge_transformed(const BundleTransport& transport,
                                  const GaugeTransform& gauge) {
  return BundleTransport(gauge_transformed(transport.frame(), gauge),
                         transport.shared_propagator());
}

GaugeTransform heisenberg_gauge(const BundleTransport& transport, double t0, double h) {
  const Eigen::Index n = transport.dim();
  TimeMatrix w(
      n, [transport, t0](double t) { return transport(t, t0); },
      TimeMatrix::Fn([transport, t0, h](double t) {
        return Matrix(-transport_coefficients(transport, t, h).value * transport(t, t0));
      }));
  return GaugeTransform::from_transposed(std::move(w));
}

}  // namespace fbqm
