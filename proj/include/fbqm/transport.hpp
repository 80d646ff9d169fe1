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

// Bundle-side dynamics along the path gamma(t) = t: the evolution transport
// L(t)^{-1} U(t,s) L(s), its coefficients Gamma(t), the matrix-bundle
// Hamiltonian, the derivation along paths, and their gauge laws.

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "fbqm/evolution.hpp"
#include "fbqm/frames.hpp"

namespace fbqm {

class BundleTransport {
 public:
  BundleTransport(FrameField frame, std::shared_ptr<const Propagator> propagator);

  /// Transport obtained by integrating a bundle generator directly; the frame
  /// is the identity so the propagator already is the transport.
  static BundleTransport direct(std::shared_ptr<const Propagator> bundle_propagator);

  Matrix operator()(double t, double s) const;

  const FrameField& frame() const { return frame_; }
  const Propagator& propagator() const { return *propagator_; }
  const std::shared_ptr<const Propagator>& shared_propagator() const { return propagator_; }
  const TimeGrid& grid() const { return propagator_->grid(); }
  double hbar() const { return propagator_->hbar(); }
  Eigen::Index dim() const { return frame_.dim(); }

 private:
  FrameField frame_;
  std::shared_ptr<const Propagator> propagator_;
};

BundleTransport bundle_transport(const FrameField& frame, const Propagator& propagator);

/// Frame-component generator of the bundle Schroedinger equation.
class BundleHamiltonianMatrix {
 public:
  BundleHamiltonianMatrix(Eigen::Index dim, double hbar, TimeMatrix::Fn hb);

  Matrix at(double t) const { return hb_(t); }
  double hbar() const { return hbar_; }
  Eigen::Index dim() const { return dim_; }
  /// The same function viewed as a generator for `propagate`.
  MatrixHamiltonian as_generator() const { return MatrixHamiltonian(dim_, hbar_, hb_); }

 private:
  Eigen::Index dim_;
  double hbar_;
  TimeMatrix::Fn hb_;
};

/// Hb = L^{-1} H L - i hbar L^{-1} (dL/dt + E L)
BundleHamiltonianMatrix matrix_bundle_hamiltonian(const FrameField& frame,
                                                  const HamiltonianSpec& spec,
                                                  const BasisDrift& drift);
/// Hb = L^{-1} Hm L - i hbar L^{-1} dL/dt, from the matrix Hamiltonian.
BundleHamiltonianMatrix matrix_bundle_hamiltonian(const FrameField& frame,
                                                  const MatrixHamiltonian& hm);

/// Gamma(t) = d/dt' U_gamma(t, t') at t' = t, by central difference:
/// [U_gamma(t, t+h) - U_gamma(t, t-h)] / 2h. One-sided near the window ends.
FiniteDifference transport_coefficients(const BundleTransport& transport, double t,
                                        double h);

class TransportCoefficients {
 public:
  TransportCoefficients(Eigen::Index dim, TimeMatrix::Fn gamma);

  /// Finite differences of an integrated transport.
  static TransportCoefficients from_transport(BundleTransport transport, double h);
  /// Gamma = -Hb / (i hbar).
  static TransportCoefficients from_bundle_hamiltonian(BundleHamiltonianMatrix hb);

  Matrix at(double t) const { return gamma_(t); }
  Eigen::Index dim() const { return dim_; }

 private:
  Eigen::Index dim_;
  TimeMatrix::Fn gamma_;
};

/// ||Gamma(t) + Hb(t) / (i hbar)||_max with Gamma taken from the transport.
double central_identity_residual(const FrameField& frame, const HamiltonianSpec& spec,
                                 const BasisDrift& drift,
                                 const BundleTransport& transport, double t, double h);

/// A sampled section of the bundle along the path, valid on [t0, t1].
class StateSection {
 public:
  using Fn = std::function<Vector(double)>;
  StateSection(Fn psi, double t0, double t1);

  /// Psi(t) = U_gamma(t, s) Psi0.
  static StateSection transported(BundleTransport transport, double s,
                                  const Vector& psi0);

  Vector at(double t) const { return psi_(t); }
  double t0() const { return t0_; }
  double t1() const { return t1_; }

 private:
  Fn psi_;
  double t0_;
  double t1_;
};

/// D_t chi = dchi/dt + Gamma chi, the derivative by central difference
/// (one-sided near the section's ends).
Vector derive_along_path(const TransportCoefficients& gamma, const StateSection& chi,
                         double t, double h);

/// Per-grid-point residual ||dU_gamma(t_k,t0)/dt + Gamma(t_k) U_gamma(t_k,t0)||_max
/// with the derivative from neighbouring grid values (one-sided at the ends).
std::vector<double> bundle_schrodinger_residuals(const BundleTransport& transport,
                                                 const TransportCoefficients& gamma);
/// Maximum of the above over interior grid points.
double bundle_schrodinger_residual(const BundleTransport& transport,
                                   const TransportCoefficients& gamma);

/// Gamma' = (Omega^T)^{-1} Gamma Omega^T + (Omega^T)^{-1} d(Omega^T)/dt
Matrix gauge_transform_coefficients(const GaugeTransform& gauge, const Matrix& gamma,
                                    double t);
/// Hb' = (Omega^T)^{-1} Hb Omega^T - i hbar (Omega^T)^{-1} d(Omega^T)/dt
Matrix gauge_transform_bundle_hamiltonian(const GaugeTransform& gauge, const Matrix& hb,
                                          double t, double hbar);

/// The transport seen from the gauge-changed bundle bases:
/// (Omega^T(t))^{-1} U_gamma(t,s) Omega^T(s).
BundleTransport gauge_transformed(const BundleTransport& transport,
                                  const GaugeTransform& gauge);

/// Basis change with Omega^T(t) = U_gamma(t, t0), in which the bundle
/// Hamiltonian vanishes. The derivative uses d(Omega^T)/dt = -Gamma Omega^T
/// with Gamma from finite differences of the transport (step h).
GaugeTransform heisenberg_gauge(const BundleTransport& transport, double t0, double h);

}  // namespace fbqm
