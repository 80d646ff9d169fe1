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

// Frame fields along the time path and the component transformation laws.
//
// A frame L(t) holds the components of the isomorphism from the fibre over
// gamma(t) to the typical fibre. Basis changes are given by a nondegenerate
// matrix Omega and always enter through its transpose: vectors go to
// (Omega^T)^{-1} v, operators to (Omega^T)^{-1} A Omega^T.

#include "fbqm/linalg.hpp"
#include "fbqm/time_function.hpp"

namespace fbqm {

inline constexpr double kDefaultFrameMaxCondition = 1e8;

class FrameField {
 public:
  static FrameField identity(Eigen::Index dim);

  explicit FrameField(TimeMatrix components,
                      double max_condition = kDefaultFrameMaxCondition);

  Matrix at(double t) const;
  Matrix derivative(double t) const;
  /// Throws kSingularMatrix if L(t) is singular or too ill-conditioned.
  Matrix inverse_at(double t) const;

  Eigen::Index dim() const { return components_.dim(); }
  bool is_identity() const { return identity_; }
  double max_condition() const { return max_condition_; }
  const TimeMatrix& components() const { return components_; }

 private:
  TimeMatrix components_;
  double max_condition_;
  bool identity_ = false;
};

/// Drift E(t) of a time-dependent Hilbert-space basis; zero in the usual case.
class BasisDrift {
 public:
  static BasisDrift zero(Eigen::Index dim) { return BasisDrift(TimeMatrix::zero(dim)); }
  explicit BasisDrift(TimeMatrix e) : e_(std::move(e)) {}

  Matrix at(double t) const { return e_(t); }
  Eigen::Index dim() const { return e_.dim(); }
  bool is_zero() const { return e_.is_zero(); }

 private:
  TimeMatrix e_;
};

/// Basis change Omega(t) along the path. Stored through Omega^T, the matrix
/// that actually enters the transformation laws.
class GaugeTransform {
 public:
  static GaugeTransform identity(Eigen::Index dim);
  static GaugeTransform from_omega(const TimeMatrix& omega);
  static GaugeTransform from_transposed(TimeMatrix omega_transposed);

  Matrix omega(double t) const { return transpose(w_(t)); }
  Matrix transposed(double t) const { return w_(t); }
  Matrix transposed_derivative(double t) const { return w_.derivative(t); }
  Eigen::Index dim() const { return w_.dim(); }

 private:
  explicit GaugeTransform(TimeMatrix w) : w_(std::move(w)) {}
  TimeMatrix w_;
};

/// G(t) = L(t)^dagger L(t), the fibre scalar product in components.
Matrix fibre_metric(const FrameField& frame, double t);

// In the functions below `omega_t` is Omega at the relevant time; the
// transpose is taken internally.

/// (Omega^T)^{-1} v
Vector transform_vector(const Matrix& omega_t, const Vector& v);
/// Omega^T v, the inverse of `transform_vector`.
Vector inverse_transform_vector(const Matrix& omega_t, const Vector& v);
/// (Omega^T)^{-1} A Omega^T
Matrix transform_operator(const Matrix& omega_t, const Matrix& a);
/// (Omega^T(t))^{-1} U(t,s) Omega^T(s)
Matrix transform_two_point(const Matrix& omega_t, const Matrix& omega_s,
                           const Matrix& u_ts);
/// Frame components under simultaneous basis changes: (omega^T)^{-1} L Omega^T.
Matrix transform_frame(const Matrix& omega_hilbert, const Matrix& l,
                       const Matrix& omega_fibre);

/// The frame seen from the bundle basis changed by `gauge` (Hilbert basis
/// fixed): L'(t) = L(t) Omega^T(t), with the product-rule derivative.
FrameField gauge_transformed(const FrameField& frame, const GaugeTransform& gauge);

/// L(t)^{-1} L(s): the flat transport from the fibre at s to the fibre at t.
Matrix flat_transport(const FrameField& frame, double s, double t);

/// g(t) = -L(t)^{-1} dL/dt
Matrix frame_logarithmic_derivative(const FrameField& frame, double t);

}  // namespace fbqm
