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

#include "fbqm/frames.hpp"

namespace fbqm {

FrameField FrameField::identity(Eigen::Index dim) {
  FrameField f(TimeMatrix::identity(dim));
  f.identity_ = true;
  return f;
}

FrameField::FrameField(TimeMatrix components, double max_condition)
    : components_(std::move(components)), max_condition_(max_condition) {
  if (!(max_condition >= 1.0))
    throw Error(ErrorCode::kInvalidArgument, "FrameField: max_condition < 1");
}

Matrix FrameField::at(double t) const {
  if (identity_) return Matrix::Identity(dim(), dim());
  Matrix l = components_(t);
  require_finite(l, "frame");
  return l;
}

Matrix FrameField::derivative(double t) const {
  if (identity_) return Matrix::Zero(dim(), dim());
  return components_.derivative(t);
}

Matrix FrameField::inverse_at(double t) const {
  if (identity_) return Matrix::Identity(dim(), dim());
  return inverse(at(t), max_condition_);
}

GaugeTransform GaugeTransform::identity(Eigen::Index dim) {
  return GaugeTransform(TimeMatrix::identity(dim));
}

GaugeTransform GaugeTransform::from_omega(const TimeMatrix& omega) {
  const TimeMatrix src = omega;
  TimeMatrix w(
      omega.dim(), [src](double t) { return transpose(src(t)); },
      TimeMatrix::Fn([src](double t) { return transpose(src.derivative(t)); }));
  return GaugeTransform(std::move(w));
}

GaugeTransform GaugeTransform::from_transposed(TimeMatrix omega_transposed) {
  return GaugeTransform(std::move(omega_transposed));
}

Matrix fibre_metric(const FrameField& frame, double t) {
  const Matrix l = frame.at(t);
  // Singular frames give a degenerate metric; reject them up front.
  (void)frame.inverse_at(t);
  Matrix g = l.adjoint() * l;
  // Symmetrize away rounding so the result is exactly Hermitian.
  return 0.5 * (g + g.adjoint());
}

Vector transform_vector(const Matrix& omega_t, const Vector& v) {
  require_square(omega_t, "transform_vector");
  if (v.size() != omega_t.rows())
    throw Error(ErrorCode::kDimensionMismatch, "transform_vector: vector size");
  return solve(omega_t.transpose(), v);
}

Vector inverse_transform_vector(const Matrix& omega_t, const Vector& v) {
  require_square(omega_t, "inverse_transform_vector");
  if (v.size() != omega_t.rows())
    throw Error(ErrorCode::kDimensionMismatch, "inverse_transform_vector: vector size");
  return omega_t.transpose() * v;
}

Matrix transform_operator(const Matrix& omega_t, const Matrix& a) {
  require_square(a, "transform_operator");
  require_same_shape(omega_t, a, "transform_operator");
  const Matrix w = omega_t.transpose();
  return solve(w, a * w);
}

Matrix transform_two_point(const Matrix& omega_t, const Matrix& omega_s,
                           const Matrix& u_ts) {
  require_square(u_ts, "transform_two_point");
  require_same_shape(omega_t, u_ts, "transform_two_point");
  require_same_shape(omega_s, u_ts, "transform_two_point");
  return solve(omega_t.transpose(), u_ts * omega_s.transpose());
}

Matrix transform_frame(const Matrix& omega_hilbert, const Matrix& l,
                       const Matrix& omega_fibre) {
  require_same_shape(omega_hilbert, l, "transform_frame");
  require_same_shape(omega_fibre, l, "transform_frame");
  return solve(omega_hilbert.transpose(), l * omega_fibre.transpose());
}

FrameField gauge_transformed(const FrameField& frame, const GaugeTransform& gauge) {
  if (frame.dim() != gauge.dim())
    throw Error(ErrorCode::kDimensionMismatch, "gauge_transformed: dims differ");
  TimeMatrix l(
      frame.dim(),
      [frame, gauge](double t) { return Matrix(frame.at(t) * gauge.transposed(t)); },
      TimeMatrix::Fn([frame, gauge](double t) {
        return Matrix(frame.derivative(t) * gauge.transposed(t) +
                      frame.at(t) * gauge.transposed_derivative(t));
      }));
  return FrameField(std::move(l), frame.max_condition());
}

Matrix flat_transport(const FrameField& frame, double s, double t) {
  if (s == t || frame.is_identity()) return identity(frame.dim());
  return solve(frame.at(t), frame.at(s), frame.max_condition());
}

Matrix frame_logarithmic_derivative(const FrameField& frame, double t) {
  if (frame.is_identity()) return zeros(frame.dim());
  return -solve(frame.at(t), frame.derivative(t), frame.max_condition());
}

}  // namespace fbqm
