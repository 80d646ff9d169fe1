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

// Time-dependent scalars and matrices. Coefficients come from a closed
// library (constant, polynomial up to degree 4, cos/sin of an affine phase,
// exponential) so every one has an analytic derivative.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fbqm/linalg.hpp"

namespace fbqm {

class Coefficient {
 public:
  enum class Kind { kConstant, kPolynomial, kCos, kSin, kExp };

  static Coefficient constant(double value);
  /// c0 + c1 t + ... + c4 t^4; at most five coefficients.
  static Coefficient polynomial(std::vector<double> coefficients);
  /// amplitude * cos(omega t + phase)
  static Coefficient cos(double amplitude, double omega, double phase);
  static Coefficient sin(double amplitude, double omega, double phase);
  /// amplitude * exp(rate t)
  static Coefficient exp(double amplitude, double rate);

  double value(double t) const;
  double derivative(double t) const;
  Kind kind() const { return kind_; }
  bool is_constant() const;

 private:
  Coefficient(Kind kind, std::vector<double> params)
      : kind_(kind), params_(std::move(params)) {}

  Kind kind_;
  std::vector<double> params_;
};

struct Term {
  std::string name;
  Matrix matrix;
  Coefficient coefficient;
};

/// A matrix-valued function of time with an optional derivative. When no
/// derivative is supplied, `derivative(t)` falls back to a central difference
/// with step `fd_step`.
class TimeMatrix {
 public:
  using Fn = std::function<Matrix(double)>;

  TimeMatrix(Eigen::Index dim, Fn value, std::optional<Fn> derivative,
             double fd_step = 1e-5);

  static TimeMatrix constant(const Matrix& m);
  static TimeMatrix zero(Eigen::Index dim);
  static TimeMatrix identity(Eigen::Index dim);
  /// sum_k c_k(t) M_k
  static TimeMatrix terms(Eigen::Index dim, std::vector<Term> terms);
  /// base * exp(t * generator)
  static TimeMatrix exp_flow(const Matrix& base, const Matrix& generator);
  /// Natural cubic spline through (times[k], samples[k]), entrywise.
  static TimeMatrix tabulated(std::vector<double> times,
                              std::vector<Matrix> samples);

  Matrix operator()(double t) const { return value_(t); }
  Matrix value(double t) const { return value_(t); }
  Matrix derivative(double t) const;

  Eigen::Index dim() const { return dim_; }
  bool has_analytic_derivative() const { return derivative_.has_value(); }
  double fd_step() const { return fd_step_; }
  /// True when the function is known to be constant in time.
  bool is_constant() const { return constant_; }
  /// True when the function is known to be identically zero.
  bool is_zero() const { return zero_; }
  TimeMatrix with_fd_step(double h) const;

 private:
  Eigen::Index dim_;
  Fn value_;
  std::optional<Fn> derivative_;
  double fd_step_;
  bool constant_ = false;
  bool zero_ = false;
};

/// Central difference (f(t+h) - f(t-h)) / 2h.
Matrix central_difference(const TimeMatrix::Fn& f, double t, double h);

}  // namespace fbqm
