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

#include "fbqm/time_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fbqm {

Coefficient Coefficient::constant(double value) {
  return Coefficient(Kind::kConstant, {value});
}

Coefficient Coefficient::polynomial(std::vector<double> coefficients) {
  if (coefficients.empty() || coefficients.size() > 5)
    throw Error(ErrorCode::kInvalidArgument,
                "polynomial coefficient: need 1 to 5 coefficients (degree <= 4)");
  return Coefficient(Kind::kPolynomial, std::move(coefficients));
}

Coefficient Coefficient::cos(double amplitude, double omega, double phase) {
  return Coefficient(Kind::kCos, {amplitude, omega, phase});
}

Coefficient Coefficient::sin(double amplitude, double omega, double phase) {
  return Coefficient(Kind::kSin, {amplitude, omega, phase});
}

Coefficient Coefficient::exp(double amplitude, double rate) {
  return Coefficient(Kind::kExp, {amplitude, rate});
}

double Coefficient::value(double t) const {
  switch (kind_) {
    case Kind::kConstant:
      return params_[0];
    case Kind::kPolynomial: {
      double acc = 0.0;
      for (auto it = params_.rbegin(); it != params_.rend(); ++it)
        acc = acc * t + *it;
      return acc;
    }
    case Kind::kCos:
      return params_[0] * std::cos(params_[1] * t + params_[2]);
    case Kind::kSin:
      return params_[0] * std::sin(params_[1] * t + params_[2]);
    case Kind::kExp:
      return params_[0] * std::exp(params_[1] * t);
  }
  return 0.0;
}

double Coefficient::derivative(double t) const {
  switch (kind_) {
    case Kind::kConstant:
      return 0.0;
    case Kind::kPolynomial: {
      double acc = 0.0;
      for (std::size_t k = params_.size() - 1; k >= 1; --k)
        acc = acc * t + static_cast<double>(k) * params_[k];
      return acc;
    }
    case Kind::kCos:
      return -params_[0] * params_[1] * std::sin(params_[1] * t + params_[2]);
    case Kind::kSin:
      return params_[0] * params_[1] * std::cos(params_[1] * t + params_[2]);
    case Kind::kExp:
      return params_[0] * params_[1] * std::exp(params_[1] * t);
  }
  return 0.0;
}

bool Coefficient::is_constant() const {
  switch (kind_) {
    case Kind::kConstant:
      return true;
    case Kind::kPolynomial:
      for (std::size_t k = 1; k < params_.size(); ++k)
        if (params_[k] != 0.0) return false;
      return true;
    case Kind::kCos:
    case Kind::kSin:
      return params_[0] == 0.0 || params_[1] == 0.0;
    case Kind::kExp:
      return params_[0] == 0.0 || params_[1] == 0.0;
  }
  return false;
}

Matrix central_difference(const TimeMatrix::Fn& f, double t, double h) {
  return (f(t + h) - f(t - h)) / (2.0 * h);
}

TimeMatrix::TimeMatrix(Eigen::Index dim, Fn value, std::optional<Fn> derivative,
                       double fd_step)
    : dim_(dim),
      value_(std::move(value)),
      derivative_(std::move(derivative)),
      fd_step_(fd_step) {
  if (dim <= 0) throw Error(ErrorCode::kInvalidArgument, "TimeMatrix: dim <= 0");
  if (!(fd_step > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "TimeMatrix: fd_step must be > 0");
}

Matrix TimeMatrix::derivative(double t) const {
  if (derivative_) return (*derivative_)(t);
  return central_difference(value_, t, fd_step_);
}

TimeMatrix TimeMatrix::with_fd_step(double h) const {
  TimeMatrix copy = *this;
  if (!(h > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "TimeMatrix: fd_step must be > 0");
  copy.fd_step_ = h;
  return copy;
}

TimeMatrix TimeMatrix::constant(const Matrix& m) {
  require_square(m, "TimeMatrix::constant");
  const Eigen::Index n = m.rows();
  TimeMatrix out(n, [m](double) { return m; },
                 Fn([n](double) -> Matrix { return Matrix::Zero(n, n); }));
  out.constant_ = true;
  out.zero_ = max_norm(m) == 0.0;
  return out;
}

TimeMatrix TimeMatrix::zero(Eigen::Index dim) {
  return constant(Matrix::Zero(dim, dim));
}

TimeMatrix TimeMatrix::identity(Eigen::Index dim) {
  return constant(Matrix::Identity(dim, dim));
}

TimeMatrix TimeMatrix::terms(Eigen::Index dim, std::vector<Term> terms) {
  bool constant = true;
  for (const Term& term : terms) {
    if (term.matrix.rows() != dim || term.matrix.cols() != dim) {
      std::ostringstream os;
      os << "term '" << term.name << "' is " << term.matrix.rows() << "x"
         << term.matrix.cols() << " in a dim-" << dim << " system";
      throw Error(ErrorCode::kDimensionMismatch, os.str());
    }
    require_finite(term.matrix, term.name.c_str());
    constant = constant && term.coefficient.is_constant();
  }
  auto shared = std::make_shared<const std::vector<Term>>(std::move(terms));
  TimeMatrix out(
      dim,
      [shared, dim](double t) {
        Matrix acc = Matrix::Zero(dim, dim);
        for (const Term& term : *shared)
          acc += term.coefficient.value(t) * term.matrix;
        return acc;
      },
      Fn([shared, dim](double t) {
        Matrix acc = Matrix::Zero(dim, dim);
        for (const Term& term : *shared)
          acc += term.coefficient.derivative(t) * term.matrix;
        return acc;
      }));
  out.constant_ = constant;
  out.zero_ = shared->empty();
  return out;
}

TimeMatrix TimeMatrix::exp_flow(const Matrix& base, const Matrix& generator) {
  require_square(base, "exp_flow base");
  require_same_shape(base, generator, "exp_flow");
  const Eigen::Index n = base.rows();
  TimeMatrix out(
      n, [base, generator](double t) { return Matrix(base * mat_exp(t * generator)); },
      Fn([base, generator](double t) {
        return Matrix(base * mat_exp(t * generator) * generator);
      }));
  out.constant_ = max_norm(generator) == 0.0;
  return out;
}

namespace {

// Natural cubic spline second derivatives for one scalar series.
std::vector<Complex> spline_moments(const std::vector<double>& x,
                                    const std::vector<Complex>& y) {
  const std::size_t n = x.size();
  std::vector<Complex> m(n, 0.0);
  if (n < 3) return m;
  std::vector<double> diag(n, 0.0), upper(n, 0.0);
  std::vector<Complex> rhs(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x[i] - x[i - 1];
    const double h1 = x[i + 1] - x[i];
    diag[i] = 2.0 * (h0 + h1);
    upper[i] = h1;
    rhs[i] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
  }
  // Thomas algorithm on the interior rows; the lower diagonal equals
  // h_{i-1} = x[i] - x[i-1].
  for (std::size_t i = 2; i + 1 < n; ++i) {
    const double lower = x[i] - x[i - 1];
    const double w = lower / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    const Complex next = (i + 2 < n) ? m[i + 1] : Complex(0.0);
    m[i] = (rhs[i] - upper[i] * next) / diag[i];
    if (i == 1) break;
  }
  return m;
}

struct Spline {
  std::vector<double> x;
  std::vector<Matrix> y;
  std::vector<Matrix> moments;

  std::size_t segment(double t) const {
    if (t <= x.front()) return 0;
    if (t >= x.back()) return x.size() - 2;
    const auto it = std::upper_bound(x.begin(), x.end(), t);
    return static_cast<std::size_t>(it - x.begin()) - 1;
  }

  Matrix value(double t) const {
    const std::size_t i = segment(t);
    const double h = x[i + 1] - x[i];
    const double a = (x[i + 1] - t) / h;
    const double b = (t - x[i]) / h;
    return a * y[i] + b * y[i + 1] +
           ((a * a * a - a) * moments[i] + (b * b * b - b) * moments[i + 1]) *
               (h * h / 6.0);
  }

  Matrix derivative(double t) const {
    const std::size_t i = segment(t);
    const double h = x[i + 1] - x[i];
    const double a = (x[i + 1] - t) / h;
    const double b = (t - x[i]) / h;
    return (y[i + 1] - y[i]) / h +
           (-(3.0 * a * a - 1.0) * moments[i] + (3.0 * b * b - 1.0) * moments[i + 1]) *
               (h / 6.0);
  }
};

}  // namespace

TimeMatrix TimeMatrix::tabulated(std::vector<double> times,
                                 std::vector<Matrix> samples) {
  if (times.size() < 2 || times.size() != samples.size())
    throw Error(ErrorCode::kInvalidArgument,
                "tabulated: need at least two samples and matching time count");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw Error(ErrorCode::kInvalidArgument,
                  "tabulated: times must be strictly increasing");
  const Eigen::Index n = samples.front().rows();
  for (const Matrix& s : samples) {
    require_square(s, "tabulated sample");
    if (s.rows() != n)
      throw Error(ErrorCode::kDimensionMismatch, "tabulated: sample dims differ");
    require_finite(s, "tabulated sample");
  }
  auto spline = std::make_shared<Spline>();
  spline->x = std::move(times);
  spline->y = std::move(samples);
  spline->moments.assign(spline->x.size(), Matrix::Zero(n, n));
  std::vector<Complex> series(spline->x.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < series.size(); ++k) series[k] = spline->y[k](i, j);
      const auto m = spline_moments(spline->x, series);
      for (std::size_t k = 0; k < series.size(); ++k) spline->moments[k](i, j) = m[k];
    }
  }
  return TimeMatrix(
      n, [spline](double t) { return spline->value(t); },
      Fn([spline](double t) { return spline->derivative(t); }));
}

}  // namespace fbqm
