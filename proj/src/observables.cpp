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

#include "fbqm/observables.hpp"

#include <algorithm>
#include <sstream>

namespace fbqm {

ObservableSpec::ObservableSpec(std::string name, TimeMatrix a)
    : name_(std::move(name)), a_(std::move(a)) {}

Matrix ObservableSpec::at(double t) const {
  Matrix a = a_(t);
  require_finite(a, name_.c_str());
  const double defect = hermiticity_defect(a);
  if (defect > 1e-12 * max_norm(a)) {
    std::ostringstream os;
    os << "observable '" << name_ << "' is not Hermitian at t=" << t << " (defect "
       << defect << ")";
    throw Error(ErrorCode::kNotHermitian, os.str());
  }
  return a;
}

Matrix lift_operator(const FrameField& frame, const Matrix& a, double t) {
  require_square(a, "lift_operator");
  if (a.rows() != frame.dim())
    throw Error(ErrorCode::kDimensionMismatch, "lift_operator: dims differ");
  if (frame.is_identity()) return a;
  return solve(frame.at(t), a * frame.at(t), frame.max_condition());
}

Matrix lift_observable(const FrameField& frame, const ObservableSpec& obs, double t) {
  return lift_operator(frame, obs.at(t), t);
}

double expectation_hilbert(const Matrix& a, const Vector& psi) {
  if (psi.size() != a.rows())
    throw Error(ErrorCode::kDimensionMismatch, "expectation_hilbert: state size");
  const double norm2 = psi.squaredNorm();
  if (!(norm2 > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "expectation_hilbert: zero state");
  return psi.dot(a * psi).real() / norm2;
}

double expectation_hilbert(const ObservableSpec& obs, const Vector& psi, double t) {
  return expectation_hilbert(obs.at(t), psi);
}

double expectation_bundle(const Matrix& am, const Vector& psi, const Matrix& g) {
  require_square(g, "expectation_bundle");
  require_same_shape(am, g, "expectation_bundle");
  if (psi.size() != g.rows())
    throw Error(ErrorCode::kDimensionMismatch, "expectation_bundle: state size");
  if (hermiticity_defect(g) > 1e-12 * max_norm(g) || !is_positive_definite(g))
    throw Error(ErrorCode::kNotPositiveDefinite,
                "expectation_bundle: metric is not Hermitian positive-definite");
  const Vector g_psi = g * psi;
  const double norm2 = psi.dot(g_psi).real();
  if (!(norm2 > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "expectation_bundle: zero state");
  // psi^dagger G Am psi; Eigen's dot conjugates its left operand.
  return g_psi.dot(am * psi).real() / norm2;
}

Matrix metric_adjoint(const Matrix& am, const Matrix& g) {
  require_same_shape(am, g, "metric_adjoint");
  return solve(g, am.adjoint() * g);
}

double metric_hermiticity_defect(const Matrix& am, const Matrix& g) {
  return max_norm(Matrix(metric_adjoint(am, g) - am));
}

Matrix morphism_time_derivative(const FrameField& frame, const ObservableSpec& obs,
                                double t) {
  const Matrix lifted = lift_observable(frame, obs, t);
  const Matrix g = frame_logarithmic_derivative(frame, t);
  return commutator(g, lifted) + lift_operator(frame, obs.derivative(t), t);
}

Matrix lift_difference_quotient(const FrameField& frame, const ObservableSpec& obs,
                                double t, double h) {
  if (!(h > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "lift_difference_quotient: h <= 0");
  return (lift_observable(frame, obs, t + h) - lift_observable(frame, obs, t - h)) /
         (2.0 * h);
}

Matrix bundle_hamiltonian_morphism(const FrameField& frame, const HamiltonianSpec& spec,
                                   double t) {
  return lift_operator(frame, spec.at(t), t);
}

Polynomial::Polynomial(std::vector<Monomial> terms, std::size_t max_degree)
    : terms_(std::move(terms)) {
  if (degree() > max_degree) {
    std::ostringstream os;
    os << "polynomial degree " << degree() << " exceeds bound " << max_degree;
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
}

std::size_t Polynomial::degree() const {
  std::size_t d = 0;
  for (const Monomial& m : terms_) d = std::max(d, m.factors.size());
  return d;
}

Matrix Polynomial::evaluate(const std::vector<Matrix>& operands) const {
  if (operands.empty())
    throw Error(ErrorCode::kInvalidArgument, "Polynomial::evaluate: no operands");
  const Eigen::Index n = operands.front().rows();
  for (const Matrix& m : operands) {
    require_square(m, "Polynomial::evaluate");
    if (m.rows() != n)
      throw Error(ErrorCode::kDimensionMismatch, "Polynomial::evaluate: operand dims");
  }
  Matrix acc = Matrix::Zero(n, n);
  for (const Monomial& term : terms_) {
    Matrix product = Matrix::Identity(n, n);
    for (std::size_t index : term.factors) {
      if (index >= operands.size())
        throw Error(ErrorCode::kInvalidArgument,
                    "Polynomial::evaluate: factor index out of range");
      product = product * operands[index];
    }
    acc += term.coefficient * product;
  }
  return acc;
}

namespace {

std::vector<Matrix> sample(const std::vector<ObservableSpec>& observables, double t) {
  std::vector<Matrix> out;
  out.reserve(observables.size());
  for (const ObservableSpec& obs : observables) out.push_back(obs.at(t));
  return out;
}

}  // namespace

Matrix lift_function(const FrameField& frame, const Polynomial& p,
                     const std::vector<ObservableSpec>& observables, double t) {
  return lift_operator(frame, p.evaluate(sample(observables, t)), t);
}

Matrix function_of_lifts(const FrameField& frame, const Polynomial& p,
                         const std::vector<ObservableSpec>& observables, double t) {
  std::vector<Matrix> lifted;
  lifted.reserve(observables.size());
  for (const ObservableSpec& obs : observables)
    lifted.push_back(lift_observable(frame, obs, t));
  return p.evaluate(lifted);
}

Matrix lift_exponential(const FrameField& frame, const ObservableSpec& obs, Complex c,
                        double t) {
  return lift_operator(frame, mat_exp(c * obs.at(t)), t);
}

Matrix lift_commutator(const FrameField& frame, const ObservableSpec& a,
                       const ObservableSpec& b, double t) {
  return commutator(lift_observable(frame, a, t), lift_observable(frame, b, t));
}

Matrix two_time_morphism(const FrameField& frame, const ObservableSpec& obs, double s,
                         double r) {
  return lift_operator(frame, obs.at(s), r);
}

Matrix two_time_morphism_flat(const FrameField& frame, const ObservableSpec& obs,
                              double s, double r) {
  return flat_transport(frame, s, r) * lift_observable(frame, obs, s) *
         flat_transport(frame, r, s);
}

MorphismAlongPath::MorphismAlongPath(Eigen::Index dim, Fn c, double t0, double t1)
    : dim_(dim), c_(std::move(c)), t0_(t0), t1_(t1) {}

MorphismAlongPath MorphismAlongPath::lifted(const FrameField& frame,
                                            const ObservableSpec& obs, double t0,
                                            double t1) {
  return MorphismAlongPath(
      frame.dim(), [frame, obs](double t) { return lift_observable(frame, obs, t); }, t0,
      t1);
}

Matrix morphism_derivation(const TransportCoefficients& gamma, const MorphismAlongPath& c,
                           double t, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::kInvalidArgument, "morphism_derivation: h <= 0");
  const Matrix here = c.at(t);
  Matrix rate;
  if (t - h < c.t0())
    rate = (4.0 * c.at(t + h) - c.at(t + 2.0 * h) - 3.0 * here) / (2.0 * h);
  else if (t + h > c.t1())
    rate = (3.0 * here - 4.0 * c.at(t - h) + c.at(t - 2.0 * h)) / (2.0 * h);
  else
    rate = (c.at(t + h) - c.at(t - h)) / (2.0 * h);
  return rate + commutator(gamma.at(t), here);
}

Vector derivation_of_product(const TransportCoefficients& gamma,
                             const MorphismAlongPath& c, const StateSection& psi,
                             double t, double h) {
  const StateSection product(
      [c, psi](double x) -> Vector { return c.at(x) * psi.at(x); },
      std::max(psi.t0(), c.t0()), std::min(psi.t1(), c.t1()));
  return derive_along_path(gamma, product, t, h);
}

}  // namespace fbqm
