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

// Observables in the bundle picture. An operator A(t) on the typical fibre is
// represented in the fibre over gamma(t) by the morphism L(t)^{-1} A(t) L(t);
// expectation values use the fibre metric G = L^dagger L.

#include <limits>
#include <string>
#include <vector>

#include "fbqm/frames.hpp"
#include "fbqm/transport.hpp"

namespace fbqm {

class ObservableSpec {
 public:
  ObservableSpec(std::string name, TimeMatrix a);

  /// A(t); throws kNotHermitian beyond 1e-12 relative defect.
  Matrix at(double t) const;
  Matrix derivative(double t) const { return a_.derivative(t); }
  const std::string& name() const { return name_; }
  Eigen::Index dim() const { return a_.dim(); }
  const TimeMatrix& matrix() const { return a_; }

 private:
  std::string name_;
  TimeMatrix a_;
};

/// L(t)^{-1} A L(t) for an arbitrary (not necessarily Hermitian) operator.
Matrix lift_operator(const FrameField& frame, const Matrix& a, double t);
Matrix lift_observable(const FrameField& frame, const ObservableSpec& obs, double t);

/// <psi|A psi> / <psi|psi>; the imaginary part is discarded.
double expectation_hilbert(const Matrix& a, const Vector& psi);
double expectation_hilbert(const ObservableSpec& obs, const Vector& psi, double t);

/// (Psi^dagger G Am Psi) / (Psi^dagger G Psi)
double expectation_bundle(const Matrix& am, const Vector& psi, const Matrix& g);

/// Adjoint with respect to the fibre scalar product: G^{-1} Am^dagger G.
Matrix metric_adjoint(const Matrix& am, const Matrix& g);
/// ||metric_adjoint(Am, G) - Am||_max; zero exactly for Hermitian morphisms.
double metric_hermiticity_defect(const Matrix& am, const Matrix& g);

/// dA_gamma/dt = [g, A_gamma] + L^{-1} (dA/dt) L with g = -L^{-1} dL/dt.
Matrix morphism_time_derivative(const FrameField& frame, const ObservableSpec& obs,
                                double t);
/// Central difference of the lift, step h.
Matrix lift_difference_quotient(const FrameField& frame, const ObservableSpec& obs,
                                double t, double h);

/// L^{-1} H L, the bundle-Hamiltonian morphism.
Matrix bundle_hamiltonian_morphism(const FrameField& frame, const HamiltonianSpec& spec,
                                   double t);

/// Noncommutative polynomial: sum of coefficient * A_{i1} A_{i2} ... A_{ik}.
/// An empty factor list is the identity.
struct Monomial {
  Complex coefficient;
  std::vector<std::size_t> factors;
};

class Polynomial {
 public:
  static constexpr std::size_t kDefaultMaxDegree = 8;

  explicit Polynomial(std::vector<Monomial> terms,
                      std::size_t max_degree = kDefaultMaxDegree);

  std::size_t degree() const;
  const std::vector<Monomial>& terms() const { return terms_; }
  /// Evaluates with operator products in the given order.
  Matrix evaluate(const std::vector<Matrix>& operands) const;

 private:
  std::vector<Monomial> terms_;
};

/// L^{-1} p(A_1(t), ..., A_k(t)) L
Matrix lift_function(const FrameField& frame, const Polynomial& p,
                     const std::vector<ObservableSpec>& observables, double t);
/// p(L^{-1} A_1 L, ..., L^{-1} A_k L); must agree with `lift_function`.
Matrix function_of_lifts(const FrameField& frame, const Polynomial& p,
                         const std::vector<ObservableSpec>& observables, double t);
/// L^{-1} exp(c A) L
Matrix lift_exponential(const FrameField& frame, const ObservableSpec& obs, Complex c,
                        double t);

/// [lift A, lift B]
Matrix lift_commutator(const FrameField& frame, const ObservableSpec& a,
                       const ObservableSpec& b, double t);

/// L(r)^{-1} A(s) L(r): the observable at time s represented in the fibre at r.
Matrix two_time_morphism(const FrameField& frame, const ObservableSpec& obs, double s,
                         double r);
/// The same by flat transport of the lift: l(s->r) A_gamma(s) l(r->s).
Matrix two_time_morphism_flat(const FrameField& frame, const ObservableSpec& obs,
                              double s, double r);

class MorphismAlongPath {
 public:
  using Fn = TimeMatrix::Fn;

  MorphismAlongPath(Eigen::Index dim, Fn c,
                    double t0 = -std::numeric_limits<double>::infinity(),
                    double t1 = std::numeric_limits<double>::infinity());

  static MorphismAlongPath lifted(const FrameField& frame, const ObservableSpec& obs,
                                  double t0, double t1);

  Matrix at(double t) const { return c_(t); }
  Eigen::Index dim() const { return dim_; }
  double t0() const { return t0_; }
  double t1() const { return t1_; }

 private:
  Eigen::Index dim_;
  Fn c_;
  double t0_;
  double t1_;
};

/// dC/dt + [Gamma, C], central difference with step h (one-sided at the ends).
Matrix morphism_derivation(const TransportCoefficients& gamma, const MorphismAlongPath& c,
                           double t, double h);

/// D(C Psi) through the derivation of sections applied to t -> C(t) Psi(t).
/// On a transported Psi this equals morphism_derivation(...) * Psi(t).
Vector derivation_of_product(const TransportCoefficients& gamma,
                             const MorphismAlongPath& c, const StateSection& psi,
                             double t, double h);

}  // namespace fbqm
