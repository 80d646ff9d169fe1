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

// Dense complex linear algebra used throughout the library. Storage is Eigen;
// the operations below add the checks (finiteness, squareness, singularity)
// the rest of the code relies on.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "fbqm/error.hpp"

namespace fbqm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Largest condition number (1-norm estimate) accepted by `inverse` unless the
/// caller passes its own bound.
inline constexpr double kDefaultMaxCondition = 1e12;

bool is_finite(const Matrix& a);
bool is_finite(const Vector& v);

/// Throws kNonFinite naming `what` if any entry is NaN/Inf.
void require_finite(const Matrix& a, const char* what);
void require_square(const Matrix& a, const char* what);
void require_same_shape(const Matrix& a, const Matrix& b, const char* what);

Matrix identity(Eigen::Index dim);
Matrix zeros(Eigen::Index dim);

/// Entrywise max-norm; every residual in the library is measured with it.
double max_norm(const Matrix& a);
double max_norm(const Vector& v);

Matrix adjoint(const Matrix& a);
Matrix transpose(const Matrix& a);

/// AB - BA.
Matrix commutator(const Matrix& a, const Matrix& b);

Complex trace(const Matrix& a);

/// Matrix exponential by scaling and squaring with diagonal Pade approximants
/// of degree 3, 5, 7, 9 or 13, chosen from the 1-norm of the argument.
Matrix mat_exp(const Matrix& a);

/// LU inverse with partial pivoting. Throws kSingularMatrix when a pivot falls
/// below 1e-13 * max_norm(a) or the 1-norm condition number exceeds
/// `max_condition`.
Matrix inverse(const Matrix& a, double max_condition = kDefaultMaxCondition);

/// Solves a x = b with the same singularity rules as `inverse`.
Matrix solve(const Matrix& a, const Matrix& b,
             double max_condition = kDefaultMaxCondition);

double condition_number_1(const Matrix& a);

/// ||A - A^dagger||_max.
double hermiticity_defect(const Matrix& a);
bool is_hermitian(const Matrix& a, double rel_tol = 1e-12);

/// Ascending eigenvalues of a Hermitian matrix (only the lower triangle is
/// read).
std::vector<double> hermitian_eigenvalues(const Matrix& a);

struct HermitianEigen {
  std::vector<double> values;
  Matrix vectors;  // columns
};
HermitianEigen hermitian_eigensystem(const Matrix& a);

/// Eigenvalues of a general square matrix, sorted by (real, imag).
std::vector<Complex> eigenvalues(const Matrix& a);

/// Largest distance between paired eigenvalues after greedy nearest
/// matching; infinity when the counts differ.
double spectrum_mismatch(const std::vector<Complex>& a,
                         const std::vector<Complex>& b);

/// True when a Cholesky factorization succeeds on the Hermitian part.
bool is_positive_definite(const Matrix& a);

// Common fixed matrices. Pauli matrices are 2x2; the ladder operators are the
// truncated harmonic-oscillator ones in the number basis.
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix annihilation(Eigen::Index dim);
Matrix creation(Eigen::Index dim);
Matrix number_operator(Eigen::Index dim);

}  // namespace fbqm
