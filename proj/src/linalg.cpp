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

#include "fbqm/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace fbqm {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kDimensionMismatch: return "dimension mismatch";
    case ErrorCode::kNonSquare: return "non-square matrix";
    case ErrorCode::kNonFinite: return "non-finite value";
    case ErrorCode::kSingularMatrix: return "singular matrix";
    case ErrorCode::kNotHermitian: return "not Hermitian";
    case ErrorCode::kNotPositiveDefinite: return "not positive definite";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kNumerical: return "numerical failure";
  }
  return "unknown error";
}

bool is_finite(const Matrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag()))
        return false;
  return true;
}

bool is_finite(const Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag()))
      return false;
  return true;
}

void require_finite(const Matrix& a, const char* what) {
  if (!is_finite(a))
    throw Error(ErrorCode::kNonFinite,
                std::string(what) + ": matrix has non-finite entries");
}

void require_square(const Matrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << a.rows()
       << "x" << a.cols();
    throw Error(ErrorCode::kNonSquare, os.str());
  }
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << what << ": shapes " << a.rows() << "x" << a.cols() << " and "
       << b.rows() << "x" << b.cols() << " differ";
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
}

Matrix identity(Eigen::Index dim) { return Matrix::Identity(dim, dim); }
Matrix zeros(Eigen::Index dim) { return Matrix::Zero(dim, dim); }

double max_norm(const Matrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double max_norm(const Vector& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

Matrix adjoint(const Matrix& a) { return a.adjoint(); }
Matrix transpose(const Matrix& a) { return a.transpose(); }

Matrix commutator(const Matrix& a, const Matrix& b) {
  require_square(a, "commutator");
  require_same_shape(a, b, "commutator");
  return a * b - b * a;
}

Complex trace(const Matrix& a) {
  require_square(a, "trace");
  return a.trace();
}

namespace {

double one_norm(const Matrix& a) {
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

// Pade numerator/denominator pieces: exp(A) ~ (V - U)^{-1} (V + U).
void pade_low(const Matrix& a, const double* b, int m, Matrix& u, Matrix& v) {
  const Eigen::Index n = a.rows();
  const Matrix a2 = a * a;
  Matrix odd = b[1] * Matrix::Identity(n, n);
  Matrix even = b[0] * Matrix::Identity(n, n);
  Matrix power = Matrix::Identity(n, n);
  for (int k = 2; k <= m; k += 2) {
    power = power * a2;
    even += b[k] * power;
    odd += b[k + 1] * power;
  }
  u = a * odd;
  v = even;
}

void pade13(const Matrix& a, Matrix& u, Matrix& v) {
  static constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};
  const Eigen::Index n = a.rows();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const Matrix inner_u = b[13] * a6 + b[11] * a4 + b[9] * a2;
  u = a * (a6 * inner_u + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  const Matrix inner_v = b[12] * a6 + b[10] * a4 + b[8] * a2;
  v = a6 * inner_v + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

}  // namespace

Matrix mat_exp(const Matrix& a) {
  require_square(a, "mat_exp");
  require_finite(a, "mat_exp");

  static constexpr double b3[] = {120.0, 60.0, 12.0, 1.0};
  static constexpr double b5[] = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
  static constexpr double b7[] = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                  25200.0,    1512.0,    56.0,      1.0};
  static constexpr double b9[] = {17643225600.0, 8821612800.0, 2075673600.0,
                                  302702400.0,   30270240.0,   2162160.0,
                                  110880.0,      3960.0,       90.0,
                                  1.0};
  // Largest 1-norms for which each degree reaches unit roundoff.
  static constexpr double theta3 = 1.495585217958292e-2;
  static constexpr double theta5 = 2.539398330063230e-1;
  static constexpr double theta7 = 9.504178996162932e-1;
  static constexpr double theta9 = 2.097847961257068e0;
  static constexpr double theta13 = 5.371920351148152e0;

  const double norm = one_norm(a);
  Matrix u, v;
  int squarings = 0;
  if (norm <= theta3) {
    pade_low(a, b3, 3, u, v);
  } else if (norm <= theta5) {
    pade_low(a, b5, 5, u, v);
  } else if (norm <= theta7) {
    pade_low(a, b7, 7, u, v);
  } else if (norm <= theta9) {
    pade_low(a, b9, 9, u, v);
  } else {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / theta13))));
    const Matrix scaled = a / std::ldexp(1.0, squarings);
    pade13(scaled, u, v);
  }
  Matrix result = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) result = result * result;
  return result;
}

namespace {

Eigen::PartialPivLU<Matrix> checked_lu(const Matrix& a, double max_condition,
                                       const char* what) {
  require_square(a, what);
  require_finite(a, what);
  Eigen::PartialPivLU<Matrix> lu(a);
  const double scale = max_norm(a);
  const auto diag = lu.matrixLU().diagonal();
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    if (scale == 0.0 || std::abs(diag(i)) < 1e-13 * scale) {
      std::ostringstream os;
      os << what << ": pivot " << i << " has magnitude " << std::abs(diag(i))
         << " (matrix scale " << scale << ")";
      throw Error(ErrorCode::kSingularMatrix, os.str());
    }
  }
  const double cond = one_norm(a) * one_norm(lu.inverse());
  if (!(cond <= max_condition)) {
    std::ostringstream os;
    os << what << ": condition number " << cond << " exceeds bound "
       << max_condition;
    throw Error(ErrorCode::kSingularMatrix, os.str());
  }
  return lu;
}

}  // namespace

Matrix inverse(const Matrix& a, double max_condition) {
  return checked_lu(a, max_condition, "inverse").inverse();
}

Matrix solve(const Matrix& a, const Matrix& b, double max_condition) {
  if (b.rows() != a.rows())
    throw Error(ErrorCode::kDimensionMismatch, "solve: right-hand side rows");
  return checked_lu(a, max_condition, "solve").solve(b);
}

double condition_number_1(const Matrix& a) {
  require_square(a, "condition_number_1");
  Eigen::PartialPivLU<Matrix> lu(a);
  return one_norm(a) * one_norm(lu.inverse());
}

double hermiticity_defect(const Matrix& a) {
  require_square(a, "hermiticity_defect");
  return max_norm(Matrix(a - a.adjoint()));
}

bool is_hermitian(const Matrix& a, double rel_tol) {
  return hermiticity_defect(a) <= rel_tol * std::max(max_norm(a), 1e-300);
}

std::vector<double> hermitian_eigenvalues(const Matrix& a) {
  require_square(a, "hermitian_eigenvalues");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::kNumerical, "hermitian_eigenvalues: no convergence");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

HermitianEigen hermitian_eigensystem(const Matrix& a) {
  require_square(a, "hermitian_eigensystem");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::kNumerical, "hermitian_eigensystem: no convergence");
  const auto& ev = solver.eigenvalues();
  return {{ev.data(), ev.data() + ev.size()}, solver.eigenvectors()};
}

std::vector<Complex> eigenvalues(const Matrix& a) {
  require_square(a, "eigenvalues");
  Eigen::ComplexEigenSolver<Matrix> solver(a, false);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::kNumerical, "eigenvalues: no convergence");
  const auto& ev = solver.eigenvalues();
  std::vector<Complex> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end(), [](Complex x, Complex y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return out;
}

double spectrum_mismatch(const std::vector<Complex>& a,
                         const std::vector<Complex>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const Complex x : a) {
    std::size_t best = b.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(x - b[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    used[best] = true;
    worst = std::max(worst, best_d);
  }
  return worst;
}

bool is_positive_definite(const Matrix& a) {
  require_square(a, "is_positive_definite");
  const Matrix herm = 0.5 * (a + a.adjoint());
  Eigen::LLT<Matrix> llt(herm);
  return llt.info() == Eigen::Success;
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Matrix annihilation(Eigen::Index dim) {
  Matrix m = Matrix::Zero(dim, dim);
  for (Eigen::Index n = 1; n < dim; ++n)
    m(n - 1, n) = std::sqrt(static_cast<double>(n));
  return m;
}

Matrix creation(Eigen::Index dim) { return annihilation(dim).adjoint(); }

Matrix number_operator(Eigen::Index dim) {
  Matrix m = Matrix::Zero(dim, dim);
  for (Eigen::Index n = 0; n < dim; ++n) m(n, n) = static_cast<double>(n);
  return m;
}

}  // namespace fbqm
