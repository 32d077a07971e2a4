#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "powercone/scalar.hpp"

namespace powercone {

// ---------------------------------------------------------------------------
// Exact rational dense matrices.
// ---------------------------------------------------------------------------
struct QMat {
  int rows = 0, cols = 0;
  std::vector<Rational> a;

  QMat() = default;
  QMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Rational(0)) {}

  Rational& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Rational& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static QMat identity(int n) {
    QMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  QMat transposed() const {
    QMat t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }
};

QMat operator*(const QMat& A, const QMat& B);

// rank over Q, fraction-free (Bareiss) elimination, first-nonzero pivoting
int rank_exact(const QMat& M);

// exact determinant by Bareiss elimination; throws on non-square input
Rational det_exact(const QMat& M);

// basis of the right kernel from the reduced row echelon form; one vector per
// free column, free columns in ascending order, the free coordinate set to 1
std::vector<std::vector<Rational>> kernel_exact(const QMat& M);

struct RrefResult {
  QMat mat;
  std::vector<int> pivot_cols;  // pivot column of row r
};
RrefResult rref(const QMat& M);

// exact solve A x = b; nullopt when inconsistent; free variables set to 0
std::optional<std::vector<Rational>> solve_exact(const QMat& A, const std::vector<Rational>& b);

// coefficients of det(tI - M), ascending in t, exact (Faddeev-LeVerrier)
std::vector<Rational> char_poly_exact(const QMat& M);

// ---------------------------------------------------------------------------
// Floating symmetric matrices, packed upper-triangle storage so symmetry is
// exact by construction.
// ---------------------------------------------------------------------------
struct SymMat {
  int n = 0;
  std::vector<double> a;  // packed upper triangle, row-major

  SymMat() = default;
  explicit SymMat(int dim) : n(dim), a(static_cast<size_t>(dim) * (dim + 1) / 2, 0.0) {}

  static size_t idx(int i, int j, int n) {
    if (i > j) std::swap(i, j);
    return static_cast<size_t>(i) * n - static_cast<size_t>(i) * (i - 1) / 2 + (j - i);
  }
  double& at(int i, int j) { return a[idx(i, j, n)]; }
  double at(int i, int j) const { return a[idx(i, j, n)]; }

  static SymMat identity(int n) {
    SymMat m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }

  double trace() const {
    double t = 0;
    for (int i = 0; i < n; ++i) t += at(i, i);
    return t;
  }

  double frob() const {
    double s = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += at(i, j) * at(i, j);
    return std::sqrt(s);
  }
};

inline double inner(const SymMat& A, const SymMat& B) {
  double s = 0;
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j) s += A.at(i, j) * B.at(i, j);
  return s;
}

// General dense double matrices (column-major not needed; row-major).
struct DMat {
  int rows = 0, cols = 0;
  std::vector<double> a;

  DMat() = default;
  DMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

  double& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  double at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static DMat identity(int n) {
    DMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }
};

DMat operator*(const DMat& A, const DMat& B);
DMat transposed(const DMat& A);

struct EigenSym {
  std::vector<double> values;  // ascending
  DMat vectors;                // orthonormal columns, M = V diag(values) V^T
};

// cyclic Jacobi; sweeps until the off-diagonal Frobenius norm is <= tol*||M||
EigenSym eigen_sym(const SymMat& M, double tol = 1e-12, int max_sweeps = 64);

std::vector<double> char_poly(const SymMat& M);

// Cholesky factorization M = L L^T; returns false if M is not (numerically) pd
bool cholesky(const SymMat& M, DMat& L);

// solve A x = b by partial-pivot LU; throws on (numerically) singular A
std::vector<double> lu_solve(DMat A, std::vector<double> b);

// least-squares min ||Ax-b|| via normal equations (small well-scaled systems)
std::vector<double> least_squares(const DMat& A, const std::vector<double>& b);

// singular values of a general matrix, descending (via eigenvalues of A^T A)
std::vector<double> singular_values(const DMat& A);

// ---------------------------------------------------------------------------
// Generic dense elimination for extended-precision scalars. Partial pivoting
// by absolute value; used for the high-precision determinant evaluations.
// ---------------------------------------------------------------------------
template <typename R>
R det_dense(std::vector<std::vector<R>> m) {
  const int n = static_cast<int>(m.size());
  R zero = m[0][0] - m[0][0];  // correctly-typed zero (keeps BigFloat precision)
  bool neg = false;
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    R best = zero;
    for (int i = k; i < n; ++i) {
      R mag = abs(m[i][k]);
      if (piv < 0 || best < mag) {
        piv = i;
        best = mag;
      }
    }
    if (!(zero < best)) return zero;  // singular
    if (piv != k) {
      std::swap(m[piv], m[k]);
      neg = !neg;
    }
    for (int i = k + 1; i < n; ++i) {
      R factor = m[i][k] / m[k][k];
      for (int j = k; j < n; ++j) m[i][j] = m[i][j] - factor * m[k][j];
    }
  }
  R d = m[0][0];
  for (int k = 1; k < n; ++k) d = d * m[k][k];
  if (neg) d = -d;
  return d;
}

}  // namespace powercone
