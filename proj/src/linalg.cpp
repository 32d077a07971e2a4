#include "powercone/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace powercone {

QMat operator*(const QMat& A, const QMat& B) {
  if (A.cols != B.rows) throw std::invalid_argument("matrix product dimension mismatch");
  QMat C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      if (A.at(i, k) == 0) continue;
      for (int j = 0; j < B.cols; ++j) C.at(i, j) += A.at(i, k) * B.at(k, j);
    }
  return C;
}

namespace {

// Clear denominators row by row; returns integer matrix and per-row scales.
void integerize(const QMat& M, std::vector<std::vector<Integer>>& Z, std::vector<Integer>& scales) {
  Z.assign(M.rows, std::vector<Integer>(M.cols, 0));
  scales.assign(M.rows, 1);
  for (int i = 0; i < M.rows; ++i) {
    Integer l = 1;
    for (int j = 0; j < M.cols; ++j) {
      Integer d = M.at(i, j).get_den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    scales[i] = l;
    for (int j = 0; j < M.cols; ++j) {
      Rational q = M.at(i, j) * Rational(l);
      Z[i][j] = q.get_num();  // exact by construction
    }
  }
}

// Fraction-free elimination on an integer matrix. Returns the number of
// pivots; if detp is non-null and the matrix is square with full pivot count,
// *detp receives the determinant (with sign from row swaps).
int bareiss(std::vector<std::vector<Integer>>& m, Integer* detp) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  Integer prev = 1;
  int sign = 1;
  int rank = 0;
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int piv = -1;
    for (int i = row; i < rows; ++i)
      if (m[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row) {
      std::swap(m[piv], m[row]);
      sign = -sign;
    }
    for (int i = row + 1; i < rows; ++i) {
      for (int j = col + 1; j < cols; ++j) {
        Integer t = m[i][j] * m[row][col] - m[i][col] * m[row][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][col] = 0;
    }
    prev = m[row][col];
    ++row;
    ++rank;
  }
  if (detp) {
    if (rank < rows) {
      *detp = 0;
    } else {
      *detp = (sign > 0) ? prev : Integer(-prev);
    }
  }
  return rank;
}

}  // namespace

int rank_exact(const QMat& M) {
  if (M.rows == 0 || M.cols == 0) return 0;
  std::vector<std::vector<Integer>> Z;
  std::vector<Integer> scales;
  integerize(M, Z, scales);
  return bareiss(Z, nullptr);
}

Rational det_exact(const QMat& M) {
  if (M.rows != M.cols) throw std::invalid_argument("determinant of non-square matrix");
  if (M.rows == 0) return 1;
  std::vector<std::vector<Integer>> Z;
  std::vector<Integer> scales;
  integerize(M, Z, scales);
  Integer d;
  bareiss(Z, &d);
  Rational r(d);
  for (const auto& s : scales) r /= Rational(s);
  return r;
}

RrefResult rref(const QMat& M) {
  RrefResult res;
  res.mat = M;
  QMat& m = res.mat;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int piv = -1;
    for (int i = row; i < m.rows; ++i)
      if (m.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(row, j));
    Rational p = m.at(row, col);
    for (int j = 0; j < m.cols; ++j) m.at(row, j) /= p;
    for (int i = 0; i < m.rows; ++i) {
      if (i == row) continue;
      Rational f = m.at(i, col);
      if (f == 0) continue;
      for (int j = 0; j < m.cols; ++j) m.at(i, j) -= f * m.at(row, j);
    }
    res.pivot_cols.push_back(col);
    ++row;
  }
  return res;
}

std::vector<std::vector<Rational>> kernel_exact(const QMat& M) {
  RrefResult r = rref(M);
  std::vector<bool> is_pivot(M.cols, false);
  for (int c : r.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (int j = 0; j < M.cols; ++j) {
    if (is_pivot[j]) continue;
    std::vector<Rational> v(M.cols, Rational(0));
    v[j] = 1;
    for (size_t rrow = 0; rrow < r.pivot_cols.size(); ++rrow)
      v[r.pivot_cols[rrow]] = -r.mat.at(static_cast<int>(rrow), j);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Rational>> solve_exact(const QMat& A, const std::vector<Rational>& b) {
  if (static_cast<int>(b.size()) != A.rows) throw std::invalid_argument("solve_exact: rhs size mismatch");
  QMat aug(A.rows, A.cols + 1);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, A.cols) = b[i];
  }
  RrefResult r = rref(aug);
  for (int c : r.pivot_cols)
    if (c == A.cols) return std::nullopt;  // inconsistent
  std::vector<Rational> x(A.cols, Rational(0));
  for (size_t rrow = 0; rrow < r.pivot_cols.size(); ++rrow)
    x[r.pivot_cols[rrow]] = r.mat.at(static_cast<int>(rrow), A.cols);
  return x;
}

std::vector<Rational> char_poly_exact(const QMat& M) {
  if (M.rows != M.cols) throw std::invalid_argument("char_poly of non-square matrix");
  const int n = M.rows;
  // Faddeev-LeVerrier: det(tI - M) = t^n + c_{n-1} t^{n-1} + ... + c_0
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  QMat B = M;
  for (int k = 1; k <= n; ++k) {
    if (k > 1) {
      QMat T = B;
      for (int i = 0; i < n; ++i) T.at(i, i) += c[n - k + 1];
      B = M * T;
    }
    Rational tr(0);
    for (int i = 0; i < n; ++i) tr += B.at(i, i);
    c[n - k] = -tr / Rational(static_cast<long>(k));
  }
  return c;
}

// ---------------------------------------------------------------------------

DMat operator*(const DMat& A, const DMat& B) {
  if (A.cols != B.rows) throw std::invalid_argument("matrix product dimension mismatch");
  DMat C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      double v = A.at(i, k);
      if (v == 0.0) continue;
      for (int j = 0; j < B.cols; ++j) C.at(i, j) += v * B.at(k, j);
    }
  return C;
}

DMat transposed(const DMat& A) {
  DMat T(A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
  return T;
}

EigenSym eigen_sym(const SymMat& M, double tol, int max_sweeps) {
  const int n = M.n;
  for (double v : M.a)
    if (!std::isfinite(v)) throw std::invalid_argument("eigen_sym: non-finite entry");
  DMat A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A.at(i, j) = M.at(i, j);
  DMat V = DMat::identity(n);
  const double scale = std::max(M.frob(), 1e-300);

  auto offdiag = [&]() {
    double s = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += 2 * A.at(i, j) * A.at(i, j);
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < max_sweeps && offdiag() > tol * scale; ++sweep) {
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        double apq = A.at(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        double app = A.at(p, p), aqq = A.at(q, q);
        double theta = (aqq - app) / (2 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        double cth = 1.0 / std::sqrt(t * t + 1), sth = t * cth;
        for (int k = 0; k < n; ++k) {
          double akp = A.at(k, p), akq = A.at(k, q);
          A.at(k, p) = cth * akp - sth * akq;
          A.at(k, q) = sth * akp + cth * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = A.at(p, k), aqk = A.at(q, k);
          A.at(p, k) = cth * apk - sth * aqk;
          A.at(q, k) = sth * apk + cth * aqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = V.at(k, p), vkq = V.at(k, q);
          V.at(k, p) = cth * vkp - sth * vkq;
          V.at(k, q) = sth * vkp + cth * vkq;
        }
      }
  }

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int i, int j) { return A.at(i, i) < A.at(j, j); });

  EigenSym out;
  out.values.resize(n);
  out.vectors = DMat(n, n);
  for (int j = 0; j < n; ++j) {
    out.values[j] = A.at(order[j], order[j]);
    for (int i = 0; i < n; ++i) out.vectors.at(i, j) = V.at(i, order[j]);
  }
  return out;
}

std::vector<double> char_poly(const SymMat& M) {
  const int n = M.n;
  DMat A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A.at(i, j) = M.at(i, j);
  std::vector<double> c(n + 1, 0.0);
  c[n] = 1.0;
  DMat B = A;
  for (int k = 1; k <= n; ++k) {
    if (k > 1) {
      DMat T = B;
      for (int i = 0; i < n; ++i) T.at(i, i) += c[n - k + 1];
      B = A * T;
    }
    double tr = 0;
    for (int i = 0; i < n; ++i) tr += B.at(i, i);
    c[n - k] = -tr / k;
  }
  return c;
}

bool cholesky(const SymMat& M, DMat& L) {
  const int n = M.n;
  L = DMat(n, n);
  for (int j = 0; j < n; ++j) {
    double d = M.at(j, j);
    for (int k = 0; k < j; ++k) d -= L.at(j, k) * L.at(j, k);
    if (d <= 0.0 || !std::isfinite(d)) return false;
    L.at(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      double s = M.at(i, j);
      for (int k = 0; k < j; ++k) s -= L.at(i, k) * L.at(j, k);
      L.at(i, j) = s / L.at(j, j);
    }
  }
  return true;
}

std::vector<double> lu_solve(DMat A, std::vector<double> b) {
  const int n = A.rows;
  if (A.cols != n || static_cast<int>(b.size()) != n) throw std::invalid_argument("lu_solve: bad dimensions");
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(A.at(k, k));
    for (int i = k + 1; i < n; ++i)
      if (std::abs(A.at(i, k)) > best) {
        best = std::abs(A.at(i, k));
        piv = i;
      }
    if (best == 0.0) throw std::domain_error("lu_solve: singular matrix");
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(A.at(piv, j), A.at(k, j));
      std::swap(b[piv], b[k]);
    }
    for (int i = k + 1; i < n; ++i) {
      double f = A.at(i, k) / A.at(k, k);
      A.at(i, k) = 0;
      if (f == 0.0) continue;
      for (int j = k + 1; j < n; ++j) A.at(i, j) -= f * A.at(k, j);
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= A.at(i, j) * x[j];
    x[i] = s / A.at(i, i);
  }
  return x;
}

std::vector<double> least_squares(const DMat& A, const std::vector<double>& b) {
  DMat At = transposed(A);
  DMat N = At * A;
  // mild Tikhonov guard keeps nearly-dependent columns from blowing up
  double tr = 0;
  for (int i = 0; i < N.rows; ++i) tr += N.at(i, i);
  double reg = 1e-14 * (tr > 0 ? tr / N.rows : 1.0);
  for (int i = 0; i < N.rows; ++i) N.at(i, i) += reg;
  std::vector<double> rhs(A.cols, 0.0);
  for (int j = 0; j < A.cols; ++j)
    for (int i = 0; i < A.rows; ++i) rhs[j] += A.at(i, j) * b[i];
  return lu_solve(N, rhs);
}

std::vector<double> singular_values(const DMat& A) {
  const int n = A.cols;
  SymMat G(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double s = 0;
      for (int k = 0; k < A.rows; ++k) s += A.at(k, i) * A.at(k, j);
      G.at(i, j) = s;
    }
  EigenSym e = eigen_sym(G, 1e-14);
  std::vector<double> sv;
  for (int i = n - 1; i >= 0; --i) sv.push_back(std::sqrt(std::max(0.0, e.values[i])));
  return sv;
}

}  // namespace powercone
