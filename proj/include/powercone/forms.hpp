#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "powercone/scalar.hpp"

namespace powercone {

// ---------------------------------------------------------------------------
// Binary forms: dense coefficient vector by x-degree ascending.
// coeffs[i] is the coefficient of x^i y^(degree-i). The zero form keeps its
// degree so graded dimensions stay well-typed.
// ---------------------------------------------------------------------------
template <typename R>
struct BinaryForm {
  int degree = 0;
  std::vector<R> coeffs;  // size degree+1

  BinaryForm() : degree(0), coeffs(1, R(0)) {}
  explicit BinaryForm(int d) : degree(d), coeffs(d + 1, R(0)) {}
  BinaryForm(int d, std::vector<R> c) : degree(d), coeffs(std::move(c)) {
    if (static_cast<int>(coeffs.size()) != d + 1)
      throw std::invalid_argument("binary form coefficient count mismatch");
  }

  const R& operator[](int i) const { return coeffs[i]; }
  R& operator[](int i) { return coeffs[i]; }

  bool is_zero() const {
    for (const auto& c : coeffs)
      if (!(c == R(0))) return false;
    return true;
  }

  friend bool operator==(const BinaryForm& a, const BinaryForm& b) {
    return a.degree == b.degree && a.coeffs == b.coeffs;
  }
};

template <typename R>
BinaryForm<R> operator+(const BinaryForm<R>& a, const BinaryForm<R>& b) {
  if (a.degree != b.degree) throw std::invalid_argument("degree mismatch in form addition");
  BinaryForm<R> r(a.degree);
  for (int i = 0; i <= a.degree; ++i) r[i] = a[i] + b[i];
  return r;
}

template <typename R>
BinaryForm<R> operator-(const BinaryForm<R>& a, const BinaryForm<R>& b) {
  if (a.degree != b.degree) throw std::invalid_argument("degree mismatch in form subtraction");
  BinaryForm<R> r(a.degree);
  for (int i = 0; i <= a.degree; ++i) r[i] = a[i] - b[i];
  return r;
}

template <typename R>
BinaryForm<R> operator*(const R& s, const BinaryForm<R>& f) {
  BinaryForm<R> r(f.degree);
  for (int i = 0; i <= f.degree; ++i) r[i] = s * f[i];
  return r;
}

template <typename R>
BinaryForm<R> operator*(const BinaryForm<R>& a, const BinaryForm<R>& b) {
  BinaryForm<R> r(a.degree + b.degree);
  for (int i = 0; i <= a.degree; ++i) {
    if (a[i] == R(0)) continue;
    for (int j = 0; j <= b.degree; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

template <typename R>
BinaryForm<R> pow(const BinaryForm<R>& f, int e) {
  BinaryForm<R> r(0);
  r[0] = R(1);
  for (int i = 0; i < e; ++i) r = r * f;
  return r;
}

// monomial x^i y^(d-i)
template <typename R>
BinaryForm<R> binary_monomial(int d, int i, const R& c = R(1)) {
  BinaryForm<R> r(d);
  r[i] = c;
  return r;
}

template <typename R>
R evaluate(const BinaryForm<R>& f, const R& x, const R& y) {
  R acc(0), xp(1);
  std::vector<R> ypow(f.degree + 1, R(1));
  for (int i = 1; i <= f.degree; ++i) ypow[i] = ypow[i - 1] * y;
  for (int i = 0; i <= f.degree; ++i) {
    acc += f[i] * xp * ypow[f.degree - i];
    xp = xp * x;
  }
  return acc;
}

template <typename R>
BinaryForm<R> deriv_x(const BinaryForm<R>& f) {
  if (f.degree == 0) return BinaryForm<R>(0);
  BinaryForm<R> r(f.degree - 1);
  for (int i = 1; i <= f.degree; ++i) r[i - 1] = scalar_from_long<R>(i) * f[i];
  return r;
}

template <typename R>
BinaryForm<R> deriv_y(const BinaryForm<R>& f) {
  if (f.degree == 0) return BinaryForm<R>(0);
  BinaryForm<R> r(f.degree - 1);
  for (int i = 0; i < f.degree; ++i) r[i] = scalar_from_long<R>(f.degree - i) * f[i];
  return r;
}

inline double norm2(const BinaryForm<double>& f) {
  double s = 0;
  for (double c : f.coeffs) s += c * c;
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Sparse bivariate polynomials (possibly inhomogeneous): exponent pair -> coeff.
// Used for the ladder constructions and substitution targets.
// ---------------------------------------------------------------------------
template <typename R>
struct BinaryPoly {
  std::map<std::pair<long, long>, R> terms;  // (x-exp, y-exp) -> nonzero coeff

  BinaryPoly() = default;

  static BinaryPoly constant(const R& c) {
    BinaryPoly p;
    if (!(c == R(0))) p.terms[{0, 0}] = c;
    return p;
  }
  static BinaryPoly monomial(long ex, long ey, const R& c = R(1)) {
    BinaryPoly p;
    if (!(c == R(0))) p.terms[{ex, ey}] = c;
    return p;
  }

  void add_term(long ex, long ey, const R& c) {
    auto it = terms.find({ex, ey});
    if (it == terms.end()) {
      if (!(c == R(0))) terms[{ex, ey}] = c;
    } else {
      it->second += c;
      if (it->second == R(0)) terms.erase(it);
    }
  }

  bool is_zero() const { return terms.empty(); }

  long deg_x() const {
    long d = 0;
    for (const auto& [e, c] : terms) d = std::max(d, e.first);
    return d;
  }
  long deg_y() const {
    long d = 0;
    for (const auto& [e, c] : terms) d = std::max(d, e.second);
    return d;
  }
  long total_degree() const {
    long d = 0;
    for (const auto& [e, c] : terms) d = std::max(d, e.first + e.second);
    return d;
  }

  friend bool operator==(const BinaryPoly& a, const BinaryPoly& b) { return a.terms == b.terms; }
};

template <typename R>
BinaryPoly<R> operator+(const BinaryPoly<R>& a, const BinaryPoly<R>& b) {
  BinaryPoly<R> r = a;
  for (const auto& [e, c] : b.terms) r.add_term(e.first, e.second, c);
  return r;
}

template <typename R>
BinaryPoly<R> operator-(const BinaryPoly<R>& a, const BinaryPoly<R>& b) {
  BinaryPoly<R> r = a;
  for (const auto& [e, c] : b.terms) r.add_term(e.first, e.second, -c);
  return r;
}

template <typename R>
BinaryPoly<R> operator*(const BinaryPoly<R>& a, const BinaryPoly<R>& b) {
  BinaryPoly<R> r;
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) r.add_term(ea.first + eb.first, ea.second + eb.second, ca * cb);
  return r;
}

template <typename R>
BinaryPoly<R> pow(const BinaryPoly<R>& p, long e) {
  BinaryPoly<R> r = BinaryPoly<R>::constant(R(1));
  BinaryPoly<R> base = p;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

template <typename R>
BinaryPoly<R> to_poly(const BinaryForm<R>& f) {
  BinaryPoly<R> p;
  for (int i = 0; i <= f.degree; ++i)
    if (!(f[i] == R(0))) p.terms[{i, f.degree - i}] = f[i];
  return p;
}

// f must be homogeneous; degree is taken from the terms (or `expect` if given).
template <typename R>
BinaryForm<R> to_form(const BinaryPoly<R>& p, int expect_degree = -1) {
  long d = expect_degree >= 0 ? expect_degree : p.total_degree();
  BinaryForm<R> f(static_cast<int>(d));
  for (const auto& [e, c] : p.terms) {
    if (e.first + e.second != d) throw std::invalid_argument("polynomial is not homogeneous of expected degree");
    f[static_cast<int>(e.first)] = c;
  }
  return f;
}

// f(px, py), expanded. Powers are built incrementally; this is the workhorse
// behind the y -> x^r specializations.
template <typename R>
BinaryPoly<R> substitute(const BinaryPoly<R>& f, const BinaryPoly<R>& px, const BinaryPoly<R>& py) {
  long dx = 0, dy = 0;
  for (const auto& [e, c] : f.terms) {
    dx = std::max(dx, e.first);
    dy = std::max(dy, e.second);
  }
  std::vector<BinaryPoly<R>> xp(dx + 1), yp(dy + 1);
  xp[0] = BinaryPoly<R>::constant(R(1));
  for (long i = 1; i <= dx; ++i) xp[i] = xp[i - 1] * px;
  yp[0] = BinaryPoly<R>::constant(R(1));
  for (long i = 1; i <= dy; ++i) yp[i] = yp[i - 1] * py;
  BinaryPoly<R> r;
  for (const auto& [e, c] : f.terms) {
    BinaryPoly<R> t = xp[e.first] * yp[e.second];
    for (const auto& [et, ct] : t.terms) r.add_term(et.first, et.second, c * ct);
  }
  return r;
}

template <typename R>
BinaryPoly<R> substitute(const BinaryForm<R>& f, const BinaryPoly<R>& px, const BinaryPoly<R>& py) {
  return substitute(to_poly(f), px, py);
}

// f o M for M = [[m00,m01],[m10,m11]], i.e. x -> m00 x + m01 y, y -> m10 x + m11 y.
// M must be invertible; for exact scalars the determinant test is exact.
template <typename R>
BinaryForm<R> change_coords(const BinaryForm<R>& f, const std::array<std::array<R, 2>, 2>& M) {
  R det = M[0][0] * M[1][1] - M[0][1] * M[1][0];
  if (det == R(0)) throw std::invalid_argument("singular coordinate change");
  int d = f.degree;
  // X, Y are the images of x, y as linear forms (coeffs[1] = x part)
  BinaryForm<R> X(1), Y(1);
  X[1] = M[0][0];
  X[0] = M[0][1];
  Y[1] = M[1][0];
  Y[0] = M[1][1];
  std::vector<BinaryForm<R>> Xp(d + 1, BinaryForm<R>(0)), Yp(d + 1, BinaryForm<R>(0));
  Xp[0][0] = R(1);
  Yp[0][0] = R(1);
  for (int i = 1; i <= d; ++i) {
    Xp[i] = Xp[i - 1] * X;
    Yp[i] = Yp[i - 1] * Y;
  }
  BinaryForm<R> r(d);
  for (int i = 0; i <= d; ++i) {
    if (f[i] == R(0)) continue;
    BinaryForm<R> t = Xp[i] * Yp[d - i];
    for (int j = 0; j <= d; ++j) r[j] += f[i] * t[j];
  }
  return r;
}

// ---------------------------------------------------------------------------
// Apolarity pairing <g, f>: g acts on f by differentiation,
// <x^a, x^b> = b!/(b-a)! x^(b-a) when a <= b componentwise, else 0.
// ---------------------------------------------------------------------------
inline long falling_factorial(long b, long a) {  // b!/(b-a)!
  long r = 1;
  for (long k = 0; k < a; ++k) r *= (b - k);
  return r;
}

template <typename R>
BinaryForm<R> apolar_pair(const BinaryForm<R>& g, const BinaryForm<R>& f) {
  int dg = g.degree, df = f.degree;
  int dr = std::max(df - dg, 0);
  BinaryForm<R> r(dr);
  if (df < dg) return r;  // every monomial pairing vanishes
  for (int i = 0; i <= dg; ++i) {
    if (g[i] == R(0)) continue;
    for (int j = i; j <= df; ++j) {
      if (f[j] == R(0)) continue;
      int gy = dg - i, fy = df - j;
      if (gy > fy) continue;
      long scale = falling_factorial(j, i) * falling_factorial(fy, gy);
      r[j - i] += g[i] * f[j] * scalar_from_long<R>(scale);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Ternary forms: sparse, graded lex with a > b > c. Iteration starts at the
// highest monomial (a^d first), matching the fixed degree-4 monomial list used
// in the matrix assemblies.
// ---------------------------------------------------------------------------
using Exp3 = std::array<int, 3>;

struct Exp3LexGreater {
  bool operator()(const Exp3& u, const Exp3& v) const {
    if (u[0] != v[0]) return u[0] > v[0];
    if (u[1] != v[1]) return u[1] > v[1];
    return u[2] > v[2];
  }
};

template <typename R>
struct TernaryForm {
  int degree = 0;
  std::map<Exp3, R, Exp3LexGreater> terms;

  TernaryForm() = default;
  explicit TernaryForm(int d) : degree(d) {}

  void add_term(const Exp3& e, const R& c) {
    if (e[0] + e[1] + e[2] != degree) throw std::invalid_argument("ternary exponent degree mismatch");
    auto it = terms.find(e);
    if (it == terms.end()) {
      if (!(c == R(0))) terms[e] = c;
    } else {
      it->second += c;
      if (it->second == R(0)) terms.erase(it);
    }
  }

  R coeff(const Exp3& e) const {
    auto it = terms.find(e);
    return it == terms.end() ? R(0) : it->second;
  }

  bool is_zero() const { return terms.empty(); }

  friend bool operator==(const TernaryForm& a, const TernaryForm& b) {
    return a.degree == b.degree && a.terms == b.terms;
  }
};

template <typename R>
TernaryForm<R> operator+(const TernaryForm<R>& a, const TernaryForm<R>& b) {
  if (a.degree != b.degree) throw std::invalid_argument("degree mismatch in ternary addition");
  TernaryForm<R> r = a;
  for (const auto& [e, c] : b.terms) r.add_term(e, c);
  return r;
}

template <typename R>
TernaryForm<R> operator-(const TernaryForm<R>& a, const TernaryForm<R>& b) {
  if (a.degree != b.degree) throw std::invalid_argument("degree mismatch in ternary subtraction");
  TernaryForm<R> r = a;
  for (const auto& [e, c] : b.terms) r.add_term(e, -c);
  return r;
}

template <typename R>
TernaryForm<R> operator*(const R& s, const TernaryForm<R>& f) {
  TernaryForm<R> r(f.degree);
  if (s == R(0)) return r;
  for (const auto& [e, c] : f.terms) r.terms[e] = s * c;
  return r;
}

template <typename R>
TernaryForm<R> operator*(const TernaryForm<R>& a, const TernaryForm<R>& b) {
  TernaryForm<R> r(a.degree + b.degree);
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms)
      r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
  return r;
}

template <typename R>
TernaryForm<R> apolar_pair(const TernaryForm<R>& g, const TernaryForm<R>& f) {
  int dr = std::max(f.degree - g.degree, 0);
  TernaryForm<R> r(dr);
  if (f.degree < g.degree) return r;
  for (const auto& [eg, cg] : g.terms)
    for (const auto& [ef, cf] : f.terms) {
      if (eg[0] > ef[0] || eg[1] > ef[1] || eg[2] > ef[2]) continue;
      long scale = falling_factorial(ef[0], eg[0]) * falling_factorial(ef[1], eg[1]) *
                   falling_factorial(ef[2], eg[2]);
      r.add_term({ef[0] - eg[0], ef[1] - eg[1], ef[2] - eg[2]}, cg * cf * scalar_from_long<R>(scale));
    }
  return r;
}

template <typename R>
R evaluate(const TernaryForm<R>& f, const R& a, const R& b, const R& c) {
  R acc(0);
  for (const auto& [e, coef] : f.terms) {
    R t = coef;
    for (int i = 0; i < e[0]; ++i) t = t * a;
    for (int i = 0; i < e[1]; ++i) t = t * b;
    for (int i = 0; i < e[2]; ++i) t = t * c;
    acc += t;
  }
  return acc;
}

template <typename R>
TernaryForm<R> partial(const TernaryForm<R>& f, int var) {
  if (f.degree == 0) return TernaryForm<R>(0);
  TernaryForm<R> r(f.degree - 1);
  for (const auto& [e, c] : f.terms) {
    if (e[var] == 0) continue;
    Exp3 e2 = e;
    e2[var] -= 1;
    r.add_term(e2, scalar_from_long<R>(e[var]) * c);
  }
  return r;
}

// all exponent triples of a given degree, in the canonical (lex descending) order
inline std::vector<Exp3> ternary_monomials(int degree) {
  std::vector<Exp3> v;
  for (int i = degree; i >= 0; --i)
    for (int j = degree - i; j >= 0; --j) v.push_back({i, j, degree - i - j});
  return v;
}

// F(x^2, xy, y^2): binary form of degree 2*deg F
template <typename R>
BinaryForm<R> veronese_pullback(const TernaryForm<R>& F) {
  BinaryForm<R> r(2 * F.degree);
  for (const auto& [e, c] : F.terms) {
    int xdeg = 2 * e[0] + e[1];
    r[xdeg] += c;
  }
  return r;
}

inline double norm2(const TernaryForm<double>& f) {
  double s = 0;
  for (const auto& [e, c] : f.terms) s += c * c;
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Conversions between scalar kinds (always explicit; mixed arithmetic is a
// compile error by construction).
// ---------------------------------------------------------------------------
inline BinaryForm<double> to_float(const BinaryForm<Rational>& f) {
  BinaryForm<double> r(f.degree);
  for (int i = 0; i <= f.degree; ++i) r[i] = f[i].get_d();
  return r;
}

inline TernaryForm<double> to_float(const TernaryForm<Rational>& f) {
  TernaryForm<double> r(f.degree);
  for (const auto& [e, c] : f.terms)
    if (c != 0) r.terms[e] = c.get_d();
  return r;
}

inline BinaryForm<BigFloat> to_bigfloat(const BinaryForm<Rational>& f, int prec) {
  BinaryForm<BigFloat> r(f.degree);
  for (int i = 0; i <= f.degree; ++i) r[i] = BigFloat(f[i], prec);
  return r;
}

inline BinaryForm<double> to_float(const BinaryForm<BigFloat>& f) {
  BinaryForm<double> r(f.degree);
  for (int i = 0; i <= f.degree; ++i) r[i] = f[i].to_double();
  return r;
}

inline TernaryForm<double> to_float(const TernaryForm<BigFloat>& f) {
  TernaryForm<double> r(f.degree);
  for (const auto& [e, c] : f.terms) r.terms[e] = c.to_double();
  return r;
}

BinaryForm<Rational> rationalize(const BinaryForm<double>& f, unsigned long den_bound);

// ---------------------------------------------------------------------------
// Exact gcd / square-free machinery for rational binary forms (real linear
// factor bookkeeping for the face classification).
// ---------------------------------------------------------------------------

// gcd of two binary forms over Q, normalized primitive with positive leading
// (highest x-power) coefficient. gcd(f, 0) = normalized f.
BinaryForm<Rational> gcd_forms(const BinaryForm<Rational>& f, const BinaryForm<Rational>& g);

// square-free decomposition f = unit * prod_i factor_i^multiplicity_i
struct SquareFreePart {
  BinaryForm<Rational> factor;
  int multiplicity;
};
struct SquareFreeDecomposition {
  Rational unit;
  std::vector<SquareFreePart> parts;  // squarefree, pairwise coprime, multiplicity ascending order of discovery
};
SquareFreeDecomposition squarefree_decompose(const BinaryForm<Rational>& f);

// exact square root over Q if it exists
std::optional<BinaryForm<Rational>> sqrt_form(const BinaryForm<Rational>& f);
// exact fourth root: sqrt twice
std::optional<BinaryForm<Rational>> fourth_root_form(const BinaryForm<Rational>& f);

// exact division; nullopt if g does not divide f
std::optional<BinaryForm<Rational>> divide_forms(const BinaryForm<Rational>& f, const BinaryForm<Rational>& g);

// resultant of two binary forms (Sylvester determinant), exact
Rational resultant(const BinaryForm<Rational>& f, const BinaryForm<Rational>& g);

}  // namespace powercone
