#include "powercone/forms.hpp"

#include <cmath>

#include "powercone/linalg.hpp"

namespace powercone {

Rational nearest_rational(double x, unsigned long den_bound) {
  if (!std::isfinite(x)) throw std::invalid_argument("nearest_rational: non-finite input");
  if (den_bound == 0) den_bound = 1;
  bool neg = x < 0;
  double v = std::abs(x);
  // continued fraction convergents p/q with q <= den_bound
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(frac);
    if (fl > 9e18) break;
    Integer a(static_cast<unsigned long>(fl));
    Integer p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > Integer(den_bound)) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double rem = frac - fl;
    if (rem < 1e-18) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) {  // nothing fit; fall back to rounding
    p1 = Integer(static_cast<long>(std::llround(v)));
    q1 = 1;
  }
  Rational r(p1, q1);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

BinaryForm<Rational> rationalize(const BinaryForm<double>& f, unsigned long den_bound) {
  BinaryForm<Rational> r(f.degree);
  for (int i = 0; i <= f.degree; ++i) r[i] = nearest_rational(f[i], den_bound);
  return r;
}

// ---------------------------------------------------------------------------
// Univariate helpers over Q (ascending coefficients). A binary form splits as
// x^ax * y^ay * core with core(x, y) = y^m u(x/y), u(0) != 0.
// ---------------------------------------------------------------------------
namespace {

using Poly = std::vector<Rational>;  // ascending, no trailing zeros after trim

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly derivative(const Poly& p) {
  Poly d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(Rational(static_cast<long>(i)) * p[i]);
  trim(d);
  return d;
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

// divides a by b; returns {quotient, remainder}
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  trim(a);
  if (b.empty()) throw std::domain_error("univariate division by zero");
  Poly q;
  if (degree(a) < degree(b)) return {q, a};
  q.assign(a.size() - b.size() + 1, Rational(0));
  while (!a.empty() && degree(a) >= degree(b)) {
    Rational f = a.back() / b.back();
    int shift = degree(a) - degree(b);
    q[shift] = f;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  trim(q);
  return {q, a};
}

// primitive normalization: integer coprime coefficients, positive leading one
void normalize_primitive(Poly& p) {
  trim(p);
  if (p.empty()) return;
  Integer l = 1;
  for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  Integer g = 0;
  for (const auto& c : p) {
    Rational t = c * Rational(l);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.get_num().get_mpz_t());
  }
  Rational scale = Rational(l) / Rational(g);
  if (p.back() < 0) scale = -scale;
  for (auto& c : p) c *= scale;
}

Poly gcd_uni(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto [q, r] = divmod(a, b);
    a = std::move(b);
    b = std::move(r);
    if (!b.empty()) {
      Rational lc = b.back();
      for (auto& c : b) c /= lc;  // keep coefficients tame
    }
  }
  normalize_primitive(a);
  return a;
}

struct Split {
  int x_pow = 0, y_pow = 0;
  Poly u;  // core, u front and back nonzero (if nonempty)
};

Split split_form(const BinaryForm<Rational>& f) {
  Split s;
  if (f.is_zero()) return s;
  int lo = 0;
  while (f[lo] == 0) ++lo;
  int hi = f.degree;
  while (f[hi] == 0) --hi;
  s.x_pow = lo;
  s.y_pow = f.degree - hi;
  for (int i = lo; i <= hi; ++i) s.u.push_back(f[i]);
  return s;
}

BinaryForm<Rational> join_form(int x_pow, int y_pow, const Poly& u) {
  int m = degree(u);
  if (m < 0) return BinaryForm<Rational>(0);
  BinaryForm<Rational> f(x_pow + y_pow + m);
  for (int j = 0; j <= m; ++j) f[x_pow + j] = u[j];
  return f;
}

}  // namespace

BinaryForm<Rational> gcd_forms(const BinaryForm<Rational>& f, const BinaryForm<Rational>& g) {
  if (f.is_zero() && g.is_zero()) return BinaryForm<Rational>(0);
  if (f.is_zero()) return gcd_forms(g, g);
  if (g.is_zero()) {
    Split s = split_form(f);
    normalize_primitive(s.u);
    return join_form(s.x_pow, s.y_pow, s.u);
  }
  Split sf = split_form(f), sg = split_form(g);
  Poly d = gcd_uni(sf.u, sg.u);
  return join_form(std::min(sf.x_pow, sg.x_pow), std::min(sf.y_pow, sg.y_pow), d);
}

SquareFreeDecomposition squarefree_decompose(const BinaryForm<Rational>& f) {
  SquareFreeDecomposition out;
  out.unit = 0;
  if (f.is_zero()) return out;
  Split s = split_form(f);
  if (s.x_pow > 0) {
    BinaryForm<Rational> x(1);
    x[1] = 1;
    out.parts.push_back({x, s.x_pow});
  }
  if (s.y_pow > 0) {
    BinaryForm<Rational> y(1);
    y[0] = 1;
    out.parts.push_back({y, s.y_pow});
  }
  Poly u = s.u;
  normalize_primitive(u);
  if (degree(u) > 0) {
    // Yun's algorithm
    Poly up = derivative(u);
    Poly g = gcd_uni(u, up);
    Poly c = divmod(u, g).first;
    Poly d;
    {
      Poly t = divmod(up, g).first;
      Poly cp = derivative(c);
      d.assign(std::max(t.size(), cp.size()), Rational(0));
      for (size_t i = 0; i < t.size(); ++i) d[i] += t[i];
      for (size_t i = 0; i < cp.size(); ++i) d[i] -= cp[i];
      trim(d);
    }
    int mult = 1;
    while (degree(c) > 0) {
      Poly a = gcd_uni(c, d);
      if (degree(a) > 0) {
        Poly an = a;
        normalize_primitive(an);
        // homogenize the squarefree factor back to a binary form
        out.parts.push_back({join_form(0, 0, an), mult});
      }
      c = divmod(c, a).first;
      Poly t = divmod(d, a).first;
      Poly cp = derivative(c);
      d.assign(std::max(t.size(), cp.size()), Rational(0));
      for (size_t i = 0; i < t.size(); ++i) d[i] += t[i];
      for (size_t i = 0; i < cp.size(); ++i) d[i] -= cp[i];
      trim(d);
      ++mult;
    }
  }
  // unit = f / prod(parts)
  BinaryForm<Rational> prod(0);
  prod[0] = 1;
  for (const auto& part : out.parts)
    for (int e = 0; e < part.multiplicity; ++e) prod = prod * part.factor;
  // compare leading coefficients at the first nonzero index of f
  int lead = 0;
  while (f[lead] == 0) ++lead;
  out.unit = f[lead] / prod[lead];
  return out;
}

std::optional<BinaryForm<Rational>> divide_forms(const BinaryForm<Rational>& f,
                                                 const BinaryForm<Rational>& g) {
  if (g.is_zero()) return std::nullopt;
  if (f.is_zero()) {
    int d = f.degree - g.degree;
    return BinaryForm<Rational>(std::max(d, 0));
  }
  if (g.degree > f.degree) return std::nullopt;
  Split sf = split_form(f), sg = split_form(g);
  if (sg.x_pow > sf.x_pow || sg.y_pow > sf.y_pow) return std::nullopt;
  auto [q, r] = divmod(sf.u, sg.u);
  if (!r.empty()) return std::nullopt;
  return join_form(sf.x_pow - sg.x_pow, sf.y_pow - sg.y_pow, q);
}

namespace {

// exact square root of a rational if it is a perfect square
std::optional<Rational> sqrt_rational(const Rational& q) {
  if (q < 0) return std::nullopt;
  if (q == 0) return Rational(0);
  Integer n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  Integer sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  Rational r(sn, sd);
  r.canonicalize();
  return r;
}

std::optional<Poly> sqrt_uni(const Poly& u) {
  int m = degree(u);
  if (m < 0) return Poly{};
  if (m % 2 != 0) return std::nullopt;
  int h = m / 2;
  auto lc = sqrt_rational(u[m]);
  if (!lc) return std::nullopt;
  Poly v(h + 1, Rational(0));
  v[h] = *lc;
  for (int k = h - 1; k >= 0; --k) {
    Rational acc(0);
    // sum over ordered pairs (i, j) with i + j = h + k and both > k
    for (int i = k + 1; i <= h; ++i) {
      int j = h + k - i;
      if (j < k + 1 || j > h) continue;
      acc += v[i] * v[j];
    }
    v[k] = (u[h + k] - acc) / (Rational(2) * v[h]);
  }
  if (mul(v, v) != u) return std::nullopt;
  return v;
}

}  // namespace

std::optional<BinaryForm<Rational>> sqrt_form(const BinaryForm<Rational>& f) {
  if (f.degree % 2 != 0) return std::nullopt;
  if (f.is_zero()) return BinaryForm<Rational>(f.degree / 2);
  Split s = split_form(f);
  if (s.x_pow % 2 != 0 || s.y_pow % 2 != 0) return std::nullopt;
  auto v = sqrt_uni(s.u);
  if (!v) return std::nullopt;
  return join_form(s.x_pow / 2, s.y_pow / 2, *v);
}

std::optional<BinaryForm<Rational>> fourth_root_form(const BinaryForm<Rational>& f) {
  auto s = sqrt_form(f);
  if (!s) return std::nullopt;
  return sqrt_form(*s);
}

Rational resultant(const BinaryForm<Rational>& f, const BinaryForm<Rational>& g) {
  const int m = f.degree, n = g.degree;
  if (m == 0 || n == 0) {
    // resultant with a constant c is c^(other degree)
    Rational c = (m == 0) ? f[0] : g[0];
    int e = (m == 0) ? n : m;
    Rational r(1);
    for (int i = 0; i < e; ++i) r *= c;
    return r;
  }
  QMat S(m + n, m + n);
  // rows 0..n-1: shifted coefficients of f (descending in x), rows n..: of g
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) S.at(r, r + i) = f[m - i];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) S.at(n + r, r + i) = g[n - i];
  return det_exact(S);
}

}  // namespace powercone
