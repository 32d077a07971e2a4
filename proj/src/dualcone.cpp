#include "powercone/dualcone.hpp"

#include <algorithm>
#include <cmath>

namespace powercone {

ProjectivePointR2 ProjectivePointR2::from(std::array<double, 3> v) {
  double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (n == 0) throw std::invalid_argument("projective point from zero vector");
  for (auto& x : v) x /= n;
  int lead = -1;
  for (int i = 0; i < 3; ++i)
    if (std::abs(v[i]) > 1e-7) {
      lead = i;
      break;
    }
  if (lead < 0) lead = 0;
  if (v[lead] < 0)
    for (auto& x : v) x = -x;
  ProjectivePointR2 p;
  p.xi = v;
  p.discriminant = v[1] * v[1] - 4 * v[0] * v[2];
  return p;
}

const std::vector<TernaryForm<Rational>>& u_basis() {
  static const std::vector<TernaryForm<Rational>> basis = [] {
    std::vector<TernaryForm<Rational>> b;
    auto mk = [](std::initializer_list<std::pair<Exp3, Rational>> ts) {
      TernaryForm<Rational> f(4);
      for (const auto& [e, c] : ts) f.add_term(e, c);
      return f;
    };
    b.push_back(mk({{{2, 2, 0}, 1}, {{3, 0, 1}, make_rational(2, 3)}}));
    b.push_back(mk({{{1, 3, 0}, 1}, {{2, 1, 1}, 3}}));
    b.push_back(mk({{{0, 2, 2}, 1}, {{1, 0, 3}, make_rational(2, 3)}}));
    b.push_back(mk({{{0, 3, 1}, 1}, {{1, 1, 2}, 3}}));
    b.push_back(mk({{{0, 4, 0}, 1}, {{1, 2, 1}, 12}, {{2, 0, 2}, 6}}));
    b.push_back(mk({{{4, 0, 0}, 1}}));
    b.push_back(mk({{{3, 1, 0}, 1}}));
    b.push_back(mk({{{0, 0, 4}, 1}}));
    b.push_back(mk({{{0, 1, 3}, 1}}));
    return b;
  }();
  return basis;
}

namespace {

// the six relations as (coefficient, exponent) pairs
struct Relation {
  Rational w1, w2;
  Exp3 e1, e2;
};
const std::array<Relation, 6>& relations() {
  static const std::array<Relation, 6> r = {{
      {make_rational(2, 3), Rational(-1), {2, 2, 0}, {3, 0, 1}},
      {Rational(3), Rational(-1), {1, 3, 0}, {2, 1, 1}},
      {make_rational(2, 3), Rational(-1), {0, 2, 2}, {1, 0, 3}},
      {Rational(3), Rational(-1), {0, 3, 1}, {1, 1, 2}},
      {Rational(12), Rational(-1), {0, 4, 0}, {1, 2, 1}},
      {Rational(6), Rational(-1), {0, 4, 0}, {2, 0, 2}},
  }};
  return r;
}

}  // namespace

Rational u_relation_value(const TernaryForm<Rational>& F, int k) {
  const auto& r = relations()[k];
  return r.w1 * F.coeff(r.e1) + r.w2 * F.coeff(r.e2);
}

double u_relation_value(const TernaryForm<double>& F, int k) {
  const auto& r = relations()[k];
  return r.w1.get_d() * F.coeff(r.e1) + r.w2.get_d() * F.coeff(r.e2);
}

template <typename R>
TernaryForm<R> power_pairing(const BinaryForm<R>& L, int p, const BinaryForm<R>& extra) {
  if (2 * p + extra.degree != L.degree)
    throw std::invalid_argument("power_pairing: degree bookkeeping violated");
  TernaryForm<R> F(p);
  for (int i = 0; i <= p; ++i)
    for (int j = 0; j + i <= p; ++j) {
      int k = p - i - j;
      Integer multi = factorial(p) / (factorial(i) * factorial(j) * factorial(k));
      long multinom = multi.get_si();
      // monomial part of q^p: x^(2i+j) y^(j+2k)
      auto mono = binary_monomial<R>(2 * p, 2 * i + j, scalar_from_long<R>(multinom));
      auto paired = apolar_pair(mono * extra, L);
      if (!(paired[0] == R(0))) F.add_term({i, j, k}, paired[0]);
    }
  return F;
}

template TernaryForm<Rational> power_pairing(const BinaryForm<Rational>&, int, const BinaryForm<Rational>&);
template TernaryForm<double> power_pairing(const BinaryForm<double>&, int, const BinaryForm<double>&);

TernaryForm<Rational> eval_map(const BinaryForm<Rational>& L) {
  BinaryForm<Rational> one(0);
  one[0] = 1;
  return power_pairing(L, 4, one);
}

TernaryForm<double> eval_map(const BinaryForm<double>& L) {
  BinaryForm<double> one(0);
  one[0] = 1.0;
  return power_pairing(L, 4, one);
}

namespace {

// 15x9 coefficient matrix of eval_map in the monomial bases (columns are the
// images of x^m y^(8-m))
const QMat& eval_matrix() {
  static const QMat M = [] {
    QMat m(15, 9);
    auto monos = ternary_monomials(4);
    for (int col = 0; col <= 8; ++col) {
      auto F = eval_map(binary_monomial<Rational>(8, col));
      for (int row = 0; row < 15; ++row) m.at(row, col) = F.coeff(monos[row]);
    }
    return m;
  }();
  return M;
}

}  // namespace

BinaryForm<Rational> functional_of_quartic(const TernaryForm<Rational>& F) {
  if (F.degree != 4) throw std::invalid_argument("functional_of_quartic expects a quartic");
  auto monos = ternary_monomials(4);
  std::vector<Rational> rhs(15);
  for (int i = 0; i < 15; ++i) rhs[i] = F.coeff(monos[i]);
  auto sol = solve_exact(eval_matrix(), rhs);
  if (!sol) throw std::invalid_argument("quartic is not in the subspace U");
  BinaryForm<Rational> L(8);
  for (int m = 0; m <= 8; ++m) L[m] = (*sol)[m];
  return L;
}

BinaryForm<double> functional_of_quartic(const TernaryForm<double>& F, double tol) {
  if (F.degree != 4) throw std::invalid_argument("functional_of_quartic expects a quartic");
  auto monos = ternary_monomials(4);
  DMat A(15, 9);
  for (int i = 0; i < 15; ++i)
    for (int j = 0; j < 9; ++j) A.at(i, j) = eval_matrix().at(i, j).get_d();
  std::vector<double> rhs(15);
  for (int i = 0; i < 15; ++i) rhs[i] = F.coeff(monos[i]);
  auto x = least_squares(A, rhs);
  // consistency check: residual small relative to ||F||
  double res = 0, nf = 0;
  for (int i = 0; i < 15; ++i) {
    double pred = 0;
    for (int j = 0; j < 9; ++j) pred += A.at(i, j) * x[j];
    res += (pred - rhs[i]) * (pred - rhs[i]);
    nf += rhs[i] * rhs[i];
  }
  if (std::sqrt(res) > tol * std::max(std::sqrt(nf), 1e-30))
    throw std::invalid_argument("quartic is not in the subspace U (residual too large)");
  BinaryForm<double> L(8);
  for (int m = 0; m <= 8; ++m) L[m] = x[m];
  return L;
}

DerivativePair derivative_identity_check(const BinaryForm<Rational>& L, const std::array<Rational, 3>& u) {
  auto F = eval_map(L);
  TernaryForm<Rational> lhs(3);
  for (int var = 0; var < 3; ++var) {
    auto dF = partial(F, var);
    for (const auto& [e, c] : dF.terms) lhs.add_term(e, u[var] * c);
  }
  BinaryForm<Rational> uq(2);
  uq[2] = u[0];
  uq[1] = u[1];
  uq[0] = u[2];
  auto rhs = power_pairing(L, 3, uq);
  for (auto& [e, c] : rhs.terms) c *= 4;
  // rebuild to drop any zeroed terms
  TernaryForm<Rational> rhs_clean(3);
  for (const auto& [e, c] : rhs.terms)
    if (c != 0) rhs_clean.add_term(e, c);
  return {lhs, rhs_clean};
}

double pair_octic(const BinaryForm<double>& L, const BinaryForm<double>& f) {
  return apolar_pair(L, f)[0];
}

Rational pair_octic(const BinaryForm<Rational>& L, const BinaryForm<Rational>& f) {
  return apolar_pair(L, f)[0];
}

// ---------------------------------------------------------------------------
// Real zeros of psd ternary quartics on the sphere.
// ---------------------------------------------------------------------------
namespace {

struct V3 {
  double x[3];
  double& operator[](int i) { return x[i]; }
  double operator[](int i) const { return x[i]; }
};

double dot(const V3& a, const V3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
V3 scale(const V3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
V3 add(const V3& a, const V3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
double nrm(const V3& a) { return std::sqrt(dot(a, a)); }
V3 normalize(const V3& a) {
  double n = nrm(a);
  return scale(a, 1.0 / n);
}

double eval_F(const TernaryForm<double>& F, const V3& p) {
  return evaluate(F, p[0], p[1], p[2]);
}

V3 grad_F(const TernaryForm<double>& F, const V3& p) {
  V3 g{0, 0, 0};
  for (int v = 0; v < 3; ++v) g[v] = evaluate(partial(F, v), p[0], p[1], p[2]);
  return g;
}

void hess_F(const TernaryForm<double>& F, const V3& p, double H[3][3]) {
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) {
      double h = evaluate(partial(partial(F, a), b), p[0], p[1], p[2]);
      H[a][b] = h;
      H[b][a] = h;
    }
}

// minimize F on the sphere from p: projected gradient with backtracking, then
// damped Newton in the tangent plane
V3 local_minimize(const TernaryForm<double>& F, V3 p, double scale_F) {
  p = normalize(p);
  for (int it = 0; it < 60; ++it) {
    V3 g = grad_F(F, p);
    double gp = dot(g, p);
    V3 gt = add(g, scale(p, -gp));
    double gn = nrm(gt);
    if (gn < 1e-15 * scale_F) break;
    double step = 0.25 / (1 + gn / std::max(scale_F, 1e-300));
    double f0 = eval_F(F, p);
    for (int bt = 0; bt < 30; ++bt) {
      V3 cand = normalize(add(p, scale(gt, -step)));
      if (eval_F(F, cand) < f0) {
        p = cand;
        break;
      }
      step *= 0.5;
    }
  }
  // Newton polish in local tangent coordinates
  for (int it = 0; it < 40; ++it) {
    // tangent basis
    V3 t1;
    if (std::abs(p[0]) < 0.9)
      t1 = {1, 0, 0};
    else
      t1 = {0, 1, 0};
    t1 = add(t1, scale(p, -dot(t1, p)));
    t1 = normalize(t1);
    V3 t2 = {p[1] * t1[2] - p[2] * t1[1], p[2] * t1[0] - p[0] * t1[2], p[0] * t1[1] - p[1] * t1[0]};
    V3 g = grad_F(F, p);
    double H[3][3];
    hess_F(F, p, H);
    // spherical Hessian correction: Hred = T^T (H - (g.p) I) T
    double gp = dot(g, p);
    auto quad = [&](const V3& a, const V3& b) {
      double s = 0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += a[i] * H[i][j] * b[j];
      return s;
    };
    double h11 = quad(t1, t1) - gp, h12 = quad(t1, t2), h22 = quad(t2, t2) - gp;
    double b1 = -dot(g, t1), b2 = -dot(g, t2);
    double lam = 1e-12 * scale_F;
    for (int tries = 0; tries < 8; ++tries) {
      double det = (h11 + lam) * (h22 + lam) - h12 * h12;
      if (std::abs(det) < 1e-300) {
        lam = lam == 0 ? 1e-8 * scale_F : lam * 100;
        continue;
      }
      double d1 = (b1 * (h22 + lam) - b2 * h12) / det;
      double d2 = (b2 * (h11 + lam) - b1 * h12) / det;
      V3 cand = normalize(add(p, add(scale(t1, d1), scale(t2, d2))));
      if (eval_F(F, cand) <= eval_F(F, p) + 1e-18 * scale_F) {
        p = cand;
        break;
      }
      lam = lam == 0 ? 1e-8 * scale_F : lam * 100;
    }
    V3 g2 = grad_F(F, p);
    V3 gt2 = add(g2, scale(p, -dot(g2, p)));
    if (nrm(gt2) < 1e-16 * scale_F) break;
  }
  return p;
}

}  // namespace

RealZeros real_zeros_quartic(const TernaryForm<double>& F, double tol, int grid_size) {
  RealZeros out;
  double nf = norm2(F);
  if (nf == 0) {
    out.infinite_family = true;
    return out;
  }
  std::vector<std::array<double, 3>> raw;
  const double pi = 3.14159265358979323846;
  for (int gi = 0; gi < grid_size; ++gi)
    for (int gj = 0; gj < grid_size; ++gj) {
      double th = pi * (gi + 0.5) / grid_size;
      double ph = 2 * pi * (gj + 0.37) / grid_size;
      V3 start{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
      V3 z = local_minimize(F, start, nf);
      if (eval_F(F, z) <= tol * nf) raw.push_back({z[0], z[1], z[2]});
    }
  // cluster at chordal radius 1e-4
  std::vector<ProjectivePointR2> reps;
  for (auto& v : raw) {
    auto p = ProjectivePointR2::from(v);
    bool dup = false;
    for (const auto& r : reps) {
      double dplus = 0, dminus = 0;
      for (int i = 0; i < 3; ++i) {
        dplus += (p.xi[i] - r.xi[i]) * (p.xi[i] - r.xi[i]);
        dminus += (p.xi[i] + r.xi[i]) * (p.xi[i] + r.xi[i]);
      }
      if (std::sqrt(std::min(dplus, dminus)) <= 1e-4) {
        dup = true;
        break;
      }
    }
    if (!dup) reps.push_back(p);
  }
  std::sort(reps.begin(), reps.end(), [](const ProjectivePointR2& a, const ProjectivePointR2& b) {
    for (int i = 0; i < 3; ++i)
      if (a.xi[i] != b.xi[i]) return a.xi[i] < b.xi[i];
    return false;
  });
  out.zeros = reps;
  if (reps.size() > 8) out.infinite_family = true;
  if (!out.infinite_family && reps.size() >= 5) {
    // all on a common projective line <=> coordinate matrix has rank <= 2
    DMat M(static_cast<int>(reps.size()), 3);
    for (size_t i = 0; i < reps.size(); ++i)
      for (int j = 0; j < 3; ++j) M.at(static_cast<int>(i), j) = reps[i].xi[j];
    auto sv = singular_values(M);
    if (sv.size() == 3 && sv[2] <= 1e-6 * sv[0]) out.infinite_family = true;
  }
  return out;
}

}  // namespace powercone
