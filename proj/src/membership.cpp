#include "powercone/membership.hpp"

#include <algorithm>
#include <cmath>

namespace powercone {

namespace {

// degree-2 ternary monomials (a^2, ab, ac, b^2, bc, c^2) and the index of a
// degree-4 monomial in the canonical list
const std::vector<Exp3>& deg2_monos() {
  static const std::vector<Exp3> v = ternary_monomials(2);
  return v;
}
const std::vector<Exp3>& deg4_monos() {
  static const std::vector<Exp3> v = ternary_monomials(4);
  return v;
}

int deg4_index(const Exp3& e) {
  const auto& m = deg4_monos();
  for (int i = 0; i < 15; ++i)
    if (m[i] == e) return i;
  throw std::logic_error("deg4_index: not a degree-4 exponent");
}

Exp3 mono_product(const Exp3& a, const Exp3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

// the six U relations composed with the Gram-to-quartic map, as constraint
// matrices on the 6x6 Gram
const std::vector<SymMat>& u_relation_matrices() {
  static const std::vector<SymMat> mats = [] {
    std::vector<SymMat> out;
    // relation k as a vector over the 15 degree-4 monomials
    for (int k = 0; k < 6; ++k) {
      std::vector<double> w(15, 0.0);
      for (int mi = 0; mi < 15; ++mi) {
        TernaryForm<Rational> probe(4);
        probe.add_term(deg4_monos()[mi], 1);
        w[mi] = u_relation_value(probe, k).get_d();
      }
      SymMat R(6);
      for (int p = 0; p < 6; ++p)
        for (int q = p; q < 6; ++q) {
          int idx = deg4_index(mono_product(deg2_monos()[p], deg2_monos()[q]));
          R.at(p, q) = w[idx];  // <R,X> counts (p,q) and (q,p), matching v^T X v
        }
      out.push_back(R);
    }
    return out;
  }();
  return mats;
}

// 15x21 exact coefficient map from packed upper-triangle Gram entries to
// quartic coefficients, with its kernel basis and a solver for particular
// solutions
struct GramCoeffMap {
  QMat M;                                       // 15 x 21
  std::vector<std::vector<Rational>> kernel;    // 6 packed vectors
};
const GramCoeffMap& gram_coeff_map() {
  static const GramCoeffMap g = [] {
    GramCoeffMap out;
    out.M = QMat(15, 21);
    int col = 0;
    for (int p = 0; p < 6; ++p)
      for (int q = p; q < 6; ++q, ++col) {
        int idx = deg4_index(mono_product(deg2_monos()[p], deg2_monos()[q]));
        out.M.at(idx, col) += (p == q) ? 1 : 2;
      }
    out.kernel = kernel_exact(out.M);
    return out;
  }();
  return g;
}

SymMat packed_to_sym(const std::vector<double>& u) {
  SymMat X(6);
  int col = 0;
  for (int p = 0; p < 6; ++p)
    for (int q = p; q < 6; ++q, ++col) X.at(p, q) = u[col];
  return X;
}

double frob(const SymMat& X) { return std::sqrt(inner(X, X)); }

}  // namespace

TernaryForm<double> gram_to_quartic(const SymMat& X) {
  TernaryForm<double> F(4);
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q) {
      Exp3 e = mono_product(deg2_monos()[p], deg2_monos()[q]);
      auto it = F.terms.find(e);
      double add = X.at(p, q);
      if (it == F.terms.end()) {
        if (add != 0) F.terms[e] = add;
      } else {
        it->second += add;
        if (it->second == 0) F.terms.erase(it);
      }
    }
  return F;
}

TernaryForm<Rational> gram_to_quartic_exact(const QMat& X) {
  TernaryForm<Rational> F(4);
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q) {
      Exp3 e = mono_product(deg2_monos()[p], deg2_monos()[q]);
      if (X.at(p, q) != 0) F.add_term(e, X.at(p, q));
    }
  return F;
}

QMat membership_objective(const BinaryForm<Rational>& f) {
  if (f.degree != 8) throw std::invalid_argument("membership objective expects an octic");
  // w in Q^15 with w^T Phi = (m!(8-m)! f_m)_m, so that <C_f, X> = <L(F(X)), f>
  // on the U slice
  QMat PhiT(9, 15);
  {
    // Phi columns are eval_map of the monomial functionals
    auto monos4 = deg4_monos();
    for (int col = 0; col <= 8; ++col) {
      auto F = eval_map(binary_monomial<Rational>(8, col));
      for (int row = 0; row < 15; ++row) PhiT.at(col, row) = F.coeff(monos4[row]);
    }
  }
  std::vector<Rational> rhs(9);
  for (int m = 0; m <= 8; ++m) rhs[m] = Rational(factorial(m) * factorial(8 - m)) * f[m];
  auto w = solve_exact(PhiT, rhs);
  if (!w) throw std::logic_error("membership objective: inconsistent system");
  QMat C(6, 6);
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q)
      C.at(p, q) = (*w)[deg4_index(mono_product(deg2_monos()[p], deg2_monos()[q]))];
  return C;
}

namespace {

MembershipResult membership_impl(const BinaryForm<double>& f_float,
                                 const std::optional<BinaryForm<Rational>>& f_exact, double tol,
                                 double band) {
  MembershipResult out;
  SymMat C(6);
  if (f_exact) {
    QMat Ce = membership_objective(*f_exact);
    for (int p = 0; p < 6; ++p)
      for (int q = p; q < 6; ++q) C.at(p, q) = Ce.at(p, q).get_d();
  } else {
    // float path: least-squares solve of w^T Phi = weighted coefficients
    DMat PhiT(9, 15);
    auto monos4 = deg4_monos();
    for (int col = 0; col <= 8; ++col) {
      auto F = eval_map(binary_monomial<Rational>(8, col));
      for (int row = 0; row < 15; ++row) PhiT.at(col, row) = F.coeff(monos4[row]).get_d();
    }
    // min-norm solution of an underdetermined system: w = Phi (Phi^T Phi)^{-1} rhs
    DMat Phi = transposed(PhiT);
    DMat G(9, 9);
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j) {
        double s = 0;
        for (int r = 0; r < 15; ++r) s += Phi.at(r, i) * Phi.at(r, j);
        G.at(i, j) = s;
      }
    std::vector<double> rhs(9);
    for (int m = 0; m <= 8; ++m) rhs[m] = factorial(m).get_d() * factorial(8 - m).get_d() * f_float[m];
    auto lam = lu_solve(G, rhs);
    std::vector<double> w(15, 0.0);
    for (int r = 0; r < 15; ++r)
      for (int i = 0; i < 9; ++i) w[r] += Phi.at(r, i) * lam[i];
    for (int p = 0; p < 6; ++p)
      for (int q = p; q < 6; ++q) C.at(p, q) = w[deg4_index(mono_product(deg2_monos()[p], deg2_monos()[q]))];
  }

  double cn = std::max(frob(C), 1e-300);
  SymMat Cn(6);
  for (size_t t = 0; t < C.a.size(); ++t) Cn.a[t] = C.a[t] / cn;

  SdpProblem p;
  p.n = 6;
  p.C = Cn;
  for (const auto& R : u_relation_matrices()) {
    p.A.push_back(R);
    p.b.push_back(0.0);
  }
  p.A.push_back(SymMat::identity(6));
  p.b.push_back(1.0);

  auto sol = sdp_solve(p, tol, 200);
  out.solver_status = sol.status;
  out.objective_norm = cn;
  if (sol.status != SdpStatus::Optimal) return out;
  out.value = sol.primal_objective * cn;
  out.gram = sol.X;
  {
    auto e = eigen_sym(sol.X, 1e-13);
    out.certificate_min_eig = e.values.front();
  }
  out.certificate.quartic = gram_to_quartic(sol.X);
  try {
    out.certificate.functional = functional_of_quartic(out.certificate.quartic, 1e-5);
  } catch (const std::exception&) {
    out.certificate.float_only_warning = true;
  }

  // rationalize: nearest rationals, exact projection onto the affine
  // constraints, exact psd test via char-poly signs
  {
    QMat Xr(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) Xr.at(i, j) = nearest_rational(sol.X.at(i, j), 1000000);
    // constraints: 6 relations = 0, trace = 1
    std::vector<QMat> R(7, QMat(6, 6));
    for (int k = 0; k < 6; ++k) {
      for (int p = 0; p < 6; ++p)
        for (int q = 0; q < 6; ++q) {
          TernaryForm<Rational> probe(4);
          probe.add_term(mono_product(deg2_monos()[p], deg2_monos()[q]), 1);
          R[k].at(p, q) = u_relation_value(probe, k);
        }
    }
    for (int i = 0; i < 6; ++i) R[6].at(i, i) = 1;
    std::vector<Rational> c(7, Rational(0));
    c[6] = 1;
    // projection: Xhat = Xr + sum lambda_k R_k with Gram(R) lambda = c - <R, Xr>
    QMat G(7, 7);
    std::vector<Rational> rhs(7);
    auto qinner = [](const QMat& A, const QMat& B) {
      Rational s(0);
      for (size_t t = 0; t < A.a.size(); ++t) s += A.a[t] * B.a[t];
      return s;
    };
    for (int a = 0; a < 7; ++a) {
      for (int b = a; b < 7; ++b) {
        G.at(a, b) = qinner(R[a], R[b]);
        G.at(b, a) = G.at(a, b);
      }
      rhs[a] = c[a] - qinner(R[a], Xr);
    }
    auto lam = solve_exact(G, rhs);
    if (lam) {
      QMat Xhat = Xr;
      for (int k = 0; k < 7; ++k)
        for (size_t t = 0; t < Xhat.a.size(); ++t) Xhat.a[t] += (*lam)[k] * R[k].a[t];
      // exact psd test: det(tI - X) = sum c_i t^i is psd iff (-1)^(n-i) c_i >= 0
      auto cp = char_poly_exact(Xhat);
      bool psd = true;
      for (int i = 0; i < static_cast<int>(cp.size()); ++i) {
        Rational signed_coeff = ((6 - i) % 2 == 0) ? cp[i] : -cp[i];
        if (signed_coeff < 0) {
          psd = false;
          break;
        }
      }
      auto Fhat = gram_to_quartic_exact(Xhat);
      bool in_u = true;
      for (int k = 0; k < 6; ++k)
        if (u_relation_value(Fhat, k) != 0) in_u = false;
      if (in_u) {
        auto Lhat = functional_of_quartic(Fhat);
        out.certificate.functional_exact = Lhat;
        out.certificate.exact_psd = psd;
        if (psd && f_exact) out.exact_value = pair_octic(Lhat, *f_exact);
      }
      if (!psd) out.certificate.float_only_warning = true;
    }
  }

  if (out.value > band)
    out.decision = Membership::Member;
  else if (out.value < -band)
    out.decision = Membership::NonMember;
  else
    out.decision = Membership::Boundary;
  return out;
}

}  // namespace

MembershipResult membership_value(const BinaryForm<Rational>& f, double tol, double band) {
  return membership_impl(to_float(f), f, tol, band);
}

MembershipResult membership_value(const BinaryForm<double>& f, double tol, double band) {
  return membership_impl(f, std::nullopt, tol, band);
}

// ---------------------------------------------------------------------------
// Binary quartic cone, one dimension down. Gram basis (a^2, ab, b^2).
// ---------------------------------------------------------------------------
namespace {

MembershipQuarticResult membership_quartic_impl(const BinaryForm<double>& g, double tol, double band) {
  MembershipQuarticResult out;
  // dual quartic F(a,b) = 24 sum_m L_m a^m b^(4-m); objective
  // <L, g> = sum_m L_m g_m m!(4-m)! = sum_m F_m g_m m!(4-m)!/24
  std::vector<double> w(5);
  for (int m = 0; m <= 4; ++m) w[m] = g[m] * factorial(m).get_d() * factorial(4 - m).get_d() / 24.0;
  // Gram basis: v = (a^2, ab, b^2), v_p v_q has a-degree 4 - (p + q)
  SymMat C(3);
  for (int p = 0; p < 3; ++p)
    for (int q = p; q < 3; ++q) C.at(p, q) = w[4 - p - q];
  double cn = std::max(std::sqrt(inner(C, C)), 1e-300);
  SymMat Cn(3);
  for (size_t t = 0; t < C.a.size(); ++t) Cn.a[t] = C.a[t] / cn;

  SdpProblem p;
  p.n = 3;
  p.C = Cn;
  p.A = {SymMat::identity(3)};
  p.b = {1.0};
  auto sol = sdp_solve(p, tol, 200);
  out.solver_status = sol.status;
  if (sol.status != SdpStatus::Optimal) return out;
  out.value = sol.primal_objective * cn;
  out.gram = sol.X;
  // expand the certificate quartic in (a,b): coeff of a^m b^(4-m)
  BinaryForm<double> F(4);
  for (int pp = 0; pp < 3; ++pp)
    for (int qq = 0; qq < 3; ++qq) F[4 - pp - qq] += sol.X.at(pp, qq);
  out.certificate_quartic = F;
  if (out.value > band)
    out.decision = Membership::Member;
  else if (out.value < -band)
    out.decision = Membership::NonMember;
  else
    out.decision = Membership::Boundary;
  return out;
}

}  // namespace

MembershipQuarticResult membership_quartic_cone(const BinaryForm<Rational>& g, double tol, double band) {
  return membership_quartic_impl(to_float(g), tol, band);
}
MembershipQuarticResult membership_quartic_cone(const BinaryForm<double>& g, double tol, double band) {
  return membership_quartic_impl(g, tol, band);
}

// ---------------------------------------------------------------------------
// sos Gram search: maximize the minimum eigenvalue over the Gram family.
// ---------------------------------------------------------------------------
namespace {

std::optional<SymMat> sos_gram_impl(const TernaryForm<double>& Fd,
                                    const std::optional<TernaryForm<Rational>>& Fe, double tol) {
  double nf = std::max(norm2(Fd), 1e-300);
  // particular Gram X0 with coeffs(X0) = coeffs(F)
  std::vector<double> x0(21, 0.0);
  const auto& gm = gram_coeff_map();
  if (Fe) {
    std::vector<Rational> rhs(15);
    for (int i = 0; i < 15; ++i) rhs[i] = Fe->coeff(deg4_monos()[i]);
    auto sol = solve_exact(gm.M, rhs);
    if (!sol) return std::nullopt;
    for (int i = 0; i < 21; ++i) x0[i] = (*sol)[i].get_d();
  } else {
    DMat M(15, 21);
    for (int i = 0; i < 15; ++i)
      for (int j = 0; j < 21; ++j) M.at(i, j) = gm.M.at(i, j).get_d();
    std::vector<double> rhs(15);
    for (int i = 0; i < 15; ++i) rhs[i] = Fd.coeff(deg4_monos()[i]);
    x0 = least_squares(M, rhs);
  }
  // scale to unit form norm for a meaningful tolerance
  for (auto& v : x0) v /= nf;

  SymMat F0 = packed_to_sym(x0);
  std::vector<SymMat> Fs;
  for (const auto& kv : gm.kernel) {
    std::vector<double> u(21);
    for (int i = 0; i < 21; ++i) u[i] = kv[i].get_d();
    Fs.push_back(packed_to_sym(u));
  }
  SymMat mI(6);
  for (int i = 0; i < 6; ++i) mI.at(i, i) = -1.0;
  Fs.push_back(mI);
  std::vector<double> obj(Fs.size(), 0.0);
  obj.back() = 1.0;  // maximize t with X0 + sum y B - t I psd

  auto r = lmi_maximize(F0, Fs, obj, tol, 200);
  if (r.status != SdpStatus::Optimal) return std::nullopt;
  if (r.value < -10 * std::max(tol, 1e-9)) return std::nullopt;
  // Gram of F itself: slack + t I, scaled back
  SymMat X(6);
  for (int i = 0; i < 6; ++i)
    for (int j = i; j < 6; ++j) X.at(i, j) = (r.slack.at(i, j) + (i == j ? r.value : 0.0)) * nf;
  return X;
}

}  // namespace

std::optional<SymMat> sos_gram(const TernaryForm<Rational>& F, double tol) {
  return sos_gram_impl(to_float(F), F, tol);
}
std::optional<SymMat> sos_gram(const TernaryForm<double>& F, double tol) {
  return sos_gram_impl(F, std::nullopt, tol);
}

}  // namespace powercone
