#include "powercone/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace powercone {

namespace {
bool sdp_trace() {
  static const bool on = std::getenv("POWERCONE_SDP_TRACE") != nullptr;
  return on;
}
}  // namespace

namespace {

double dot(const DMat& A, const DMat& B) {
  double s = 0;
  for (size_t i = 0; i < A.a.size(); ++i) s += A.a[i] * B.a[i];
  return s;
}

double fro(const DMat& A) { return std::sqrt(dot(A, A)); }

DMat sym_to_dense(const SymMat& S) {
  DMat D(S.n, S.n);
  for (int i = 0; i < S.n; ++i)
    for (int j = 0; j < S.n; ++j) D.at(i, j) = S.at(i, j);
  return D;
}

SymMat dense_to_sym(const DMat& D) {
  SymMat S(D.rows);
  for (int i = 0; i < D.rows; ++i)
    for (int j = i; j < D.cols; ++j) S.at(i, j) = 0.5 * (D.at(i, j) + D.at(j, i));
  return S;
}

void symmetrize(DMat& A) {
  for (int i = 0; i < A.rows; ++i)
    for (int j = i + 1; j < A.cols; ++j) {
      double v = 0.5 * (A.at(i, j) + A.at(j, i));
      A.at(i, j) = v;
      A.at(j, i) = v;
    }
}

// lower-triangular Cholesky with a jitter retry; input must be symmetric
bool chol_jitter(const DMat& A, DMat& L) {
  const int n = A.rows;
  double tr = 0;
  for (int i = 0; i < n; ++i) tr += A.at(i, i);
  double jitter = 0;
  for (int attempt = 0; attempt < 4; ++attempt) {
    L = DMat(n, n);
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) {
      double d = A.at(j, j) + jitter;
      for (int k = 0; k < j; ++k) d -= L.at(j, k) * L.at(j, k);
      if (d <= 0.0 || !std::isfinite(d)) {
        ok = false;
        break;
      }
      L.at(j, j) = std::sqrt(d);
      for (int i = j + 1; i < n; ++i) {
        double s = A.at(i, j);
        for (int k = 0; k < j; ++k) s -= L.at(i, k) * L.at(j, k);
        L.at(i, j) = s / L.at(j, j);
      }
    }
    if (ok) return true;
    jitter = (jitter == 0 ? 1e-14 : jitter * 100) * std::max(tr / n, 1.0);
  }
  return false;
}

// inverse of a lower triangular matrix
DMat tri_inverse_lower(const DMat& L) {
  const int n = L.rows;
  DMat inv(n, n);
  for (int j = 0; j < n; ++j) {
    inv.at(j, j) = 1.0 / L.at(j, j);
    for (int i = j + 1; i < n; ++i) {
      double s = 0;
      for (int k = j; k < i; ++k) s += L.at(i, k) * inv.at(k, j);
      inv.at(i, j) = -s / L.at(i, i);
    }
  }
  return inv;
}

// eigen-decomposition of a symmetric DMat via the packed Jacobi routine
EigenSym eig_dense(const DMat& A, double tol = 1e-13) {
  return eigen_sym(dense_to_sym(A), tol);
}

// largest step alpha so that P + alpha*D stays psd, given chol factor
// inverse Linv of P: alpha = -1/lambda_min(Linv D Linv^T) when negative
double max_step(const DMat& Linv, const DMat& D) {
  DMat B = Linv * D * transposed(Linv);
  symmetrize(B);
  auto e = eig_dense(B);
  double lmin = e.values.front();
  if (lmin >= 0) return 1e30;
  return -1.0 / lmin;
}

struct Scaling {
  DMat R, Rinv;             // W = R R^T, NT scaling with W S W = X
  std::vector<double> sig;  // scaled point lambda = diag(sig)
};

bool compute_nt(const DMat& X, const DMat& S, const DMat& Lx, Scaling& sc) {
  const int n = X.rows;
  DMat M = transposed(Lx) * S * Lx;
  symmetrize(M);
  auto e = eig_dense(M);
  sc.sig.resize(n);
  for (int i = 0; i < n; ++i) {
    if (e.values[i] <= 0) return false;
    sc.sig[i] = std::sqrt(e.values[i]);
  }
  // R = Lx V diag(sig^{-1/2}), Rinv = diag(sig^{1/2}) V^T Lx^{-1}
  DMat V = e.vectors;
  sc.R = DMat(n, n);
  DMat LxV = Lx * V;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sc.R.at(i, j) = LxV.at(i, j) / std::sqrt(sc.sig[j]);
  DMat Lxinv = tri_inverse_lower(Lx);
  DMat VtLxinv = transposed(V) * Lxinv;
  sc.Rinv = DMat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sc.Rinv.at(i, j) = std::sqrt(sc.sig[i]) * VtLxinv.at(i, j);
  return true;
}

}  // namespace

SdpSolution sdp_solve(const SdpProblem& prob, double tol, int max_iter) {
  const int n = prob.n;
  SdpSolution out;
  out.X = SymMat(n);
  out.S = SymMat(n);
  if (n <= 0) throw std::invalid_argument("sdp_solve: empty block");
  if (prob.C.n != n) throw std::invalid_argument("sdp_solve: objective dimension mismatch");
  for (const auto& Ai : prob.A)
    if (Ai.n != n) throw std::invalid_argument("sdp_solve: constraint dimension mismatch");
  if (prob.A.size() != prob.b.size()) throw std::invalid_argument("sdp_solve: constraint/rhs count mismatch");

  // drop dependent constraint rows (Gram-Schmidt on vectorized matrices)
  const int m_all = static_cast<int>(prob.A.size());
  std::vector<int> keep;
  std::vector<DMat> ortho;
  std::vector<std::vector<double>> ortho_coeff;  // coefficients over kept rows
  for (int i = 0; i < m_all; ++i) {
    DMat Ai = sym_to_dense(prob.A[i]);
    DMat r = Ai;
    std::vector<double> coef(keep.size(), 0.0);
    for (size_t k = 0; k < ortho.size(); ++k) {
      double c = dot(r, ortho[k]);
      coef[k] = c;
      for (size_t t = 0; t < r.a.size(); ++t) r.a[t] -= c * ortho[k].a[t];
    }
    double nr = fro(r);
    if (nr > 1e-12 * std::max(1.0, fro(Ai))) {
      for (auto& v : r.a) v /= nr;
      ortho.push_back(r);
      ortho_coeff.push_back(coef);
      keep.push_back(i);
    } else {
      out.dropped_dependent_constraints = true;
      // consistency: b_i must match the same combination of kept rows
      // reconstruct b via projection coefficients onto the orthonormal system
      double bi_pred = 0;
      for (size_t k = 0; k < ortho.size(); ++k) {
        // chain: coefficient of A_i on ortho[k]; translate through kept b by
        // building the projected representation of kept rows incrementally is
        // overkill here; verify instead via a least-squares check below
        (void)bi_pred;
      }
      // direct check: solve small LS expressing A_i over kept A's
      const int mk = static_cast<int>(keep.size());
      DMat G(mk, mk);
      std::vector<double> rhs(mk, 0.0);
      for (int a = 0; a < mk; ++a) {
        DMat Aa = sym_to_dense(prob.A[keep[a]]);
        for (int c = 0; c < mk; ++c) G.at(a, c) = dot(Aa, sym_to_dense(prob.A[keep[c]]));
        rhs[a] = dot(Aa, Ai);
      }
      std::vector<double> lam;
      try {
        lam = lu_solve(G, rhs);
      } catch (const std::exception&) {
        lam.assign(mk, 0.0);
      }
      double b_pred = 0;
      for (int a = 0; a < mk; ++a) b_pred += lam[a] * prob.b[keep[a]];
      double scale = 1.0;
      for (int a = 0; a < mk; ++a) scale = std::max(scale, std::abs(prob.b[keep[a]]));
      if (std::abs(b_pred - prob.b[i]) > 1e-7 * scale) {
        out.status = SdpStatus::Infeasible;
        return out;
      }
    }
  }
  const int m = static_cast<int>(keep.size());

  // scaled data
  double sC = std::max(1.0, std::sqrt(inner(prob.C, prob.C)));
  DMat C = sym_to_dense(prob.C);
  for (auto& v : C.a) v /= sC;
  std::vector<DMat> A(m);
  std::vector<double> b(m), sA(m);
  for (int i = 0; i < m; ++i) {
    A[i] = sym_to_dense(prob.A[keep[i]]);
    sA[i] = std::max(1.0, std::max(fro(A[i]), std::abs(prob.b[keep[i]])));
    for (auto& v : A[i].a) v /= sA[i];
    b[i] = prob.b[keep[i]] / sA[i];
  }

  // HSD variables
  DMat X = DMat::identity(n), S = DMat::identity(n);
  std::vector<double> y(m, 0.0);
  double tau = 1.0, kappa = 1.0;

  auto applyA = [&](const DMat& M) {
    std::vector<double> r(m);
    for (int i = 0; i < m; ++i) r[i] = dot(A[i], M);
    return r;
  };
  auto applyAt = [&](const std::vector<double>& v) {
    DMat M(n, n);
    for (int i = 0; i < m; ++i)
      for (size_t t = 0; t < M.a.size(); ++t) M.a[t] += v[i] * A[i].a[t];
    return M;
  };
  auto vnorm = [](const std::vector<double>& v) {
    double s = 0;
    for (double t : v) s += t * t;
    return std::sqrt(s);
  };

  double bnorm = vnorm(b), Cnorm = fro(C);
  int it = 0;
  SdpStatus status = SdpStatus::MaxIter;
  // best (de-homogenized) iterate seen so far
  double best_score = 1e300;
  DMat bestX = X, bestS = S;
  std::vector<double> best_y = y;
  double best_tau = tau, best_pr = 1e300, best_dr = 1e300, best_gap = 1e300;

  for (it = 0; it < max_iter; ++it) {
    // residuals of the self-dual system
    std::vector<double> P = applyA(X);
    for (int i = 0; i < m; ++i) P[i] -= tau * b[i];
    DMat Dm = applyAt(y);
    for (size_t t = 0; t < Dm.a.size(); ++t) Dm.a[t] += S.a[t] - tau * C.a[t];
    double G = 0;
    {
      double by = 0;
      for (int i = 0; i < m; ++i) by += b[i] * y[i];
      G = by - dot(C, X) - kappa;
    }
    double mu = (dot(X, S) + tau * kappa) / (n + 1);
    if (sdp_trace())
      std::fprintf(stderr, "[sdp] it=%d mu=%.3e tau=%.3e kappa=%.3e Pn=%.3e Dn=%.3e G=%.3e\n", it, mu, tau,
                   kappa, vnorm(P), fro(Dm), G);

    // convergence on the de-homogenized point
    {
      double pobj = dot(C, X) / tau, dobj = 0;
      for (int i = 0; i < m; ++i) dobj += b[i] * y[i];
      dobj /= tau;
      std::vector<double> pr = applyA(X);
      for (int i = 0; i < m; ++i) pr[i] = pr[i] / tau - b[i];
      DMat dr = applyAt(y);
      for (size_t t = 0; t < dr.a.size(); ++t) dr.a[t] = (dr.a[t] + S.a[t]) / tau - C.a[t];
      double prim_res = vnorm(pr) / (1 + bnorm);
      double dual_res = fro(dr) / (1 + Cnorm);
      double gap = std::abs(pobj - dobj) / (1 + std::abs(pobj) + std::abs(dobj));
      double score = std::max({prim_res, dual_res, gap});
      if (score < best_score && tau > 1e-7 * std::max(1.0, kappa)) {
        best_score = score;
        bestX = X;
        bestS = S;
        best_y = y;
        best_tau = tau;
        best_pr = prim_res;
        best_dr = dual_res;
        best_gap = gap;
      }
      if (prim_res <= tol && dual_res <= tol && gap <= tol) {
        status = SdpStatus::Optimal;
        break;
      }
      // infeasibility detection: tau -> 0
      if (tau <= 1e-9 * std::max(1.0, kappa) && mu <= 1e-9) {
        double by = 0;
        for (int i = 0; i < m; ++i) by += b[i] * y[i];
        if (by > 1e-10)
          status = SdpStatus::Infeasible;
        else if (-dot(C, X) > 1e-10)
          status = SdpStatus::Unbounded;
        else
          status = SdpStatus::MaxIter;
        break;
      }
    }

    // NT scaling
    DMat Lx;
    if (!chol_jitter(X, Lx)) {
      if (sdp_trace()) std::fprintf(stderr, "[sdp] break: chol X failed\n");
      break;
    }
    Scaling sc;
    if (!compute_nt(X, S, Lx, sc)) {
      if (sdp_trace()) std::fprintf(stderr, "[sdp] break: NT scaling failed\n");
      break;
    }
    auto WAW = [&](const DMat& M) {
      DMat t = transposed(sc.R) * M * sc.R;
      symmetrize(t);
      DMat r = sc.R * t * transposed(sc.R);
      symmetrize(r);
      return r;
    };
    // Schur complement
    std::vector<DMat> WAiW(m);
    for (int i = 0; i < m; ++i) WAiW[i] = WAW(A[i]);
    DMat Schur(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        double v = dot(A[i], WAiW[j]);
        Schur.at(i, j) = v;
        Schur.at(j, i) = v;
      }
    DMat Ls;
    {
      // regularized cholesky of the Schur complement
      DMat Sc = Schur;
      double tr = 0;
      for (int i = 0; i < m; ++i) tr += Sc.at(i, i);
      for (int i = 0; i < m; ++i) Sc.at(i, i) += 1e-13 * std::max(1.0, tr / std::max(m, 1));
      if (!chol_jitter(Sc, Ls)) {
        if (sdp_trace()) std::fprintf(stderr, "[sdp] break: schur chol failed\n");
        break;
      }
    }
    auto schur_solve = [&](std::vector<double> rhs) {
      // forward/back substitution with Ls
      for (int i = 0; i < m; ++i) {
        double s = rhs[i];
        for (int k = 0; k < i; ++k) s -= Ls.at(i, k) * rhs[k];
        rhs[i] = s / Ls.at(i, i);
      }
      for (int i = m - 1; i >= 0; --i) {
        double s = rhs[i];
        for (int k = i + 1; k < m; ++k) s -= Ls.at(k, i) * rhs[k];
        rhs[i] = s / Ls.at(i, i);
      }
      return rhs;
    };

    DMat WCW = WAW(C);
    std::vector<double> h = applyA(WCW);
    double cwc = dot(C, WCW);
    DMat WDW = WAW(Dm);
    double cwd = dot(C, WDW);

    DMat Lxinv = tri_inverse_lower(Lx);
    DMat LS;
    if (!chol_jitter(S, LS)) break;
    DMat LSinv = tri_inverse_lower(LS);

    auto solve_direction = [&](double sigc, const DMat& Rc, double rtk, DMat& dX, std::vector<double>& dy,
                               DMat& dS, double& dtau, double& dkappa) -> bool {
      double cRc = dot(C, Rc);
      std::vector<double> ARc = applyA(Rc);
      std::vector<double> AWDW = applyA(WDW);
      std::vector<double> v(m);
      for (int i = 0; i < m; ++i) v[i] = (sigc - 1) * P[i] + (sigc - 1) * AWDW[i] - ARc[i];
      std::vector<double> hb(m);
      for (int i = 0; i < m; ++i) hb[i] = h[i] + b[i];
      std::vector<double> g1 = schur_solve(hb);
      std::vector<double> g2 = schur_solve(v);
      double g_rhs = (sigc - 1) * G - (sigc - 1) * cwd + cRc + rtk / tau;
      double num = g_rhs, den = cwc + kappa / tau;
      for (int i = 0; i < m; ++i) {
        num -= (b[i] - h[i]) * g2[i];
        den += (b[i] - h[i]) * g1[i];
      }
      if (std::abs(den) < 1e-300) return false;
      dtau = num / den;
      dy.resize(m);
      for (int i = 0; i < m; ++i) dy[i] = g2[i] + dtau * g1[i];
      // dX = W At(dy) W - dtau WCW - (sigc-1) WDW + Rc
      DMat Atdy = applyAt(dy);
      dX = WAW(Atdy);
      for (size_t t = 0; t < dX.a.size(); ++t)
        dX.a[t] += -dtau * WCW.a[t] - (sigc - 1) * WDW.a[t] + Rc.a[t];
      symmetrize(dX);
      // dS from the dual equation directly (identical in exact arithmetic to
      // Winv (Rc - dX) Winv, but avoids the W-conditioning amplification that
      // otherwise degrades dual feasibility in the endgame)
      dS = DMat(n, n);
      for (size_t t = 0; t < dS.a.size(); ++t)
        dS.a[t] = (sigc - 1) * Dm.a[t] - Atdy.a[t] + dtau * C.a[t];
      symmetrize(dS);
      dkappa = (rtk - kappa * dtau) / tau;
      return true;
    };

    auto boundary_alpha = [&](const DMat& dX, const DMat& dS, double dtau, double dkappa) {
      double a = 1e30;
      a = std::min(a, max_step(Lxinv, dX));
      a = std::min(a, max_step(LSinv, dS));
      if (dtau < 0) a = std::min(a, -tau / dtau);
      if (dkappa < 0) a = std::min(a, -kappa / dkappa);
      return a;
    };

    // predictor
    DMat dXa, dSa;
    std::vector<double> dya;
    double dtaua, dkappaa;
    {
      DMat Rc(n, n);
      for (size_t t = 0; t < Rc.a.size(); ++t) Rc.a[t] = -X.a[t];
      if (!solve_direction(0.0, Rc, -tau * kappa, dXa, dya, dSa, dtaua, dkappaa)) {
        if (sdp_trace()) std::fprintf(stderr, "[sdp] break: predictor solve failed\n");
        break;
      }
    }
    if (sdp_trace()) {
      double orth = dot(dXa, dSa) + dtaua * dkappaa;
      std::fprintf(stderr, "[sdp]   predictor orth defect = %.3e (mu=%.3e)\n", orth, mu);
    }
    double alpha_a = std::min(1.0, 0.99 * boundary_alpha(dXa, dSa, dtaua, dkappaa));
    double mu_aff;
    {
      DMat Xa = X, Sa = S;
      for (size_t t = 0; t < Xa.a.size(); ++t) {
        Xa.a[t] += alpha_a * dXa.a[t];
        Sa.a[t] += alpha_a * dSa.a[t];
      }
      mu_aff = (dot(Xa, Sa) + (tau + alpha_a * dtaua) * (kappa + alpha_a * dkappaa)) / (n + 1);
    }
    double sigma = std::pow(std::max(0.0, std::min(1.0, mu_aff / mu)), 3);
    sigma = std::min(0.99999, std::max(sigma, 1e-8));

    // corrector with the scaled second-order term
    DMat dX, dS;
    std::vector<double> dy2;
    double dtau, dkappa;
    {
      DMat dlx = sc.Rinv * dXa * transposed(sc.Rinv);
      symmetrize(dlx);
      DMat dls = transposed(sc.R) * dSa * sc.R;
      symmetrize(dls);
      DMat E = dlx * dls;
      DMat Et = dls * dlx;
      for (size_t t = 0; t < E.a.size(); ++t) E.a[t] = 0.5 * (E.a[t] + Et.a[t]);
      DMat Z(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double Tij = (i == j ? sigma * mu - sc.sig[i] * sc.sig[i] : 0.0) - E.at(i, j);
          Z.at(i, j) = 2.0 * Tij / (sc.sig[i] + sc.sig[j]);
        }
      symmetrize(Z);
      DMat Rc = sc.R * Z * transposed(sc.R);
      symmetrize(Rc);
      double rtk = sigma * mu - tau * kappa - dtaua * dkappaa;
      if (!solve_direction(sigma, Rc, rtk, dX, dy2, dS, dtau, dkappa)) {
        if (sdp_trace()) std::fprintf(stderr, "[sdp] break: corrector solve failed\n");
        break;
      }
    }
    double alpha = std::min(1.0, 0.98 * boundary_alpha(dX, dS, dtau, dkappa));
    if (sdp_trace()) std::fprintf(stderr, "[sdp]   sigma=%.3e alpha_a=%.3e alpha=%.3e\n", sigma, alpha_a, alpha);
    if (!std::isfinite(alpha) || alpha <= 1e-14) {
      if (sdp_trace()) std::fprintf(stderr, "[sdp] break: step too small\n");
      break;
    }

    for (size_t t = 0; t < X.a.size(); ++t) {
      X.a[t] += alpha * dX.a[t];
      S.a[t] += alpha * dS.a[t];
    }
    for (int i = 0; i < m; ++i) y[i] += alpha * dy2[i];
    tau += alpha * dtau;
    kappa += alpha * dkappa;
  }

  out.iterations = it;
  if (status == SdpStatus::MaxIter && best_score <= tol) status = SdpStatus::Optimal;
  out.status = status;
  if (status == SdpStatus::Optimal) {
    // report the best iterate (residuals can degrade after the optimum is hit)
    DMat X = bestX, S = bestS;
    std::vector<double> y = best_y;
    double tau = best_tau;
    out.primal_residual = best_pr;
    out.dual_residual = best_dr;
    out.gap = best_gap;
    // unscale: X_orig = X/tau; y_orig_i = sC * (y_i/tau) / sA_i; S_orig = sC * S/tau
    DMat Xn = X, Sn = S;
    for (auto& v : Xn.a) v /= tau;
    for (auto& v : Sn.a) v = v / tau * sC;
    out.X = dense_to_sym(Xn);
    out.S = dense_to_sym(Sn);
    out.y.assign(m_all, 0.0);
    for (int i = 0; i < m; ++i) out.y[keep[i]] = sC * (y[i] / tau) / sA[i];
    out.primal_objective = inner(prob.C, out.X);
    out.dual_objective = 0;
    for (int i = 0; i < m_all; ++i) out.dual_objective += prob.b[i] * out.y[i];
  } else if (status == SdpStatus::Infeasible) {
    // Farkas certificate: y with At(y) + S = small, b^T y = 1 after scaling
    double by = 0;
    for (int i = 0; i < m; ++i) by += b[i] * y[i];
    out.y.assign(m_all, 0.0);
    if (std::abs(by) > 1e-300)
      for (int i = 0; i < m; ++i) out.y[keep[i]] = (y[i] / by) / sA[i];
  }
  return out;
}

LmiResult lmi_maximize(const SymMat& F0, const std::vector<SymMat>& F, const std::vector<double>& obj,
                       double tol, int max_iter) {
  if (F.size() != obj.size()) throw std::invalid_argument("lmi_maximize: size mismatch");
  SdpProblem p;
  p.n = F0.n;
  p.C = F0;
  p.b = obj;
  p.A.reserve(F.size());
  for (const auto& Fi : F) {
    SymMat Ai(Fi.n);
    for (size_t t = 0; t < Fi.a.size(); ++t) Ai.a[t] = -Fi.a[t];
    p.A.push_back(Ai);
  }
  auto sol = sdp_solve(p, tol, max_iter);
  LmiResult r;
  r.status = sol.status;
  r.y = sol.y;
  r.value = sol.dual_objective;
  if (sol.status == SdpStatus::Optimal) r.slack = sol.S;
  // status meaning flips for the LMI user: primal infeasibility of the
  // standard pair certifies the LMI objective is unbounded above, and dual
  // infeasibility certifies the LMI has no psd point
  return r;
}

}  // namespace powercone
