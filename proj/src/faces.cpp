#include "powercone/faces.hpp"

#include <algorithm>
#include <cmath>

#include "powercone/apolar.hpp"
#include "powercone/rng.hpp"
#include "powercone/rootfind.hpp"
#include "powercone/threads.hpp"

namespace powercone {

namespace {

const std::vector<Exp3>& deg2_monos() {
  static const std::vector<Exp3> v = ternary_monomials(2);
  return v;
}

// pack a symmetric 6x6 into upper-triangle coordinates and back
SymMat unpack_gram(const std::vector<double>& u) {
  SymMat X(6);
  int col = 0;
  for (int p = 0; p < 6; ++p)
    for (int q = p; q < 6; ++q, ++col) X.at(p, q) = u[col];
  return X;
}

// affine certificate family {X : U relations, trace 1, <C_f, X> = 0} in packed
// coordinates; returns particular solution + nullspace basis (floating)
bool certificate_family(const SymMat& Cf, std::vector<double>& x0, std::vector<DMat>& basis_mats) {
  // constraint rows over packed coordinates; <A, X> counts off-diagonal twice
  auto pack_row = [&](const SymMat& A) {
    std::vector<double> row(21);
    int col = 0;
    for (int p = 0; p < 6; ++p)
      for (int q = p; q < 6; ++q, ++col) row[col] = (p == q) ? A.at(p, q) : 2 * A.at(p, q);
    return row;
  };
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  {
    // six U relations (exact values, converted)
    for (int k = 0; k < 6; ++k) {
      SymMat R(6);
      for (int p = 0; p < 6; ++p)
        for (int q = p; q < 6; ++q) {
          TernaryForm<Rational> probe(4);
          Exp3 e = {deg2_monos()[p][0] + deg2_monos()[q][0], deg2_monos()[p][1] + deg2_monos()[q][1],
                    deg2_monos()[p][2] + deg2_monos()[q][2]};
          probe.add_term(e, 1);
          R.at(p, q) = u_relation_value(probe, k).get_d();
        }
      rows.push_back(pack_row(R));
      rhs.push_back(0.0);
    }
    rows.push_back(pack_row(SymMat::identity(6)));
    rhs.push_back(1.0);
    rows.push_back(pack_row(Cf));
    rhs.push_back(0.0);
  }
  const int m = static_cast<int>(rows.size());
  DMat A(m, 21);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < 21; ++j) A.at(i, j) = rows[i][j];
  // min-norm particular solution and nullspace via the 21x21 normal matrix
  SymMat N(21);
  for (int i = 0; i < 21; ++i)
    for (int j = i; j < 21; ++j) {
      double s = 0;
      for (int r = 0; r < m; ++r) s += A.at(r, i) * A.at(r, j);
      N.at(i, j) = s;
    }
  auto e = eigen_sym(N, 1e-14);
  double lmax = std::max(e.values.back(), 1e-300);
  // particular solution: pseudo-inverse applied to A^T rhs
  std::vector<double> Atb(21, 0.0);
  for (int j = 0; j < 21; ++j)
    for (int r = 0; r < m; ++r) Atb[j] += A.at(r, j) * rhs[r];
  x0.assign(21, 0.0);
  basis_mats.clear();
  for (int k = 0; k < 21; ++k) {
    double lam = e.values[k];
    std::vector<double> vk(21);
    for (int i = 0; i < 21; ++i) vk[i] = e.vectors.at(i, k);
    if (lam <= 1e-12 * lmax) {
      // nullspace direction -> family generator (unpacked to a symmetric matrix)
      SymMat B = unpack_gram(vk);
      DMat Bd(6, 6);
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) Bd.at(i, j) = B.at(i, j);
      basis_mats.push_back(Bd);
    } else {
      double c = 0;
      for (int i = 0; i < 21; ++i) c += vk[i] * Atb[i];
      c /= lam;
      for (int i = 0; i < 21; ++i) x0[i] += c * vk[i];
    }
  }
  // consistency of the affine system
  double res = 0, scale = 0;
  for (int r = 0; r < m; ++r) {
    double pred = 0;
    for (int j = 0; j < 21; ++j) pred += A.at(r, j) * x0[j];
    res += (pred - rhs[r]) * (pred - rhs[r]);
    scale += rhs[r] * rhs[r];
  }
  return std::sqrt(res) <= 1e-8 * std::max(1.0, std::sqrt(scale));
}

InteriorityCertificate certificate_impl(const SymMat& Cf, double tol) {
  InteriorityCertificate out;
  std::vector<double> x0;
  std::vector<DMat> basis;
  if (!certificate_family(Cf, x0, basis)) return out;
  SymMat F0 = unpack_gram(x0);
  std::vector<SymMat> Fs;
  for (const auto& B : basis) {
    SymMat S(6);
    for (int i = 0; i < 6; ++i)
      for (int j = i; j < 6; ++j) S.at(i, j) = 0.5 * (B.at(i, j) + B.at(j, i));
    Fs.push_back(S);
  }
  SymMat mI(6);
  for (int i = 0; i < 6; ++i) mI.at(i, i) = -1.0;
  Fs.push_back(mI);
  std::vector<double> obj(Fs.size(), 0.0);
  obj.back() = 1.0;
  auto r = lmi_maximize(F0, Fs, obj, tol, 200);
  if (r.status != SdpStatus::Optimal) return out;
  out.min_eig = r.value;
  SymMat X(6);
  for (int i = 0; i < 6; ++i)
    for (int j = i; j < 6; ++j) X.at(i, j) = r.slack.at(i, j) + (i == j ? r.value : 0.0);
  out.gram = X;
  out.element.quartic = gram_to_quartic(X);
  try {
    out.element.functional = functional_of_quartic(out.element.quartic, 1e-4);
  } catch (const std::exception&) {
    out.element.float_only_warning = true;
  }
  out.found = r.value > -1e-6;
  return out;
}

SymMat objective_matrix(const BinaryForm<Rational>& f) {
  QMat Ce = membership_objective(f);
  SymMat C(6);
  for (int p = 0; p < 6; ++p)
    for (int q = p; q < 6; ++q) C.at(p, q) = Ce.at(p, q).get_d();
  return C;
}

SymMat objective_matrix_float(const BinaryForm<double>& f) {
  // rationalize with a large denominator bound; the objective is linear in f
  auto fr = rationalize(f, 1000000000ul);
  return objective_matrix(fr);
}

}  // namespace

InteriorityCertificate max_interiority_certificate(const BinaryForm<Rational>& f, double tol) {
  return certificate_impl(objective_matrix(f), tol);
}

InteriorityCertificate max_interiority_certificate(const BinaryForm<double>& f, double tol) {
  return certificate_impl(objective_matrix_float(f), tol);
}

// ---------------------------------------------------------------------------
// classification
// ---------------------------------------------------------------------------
namespace {

BinaryForm<double> quad_of_point(const ProjectivePointR2& z) {
  BinaryForm<double> q(2);
  q[2] = z.xi[0];
  q[1] = z.xi[1];
  q[0] = z.xi[2];
  return q;
}

// nonnegative cone coefficients over subsets of candidate quadratics
struct ConeFit {
  bool ok = false;
  std::vector<int> support;
  std::vector<double> lambda;
  double residual = 0;
};

ConeFit fit_cone_coefficients(const BinaryForm<double>& f, const std::vector<BinaryForm<double>>& qs,
                              double tol) {
  const int n = static_cast<int>(qs.size());
  double nf = std::max(norm2(f), 1e-300);
  ConeFit best;
  best.residual = 1e300;
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) idx.push_back(i);
    DMat A(9, static_cast<int>(idx.size()));
    for (size_t c = 0; c < idx.size(); ++c) {
      auto q2 = qs[idx[c]] * qs[idx[c]];
      auto q4 = q2 * q2;
      for (int rgn = 0; rgn < 9; ++rgn) A.at(rgn, static_cast<int>(c)) = q4[rgn];
    }
    std::vector<double> b(9);
    for (int i = 0; i < 9; ++i) b[i] = f[i];
    auto lam = least_squares(A, b);
    bool nonneg = true;
    for (double l : lam)
      if (l < 1e-9 * nf) nonneg = false;
    if (!nonneg) continue;
    double res = 0;
    for (int i = 0; i < 9; ++i) {
      double pred = 0;
      for (size_t c = 0; c < idx.size(); ++c) pred += A.at(i, static_cast<int>(c)) * lam[c];
      res += (pred - b[i]) * (pred - b[i]);
    }
    res = std::sqrt(res);
    if (res <= tol * nf && (!best.ok || idx.size() < best.support.size() ||
                            (idx.size() == best.support.size() && res < best.residual))) {
      best.ok = true;
      best.support = idx;
      best.lambda = lam;
      best.residual = res;
    }
  }
  return best;
}

// linear real factors of a floating binary form with multiplicity >= mult
std::vector<std::pair<BinaryForm<double>, int>> real_linear_factors(const BinaryForm<double>& f,
                                                                    int min_mult, double radius) {
  std::vector<std::pair<BinaryForm<double>, int>> out;
  std::vector<double> c;
  for (int i = 0; i <= f.degree; ++i) c.push_back(f[i]);
  int top = f.degree;
  while (top >= 0 && c[top] == 0) --top;
  int y_mult = f.degree - top;  // y^m factor
  if (y_mult >= min_mult) {
    BinaryForm<double> y(1);
    y[0] = 1;
    out.push_back({y, y_mult});
  }
  c.resize(top + 1);
  auto roots = poly_roots(c);
  std::vector<std::pair<double, int>> clusters;  // real root -> multiplicity
  for (const auto& z : roots) {
    if (std::abs(z.imag()) > radius * (1 + std::abs(z.real()))) continue;
    bool merged = false;
    for (auto& cl : clusters)
      if (std::abs(cl.first - z.real()) <= radius * (1 + std::abs(cl.first))) {
        cl.second += 1;
        merged = true;
        break;
      }
    if (!merged) clusters.push_back({z.real(), 1});
  }
  for (const auto& cl : clusters)
    if (cl.second >= min_mult) {
      BinaryForm<double> l(1);  // x - r y
      l[1] = 1;
      l[0] = -cl.first;
      out.push_back({l, cl.second});
    }
  return out;
}

FaceReport classify_impl(const std::optional<BinaryForm<Rational>>& fe, const BinaryForm<double>& fd,
                         double tol) {
  FaceReport rep;
  const double nf = norm2(fd);
  if (nf == 0) throw std::invalid_argument("classify_boundary_point: zero form");

  // membership gate: interior and exterior points are precondition violations
  MembershipResult m = fe ? membership_value(*fe) : membership_value(fd);
  if (m.solver_status == SdpStatus::Optimal) {
    double scaled = m.value / std::max(m.objective_norm, 1e-300);
    if (scaled > 1e-4) throw std::invalid_argument("classify_boundary_point: form is interior");
    if (scaled < -1e-4) throw std::invalid_argument("classify_boundary_point: form is not in the cone");
  }

  // branch (i): maximal fourth-power linear factors
  struct Factor {
    BinaryForm<double> l;
    int mult;
    std::optional<BinaryForm<Rational>> exact;
  };
  std::vector<Factor> factors;
  if (fe) {
    auto sf = squarefree_decompose(*fe);
    for (const auto& part : sf.parts) {
      if (part.multiplicity < 4) continue;
      if (part.factor.degree == 1) {
        factors.push_back({to_float(part.factor), part.multiplicity, part.factor});
      } else if (part.factor.degree == 2) {
        // an indefinite quadratic to the fourth: two real linear factors
        double disc = part.factor[1].get_d() * part.factor[1].get_d() -
                      4 * part.factor[2].get_d() * part.factor[0].get_d();
        if (disc > 0) {
          // f = (q)^4 (+ nothing else at degree 8): handled as F1 below
          rep.face_type = FaceType::F1;
          rep.exposed = Exposedness::Exposed;
          rep.generators = {to_float(part.factor)};
          rep.cone_coefficients = {sf.unit.get_d()};
          rep.note = "fourth power of an indefinite irrational-split quadratic";
          return rep;
        }
      }
    }
  } else {
    for (auto& [l, mult] : real_linear_factors(fd, 4, 1e-5)) factors.push_back({l, mult, std::nullopt});
  }

  for (const auto& fac : factors) {
    if (fac.mult >= 8) {
      rep.face_type = FaceType::NonExposedRayL8;
      rep.exposed = Exposedness::NotExposed;
      rep.generators = {fac.l};
      return rep;
    }
    // g = f / l^4
    std::optional<BinaryForm<Rational>> ge;
    BinaryForm<double> gd(4);
    if (fe && fac.exact) {
      auto l4 = pow(*fac.exact, 4);
      auto q = divide_forms(*fe, l4);
      if (!q) continue;
      ge = *q;
      gd = to_float(*q);
    } else {
      // floating deflation: strip y^4 or deflate by the root of l four times
      std::vector<double> c;
      for (int i = 0; i <= 8; ++i) c.push_back(fd[i]);
      if (fac.l[1] == 0) {  // l = y: x-degree indices carry over directly
        for (int i = 0; i <= 4; ++i) gd[i] = fd[i];
      } else {
        double rroot = -fac.l[0] / fac.l[1];
        std::vector<double> cur(c);
        for (int rep4 = 0; rep4 < 4; ++rep4) {
          std::vector<double> next(cur.size() - 1, 0.0);
          double carry = cur.back();
          for (int i = static_cast<int>(cur.size()) - 2; i >= 0; --i) {
            next[i] = carry;
            carry = cur[i] + rroot * carry;
          }
          cur = next;
        }
        for (int i = 0; i <= 4; ++i) gd[i] = (i < static_cast<int>(cur.size())) ? cur[i] : 0.0;
      }
      ge = std::nullopt;
    }
    if (!ge) {
      auto mqf = membership_quartic_cone(gd);
      if (mqf.solver_status != SdpStatus::Optimal) continue;
      double scaledf = mqf.value / std::max(norm2(gd), 1e-300);
      if (scaledf > 1e-7) {
        rep.face_type = FaceType::L4Sigma24;
        rep.exposed = Exposedness::Exposed;
        rep.generators = {fac.l};
        rep.note = "f = l^4 g with g interior to the quartic cone";
        return rep;
      }
      continue;  // boundary substructure needs the exact path
    }
    auto mq = membership_quartic_cone(*ge);
    if (mq.solver_status != SdpStatus::Optimal) continue;
    double scaled = mq.value / std::max(norm2(gd), 1e-300);
    if (scaled > 1e-7) {
      rep.face_type = FaceType::L4Sigma24;
      rep.exposed = Exposedness::Exposed;
      rep.generators = {fac.l};
      rep.note = "f = l^4 g with g interior to the quartic cone";
      return rep;
    }
    if (scaled > -1e-7) {
      // boundary of the quartic cone: l^8 ruled out already, so either
      // (l l')^4 or l^4 (l1^4 + l2^4)
      {
        auto sfg = squarefree_decompose(*ge);
        if (sfg.parts.size() == 1 && sfg.parts[0].factor.degree == 1 &&
            sfg.parts[0].multiplicity == 4 && sfg.unit > 0) {
          rep.face_type = FaceType::F1;
          rep.exposed = Exposedness::Exposed;
          auto prod = (*fac.exact) * sfg.parts[0].factor;
          rep.generators = {to_float(prod)};
          rep.cone_coefficients = {sfg.unit.get_d()};
          rep.note = "f = (l l')^4";
          return rep;
        }
      }
      // find the two linear generators from the dual certificate zeros:
      // a root (t:1) of the certificate quartic corresponds to l = t x + y,
      // a degree drop to the root at infinity, l = x
      std::vector<double> cq;
      for (int i = 0; i <= 4; ++i) cq.push_back(mq.certificate_quartic[i]);
      double cpeak = 0;
      for (double v : cq) cpeak = std::max(cpeak, std::abs(v));
      std::vector<BinaryForm<double>> ls;
      if (std::abs(cq[4]) <= 1e-7 * cpeak) {
        BinaryForm<double> lx(1);
        lx[1] = 1;
        ls.push_back(lx);
      }
      auto roots = poly_roots(cq);
      for (const auto& z : roots) {
        // double roots split into conjugate pairs at the square root of the
        // certificate noise; accept accordingly and cluster
        if (std::abs(z.imag()) > 3e-4 * (1 + std::abs(z.real()))) continue;
        bool dup = false;
        for (const auto& l : ls)
          if (l[0] != 0 && std::abs(l[1] - z.real()) <= 1e-3 * (1 + std::abs(z.real()))) dup = true;
        if (dup) continue;
        BinaryForm<double> l(1);
        l[1] = z.real();
        l[0] = 1;
        ls.push_back(l);
      }
      // the certificate vanishes at (a:b) with l = a x + b y present in g;
      // fit g = sum mu_i l_i^4
      if (ls.size() >= 1 && ls.size() <= 3) {
        DMat A(5, static_cast<int>(ls.size()));
        for (size_t c = 0; c < ls.size(); ++c) {
          auto l4 = pow(ls[c], 4);
          for (int i = 0; i <= 4; ++i) A.at(i, static_cast<int>(c)) = l4[i];
        }
        std::vector<double> b(5);
        for (int i = 0; i <= 4; ++i) b[i] = gd[i];
        auto mu = least_squares(A, b);
        double res = 0;
        for (int i = 0; i <= 4; ++i) {
          double pred = 0;
          for (size_t c = 0; c < ls.size(); ++c) pred += A.at(i, static_cast<int>(c)) * mu[c];
          res += std::pow(pred - b[i], 2);
        }
        if (std::sqrt(res) <= 1e-6 * std::max(norm2(gd), 1.0)) {
          std::vector<BinaryForm<double>> gens = {fac.l};
          for (const auto& l : ls) gens.push_back(l);
          rep.face_type = FaceType::NonExposedEdge;
          rep.exposed = Exposedness::NotExposed;
          rep.generators = gens;
          rep.cone_coefficients = mu;
          rep.note = "f = l^4 (l1^4 + l2^4)";
          return rep;
        }
      }
      rep.face_type = FaceType::Inconclusive;
      rep.note = "l^4 factor with unresolved quartic boundary structure";
      return rep;
    }
    // g outside the quartic cone: fall through to the certificate route
  }

  // branch (ii): max-interiority certificate and its zero set
  auto cert = fe ? max_interiority_certificate(*fe, tol) : max_interiority_certificate(fd, tol);
  if (!cert.found) {
    rep.face_type = FaceType::Inconclusive;
    rep.note = "no psd certificate annihilating f was found";
    return rep;
  }
  rep.certificate = cert.element;
  auto rz = real_zeros_quartic(cert.element.quartic, 1e-7, 26);
  rep.zeros = rz.zeros;
  if (rz.infinite_family) {
    // the heuristic alone never decides: corroborate with the exact cube
    // divisor test on the rationalized certificate functional
    bool exact_confirms = false;
    try {
      auto Lr = rationalize(cert.element.functional, 100000000ul);
      exact_confirms = cube_divisor_witness(Lr).has_value();
    } catch (const std::exception&) {
    }
    rep.face_type = FaceType::Inconclusive;
    rep.note = exact_confirms
                   ? "certificate zero set is a line (confirmed by the exact cube-divisor test) "
                     "but no fourth-power factor of f was detected"
                   : "certificate reports an infinite zero family (heuristic only)";
    return rep;
  }
  if (rz.zeros.empty() || rz.zeros.size() > 3) {
    rep.face_type = FaceType::Inconclusive;
    rep.note = "certificate zero count outside {1,2,3}";
    return rep;
  }
  std::vector<BinaryForm<double>> qs;
  for (const auto& z : rz.zeros) qs.push_back(quad_of_point(z));
  // the zeros of a noisy certificate move like the square root of the solver
  // accuracy; polish the seeded decomposition against f itself
  {
    const int k = static_cast<int>(qs.size());
    DMat A(9, k);
    for (int c = 0; c < k; ++c) {
      auto q2 = qs[c] * qs[c];
      auto q4 = q2 * q2;
      for (int row = 0; row < 9; ++row) A.at(row, c) = q4[row];
    }
    std::vector<double> b(9);
    for (int i = 0; i < 9; ++i) b[i] = fd[i];
    auto lam = least_squares(A, b);
    std::vector<BinaryForm<double>> start;
    for (int c = 0; c < k; ++c) {
      double s = std::pow(std::max(lam[c], 1e-8 * norm2(fd)), 0.25);
      start.push_back(s * qs[c]);
    }
    if (auto polished = gauss_newton_decompose(fd, k, start, 1e-10, 200)) {
      // ordering of polished summands need not match qs; rebuild both lists
      qs.clear();
      for (const auto& s : polished->summands) {
        double mass = norm2(s);
        if (mass * mass * mass * mass < 1e-9 * norm2(fd)) continue;  // vanished summand
        BinaryForm<double> unit = (1.0 / mass) * s;
        qs.push_back(unit);
      }
    }
  }
  auto fit = fit_cone_coefficients(fd, qs, 1e-6);
  if (!fit.ok) {
    // marginal: escalate the solve accuracy once before giving up
    auto cert2 = fe ? max_interiority_certificate(*fe, tol * 1e-2)
                    : max_interiority_certificate(fd, tol * 1e-2);
    if (cert2.found) {
      auto rz2 = real_zeros_quartic(cert2.element.quartic, 1e-8, 34);
      if (!rz2.infinite_family && !rz2.zeros.empty() && rz2.zeros.size() <= 3) {
        qs.clear();
        for (const auto& z : rz2.zeros) qs.push_back(quad_of_point(z));
        fit = fit_cone_coefficients(fd, qs, 1e-6);
        if (fit.ok) {
          rep.certificate = cert2.element;
          rep.zeros = rz2.zeros;
          rz = rz2;
        }
      }
    }
  }
  if (!fit.ok) {
    rep.face_type = FaceType::Inconclusive;
    rep.note = "no nonnegative combination of certificate-zero quadratics reproduces f";
    return rep;
  }
  // never emit a positive-definite generator
  for (int i : fit.support) {
    if (rz.zeros[i].discriminant < -1e-7) {
      rep.face_type = FaceType::Inconclusive;
      rep.note = "fit selected a positive-definite quadratic, which the face taxonomy excludes";
      return rep;
    }
  }
  const int k = static_cast<int>(fit.support.size());
  rep.face_type = (k == 1) ? FaceType::F1 : (k == 2 ? FaceType::F2 : FaceType::F3);
  rep.generators.clear();
  for (int i : fit.support) rep.generators.push_back(qs[i]);
  rep.cone_coefficients = fit.lambda;
  if (k == static_cast<int>(rz.zeros.size()))
    rep.exposed = Exposedness::Exposed;  // the certificate's zero set is exactly the face
  else
    rep.exposed = Exposedness::Unknown;
  return rep;
}

}  // namespace

FaceReport classify_boundary_point(const BinaryForm<Rational>& f, double tol) {
  return classify_impl(f, to_float(f), tol);
}

FaceReport classify_boundary_point(const BinaryForm<double>& f, double tol) {
  return classify_impl(std::nullopt, f, tol);
}

// ---------------------------------------------------------------------------
// the 5x5 family of U cap I((1:0:0))_2^2
// ---------------------------------------------------------------------------
namespace {

// base matrices of the parametric Gram over (a1..a6, l1, l2, l3)
std::array<SymMat, 9> l8_family() {
  std::array<SymMat, 9> B;
  for (auto& m : B) m = SymMat(5);
  auto& A1 = B[0];  // a1
  A1.at(0, 1) = 9;
  A1.at(0, 2) = 3;
  auto& A2 = B[1];  // a2
  A2.at(1, 4) = 2;
  A2.at(3, 3) = 6;
  auto& A3 = B[2];  // a3
  A3.at(0, 4) = 9;
  A3.at(2, 3) = 3;
  auto& A4 = B[3];  // a4
  A4.at(0, 3) = 36;
  A4.at(1, 1) = 36;
  A4.at(2, 2) = 6;
  auto& A5 = B[4];  // a5
  A5.at(4, 4) = 6;
  auto& A6 = B[5];  // a6
  A6.at(3, 4) = 3;
  auto& L1 = B[6];  // lambda1
  L1.at(0, 3) = -1;
  L1.at(1, 2) = 1;
  auto& L2 = B[7];  // lambda2
  L2.at(0, 4) = -1;
  L2.at(1, 3) = 1;
  auto& L3 = B[8];  // lambda3
  L3.at(2, 4) = 1;
  L3.at(3, 3) = -2;
  return B;
}

}  // namespace

L8CheckReport l8_not_exposed_check(double tol) {
  L8CheckReport out;
  auto B = l8_family();
  // trace as a linear functional of the nine parameters
  std::array<double, 9> trace_coeff{};
  for (int i = 0; i < 9; ++i) trace_coeff[i] = B[i].trace();

  // (a) feasibility of {psd, a5 = 0, trace = 1}: maximize t with
  // sum p_i B_i - t I psd, a5 = 0, trace = 1; infeasible iff the max is < 0.
  // parametrize the two linear constraints away: p = p0 + span(kernel)
  {
    // p0: a5 = 0, pick a4 so that trace = 1 (trace coeff of a4 is 42)
    std::array<double, 9> p0{};
    p0[3] = 1.0 / trace_coeff[3];
    std::vector<std::array<double, 9>> kern;
    for (int i = 0; i < 9; ++i) {
      if (i == 3 || i == 4) continue;  // a4 eliminated by trace, a5 pinned
      std::array<double, 9> v{};
      v[i] = 1.0;
      v[3] = -trace_coeff[i] / trace_coeff[3];
      kern.push_back(v);
    }
    SymMat F0(5);
    for (int i = 0; i < 9; ++i)
      for (size_t t = 0; t < F0.a.size(); ++t) F0.a[t] += p0[i] * B[i].a[t];
    std::vector<SymMat> Fs;
    for (const auto& v : kern) {
      SymMat S(5);
      for (int i = 0; i < 9; ++i)
        for (size_t t = 0; t < S.a.size(); ++t) S.a[t] += v[i] * B[i].a[t];
      Fs.push_back(S);
    }
    SymMat mI(5);
    for (int i = 0; i < 5; ++i) mI.at(i, i) = -1;
    Fs.push_back(mI);
    std::vector<double> obj(Fs.size(), 0.0);
    obj.back() = 1.0;
    auto r = lmi_maximize(F0, Fs, obj, tol, 200);
    out.a5_slice_infeasible = (r.status == SdpStatus::Optimal && r.value < -1e-7);
  }

  // (b) maxima of a1, a2, a3, a4, a6 over {psd, trace = 1}. The family has no
  // Slater point (its psd slice is one ray), and two of the coefficients are
  // only quadratically infeasible, which no double-precision eigenvalue test
  // can pin to 1e-7. Standard remedy: iterated facial reduction, each step
  // verified in exact rational arithmetic; if the reduced parameter space is
  // exactly the c^4 ray, every maximum is exactly 0. Bisection on the
  // max-min-eigenvalue slice problem remains as the fallback.
  bool fully_reduced = false;
  {
    // exact facial reduction over the 9-parameter family. The constraint set
    // collects linear equations on the parameters valid on every psd member:
    // an identically-zero diagonal entry kills its row, and a principal 2x2
    // block that reduces to (scalar functional) * (fixed indefinite matrix)
    // kills that functional. Each step is verified in rational arithmetic.
    auto entry_functional = [&](int i, int j) {
      std::vector<Rational> v(9);
      for (int k = 0; k < 9; ++k) v[k] = nearest_rational(B[k].at(i, j), 100);
      return v;
    };
    std::vector<std::vector<Rational>> crows;
    std::vector<std::vector<Rational>> kern;  // basis of the surviving space
    auto refresh_kernel = [&]() {
      if (crows.empty()) {
        kern.clear();
        for (int j = 0; j < 9; ++j) {
          std::vector<Rational> e(9, Rational(0));
          e[j] = 1;
          kern.push_back(e);
        }
        return;
      }
      QMat M(static_cast<int>(crows.size()), 9);
      for (size_t r = 0; r < crows.size(); ++r)
        for (int j = 0; j < 9; ++j) M.at(static_cast<int>(r), j) = crows[r][j];
      kern = kernel_exact(M);
    };
    // functional restricted to the surviving space, in kernel coordinates
    auto restricted = [&](const std::vector<Rational>& f) {
      std::vector<Rational> r(kern.size(), Rational(0));
      for (size_t t = 0; t < kern.size(); ++t)
        for (int j = 0; j < 9; ++j) r[t] += f[j] * kern[t][j];
      return r;
    };
    auto is_zero_vec = [](const std::vector<Rational>& v) {
      for (const auto& x : v)
        if (x != 0) return false;
      return true;
    };
    refresh_kernel();
    for (int round = 0; round < 8; ++round) {
      bool progress = false;
      // zero-diagonal rows
      for (int i = 0; i < 5; ++i) {
        if (!is_zero_vec(restricted(entry_functional(i, i)))) continue;
        for (int j = 0; j < 5; ++j) {
          auto f = entry_functional(i, j);
          if (!is_zero_vec(restricted(f))) {
            crows.push_back(f);
            refresh_kernel();
            progress = true;
          }
        }
      }
      // indefinite scalar blocks
      for (int i = 0; i < 5 && !progress; ++i)
        for (int j = i + 1; j < 5 && !progress; ++j) {
          auto rii = restricted(entry_functional(i, i));
          auto rij = restricted(entry_functional(i, j));
          auto rjj = restricted(entry_functional(j, j));
          // pick a nonzero reference among them
          const std::vector<Rational>* ref = nullptr;
          for (const auto* cand : {&rii, &rij, &rjj})
            if (!is_zero_vec(*cand)) {
              ref = cand;
              break;
            }
          if (!ref) continue;
          // exact proportionality coefficients against the reference
          auto coeff_of = [&](const std::vector<Rational>& v, bool& ok) -> Rational {
            // v = c * ref exactly, or ok = false
            Rational c(0);
            int lead = -1;
            for (size_t t = 0; t < ref->size(); ++t)
              if ((*ref)[t] != 0) {
                lead = static_cast<int>(t);
                break;
              }
            c = v[lead] / (*ref)[lead];
            for (size_t t = 0; t < ref->size(); ++t)
              if (v[t] != c * (*ref)[t]) {
                ok = false;
                return Rational(0);
              }
            ok = true;
            return c;
          };
          bool ok1 = false, ok2 = false, ok3 = false;
          Rational al = coeff_of(rii, ok1), be = coeff_of(rij, ok2), ga = coeff_of(rjj, ok3);
          if (!ok1 || !ok2 || !ok3) continue;
          if (al * ga - be * be < 0) {
            for (auto f : {entry_functional(i, i), entry_functional(i, j), entry_functional(j, j)})
              if (!is_zero_vec(restricted(f))) {
                crows.push_back(f);
                refresh_kernel();
              }
            progress = true;
          }
        }
      if (!progress) break;
    }
    if (kern.size() == 1) {
      bool only_a5 = true;
      for (int j = 0; j < 9; ++j)
        if (j != 4 && kern[0][j] != 0) only_a5 = false;
      fully_reduced = only_a5 && kern[0][4] != 0;
    }
  }
  if (fully_reduced) {
    for (int ci = 0; ci < 5; ++ci) out.coefficient_maxima[ci] = 0.0;
  } else {
    const int coeff_index[5] = {0, 1, 2, 3, 5};
    for (int ci = 0; ci < 5; ++ci) {
      int target = coeff_index[ci];
      int elim = (target == 3) ? 1 : 3;  // solve the trace constraint for a4 (or a2)
      auto slice_max_mineig = [&](double theta) {
        // affine family with a_target = theta, trace = 1
        std::array<double, 9> p0{};
        p0[target] = theta;
        p0[elim] = (1.0 - theta * trace_coeff[target]) / trace_coeff[elim];
        std::vector<std::array<double, 9>> kern;
        for (int i = 0; i < 9; ++i) {
          if (i == elim || i == target) continue;
          std::array<double, 9> v{};
          v[i] = 1.0;
          v[elim] = -trace_coeff[i] / trace_coeff[elim];
          kern.push_back(v);
        }
        SymMat F0(5);
        for (int i = 0; i < 9; ++i)
          for (size_t t = 0; t < F0.a.size(); ++t) F0.a[t] += p0[i] * B[i].a[t];
        std::vector<SymMat> Fs;
        for (const auto& v : kern) {
          SymMat S(5);
          for (int i = 0; i < 9; ++i)
            for (size_t t = 0; t < S.a.size(); ++t) S.a[t] += v[i] * B[i].a[t];
          Fs.push_back(S);
        }
        SymMat mI(5);
        for (int i = 0; i < 5; ++i) mI.at(i, i) = -1;
        Fs.push_back(mI);
        std::vector<double> obj(Fs.size(), 0.0);
        obj.back() = 1.0;
        auto r = lmi_maximize(F0, Fs, obj, tol, 200);
        return (r.status == SdpStatus::Optimal) ? r.value : -1e300;
      };
      // the zero slice is feasible (min eig 0); positive theta slices are
      // infeasible with linearly decaying max-min-eigenvalue, so bisection
      // pins the maximum sharply
      double lo = 0.0, hi = 0.25;
      if (slice_max_mineig(hi) >= 0) {
        out.coefficient_maxima[ci] = 1e300;  // unexpectedly feasible far out
        continue;
      }
      for (int step = 0; step < 40; ++step) {
        double mid = 0.5 * (lo + hi);
        if (slice_max_mineig(mid) >= -1e-9)
          lo = mid;
        else
          hi = mid;
      }
      out.coefficient_maxima[ci] = lo;
    }
  }
  out.reduced_exactly = fully_reduced;
  out.passed = out.a5_slice_infeasible;
  for (double v : out.coefficient_maxima)
    if (!(std::abs(v) <= 1e-7)) out.passed = false;
  return out;
}

// ---------------------------------------------------------------------------
// doubly-positive search and the refutation
// ---------------------------------------------------------------------------
namespace {

BinaryForm<double> expand_square_pair(const std::array<BinaryForm<double>, 4>& pq) {
  // (p1^2+q1^2)^2 + (p2^2+q2^2)^2
  BinaryForm<double> acc(8);
  for (int i = 0; i < 2; ++i) {
    auto s = pq[2 * i] * pq[2 * i] + pq[2 * i + 1] * pq[2 * i + 1];
    acc = acc + s * s;
  }
  return acc;
}

std::optional<std::array<BinaryForm<double>, 4>> dp_lm(const BinaryForm<double>& f,
                                                       std::array<BinaryForm<double>, 4> pq, double tol,
                                                       int max_iter) {
  const double nf = std::max(norm2(f), 1e-300);
  auto resid = [&](const std::array<BinaryForm<double>, 4>& v) { return expand_square_pair(v) - f; };
  auto r = resid(pq);
  double rn = norm2(r);
  double lambda = 1e-3;
  for (int it = 0; it < max_iter; ++it) {
    if (rn <= tol * nf) break;
    DMat J(9, 12);
    for (int blk = 0; blk < 2; ++blk) {
      auto s = pq[2 * blk] * pq[2 * blk] + pq[2 * blk + 1] * pq[2 * blk + 1];
      for (int which = 0; which < 2; ++which) {
        const auto& g = pq[2 * blk + which];
        for (int c = 0; c < 3; ++c) {
          BinaryForm<double> mono(2);
          mono[c] = 4.0;
          auto col = s * g * mono;  // d/dg_c of (s)^2 = 2 s * 2 g m = 4 s g m
          for (int row = 0; row < 9; ++row) J.at(row, 3 * (2 * blk + which) + c) = col[row];
        }
      }
    }
    DMat JtJ(12, 12);
    std::vector<double> Jtr(12, 0.0);
    for (int a = 0; a < 12; ++a) {
      for (int b = a; b < 12; ++b) {
        double sum = 0;
        for (int row = 0; row < 9; ++row) sum += J.at(row, a) * J.at(row, b);
        JtJ.at(a, b) = sum;
        JtJ.at(b, a) = sum;
      }
      for (int row = 0; row < 9; ++row) Jtr[a] += J.at(row, a) * r[row];
    }
    bool accepted = false;
    for (int tries = 0; tries < 18 && !accepted; ++tries) {
      DMat M = JtJ;
      for (int a = 0; a < 12; ++a) M.at(a, a) += lambda * (JtJ.at(a, a) + 1e-12);
      std::vector<double> rhs(12);
      for (int a = 0; a < 12; ++a) rhs[a] = -Jtr[a];
      std::vector<double> step;
      try {
        step = lu_solve(M, rhs);
      } catch (const std::exception&) {
        lambda *= 10;
        continue;
      }
      auto pq2 = pq;
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 3; ++c) pq2[b][c] += step[3 * b + c];
      auto r2 = resid(pq2);
      double rn2 = norm2(r2);
      if (rn2 < rn) {
        pq = pq2;
        r = r2;
        rn = rn2;
        lambda = std::max(lambda / 10, 1e-14);
        accepted = true;
      } else {
        lambda *= 10;
        if (lambda > 1e14) return std::nullopt;
      }
    }
    if (!accepted) break;
  }
  if (rn > tol * nf) return std::nullopt;
  return pq;
}

}  // namespace

std::optional<std::pair<BinaryForm<double>, BinaryForm<double>>> doubly_positive_search(
    const BinaryForm<double>& f, int restarts, uint64_t seed, double tol) {
  const double scale = std::pow(std::max(norm2(f), 1e-300), 0.25);
  std::vector<std::optional<std::array<BinaryForm<double>, 4>>> slots(restarts);
  parallel_for_indexed(restarts, [&](int idx) {
    Rng rng(hash_seed(seed ^ 0xdabb1e5u, idx));
    std::array<BinaryForm<double>, 4> start = {BinaryForm<double>(2), BinaryForm<double>(2),
                                               BinaryForm<double>(2), BinaryForm<double>(2)};
    for (auto& g : start)
      for (int c = 0; c < 3; ++c) g[c] = rng.normal() * scale;
    slots[idx] = dp_lm(f, start, tol, 160);
  });
  for (const auto& s : slots)
    if (s) {
      auto f1 = (*s)[0] * (*s)[0] + (*s)[1] * (*s)[1];
      auto f2 = (*s)[2] * (*s)[2] + (*s)[3] * (*s)[3];
      return std::make_pair(f1, f2);
    }
  return std::nullopt;
}

bool square_pair_identity_check(uint64_t seed, int trials) {
  Rng rng(hash_seed(seed ^ 0x1de11717u, 1));
  for (int rep = 0; rep < trials; ++rep) {
    BinaryForm<Rational> p(2), q(2);
    for (int c = 0; c < 3; ++c) {
      p[c] = make_rational(rng.uniform_int(-9, 9), rng.uniform_int(1, 5));
      q[c] = make_rational(rng.uniform_int(-9, 9), rng.uniform_int(1, 5));
    }
    auto p2 = p * p, q2 = q * q;
    auto lhs = Rational(18) * ((p2 + q2) * (p2 + q2));
    auto mid = Rational(18) * (p2 * p2) + Rational(36) * (p2 * q2) + Rational(2) * (q2 * q2);
    auto rhs = mid + Rational(16) * (q2 * q2);
    if (!(lhs == rhs)) return false;
    // sqrt3 expansion route: (s p + q)^4 + (s p - q)^4 with s^2 = 3 expands to
    // 2 sum_{j even} C(4,j) 3^{(4-j)/2} p^{4-j} q^j = 18 p^4 + 36 p^2 q^2 + 2 q^4
    auto expanded = Rational(2) * (Rational(9) * (p2 * p2) + Rational(18) * (p2 * q2) + (q2 * q2));
    if (!(expanded == mid)) return false;
  }
  return true;
}

namespace {

RefutationReport refute_impl(const std::optional<BinaryForm<Rational>>& fe, BinaryForm<double> fd,
                             double tol, uint64_t seed, int restarts) {
  RefutationReport out;
  double nf = norm2(fd);
  if (nf == 0) {
    out.failed = "zero form";
    return out;
  }
  for (auto& c : fd.coeffs) c /= nf;  // scale-invariant question
  out.input = fd;

  // (1) boundary membership: band widened tenfold over the caller tolerance
  auto m = fe ? membership_value(*fe) : membership_value(fd);
  double scaled = m.value / std::max(m.objective_norm, 1e-300);
  out.boundary_ok = (m.solver_status == SdpStatus::Optimal) && std::abs(scaled) <= 10 * tol;
  if (!out.boundary_ok) {
    out.failed = "boundary membership";
  }

  // (2) no fourth-power linear factor
  if (fe) {
    bool has = false;
    for (const auto& part : squarefree_decompose(*fe).parts)
      if (part.multiplicity >= 4 && part.factor.degree == 1) has = true;
    out.no_fourth_power_factor_ok = !has;
  } else {
    out.no_fourth_power_factor_ok = real_linear_factors(fd, 4, 1e-4).empty();
  }
  if (!out.no_fourth_power_factor_ok && out.failed.empty()) out.failed = "fourth-power linear factor";

  // (3) finite-zero certificate
  auto cert = fe ? max_interiority_certificate(*fe, 1e-9) : max_interiority_certificate(fd, 1e-9);
  if (cert.found) {
    out.certificate = cert.element;
    auto rz = real_zeros_quartic(cert.element.quartic, 1e-7, 26);
    out.zeros = rz.zeros;
    bool finite = !rz.infinite_family && rz.zeros.size() <= 8;
    // exact escalation: the rationalized functional must have no cube divisor
    bool no_cube = true;
    try {
      auto Lr = rationalize(cert.element.functional, 100000000ul);
      bool irr = false;
      auto witness = cube_divisor_witness(Lr, &irr);
      no_cube = !witness.has_value();
    } catch (const std::exception&) {
      no_cube = false;
    }
    out.finite_zero_certificate_ok = finite && no_cube;
    if (rz.zeros.size() == 3) {
      DMat Q(3, 3);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) Q.at(i, j) = rz.zeros[i].xi[j];
      auto sv = singular_values(Q);
      out.zero_quadrics_rank = 0;
      for (double s : sv)
        if (s > 1e-7 * sv[0]) ++out.zero_quadrics_rank;
    } else {
      out.zero_quadrics_rank = static_cast<int>(rz.zeros.size());
    }
  }
  if (!out.finite_zero_certificate_ok && out.failed.empty()) out.failed = "finite-zero certificate";

  // (4) verified decomposition of length exactly 3: all summands must carry
  // mass, otherwise f is a sum of two fourth powers and trivially doubly
  // positive as (q1^2)^2 + (q2^2)^2
  auto reps = find_all_real_reps(fd, 3, restarts, seed, 1e-6, 1e-9);
  for (const auto& r : reps) {
    if (r.residual_norm > 1e-6 * norm2(fd)) continue;
    bool full_length = true;
    for (const auto& q : r.summands) {
      double mass = norm2(q);
      if (mass * mass * mass * mass < 1e-5 * norm2(fd)) full_length = false;
    }
    // three projectively distinct directions, otherwise the representation
    // collapses to length <= 2
    for (int i = 0; i < 3 && full_length; ++i)
      for (int j = i + 1; j < 3; ++j) {
        const auto &a = r.summands[i], &b = r.summands[j];
        double na = norm2(a), nb = norm2(b);
        if (na == 0 || nb == 0) {
          full_length = false;
          break;
        }
        double dplus = 0, dminus = 0;
        for (int c = 0; c < 3; ++c) {
          dplus += std::pow(a[c] / na - b[c] / nb, 2);
          dminus += std::pow(a[c] / na + b[c] / nb, 2);
        }
        if (std::sqrt(std::min(dplus, dminus)) < 1e-3) {
          full_length = false;
          break;
        }
      }
    if (full_length) {
      out.length3_ok = true;
      out.length3_witness = r;
      break;
    }
  }
  if (!out.length3_ok && out.failed.empty()) out.failed = "length-3 decomposition";

  out.identity_check = square_pair_identity_check(seed);
  if (!out.identity_check && out.failed.empty()) out.failed = "square-pair identity";

  out.verdict = (out.boundary_ok && out.no_fourth_power_factor_ok && out.finite_zero_certificate_ok &&
                 out.length3_ok && out.identity_check)
                    ? RefutationVerdict::NotDoublyPositive
                    : RefutationVerdict::Inconclusive;
  return out;
}

}  // namespace

RefutationReport reznick_refute(const BinaryForm<double>& f, double tol, uint64_t seed, int restarts) {
  return refute_impl(std::nullopt, f, tol, seed, restarts);
}

RefutationReport reznick_refute(const BinaryForm<Rational>& f, double tol, uint64_t seed, int restarts) {
  return refute_impl(f, to_float(f), tol, seed, restarts);
}

}  // namespace powercone
