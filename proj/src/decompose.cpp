#include "powercone/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "powercone/linalg.hpp"
#include "powercone/rng.hpp"
#include "powercone/threads.hpp"

namespace powercone {

namespace {

BinaryForm<double> expand_sum4(const std::vector<BinaryForm<double>>& qs) {
  BinaryForm<double> acc(8);
  for (const auto& q : qs) {
    auto q2 = q * q;
    auto q4 = q2 * q2;
    acc = acc + q4;
  }
  return acc;
}

double summand_scale(const BinaryForm<double>& f) {
  return std::pow(std::max(norm2(f), 1e-300), 0.25);
}

}  // namespace

Decomposition canonicalize(Decomposition d) {
  for (auto& q : d.summands) {
    double peak = 0;
    for (double c : q.coeffs) peak = std::max(peak, std::abs(c));
    for (int i = 0; i <= q.degree; ++i) {
      if (std::abs(q[i]) > 1e-9 * peak) {
        if (q[i] < 0)
          for (auto& c : q.coeffs) c = -c;
        break;
      }
    }
  }
  std::sort(d.summands.begin(), d.summands.end(),
            [](const BinaryForm<double>& a, const BinaryForm<double>& b) {
              for (int i = 0; i <= a.degree; ++i)
                if (a[i] != b[i]) return a[i] < b[i];
              return false;
            });
  d.canonical = true;
  return d;
}

std::optional<Decomposition> gauss_newton_decompose(const BinaryForm<double>& f, int k,
                                                    const std::vector<BinaryForm<double>>& start,
                                                    double tol, int max_iter) {
  if (k < 1 || k > 4) throw std::invalid_argument("gauss_newton_decompose: k out of range");
  if (static_cast<int>(start.size()) != k) throw std::invalid_argument("start size mismatch");
  const double nf = std::max(norm2(f), 1e-300);
  std::vector<double> u(3 * k);
  for (int i = 0; i < k; ++i)
    for (int c = 0; c < 3; ++c) u[3 * i + c] = start[i][c];

  auto unpack = [&](const std::vector<double>& v) {
    std::vector<BinaryForm<double>> qs(k, BinaryForm<double>(2));
    for (int i = 0; i < k; ++i)
      for (int c = 0; c < 3; ++c) qs[i][c] = v[3 * i + c];
    return qs;
  };
  auto residual = [&](const std::vector<double>& v) {
    auto r = expand_sum4(unpack(v)) - f;
    return r;
  };

  double lambda = 1e-3;
  auto r = residual(u);
  double rn = norm2(r);
  for (int it = 0; it < max_iter; ++it) {
    if (rn <= tol * nf) break;
    auto qs = unpack(u);
    // Jacobian: column (i,c) = coefficients of 4 q_i^3 x^c y^(2-c)
    DMat J(9, 3 * k);
    for (int i = 0; i < k; ++i) {
      auto q3 = qs[i] * qs[i] * qs[i];
      for (int c = 0; c < 3; ++c) {
        BinaryForm<double> mono(2);
        mono[c] = 4.0;
        auto col = q3 * mono;
        for (int row = 0; row < 9; ++row) J.at(row, 3 * i + c) = col[row];
      }
    }
    DMat JtJ(3 * k, 3 * k);
    std::vector<double> Jtr(3 * k, 0.0);
    for (int a = 0; a < 3 * k; ++a) {
      for (int b = a; b < 3 * k; ++b) {
        double s = 0;
        for (int row = 0; row < 9; ++row) s += J.at(row, a) * J.at(row, b);
        JtJ.at(a, b) = s;
        JtJ.at(b, a) = s;
      }
      for (int row = 0; row < 9; ++row) Jtr[a] += J.at(row, a) * r[row];
    }
    bool accepted = false;
    for (int tries = 0; tries < 20 && !accepted; ++tries) {
      DMat M = JtJ;
      for (int a = 0; a < 3 * k; ++a) M.at(a, a) += lambda * (JtJ.at(a, a) + 1e-12);
      std::vector<double> rhs(3 * k);
      for (int a = 0; a < 3 * k; ++a) rhs[a] = -Jtr[a];
      std::vector<double> step;
      try {
        step = lu_solve(M, rhs);
      } catch (const std::exception&) {
        lambda *= 10;
        continue;
      }
      std::vector<double> u2 = u;
      for (int a = 0; a < 3 * k; ++a) u2[a] += step[a];
      auto r2 = residual(u2);
      double rn2 = norm2(r2);
      if (rn2 < rn) {
        u = std::move(u2);
        r = std::move(r2);
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
  Decomposition d;
  d.summands = unpack(u);
  d.residual_norm = rn;
  return canonicalize(std::move(d));
}

namespace {

// orbit distance modulo summand sign flips and permutations
double orbit_distance(const Decomposition& A, const Decomposition& B) {
  const int k = static_cast<int>(A.summands.size());
  if (static_cast<int>(B.summands.size()) != k) return 1e300;
  std::vector<int> perm(k);
  for (int i = 0; i < k; ++i) perm[i] = i;
  double best = 1e300;
  do {
    double total = 0;
    for (int i = 0; i < k; ++i) {
      double dplus = 0, dminus = 0;
      for (int c = 0; c < 3; ++c) {
        double a = A.summands[i][c], b = B.summands[perm[i]][c];
        dplus += (a - b) * (a - b);
        dminus += (a + b) * (a + b);
      }
      total += std::min(dplus, dminus);
    }
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::sqrt(best);
}

double decomposition_norm(const Decomposition& d) {
  double s = 0;
  for (const auto& q : d.summands)
    for (double c : q.coeffs) s += c * c;
  return std::sqrt(s);
}

}  // namespace

std::vector<Decomposition> find_all_real_reps(const BinaryForm<double>& f, int k, int restarts,
                                              uint64_t seed, double tol, double polish_tol) {
  const double scale = summand_scale(f);
  std::vector<std::optional<Decomposition>> slots(restarts);
  parallel_for_indexed(restarts, [&](int idx) {
    Rng rng(hash_seed(seed, idx));
    std::vector<BinaryForm<double>> start(k, BinaryForm<double>(2));
    for (auto& q : start)
      for (int c = 0; c < 3; ++c) q[c] = rng.normal() * scale;
    auto cand = gauss_newton_decompose(f, k, start, tol, 200);
    if (cand && polish_tol > 0 && polish_tol < tol) {
      // genuine isolated solutions of the square system polish to machine
      // precision; residual shelves do not and are discarded
      cand = gauss_newton_decompose(f, k, cand->summands, polish_tol, 150);
    }
    slots[idx] = cand;
  });
  std::vector<Decomposition> out;
  for (auto& s : slots) {
    if (!s) continue;
    bool dup = false;
    for (const auto& seen : out)
      if (orbit_distance(*s, seen) <= 1e-6 * (1 + decomposition_norm(seen))) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(std::move(*s));
  }
  std::sort(out.begin(), out.end(), [](const Decomposition& a, const Decomposition& b) {
    for (size_t i = 0; i < a.summands.size() && i < b.summands.size(); ++i)
      for (int c = 0; c < 3; ++c)
        if (a.summands[i][c] != b.summands[i][c]) return a.summands[i][c] < b.summands[i][c];
    return false;
  });
  return out;
}

LengthEstimate length_estimate(const BinaryForm<Rational>& f, int restarts, uint64_t seed, double tol) {
  LengthEstimate out;
  auto m = membership_value(f);
  out.membership = m.value;
  if (m.decision == Membership::NonMember) {
    out.length = LengthClass::NotInCone;
    return out;
  }
  // exact fourth-power test
  if (auto root = fourth_root_form(f)) {
    Decomposition d;
    d.summands = {to_float(*root)};
    d.residual_norm = 0;
    out.length = LengthClass::L1;
    out.witness = canonicalize(std::move(d));
    return out;
  }
  auto fd = to_float(f);
  for (int k = 2; k <= 3; ++k) {
    auto reps = find_all_real_reps(fd, k, restarts, seed, tol);
    if (!reps.empty()) {
      out.length = (k == 2) ? LengthClass::L2 : LengthClass::L3;
      out.witness = reps.front();
      return out;
    }
  }
  if (m.decision == Membership::Member) {
    if (auto d4 = decompose_length4(f, tol, seed)) {
      out.length = LengthClass::L4;
      out.witness = *d4;
      return out;
    }
  }
  // boundary point whose rank-3 search failed: retry harder before giving up
  auto retry = find_all_real_reps(fd, 3, restarts * 10, seed + 1, tol);
  if (!retry.empty()) {
    out.length = LengthClass::L3;
    out.witness = retry.front();
    return out;
  }
  out.length = LengthClass::L4;
  return out;
}

std::optional<Decomposition> decompose_length4(const BinaryForm<Rational>& f, double tol, uint64_t seed,
                                               int restarts) {
  auto m0 = membership_value(f);
  if (m0.solver_status != SdpStatus::Optimal || m0.decision != Membership::Member)
    throw std::invalid_argument("decompose_length4: input is not certified interior");

  auto x8 = binary_monomial<Rational>(8, 8);
  // a small positive margin keeps the bisection endpoint strictly inside the
  // cone, where exact rank-3 representations exist
  auto member_at = [&](const Rational& s) {
    auto m = membership_value(f - s * x8);
    return m.value >= 1e-8 * m.objective_norm;
  };
  // bracket the boundary crossing along f - s x^8
  Rational lo(0), hi(1);
  {
    int guard = 0;
    while (member_at(hi)) {
      hi *= 2;
      if (++guard > 70) return std::nullopt;
    }
  }
  for (int step = 0; step < 60; ++step) {
    Rational mid = (lo + hi) / 2;
    if (member_at(mid))
      lo = mid;
    else
      hi = mid;
  }
  auto g = f - lo * x8;
  auto gd = to_float(g);
  double search_tol = std::min(tol * 10, 1e-7);
  auto reps = find_all_real_reps(gd, 3, restarts, seed, search_tol, 0);
  if (reps.empty()) reps = find_all_real_reps(gd, 3, restarts * 5, seed + 17, 1e-6, 0);
  if (reps.empty()) return std::nullopt;
  Decomposition d = reps.front();
  BinaryForm<double> extra(2);
  extra[2] = std::pow(lo.get_d(), 0.25);  // s^(1/4) x^2
  d.summands.push_back(extra);
  d.residual_norm = norm2(expand_sum4(d.summands) - to_float(f));
  return canonicalize(std::move(d));
}

// ---------------------------------------------------------------------------
// Complex census.
// ---------------------------------------------------------------------------
namespace {

using C = std::complex<double>;

struct CDecomp {
  std::array<std::array<C, 3>, 3> q;  // three quadratics, coeffs by x-degree
};

std::array<C, 9> residual_c(const CDecomp& d, const BinaryForm<double>& f) {
  std::array<C, 9> r{};
  for (int i = 0; i < 9; ++i) r[i] = -f[i];
  for (const auto& q : d.q) {
    // q^2 then q^4 by convolution
    std::array<C, 5> q2{};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) q2[a + b] += q[a] * q[b];
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) r[a + b] += q2[a] * q2[b];
  }
  return r;
}

double cnorm(const std::array<C, 9>& r) {
  double s = 0;
  for (const auto& v : r) s += std::norm(v);
  return std::sqrt(s);
}

// complex 9x9 solve, partial pivoting
bool csolve(std::array<std::array<C, 9>, 9>& A, std::array<C, 9>& b) {
  for (int k = 0; k < 9; ++k) {
    int piv = k;
    double best = std::abs(A[k][k]);
    for (int i = k + 1; i < 9; ++i)
      if (std::abs(A[i][k]) > best) {
        best = std::abs(A[i][k]);
        piv = i;
      }
    if (best < 1e-300) return false;
    std::swap(A[piv], A[k]);
    std::swap(b[piv], b[k]);
    for (int i = k + 1; i < 9; ++i) {
      C fct = A[i][k] / A[k][k];
      if (fct == C(0)) continue;
      for (int j = k; j < 9; ++j) A[i][j] -= fct * A[k][j];
      b[i] -= fct * b[k];
    }
  }
  for (int i = 8; i >= 0; --i) {
    C s = b[i];
    for (int j = i + 1; j < 9; ++j) s -= A[i][j] * b[j];
    b[i] = s / A[i][i];
  }
  return true;
}

bool newton_complex(CDecomp& d, const BinaryForm<double>& f, double tol, int max_iter) {
  const double nf = std::max(norm2(f), 1e-300);
  auto r = residual_c(d, f);
  double rn = cnorm(r);
  for (int it = 0; it < max_iter; ++it) {
    if (rn <= tol * nf) return true;
    // Jacobian: column (i,c) = 4 q_i^3 * x^c y^(2-c)
    std::array<std::array<C, 9>, 9> J{};
    for (int i = 0; i < 3; ++i) {
      std::array<C, 5> q2{};
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) q2[a + b] += d.q[i][a] * d.q[i][b];
      std::array<C, 7> q3{};
      for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 3; ++b) q3[a + b] += q2[a] * d.q[i][b];
      for (int c = 0; c < 3; ++c)
        for (int a = 0; a < 7; ++a) J[a + c][3 * i + c] += 4.0 * q3[a];
    }
    std::array<C, 9> rhs;
    for (int i = 0; i < 9; ++i) rhs[i] = -r[i];
    auto Jc = J;
    if (!csolve(Jc, rhs)) return false;
    // damped update
    double alpha = 1.0;
    bool moved = false;
    for (int bt = 0; bt < 6; ++bt) {
      CDecomp d2 = d;
      for (int i = 0; i < 3; ++i)
        for (int c = 0; c < 3; ++c) d2.q[i][c] += alpha * rhs[3 * i + c];
      auto r2 = residual_c(d2, f);
      double rn2 = cnorm(r2);
      if (rn2 < rn) {
        d = d2;
        r = r2;
        rn = rn2;
        moved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!moved) return rn <= tol * nf;
  }
  return rn <= tol * nf;
}

// canonical representative modulo i^t per summand and permutations
void canonicalize_complex(CDecomp& d) {
  const C I(0, 1);
  for (auto& q : d.q) {
    double peak = 0;
    int lead = 0;
    for (int c = 0; c < 3; ++c) peak = std::max(peak, std::abs(q[c]));
    for (int c = 2; c >= 0; --c)
      if (std::abs(q[c]) > 1e-9 * peak) lead = c;
    // rotate so arg(q[lead]) lies in [-pi/4, pi/4)
    int best_t = 0;
    for (int t = 0; t < 4; ++t) {
      C v = q[lead];
      for (int s = 0; s < t; ++s) v *= I;
      double a = std::arg(v);
      if (a >= -0.78539816339744830961 && a < 0.78539816339744830961) {
        best_t = t;
        break;
      }
    }
    for (int s = 0; s < best_t; ++s)
      for (auto& c : q) c *= I;
  }
  std::sort(d.q.begin(), d.q.end(), [](const std::array<C, 3>& a, const std::array<C, 3>& b) {
    for (int c = 0; c < 3; ++c) {
      if (a[c].real() != b[c].real()) return a[c].real() < b[c].real();
      if (a[c].imag() != b[c].imag()) return a[c].imag() < b[c].imag();
    }
    return false;
  });
}

double complex_orbit_distance(const CDecomp& A, const CDecomp& B) {
  const C I(0, 1);
  double best = 1e300;
  std::array<int, 3> p = {0, 1, 2};
  do {
    double total = 0;
    for (int i = 0; i < 3; ++i) {
      double bq = 1e300;
      C rot(1, 0);
      for (int t = 0; t < 4; ++t) {
        double s = 0;
        for (int c = 0; c < 3; ++c) s += std::norm(A.q[i][c] - rot * B.q[p[i]][c]);
        bq = std::min(bq, s);
        rot *= I;
      }
      total += bq;
    }
    best = std::min(best, total);
  } while (std::next_permutation(p.begin(), p.end()));
  return std::sqrt(best);
}

double complex_invariant(const CDecomp& d) {
  double s = 0;
  for (const auto& q : d.q)
    for (const auto& c : q) s += std::norm(c);
  return s;
}

}  // namespace

ComplexCensus complex_rep_census(const BinaryForm<double>& f, int restarts, uint64_t seed, double tol) {
  ComplexCensus out;
  const double scale = summand_scale(f);
  std::vector<std::optional<CDecomp>> slots(restarts);
  parallel_for_indexed(restarts, [&](int idx) {
    Rng rng(hash_seed(seed ^ 0xc0311ec5u, idx));
    CDecomp d;
    for (auto& q : d.q)
      for (auto& c : q) c = C(rng.normal(), rng.normal()) * (0.7071067811865476 * scale);
    if (newton_complex(d, f, tol, 120)) {
      canonicalize_complex(d);
      slots[idx] = d;
    } else {
      slots[idx] = std::nullopt;
    }
  });

  std::vector<CDecomp> reps;
  std::vector<double> invariants;
  std::vector<int> checkpoints;
  for (int cp = restarts / 8; cp < restarts; cp += std::max(restarts / 8, 1)) checkpoints.push_back(cp);
  checkpoints.push_back(restarts);
  size_t next_cp = 0;
  for (int idx = 0; idx < restarts; ++idx) {
    while (next_cp < checkpoints.size() && idx >= checkpoints[next_cp]) {
      out.checkpoint_restarts.push_back(checkpoints[next_cp]);
      out.checkpoint_counts.push_back(static_cast<int>(reps.size()));
      ++next_cp;
    }
    if (!slots[idx]) continue;
    const CDecomp& d = *slots[idx];
    double inv = complex_invariant(d);
    bool dup = false;
    for (size_t j = 0; j < reps.size(); ++j) {
      if (std::abs(invariants[j] - inv) > 1e-4 * (1 + inv)) continue;
      if (complex_orbit_distance(d, reps[j]) <= 1e-6 * (1 + std::sqrt(inv))) {
        dup = true;
        break;
      }
    }
    if (!dup) {
      reps.push_back(d);
      invariants.push_back(inv);
    }
  }
  while (next_cp < checkpoints.size()) {
    out.checkpoint_restarts.push_back(checkpoints[next_cp]);
    out.checkpoint_counts.push_back(static_cast<int>(reps.size()));
    ++next_cp;
  }
  out.distinct_count = static_cast<int>(reps.size());
  return out;
}

}  // namespace powercone
