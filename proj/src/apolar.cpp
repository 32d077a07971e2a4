#include "powercone/apolar.hpp"

#include <algorithm>
#include <cmath>

namespace powercone {

namespace {

int leading_index(const BinaryForm<Rational>& f) {
  for (int i = f.degree; i >= 0; --i)
    if (f[i] != 0) return i;
  return -1;
}

void normalize_primitive(BinaryForm<Rational>& f) {
  int lead = leading_index(f);
  if (lead < 0) return;
  Integer l = 1;
  for (const auto& c : f.coeffs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  Integer g = 0;
  for (const auto& c : f.coeffs) {
    Rational t = c * Rational(l);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.get_num().get_mpz_t());
  }
  Rational scale = Rational(l) / Rational(g);
  if (f[lead] < 0) scale = -scale;
  for (auto& c : f.coeffs) c *= scale;
}

BinaryForm<Rational> form_from_vec(int degree, const std::vector<Rational>& v) {
  BinaryForm<Rational> f(degree);
  for (int i = 0; i <= degree; ++i) f[i] = v[i];
  return f;
}

// incremental span membership via exact rank
struct SpanTester {
  QMat rows;
  int used = 0;
  SpanTester(int dim, int capacity) : rows(capacity, dim) {}
  int rank() const {
    if (used == 0) return 0;
    QMat m(used, rows.cols);
    for (int i = 0; i < used; ++i)
      for (int j = 0; j < rows.cols; ++j) m.at(i, j) = rows.at(i, j);
    return rank_exact(m);
  }
  bool contains(const BinaryForm<Rational>& f) {
    int before = rank();
    for (int j = 0; j <= f.degree; ++j) rows.at(used, j) = f[j];
    ++used;
    int after = rank();
    --used;
    return after == before;
  }
  void push(const BinaryForm<Rational>& f) {
    for (int j = 0; j <= f.degree; ++j) rows.at(used, j) = f[j];
    ++used;
  }
};

}  // namespace

QMat catalecticant(const BinaryForm<Rational>& L, int k) {
  const int D = L.degree;
  if (k < 0 || k > D) throw std::invalid_argument("catalecticant: k out of range");
  QMat M(D - k + 1, k + 1);
  for (int i = 0; i <= k; ++i) {
    auto img = apolar_pair(binary_monomial<Rational>(k, i), L);
    for (int t = 0; t <= D - k; ++t) M.at(t, i) = img[t];
  }
  return M;
}

std::vector<BinaryForm<Rational>> apolar_kernel(const BinaryForm<Rational>& L, int k) {
  std::vector<BinaryForm<Rational>> out;
  if (k > L.degree) {
    for (int i = k; i >= 0; --i) out.push_back(binary_monomial<Rational>(k, i));
    return out;
  }
  auto basis = kernel_exact(catalecticant(L, k));
  for (const auto& v : basis) {
    auto f = form_from_vec(k, v);
    normalize_primitive(f);
    out.push_back(f);
  }
  std::sort(out.begin(), out.end(), [](const BinaryForm<Rational>& a, const BinaryForm<Rational>& b) {
    return leading_index(a) > leading_index(b);
  });
  return out;
}

ApolarIdeal apolar_ideal(const BinaryForm<Rational>& L) {
  if (L.is_zero()) throw std::invalid_argument("apolar_ideal of the zero form");
  const int D = L.degree;
  int d1 = -1;
  BinaryForm<Rational> gen_low;
  for (int k = 1; k <= D; ++k) {
    auto ker = apolar_kernel(L, k);
    if (!ker.empty()) {
      d1 = k;
      gen_low = ker.front();
      break;
    }
  }
  if (d1 < 0) throw std::logic_error("apolar_ideal: no generator found");
  const int d2 = D + 2 - d1;

  // completing generator: lowest leading monomial outside gen_low * R_{d2-d1}
  std::vector<BinaryForm<Rational>> candidates;
  if (d2 > D) {
    for (int i = 0; i <= d2; ++i) candidates.push_back(binary_monomial<Rational>(d2, i));
  } else {
    candidates = apolar_kernel(L, d2);
    std::reverse(candidates.begin(), candidates.end());
  }
  SpanTester span(d2 + 1, (d2 - d1 + 1) + 1);
  for (int m = 0; m <= d2 - d1; ++m) span.push(gen_low * binary_monomial<Rational>(d2 - d1, m));
  for (auto& c : candidates) {
    if (!span.contains(c)) {
      normalize_primitive(c);
      return {gen_low, c};
    }
  }
  throw std::logic_error("apolar_ideal: completing generator not found");
}

std::vector<int> hilbert_function_ci(const BinaryForm<Rational>& g1, const BinaryForm<Rational>& g2) {
  if (g1.is_zero() || g2.is_zero()) throw std::invalid_argument("hilbert_function_ci: zero generator");
  if (resultant(g1, g2) == 0) throw std::invalid_argument("hilbert_function_ci: generators share a factor");
  const int e1 = g1.degree, e2 = g2.degree;
  std::vector<int> h;
  for (int d = 0; d <= e1 + e2 - 2; ++d) {
    std::vector<BinaryForm<Rational>> rows;
    if (d >= e1)
      for (int m = 0; m <= d - e1; ++m) rows.push_back(g1 * binary_monomial<Rational>(d - e1, m));
    if (d >= e2)
      for (int m = 0; m <= d - e2; ++m) rows.push_back(g2 * binary_monomial<Rational>(d - e2, m));
    int rank = 0;
    if (!rows.empty()) {
      QMat M(static_cast<int>(rows.size()), d + 1);
      for (size_t r = 0; r < rows.size(); ++r)
        for (int j = 0; j <= d; ++j) M.at(static_cast<int>(r), j) = rows[r][j];
      rank = rank_exact(M);
    }
    h.push_back(d + 1 - rank);
  }
  return h;
}

namespace {

// numeric roots t of g(t, 1) = 0, double precision Durand-Kerner; only the
// (nearly) real ones are returned
std::vector<double> numeric_slopes(const BinaryForm<Rational>& g) {
  std::vector<double> c;
  for (int i = 0; i <= g.degree; ++i) c.push_back(g[i].get_d());
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  std::vector<double> roots;
  int deg = static_cast<int>(c.size()) - 1;
  if (deg <= 0) return roots;
  if (deg == 1) {
    roots.push_back(-c[0] / c[1]);
    return roots;
  }
  std::vector<double> m(c);
  for (auto& x : m) x /= c[deg];
  std::vector<std::pair<double, double>> z(deg);
  for (int i = 0; i < deg; ++i) {
    double ang = 0.4 + 6.283185307179586 * i / deg;
    z[i] = {1.3 * std::cos(ang), 1.3 * std::sin(ang)};
  }
  auto eval = [&](std::pair<double, double> w) {
    double re = 0, im = 0;
    for (int i = deg; i >= 0; --i) {
      double nre = re * w.first - im * w.second + m[i];
      double nim = re * w.second + im * w.first;
      re = nre;
      im = nim;
    }
    return std::make_pair(re, im);
  };
  for (int it = 0; it < 300; ++it) {
    double moved = 0;
    for (int i = 0; i < deg; ++i) {
      auto p = eval(z[i]);
      double dre = 1, dim = 0;
      for (int j = 0; j < deg; ++j) {
        if (j == i) continue;
        double ure = z[i].first - z[j].first, uim = z[i].second - z[j].second;
        double nre = dre * ure - dim * uim;
        double nim = dre * uim + dim * ure;
        dre = nre;
        dim = nim;
      }
      double den = dre * dre + dim * dim;
      if (den < 1e-300) continue;
      double qre = (p.first * dre + p.second * dim) / den;
      double qim = (p.second * dre - p.first * dim) / den;
      z[i].first -= qre;
      z[i].second -= qim;
      moved += std::abs(qre) + std::abs(qim);
    }
    if (moved < 1e-15) break;
  }
  for (auto& w : z)
    if (std::abs(w.second) < 1e-7 * (1 + std::abs(w.first))) roots.push_back(w.first);
  return roots;
}

}  // namespace

std::optional<BinaryForm<Rational>> cube_divisor_witness(const BinaryForm<Rational>& L,
                                                         bool* irrational_possible) {
  if (irrational_possible) *irrational_possible = false;
  if (L.degree != 8) throw std::invalid_argument("cube_divisor_witness expects an octic");
  QMat M = catalecticant(L, 3);
  // Row t yields G_t(alpha,beta) = sum_i M[t][i] C(3,i) alpha^i beta^{3-i};
  // (alpha:beta) is a common zero of all G_t exactly when (alpha x + beta y)^3
  // lies in (L^perp)_3. The common zeros are the roots of the gcd.
  BinaryForm<Rational> g(0);
  bool have = false;
  for (int t = 0; t < M.rows; ++t) {
    BinaryForm<Rational> G(3);
    for (int i = 0; i <= 3; ++i) G[i] = M.at(t, i) * Rational(binomial(3, i));
    if (G.is_zero()) continue;
    g = have ? gcd_forms(g, G) : G;
    have = true;
  }
  if (!have || g.degree == 0 || g.is_zero()) return std::nullopt;

  auto verify = [&](const BinaryForm<Rational>& l) -> bool {
    auto cube = pow(l, 3);
    for (int t = 0; t < M.rows; ++t) {
      Rational s(0);
      for (int i = 0; i <= 3; ++i) s += M.at(t, i) * cube[i];
      if (s != 0) return false;
    }
    return true;
  };

  std::vector<BinaryForm<Rational>> candidates;
  if (g[0] == 0) {  // alpha | g: root (0:1), witness y
    BinaryForm<Rational> y(1);
    y[0] = 1;
    candidates.push_back(y);
  }
  if (g[g.degree] == 0) {  // beta | g: root (1:0), witness x
    BinaryForm<Rational> x(1);
    x[1] = 1;
    candidates.push_back(x);
  }
  // finite slopes: rational roots have denominator dividing the leading
  // coefficient of the primitive core, so bounded continued fractions on the
  // numeric roots recover every rational root
  unsigned long bound = 1000000;
  {
    Integer lc = 0;
    for (int i = g.degree; i >= 0; --i)
      if (g[i] != 0) {
        lc = abs(g[i].get_num());
        break;
      }
    if (lc != 0 && lc < 1000000) bound = std::max(1ul, lc.get_ui());
  }
  bool unresolved = false;
  for (double slope : numeric_slopes(g)) {
    Rational r = nearest_rational(slope, bound);
    if (evaluate(g, Rational(r.get_num()), Rational(r.get_den())) == 0) {
      BinaryForm<Rational> l(1);  // root (t:1): l' = t x + y, integer-scaled
      l[1] = r.get_num();
      l[0] = r.get_den();
      candidates.push_back(l);
    } else {
      unresolved = true;
    }
  }
  for (auto& cand : candidates) {
    normalize_primitive(cand);
    if (verify(cand)) return cand;
  }
  if (irrational_possible && unresolved) *irrational_possible = true;
  return std::nullopt;
}

}  // namespace powercone
