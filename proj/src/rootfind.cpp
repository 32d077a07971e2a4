#include "powercone/rootfind.hpp"

#include <cmath>

namespace powercone {

std::vector<std::complex<double>> poly_roots(std::vector<double> coeffs) {
  using C = std::complex<double>;
  while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
  std::vector<C> roots;
  int deg = static_cast<int>(coeffs.size()) - 1;
  if (deg <= 0) return roots;
  // strip roots at zero
  int zero_roots = 0;
  while (zero_roots < deg && coeffs[zero_roots] == 0.0) ++zero_roots;
  if (zero_roots) coeffs.erase(coeffs.begin(), coeffs.begin() + zero_roots);
  deg = static_cast<int>(coeffs.size()) - 1;
  for (int i = 0; i < zero_roots; ++i) roots.emplace_back(0.0, 0.0);
  if (deg <= 0) return roots;

  std::vector<C> m(coeffs.begin(), coeffs.end());
  for (auto& x : m) x /= m.back();
  // radius bound
  double rad = 0;
  for (int i = 0; i < deg; ++i) rad = std::max(rad, std::abs(m[i]));
  rad = 1.0 + rad;
  std::vector<C> z(deg);
  for (int i = 0; i < deg; ++i) {
    double ang = 0.4 + 6.283185307179586 * i / deg;
    z[i] = std::min(rad, 1.5) * C(std::cos(ang), std::sin(ang));
  }
  auto eval = [&](C w) {
    C r = 0;
    for (int i = deg; i >= 0; --i) r = r * w + m[i];
    return r;
  };
  for (int it = 0; it < 500; ++it) {
    double moved = 0;
    for (int i = 0; i < deg; ++i) {
      C num = eval(z[i]);
      C den = 1;
      for (int j = 0; j < deg; ++j)
        if (j != i) den *= (z[i] - z[j]);
      if (std::abs(den) < 1e-300) continue;
      C step = num / den;
      z[i] -= step;
      moved += std::abs(step);
    }
    if (moved < 1e-15) break;
  }
  for (auto w : z) roots.push_back(w);
  return roots;
}

BigFloat newton_root(const std::vector<Rational>& coeffs, double start, int prec, int max_iter) {
  const int deg = static_cast<int>(coeffs.size()) - 1;
  std::vector<BigFloat> c;
  c.reserve(coeffs.size());
  for (const auto& q : coeffs) c.emplace_back(q, prec);
  BigFloat x(start, prec);
  BigFloat zero(0.0, prec);
  for (int it = 0; it < max_iter; ++it) {
    BigFloat p = zero, dp = zero;
    for (int i = deg; i >= 0; --i) {
      dp = dp * x + p;
      p = p * x + c[i];
    }
    if (dp.is_zero()) break;
    BigFloat step = p / dp;
    x = x - step;
    // converged when the step is below the working precision of x
    int shift = std::min(prec - 4, 1000);
    BigFloat thresh = (abs(x) + BigFloat(1.0, prec)) * BigFloat(std::ldexp(1.0, -shift), prec);
    if (abs(step) < thresh) break;
  }
  return x;
}

}  // namespace powercone
