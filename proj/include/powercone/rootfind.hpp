#pragma once

#include <complex>
#include <vector>

#include "powercone/scalar.hpp"

namespace powercone {

// all complex roots of a univariate polynomial (ascending coefficients),
// Durand-Kerner at double precision
std::vector<std::complex<double>> poly_roots(std::vector<double> coeffs);

// Newton refinement of a simple real root of an exact polynomial, starting
// from `start`, carried out at `prec` mantissa bits
BigFloat newton_root(const std::vector<Rational>& coeffs, double start, int prec, int max_iter = 200);

}  // namespace powercone
