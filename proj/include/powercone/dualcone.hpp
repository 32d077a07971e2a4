#pragma once

#include <array>
#include <optional>
#include <vector>

#include "powercone/forms.hpp"
#include "powercone/linalg.hpp"

namespace powercone {

// Normalized real projective zero of a ternary quartic. xi has unit Euclidean
// norm with the first significantly-nonzero coordinate positive; the
// discriminant sign classifies the corresponding binary quadratic
// xi1 x^2 + xi2 xy + xi3 y^2.
struct ProjectivePointR2 {
  std::array<double, 3> xi{0, 0, 0};
  double discriminant = 0;  // xi2^2 - 4 xi1 xi3

  static ProjectivePointR2 from(std::array<double, 3> v);
};

// A dual-cone element carried in both pictures: the degree-8 functional L
// (identified with an octic by apolarity) and the ternary quartic
// F = <L, (a x^2 + b xy + c y^2)^4>.
struct DualElement {
  BinaryForm<double> functional{8};
  TernaryForm<double> quartic{4};
  // rationalized functional satisfying the U relations exactly, when the
  // certificate survived exact projection
  std::optional<BinaryForm<Rational>> functional_exact;
  bool exact_psd = false;        // Gram psd verified by exact char-poly signs
  bool float_only_warning = false;
};

// The nine-element rational basis of U, the subspace of R[a,b,c]_4 cut out by
// the six linear coefficient relations (fixed deterministic order).
const std::vector<TernaryForm<Rational>>& u_basis();

// value of the k-th relation (k = 0..5) on a quartic
Rational u_relation_value(const TernaryForm<Rational>& F, int k);
double u_relation_value(const TernaryForm<double>& F, int k);

// <L, q(a,b,c)^p * extra> as a ternary form of degree p, where
// q = a x^2 + b xy + c y^2 and extra is a binary form with 2p + deg extra = deg L.
template <typename R>
TernaryForm<R> power_pairing(const BinaryForm<R>& L, int p, const BinaryForm<R>& extra);

// F = <L, q^4> for octic L; linear in L, image lands in U
TernaryForm<Rational> eval_map(const BinaryForm<Rational>& L);
TernaryForm<double> eval_map(const BinaryForm<double>& L);

// unique L with eval_map(L) = F; throws if F is not in U (exactly for
// rational input, within tol*||F|| for floating input)
BinaryForm<Rational> functional_of_quartic(const TernaryForm<Rational>& F);
BinaryForm<double> functional_of_quartic(const TernaryForm<double>& F, double tol = 1e-8);

// both sides of the directional-derivative identity
// d_u <L,q^4> = 4 <L, q^3 (u1 x^2 + u2 xy + u3 y^2)>
struct DerivativePair {
  TernaryForm<Rational> lhs;
  TernaryForm<Rational> rhs;
};
DerivativePair derivative_identity_check(const BinaryForm<Rational>& L, const std::array<Rational, 3>& u);

struct RealZeros {
  std::vector<ProjectivePointR2> zeros;  // clustered representatives, sorted
  bool infinite_family = false;          // >8 clusters or a whole near-zero line
};

// local minimization of a (heuristically psd) quartic on the unit sphere from
// grid_size^2 starts; zeros are points with F <= tol * ||F||
RealZeros real_zeros_quartic(const TernaryForm<double>& F, double tol = 1e-9, int grid_size = 24);

// apolarity pairing of the functional L with an octic f (scalar)
double pair_octic(const BinaryForm<double>& L, const BinaryForm<double>& f);
Rational pair_octic(const BinaryForm<Rational>& L, const BinaryForm<Rational>& f);

}  // namespace powercone
