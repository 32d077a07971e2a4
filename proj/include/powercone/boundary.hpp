#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "powercone/forms.hpp"
#include "powercone/linalg.hpp"

namespace powercone {

// A triple of binary quadratics (q1, q2, q3); degeneracy is an output of the
// classification, not a precondition.
template <typename R>
struct Triple {
  BinaryForm<R> q1{2}, q2{2}, q3{2};
};

// exact dimension of span{ q_i^3 * m : m in degree-2 monomials } in R[x,y]_8
int jacobian_image_dim(const Triple<Rational>& t);

enum class BoundaryClass { OnG, OffG, DependentTriple };

// Classification of a triple against the two factors of the differential
// determinant: the 3x3 coefficient determinant (DependentTriple) and the
// rank of the degree-8 span (OnG). Exact for rational triples; the floating
// variant decides by singular-value rank at the given tolerance.
BoundaryClass on_boundary_hypersurface(const Triple<Rational>& t);
BoundaryClass on_boundary_hypersurface(const Triple<double>& t, double tol = 1e-9);

// singular values of the 9x9 differential matrix of a floating triple
std::vector<double> differential_singular_values(const Triple<double>& t);

// exact dimension of W = <(p1^3+l1 h^3) m, (p2^3+l2 h^3) m, h^3 p1, h^3 p2>_8
// with h = l1 p1 + l2 p2
int dependent_triple_tangent_dim(const BinaryForm<Rational>& p1, const BinaryForm<Rational>& p2,
                                 const Rational& l1, const Rational& l2);

// The 15x15 assembly for the four-real-zeros exclusion: given three projective
// points, build the lines through each pair, the three quadrics, the matrix
// [U basis | (I_2^2)_4 basis] over the 15 degree-4 monomials, its determinant,
// and the 3x3 Gram family extracted from the third adjugate column together
// with the two characteristic-polynomial coefficients used as psd conditions.
template <typename R>
struct FourZeroSystem {
  std::array<std::array<R, 3>, 3> points;
  TernaryForm<R> l12{1}, l13{1}, l23{1};
  TernaryForm<R> q1{2}, q2{2}, q3{2};
  R det15;
  std::array<std::array<R, 3>, 3> gram_family;
  R charpoly_t2;  // -trace(G)
  R charpoly_t1;  // sum of principal 2x2 minors of G
  R hadamard;     // product of column norms of the 15x15 (relative scale)
};

FourZeroSystem<Rational> four_zero_system(const std::array<std::array<Rational, 3>, 3>& pts);
FourZeroSystem<BigFloat> four_zero_system(const std::array<std::array<BigFloat, 3>, 3>& pts);

// Boundary sampling: bisect the sign change of the 9x9 determinant along the
// segment from an OffG triple toward a dependent-adjacent triple; nullopt when
// the sampled segment has no usable crossing.
std::optional<Triple<double>> sample_on_g(uint64_t seed, int bisection_steps = 80);

}  // namespace powercone
