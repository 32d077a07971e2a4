#pragma once

#include <optional>
#include <vector>

#include "powercone/forms.hpp"
#include "powercone/linalg.hpp"

namespace powercone {

// Complete-intersection presentation of the apolar ideal of a binary form.
// deg gen_low + deg gen_high = deg L + 2 always.
struct ApolarIdeal {
  BinaryForm<Rational> gen_low;
  BinaryForm<Rational> gen_high;
};

// Matrix of g -> <g, L> from degree-k to degree-(D-k), monomial bases by
// x-degree ascending. Its kernel is (L^perp)_k.
QMat catalecticant(const BinaryForm<Rational>& L, int k);

// kernel basis of catalecticant(L, k) as forms, deterministic order (leading
// x-degree descending); k may exceed deg L, in which case the kernel is all
// of R_k
std::vector<BinaryForm<Rational>> apolar_kernel(const BinaryForm<Rational>& L, int k);

ApolarIdeal apolar_ideal(const BinaryForm<Rational>& L);

// Hilbert function of R[x,y]/(g1,g2) for a regular sequence, computed from
// exact ranks; throws if g1,g2 share a factor (resultant vanishes)
std::vector<int> hilbert_function_ci(const BinaryForm<Rational>& g1, const BinaryForm<Rational>& g2);

// Linear l' with l'^3 in (L^perp)_3 if one exists over Q. `irrational_possible`
// (optional out) is set when the common-root form of the degree-3 kernel has
// positive degree but no rational linear factor, i.e. a real but irrational
// witness may exist.
std::optional<BinaryForm<Rational>> cube_divisor_witness(const BinaryForm<Rational>& L,
                                                         bool* irrational_possible = nullptr);

}  // namespace powercone
