#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "powercone/forms.hpp"
#include "powercone/membership.hpp"

namespace powercone {

// A sum-of-fourth-powers representation f = sum q_i^4 of a binary octic.
// Canonical form: each summand sign-normalized (first significant coefficient
// positive), summands sorted lexicographically by coefficient vector.
struct Decomposition {
  std::vector<BinaryForm<double>> summands;
  double residual_norm = 0;
  bool canonical = false;
};

Decomposition canonicalize(Decomposition d);

// Levenberg-Marquardt on the coefficient residual sum q_i^4 - f from a given
// start; success iff the residual drops below tol * ||f||.
std::optional<Decomposition> gauss_newton_decompose(const BinaryForm<double>& f, int k,
                                                    const std::vector<BinaryForm<double>>& start,
                                                    double tol = 1e-10, int max_iter = 200);

// Multistart search for all real rank-k representations, canonicalized and
// deduplicated modulo summand signs and permutations. Deterministic for fixed
// seed and restart count, independent of the thread schedule.
// polish_tol: candidates that cannot be polished below polish_tol * ||f||
// are treated as near-misses and dropped (0 keeps every tol-level candidate)
std::vector<Decomposition> find_all_real_reps(const BinaryForm<double>& f, int k, int restarts,
                                              uint64_t seed, double tol = 1e-8,
                                              double polish_tol = 1e-12);

enum class LengthClass { L1 = 1, L2 = 2, L3 = 3, L4 = 4, NotInCone = 0 };

struct LengthEstimate {
  LengthClass length = LengthClass::NotInCone;
  std::optional<Decomposition> witness;
  double membership = 0;  // membership_value of the input
};

LengthEstimate length_estimate(const BinaryForm<Rational>& f, int restarts = 2000, uint64_t seed = 0,
                               double tol = 1e-8);

// Constructive length-4 decomposition of a certified interior octic: bisect
// f - s x^8 to the far boundary point g, decompose g with k = 3, and append
// the s^(1/4) x^2 summand. Throws if f is not clearly interior; returns
// nullopt on bisection or search failure.
std::optional<Decomposition> decompose_length4(const BinaryForm<Rational>& f, double tol = 1e-8,
                                               uint64_t seed = 0, int restarts = 600);

// Multistart census of complex rank-3 representations modulo permutations and
// fourth roots of unity per summand (orbit size 6 * 4^3 = 384). The count is a
// lower bound, never a certified total.
struct ComplexCensus {
  int distinct_count = 0;
  int orbit_size_assumed = 384;
  bool certified = false;  // always false: multistart evidence only
  std::vector<int> checkpoint_restarts;
  std::vector<int> checkpoint_counts;  // running count after each checkpoint
};

ComplexCensus complex_rep_census(const BinaryForm<double>& f, int restarts, uint64_t seed,
                                 double tol = 1e-10);

}  // namespace powercone
