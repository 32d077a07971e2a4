#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "powercone/decompose.hpp"
#include "powercone/dualcone.hpp"
#include "powercone/membership.hpp"

namespace powercone {

enum class FaceType { F1, F2, F3, L4Sigma24, NonExposedRayL8, NonExposedEdge, Inconclusive };
enum class Exposedness { Exposed, NotExposed, Unknown };

// Classification of a boundary octic per the face taxonomy. generators are
// the q_i for F-types, or {l, l'}/{l, l1, l2} for the fourth-power branches.
struct FaceReport {
  FaceType face_type = FaceType::Inconclusive;
  Exposedness exposed = Exposedness::Unknown;
  std::vector<BinaryForm<double>> generators;
  std::vector<double> cone_coefficients;  // f = sum lambda_i q_i^4 for F-types
  std::optional<DualElement> certificate;
  std::vector<ProjectivePointR2> zeros;  // certificate zeros with discriminant signs
  std::string note;
};

FaceReport classify_boundary_point(const BinaryForm<Rational>& f, double tol = 1e-8);
FaceReport classify_boundary_point(const BinaryForm<double>& f, double tol = 1e-8);

// Max-interiority dual certificate of a boundary form: maximize the minimum
// Gram eigenvalue subject to the U relations, trace 1 and <L, f> = 0.
struct InteriorityCertificate {
  bool found = false;
  double min_eig = 0;  // attained maximal minimum eigenvalue
  SymMat gram;
  DualElement element;
};
InteriorityCertificate max_interiority_certificate(const BinaryForm<Rational>& f, double tol = 1e-8);
InteriorityCertificate max_interiority_certificate(const BinaryForm<double>& f, double tol = 1e-8);

// The 5x5 parametric Gram family of U cap I((1:0:0))_2^2: verifies that the
// only psd members are the multiples of c^4, via (a) infeasibility of the
// a5 = 0 slice and (b) vanishing maxima of the other coefficients.
struct L8CheckReport {
  bool a5_slice_infeasible = false;
  std::array<double, 5> coefficient_maxima{};  // a1, a2, a3, a4, a6
  bool reduced_exactly = false;  // facial reduction pinned the psd set to the c^4 ray
  bool passed = false;
};
L8CheckReport l8_not_exposed_check(double tol = 1e-9);

enum class RefutationVerdict { NotDoublyPositive, Inconclusive };

struct RefutationReport {
  RefutationVerdict verdict = RefutationVerdict::Inconclusive;
  BinaryForm<double> input{8};  // unit-normalized input under test
  bool boundary_ok = false;
  bool no_fourth_power_factor_ok = false;
  bool finite_zero_certificate_ok = false;
  bool length3_ok = false;
  bool identity_check = false;
  int zero_quadrics_rank = 0;  // rank of the certificate-zero quadratics
  std::optional<DualElement> certificate;
  std::vector<ProjectivePointR2> zeros;
  std::optional<Decomposition> length3_witness;
  std::string failed;  // name of the first failing hypothesis
};

// Input is normalized internally to unit coefficient norm (the question is
// scale invariant); hypotheses follow the doubly-positive refutation:
// boundary membership, no l^4 factor, finite-zero certificate, and a verified
// length-3 decomposition, plus the exact rational square-pair identity.
RefutationReport reznick_refute(const BinaryForm<double>& f, double tol = 1e-6, uint64_t seed = 0,
                                int restarts = 3000);
RefutationReport reznick_refute(const BinaryForm<Rational>& f, double tol = 1e-6, uint64_t seed = 0,
                                int restarts = 3000);

// multistart least-squares search for f = (p1^2+q1^2)^2 + (p2^2+q2^2)^2 with
// both squares psd by construction; returns the two psd quartics on success
std::optional<std::pair<BinaryForm<double>, BinaryForm<double>>> doubly_positive_search(
    const BinaryForm<double>& f, int restarts, uint64_t seed, double tol = 1e-8);

// exact verification of the square-pair identity
// 18 (p^2+q^2)^2 = (18 p^4 + 36 p^2 q^2 + 2 q^4) + 16 q^4 on random inputs,
// together with its sqrt3-expansion coefficient arithmetic
bool square_pair_identity_check(uint64_t seed = 0, int trials = 10);

}  // namespace powercone
