#pragma once

#include <optional>

#include "powercone/dualcone.hpp"
#include "powercone/sdp.hpp"

namespace powercone {

enum class Membership { Member, NonMember, Boundary };

// Result of the dual-slice membership test for binary octics.
//
// `value` is the minimum of <L, f> over the compact dual base {Gram psd,
// trace 1, U relations}; it is 1-homogeneous in f, and the decision band
// applies to it directly, so callers comparing forms of very different
// magnitude should scale their input.
struct MembershipResult {
  double value = 0;
  SdpStatus solver_status = SdpStatus::MaxIter;
  Membership decision = Membership::Boundary;
  DualElement certificate;
  SymMat gram;                    // certificate Gram (trace 1)
  double certificate_min_eig = 0; // min eigenvalue of the certificate Gram
  double objective_norm = 0;            // Frobenius norm of the exact objective
  std::optional<Rational> exact_value;  // exact raw pairing <L_hat, f> of the
                                        // rationalized certificate (unnormalized)
};

MembershipResult membership_value(const BinaryForm<Rational>& f, double tol = 1e-8,
                                  double decision_band = 1e-6);
MembershipResult membership_value(const BinaryForm<double>& f, double tol = 1e-8,
                                  double decision_band = 1e-6);

// One dimension down: membership of binary quartics in the cone of sums of
// fourth powers of linear forms. The certificate is the dual binary quartic
// F(a,b) = <L, (a x + b y)^4> with its 3x3 Gram.
struct MembershipQuarticResult {
  double value = 0;
  SdpStatus solver_status = SdpStatus::MaxIter;
  Membership decision = Membership::Boundary;
  BinaryForm<double> certificate_quartic{4};  // in (a, b)
  SymMat gram;
};

MembershipQuarticResult membership_quartic_cone(const BinaryForm<Rational>& g, double tol = 1e-8,
                                                double decision_band = 1e-6);
MembershipQuarticResult membership_quartic_cone(const BinaryForm<double>& g, double tol = 1e-8,
                                                double decision_band = 1e-6);

// psd Gram of a ternary quartic over the degree-2 monomial basis, when one
// exists (max-min-eigenvalue formulation); nullopt when F is not sos.
std::optional<SymMat> sos_gram(const TernaryForm<Rational>& F, double tol = 1e-8);
std::optional<SymMat> sos_gram(const TernaryForm<double>& F, double tol = 1e-8);

// Gram basis bookkeeping shared with the face machinery: degree-2 ternary
// monomials in canonical order and the quartic of a Gram matrix.
TernaryForm<double> gram_to_quartic(const SymMat& X);
TernaryForm<Rational> gram_to_quartic_exact(const QMat& X);

// exact objective matrix of the membership SDP (before normalization):
// <C_f, X> = <L(F(X)), f> whenever F(X) lies in U
QMat membership_objective(const BinaryForm<Rational>& f);

}  // namespace powercone
