#pragma once

#include <optional>
#include <string>
#include <vector>

#include "powercone/linalg.hpp"

namespace powercone {

enum class SdpStatus { Optimal, Infeasible, Unbounded, MaxIter };

// Standard-form pair:
//   (P) min <C,X>  s.t. <A_i,X> = b_i, X psd
//   (D) max b^T y  s.t. sum_i y_i A_i + S = C, S psd
struct SdpProblem {
  int n = 0;
  SymMat C;
  std::vector<SymMat> A;
  std::vector<double> b;
};

struct SdpSolution {
  SdpStatus status = SdpStatus::MaxIter;
  SymMat X;
  std::vector<double> y;
  SymMat S;
  double primal_objective = 0;
  double dual_objective = 0;
  double primal_residual = 0;
  double dual_residual = 0;
  double gap = 0;
  int iterations = 0;
  bool dropped_dependent_constraints = false;
};

// Homogeneous self-dual path following with Nesterov-Todd scaling and a
// Mehrotra predictor-corrector. Dependent constraint rows are dropped (with a
// flag); an inconsistent dependent row yields Infeasible directly.
SdpSolution sdp_solve(const SdpProblem& p, double tol = 1e-8, int max_iter = 120);

// LMI-form entry: maximize obj^T y subject to F0 + sum_i y_i F_i psd. Solved
// through the dual side of the standard pair. `value` is the attained maximum
// when status is Optimal.
struct LmiResult {
  SdpStatus status = SdpStatus::MaxIter;
  double value = 0;
  std::vector<double> y;
  SymMat slack;  // F0 + sum y_i F_i at the optimum
};
LmiResult lmi_maximize(const SymMat& F0, const std::vector<SymMat>& F, const std::vector<double>& obj,
                       double tol = 1e-8, int max_iter = 120);

}  // namespace powercone
