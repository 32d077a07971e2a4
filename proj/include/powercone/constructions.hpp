#pragma once

#include <array>
#include <optional>
#include <vector>

#include "powercone/forms.hpp"
#include "powercone/linalg.hpp"

namespace powercone {

// The length-increasing ladder: F_1 = 1, F_k = F_{k-1} (y - x^{r_{k-1}})^{2s} + 1
// with r_1 >= 1 and r_i > 4 sum_{k<i} r_k. Levels are stored expanded; the
// term count grows by a factor of 2s+1 per level, so this stays desk-scale.
struct Ladder {
  int s = 2;
  std::vector<long> r_seq;
  std::vector<BinaryPoly<Rational>> levels;
};

Ladder ladder_build(int s, int n, const std::optional<std::vector<long>>& r_seq = std::nullopt);

// one ladder step g (y - x^r)^{2s} + 1; requires deg_x g < 2 s r
BinaryPoly<Rational> ladder_step(const BinaryPoly<Rational>& g, long r, int s);

// the four degree-d forms whose cubes span everything in degree 4d
std::array<BinaryForm<Rational>, 4> full_dim_witness(int d);

// exact check span{p_i^3 m : deg m = d} = R[x,y]_{4d}
bool ideal_surjective_at(const std::array<BinaryForm<Rational>, 4>& p, int degree4d);

struct Admissibility {
  bool strict = false;
  std::string reason;  // set when not strictly admissible
};

// clause (a): leading y-degree monomial alpha x^b y^d has alpha > 0 with b, d
// even; clause (b): b or d odd. Requires f non-constant with f(0,0) = 0.
Admissibility is_strictly_admissible(const BinaryPoly<Rational>& f);
Admissibility is_admissible_via(const BinaryPoly<Rational>& f,
                                const std::array<std::array<Rational, 2>, 2>& M);

struct PythagorasBounds {
  Integer lower;       // ceil(C(n+2sd-1, 2sd) / C(n+d-1, d))
  Integer upper;       // C(n+2sd-1, 2sd)
  Integer asymptotic;  // (2s)^(n-1)
};

PythagorasBounds pythagoras_bounds(int n, int s, int d);

}  // namespace powercone
