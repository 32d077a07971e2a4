#include "doctest.h"
#include "helpers.hpp"
#include "powercone/constructions.hpp"

using namespace powercone;
using namespace powercone::testing;

TEST_CASE("ladder construction") {
  auto L1 = ladder_build(2, 1);
  REQUIRE(L1.levels.size() == 1);
  CHECK(L1.levels[0] == BinaryPoly<Rational>::constant(1));

  auto L2 = ladder_build(2, 2, std::vector<long>{1});
  auto ymx = BinaryPoly<Rational>::monomial(0, 1) - BinaryPoly<Rational>::monomial(1, 0);
  CHECK(L2.levels[1] == pow(ymx, 4) + BinaryPoly<Rational>::constant(1));

  auto L3 = ladder_build(2, 3);
  CHECK(L3.r_seq == std::vector<long>({1, 5}));
  CHECK(L3.levels[2].total_degree() == 24);  // 2s * (r1 + r2) = 4 * 6

  // invalid supplied sequence
  CHECK_THROWS(ladder_build(2, 3, std::vector<long>{1, 4}));
  // degree hypothesis of the ladder step
  CHECK_THROWS(ladder_step(pow(BinaryPoly<Rational>::monomial(5, 0), 1), 1, 2));
}

TEST_CASE("ladder structural identities for s in {2,3}, n <= 4") {
  for (int s : {2, 3})
    for (int n : {2, 3, 4}) {
      auto L = ladder_build(s, n);
      long degree_sum = 0;
      for (int k = 1; k < n; ++k) {
        degree_sum += L.r_seq[k - 1];
        // substitution y -> x^{r_{k-1}} collapses F_k to 1
        auto sub = substitute(L.levels[k], BinaryPoly<Rational>::monomial(1, 0),
                              BinaryPoly<Rational>::monomial(L.r_seq[k - 1], 0));
        CHECK(sub == BinaryPoly<Rational>::constant(1));
        CHECK(L.levels[k].total_degree() == 2 * s * degree_sum);
      }
    }
}

TEST_CASE("full-dimension witnesses") {
  auto w3 = full_dim_witness(3);
  CHECK(w3[0] == bmono(3, 3));
  CHECK(w3[1] == bmono(3, 0));
  CHECK(w3[2] == bmono(3, 2));  // x^2 y
  CHECK(w3[3] == bmono(3, 1));  // x y^2

  auto w2 = full_dim_witness(2);
  CHECK(w2[2] == bmono(2, 1));
  CHECK(w2[3] == bmono(2, 1));

  auto w1 = full_dim_witness(1);
  CHECK(w1[2] == bmono(1, 1));                // x
  CHECK(w1[3] == bmono(1, 1) + bmono(1, 0));  // x + y
}

TEST_CASE("ideal surjectivity of the witnesses") {
  for (int d = 1; d <= 8; ++d) CHECK(ideal_surjective_at(full_dim_witness(d), 4 * d));
  // pure powers alone never span the middle for d >= 2
  std::array<BinaryForm<Rational>, 4> bad = {bmono(2, 2), bmono(2, 0), bmono(2, 2), bmono(2, 0)};
  CHECK(!ideal_surjective_at(bad, 8));
}

TEST_CASE("admissibility") {
  BinaryPoly<Rational> y = BinaryPoly<Rational>::monomial(0, 1);
  CHECK(is_strictly_admissible(y).strict);

  BinaryPoly<Rational> neg;  // -x^2 y^2
  neg.add_term(2, 2, Rational(-1));
  CHECK(!is_strictly_admissible(neg).strict);

  BinaryPoly<Rational> pos;  // x^2 y^2
  pos.add_term(2, 2, Rational(1));
  CHECK(is_strictly_admissible(pos).strict);

  BinaryPoly<Rational> off = BinaryPoly<Rational>::constant(3);
  CHECK(!is_strictly_admissible(off).strict);
  BinaryPoly<Rational> shifted = pos + BinaryPoly<Rational>::constant(1);
  CHECK(!is_strictly_admissible(shifted).strict);

  // invariance under positive scaling
  Rng rng(7);
  for (int rep = 0; rep < 6; ++rep) {
    BinaryPoly<Rational> f;
    for (int t = 0; t < 5; ++t)
      f.add_term(rng.uniform_int(0, 3), rng.uniform_int(0, 3),
                 make_rational(rng.uniform_int(-4, 4), 1));
    f.terms.erase({0, 0});
    Rational lam = make_rational(rng.uniform_int(1, 9), rng.uniform_int(1, 4));
    BinaryPoly<Rational> g;
    for (const auto& [e, c] : f.terms) g.add_term(e.first, e.second, lam * c);
    CHECK(is_strictly_admissible(f).strict == is_strictly_admissible(g).strict);
  }

  // the swap x <-> y can make -y^2 x^2 + y^3-style examples strictly admissible
  BinaryPoly<Rational> mixed;  // y^3 - x^2 y^2: already strict (d = 3 odd)
  mixed.add_term(0, 3, Rational(1));
  mixed.add_term(2, 2, Rational(-1));
  CHECK(is_strictly_admissible(mixed).strict);
  std::array<std::array<Rational, 2>, 2> swap_xy = {{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}};
  CHECK(is_admissible_via(mixed, swap_xy).strict == is_strictly_admissible(substitute(
      mixed, BinaryPoly<Rational>::monomial(0, 1), BinaryPoly<Rational>::monomial(1, 0))).strict);
}

TEST_CASE("pythagoras bounds") {
  auto b = pythagoras_bounds(2, 2, 2);
  CHECK(b.lower == 3);  // C(9,8)/C(3,2) = 9/3
  CHECK(b.upper == 9);
  CHECK(b.asymptotic == 4);

  auto t = pythagoras_bounds(1, 1, 1);
  CHECK(t.lower == 1);
  CHECK(t.upper == 1);

  // lower <= upper always; lower tends to (2s)^(n-1) monotonically in d
  for (int n : {2, 3})
    for (int s : {1, 2, 3}) {
      Integer prev = 0;
      for (int d = 1; d <= 50; ++d) {
        auto pb = pythagoras_bounds(n, s, d);
        CHECK(pb.lower <= pb.upper);
        CHECK(pb.lower >= prev);
        CHECK(pb.lower <= pb.asymptotic);
        prev = pb.lower;
      }
    }
}
