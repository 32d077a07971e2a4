#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace powercone {

// Exact field elements are GMP rationals, always canonical (lowest terms,
// positive denominator). mpq_class maintains this under arithmetic; raw
// num/den construction goes through make_rational below.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(const std::string& num, const std::string& den = "1") {
  Integer n(num), d(den);
  if (d == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Integer factorial(unsigned n) {
  Integer r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= static_cast<long>(i);
  return r;
}

inline Integer binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Best rational approximation with denominator <= bound, by continued
// fractions (used when rationalizing floating certificates).
Rational nearest_rational(double x, unsigned long den_bound);

// Arbitrary-precision binary float on top of MPFR, round-to-nearest.
// Every value carries its own precision; binary operations promote to the
// larger operand precision.
class BigFloat {
 public:
  static constexpr int kMinPrec = 100;  // extended mode floor, in mantissa bits

  BigFloat() : BigFloat(0.0, 128) {}
  explicit BigFloat(int prec) { init(prec); }
  BigFloat(double x, int prec) {
    init(prec);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  BigFloat(long x, int prec) {
    init(prec);
    mpfr_set_si(v_, x, MPFR_RNDN);
  }
  BigFloat(const Rational& q, int prec) {
    init(prec);
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
  }
  BigFloat(const BigFloat& o) {
    init(o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  int prec() const { return static_cast<int>(mpfr_get_prec(v_)); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.prec(), b.prec()));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.prec(), b.prec()));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.prec(), b.prec()));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  BigFloat operator-() const {
    BigFloat r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat& operator+=(const BigFloat& b) { return *this = *this + b; }
  BigFloat& operator-=(const BigFloat& b) { return *this = *this - b; }
  BigFloat& operator*=(const BigFloat& b) { return *this = *this * b; }
  BigFloat& operator/=(const BigFloat& b) { return *this = *this / b; }

  friend BigFloat abs(const BigFloat& a) {
    BigFloat r(a.prec());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat sqrt(const BigFloat& a) {
    BigFloat r(a.prec());
    mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

  std::string to_string() const;

 private:
  void init(int prec) {
    if (prec < 2) prec = 2;
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  mpfr_t v_;
};

// Scalar-kind helpers so templated form code can branch on exactness.
template <typename R>
struct scalar_traits {
  static constexpr bool exact = false;
};
template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
};

template <typename R>
R scalar_from_long(long v) {
  return R(v);
}
template <>
inline BigFloat scalar_from_long<BigFloat>(long v) {
  return BigFloat(v, 128);
}

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }
inline double to_double(const BigFloat& x) { return x.to_double(); }

}  // namespace powercone
