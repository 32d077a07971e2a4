#pragma once

#include <string>

#include "json.hpp"
#include "powercone/apolar.hpp"
#include "powercone/boundary.hpp"
#include "powercone/constructions.hpp"
#include "powercone/decompose.hpp"
#include "powercone/faces.hpp"
#include "powercone/forms.hpp"
#include "powercone/membership.hpp"

namespace powercone {

using Json = nlohmann::ordered_json;

// Canonical form encoding:
//   {"arity": 2|3, "degree": d,
//    "terms": [{"exp": [...], "num": "<int>", "den": "<int>"}]}
// with {"coef": <double>} replacing num/den for floating forms. Terms follow
// the canonical monomial order (binary: x-degree ascending; ternary: graded
// lex a > b > c). The same shape encodes inhomogeneous bivariate polynomials,
// where "degree" is the total degree and exponent sums may fall below it.
Json encode(const BinaryForm<Rational>& f);
Json encode(const BinaryForm<double>& f);
Json encode(const TernaryForm<Rational>& f);
Json encode(const TernaryForm<double>& f);
Json encode(const BinaryPoly<Rational>& p);

// decoding dispatches on "arity" and num/den vs coef; throws std::invalid_argument
BinaryForm<Rational> decode_binary_exact(const Json& j);
BinaryForm<double> decode_binary_float(const Json& j);
TernaryForm<Rational> decode_ternary_exact(const Json& j);
BinaryPoly<Rational> decode_binary_poly(const Json& j);
bool is_float_form(const Json& j);

// report encodings used by the CLI
Json encode(const MembershipResult& m);
Json encode(const MembershipQuarticResult& m);
Json encode(const Decomposition& d);
Json encode(const FaceReport& r);
Json encode(const RefutationReport& r);
Json encode(const ApolarIdeal& ideal);
Json encode(const FourZeroSystem<Rational>& s);
Json encode(const FourZeroSystem<BigFloat>& s);
Json encode(const Ladder& l);
Json encode(const PythagorasBounds& b);
Json encode(const Admissibility& a);

std::string rational_str(const Rational& q);

}  // namespace powercone
