#pragma once

#include <string>
#include <vector>

#include "powercone/forms.hpp"

namespace powercone {

// Small exact expression parser (grammar documented in the README):
//   expr    := ['-'] term { ('+'|'-') term }
//   term    := factor { '*' factor }
//   factor  := primary ['^' natural]
//   primary := variable | rational | '(' expr ')'
//   rational:= natural ['/' natural]
// Variables are named by `vars` (e.g. {"x","y"} or {"a","b","c"}). Throws
// std::invalid_argument on malformed input.
struct ParsedPoly {
  int arity = 2;
  // exponent vector (size = arity) -> coefficient
  std::vector<std::pair<std::vector<long>, Rational>> terms;
};

ParsedPoly parse_polynomial(const std::string& src, const std::vector<std::string>& vars);

BinaryPoly<Rational> parse_binary_poly(const std::string& src);
BinaryForm<Rational> parse_binary_form(const std::string& src);   // must be homogeneous
TernaryForm<Rational> parse_ternary_form(const std::string& src); // must be homogeneous

}  // namespace powercone
