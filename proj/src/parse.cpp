#include "powercone/parse.hpp"

#include <cctype>
#include <map>

namespace powercone {

namespace {

// multivariate sparse polynomial over up to 3 variables during parsing
struct Sparse {
  std::map<std::vector<long>, Rational> terms;
  int arity;

  explicit Sparse(int n) : arity(n) {}
  static Sparse constant(int n, const Rational& c) {
    Sparse s(n);
    if (c != 0) s.terms[std::vector<long>(n, 0)] = c;
    return s;
  }
  void add(const std::vector<long>& e, const Rational& c) {
    auto it = terms.find(e);
    if (it == terms.end()) {
      if (c != 0) terms[e] = c;
    } else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }
};

Sparse add(const Sparse& a, const Sparse& b) {
  Sparse r = a;
  for (const auto& [e, c] : b.terms) r.add(e, c);
  return r;
}

Sparse negate(const Sparse& a) {
  Sparse r(a.arity);
  for (const auto& [e, c] : a.terms) r.terms[e] = -c;
  return r;
}

Sparse mul(const Sparse& a, const Sparse& b) {
  Sparse r(a.arity);
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      std::vector<long> e(a.arity);
      for (int i = 0; i < a.arity; ++i) e[i] = ea[i] + eb[i];
      r.add(e, ca * cb);
    }
  return r;
}

Sparse powi(const Sparse& a, long e) {
  Sparse r = Sparse::constant(a.arity, 1);
  Sparse base = a;
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

struct Parser {
  const std::string& src;
  const std::vector<std::string>& vars;
  size_t pos = 0;

  Parser(const std::string& s, const std::vector<std::string>& v) : src(s), vars(v) {}

  void skip() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("parse error at position " + std::to_string(pos) + ": " + what);
  }

  long natural() {
    skip();
    if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos]))) fail("expected a number");
    long v = 0;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
      v = v * 10 + (src[pos] - '0');
      if (v < 0) fail("integer literal too large");
      ++pos;
    }
    return v;
  }

  Sparse primary() {
    skip();
    if (eat('(')) {
      Sparse e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
      long num = natural();
      long den = 1;
      if (eat('/')) den = natural();
      if (den == 0) fail("zero denominator");
      return Sparse::constant(static_cast<int>(vars.size()), make_rational(num, den));
    }
    for (size_t v = 0; v < vars.size(); ++v) {
      const auto& name = vars[v];
      if (src.compare(pos, name.size(), name) == 0) {
        pos += name.size();
        Sparse s(static_cast<int>(vars.size()));
        std::vector<long> e(vars.size(), 0);
        e[v] = 1;
        s.terms[e] = 1;
        return s;
      }
    }
    fail("expected a variable, number or '('");
  }

  Sparse factor() {
    Sparse base = primary();
    if (eat('^')) {
      long e = natural();
      return powi(base, e);
    }
    return base;
  }

  Sparse term() {
    Sparse acc = factor();
    while (true) {
      skip();
      if (eat('*'))
        acc = mul(acc, factor());
      else
        break;
    }
    return acc;
  }

  Sparse expr() {
    skip();
    bool neg = eat('-');
    Sparse acc = term();
    if (neg) acc = negate(acc);
    while (true) {
      skip();
      if (eat('+'))
        acc = add(acc, term());
      else if (eat('-'))
        acc = add(acc, negate(term()));
      else
        break;
    }
    return acc;
  }
};

}  // namespace

ParsedPoly parse_polynomial(const std::string& src, const std::vector<std::string>& vars) {
  Parser p(src, vars);
  Sparse s = p.expr();
  p.skip();
  if (p.pos != src.size()) p.fail("trailing input");
  ParsedPoly out;
  out.arity = static_cast<int>(vars.size());
  for (const auto& [e, c] : s.terms) out.terms.push_back({e, c});
  return out;
}

BinaryPoly<Rational> parse_binary_poly(const std::string& src) {
  auto parsed = parse_polynomial(src, {"x", "y"});
  BinaryPoly<Rational> p;
  for (const auto& [e, c] : parsed.terms) p.add_term(e[0], e[1], c);
  return p;
}

BinaryForm<Rational> parse_binary_form(const std::string& src) {
  auto p = parse_binary_poly(src);
  if (p.is_zero()) return BinaryForm<Rational>(0);
  return to_form(p);
}

TernaryForm<Rational> parse_ternary_form(const std::string& src) {
  auto parsed = parse_polynomial(src, {"a", "b", "c"});
  long deg = 0;
  for (const auto& [e, c] : parsed.terms) deg = std::max(deg, e[0] + e[1] + e[2]);
  TernaryForm<Rational> f(static_cast<int>(deg));
  for (const auto& [e, c] : parsed.terms) {
    if (e[0] + e[1] + e[2] != deg)
      throw std::invalid_argument("ternary input must be homogeneous");
    f.add_term({static_cast<int>(e[0]), static_cast<int>(e[1]), static_cast<int>(e[2])}, c);
  }
  return f;
}

}  // namespace powercone
