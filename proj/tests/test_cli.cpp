#include <array>
#include <cstdio>
#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "powercone/json_io.hpp"
#include "powercone/parse.hpp"

using namespace powercone;
using namespace powercone::testing;

namespace {

struct CliResult {
  int exit_code;
  std::string output;
};

CliResult run_cli(const std::string& args, const std::string& stdin_data = "") {
  std::string cmd = "cd " CLI_DIR " && ";
  if (!stdin_data.empty()) {
    std::string esc;
    for (char c : stdin_data) {
      if (c == '\'')
        esc += "'\\''";
      else
        esc += c;
    }
    cmd += "printf '%s' '" + esc + "' | ";
  }
  cmd += "./powercone " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

}  // namespace

TEST_CASE("expression parser") {
  auto f = parse_binary_form("x^8 - 2*x^4*y^4");
  CHECK(f.degree == 8);
  CHECK(f[8] == 1);
  CHECK(f[4] == -2);

  auto g = parse_binary_form("(x + y)^2 * (x - y)^2");
  CHECK(g == pow(bform(2, {-1, 0, 1}), 2));

  auto q = parse_binary_poly("3/2 * x * y + 1");
  CHECK(q.terms.at({1, 1}) == make_rational(3, 2));
  CHECK(q.terms.at({0, 0}) == 1);

  CHECK_THROWS(parse_binary_form("x^"));
  CHECK_THROWS(parse_binary_form("x + z"));
  CHECK_THROWS(parse_binary_form("x^2 + y"));  // inhomogeneous as a form

  auto t = parse_ternary_form("b^2 - a*c");
  CHECK(t.coeff({0, 2, 0}) == 1);
  CHECK(t.coeff({1, 0, 1}) == -1);
}

TEST_CASE("canonical JSON round trip") {
  Rng rng(3);
  for (int rep = 0; rep < 6; ++rep) {
    auto f = random_rational_form(rng, 8);
    auto back = decode_binary_exact(encode(f));
    CHECK(back == f);
  }
  TernaryForm<Rational> t(4);
  t.add_term({2, 1, 1}, make_rational(-7, 3));
  t.add_term({0, 0, 4}, 5);
  CHECK(decode_ternary_exact(encode(t)) == t);

  // float forms
  BinaryForm<double> fd(8);
  fd[3] = 1.25;
  fd[8] = -0.5;
  auto j = encode(fd);
  CHECK(is_float_form(j));
  auto back = decode_binary_float(j);
  CHECK(back[3] == 1.25);
  CHECK(back[8] == -0.5);
}

TEST_CASE("cli member and exit codes") {
  auto neg = run_cli("member --expr \"-x^8\"");
  CHECK(neg.exit_code == 0);
  auto j = Json::parse(neg.output);
  CHECK(j.at("member") == Json(false));
  CHECK(j.at("value").get<double>() < -1e-2);

  auto boundary = run_cli("member --expr \"x^4*y^4 + (x^2 - y^2)^4\"");
  CHECK(boundary.exit_code == 2);
  CHECK(Json::parse(boundary.output).at("member") == Json("boundary"));

  auto bad = run_cli("member", "this is not json");
  CHECK(bad.exit_code == 1);
  auto err = Json::parse(bad.output);
  CHECK(err.contains("error"));
}

TEST_CASE("cli bounds, ladder and admissible") {
  auto b = run_cli("bounds --n 2 --s 2 --d 2");
  CHECK(b.exit_code == 0);
  auto jb = Json::parse(b.output);
  CHECK(jb.at("lower") == 3);
  CHECK(jb.at("upper") == 9);

  auto l = run_cli("ladder --s 2 --n 2");
  CHECK(l.exit_code == 0);
  auto jl = Json::parse(l.output);
  CHECK(jl.at("levels").size() == 2);

  auto a = run_cli("admissible --expr \"-x^2*y^2\"");
  CHECK(a.exit_code == 0);
  CHECK(Json::parse(a.output).at("strict") == Json(false));
}

TEST_CASE("cli output is byte-identical for identical seeds") {
  std::string args = "decompose --k 3 --restarts 200 --seed 42 --expr \"(x*y)^4 + (x^2 + x*y - y^2)^4 + (x^2 - y^2)^4\"";
  auto r1 = run_cli(args);
  auto r2 = run_cli(args);
  CHECK(r1.exit_code == 0);
  CHECK(r1.output == r2.output);
}

TEST_CASE("cli on-g and boundary-system") {
  Json q1 = encode(bmono(2, 2)), q2 = encode(bmono(2, 0)), q3 = encode(bmono(2, 1));
  Json in;
  in["quadratics"] = {q1, q2, q3};
  auto r = run_cli("on-g", in.dump());
  CHECK(r.exit_code == 0);
  auto jr = Json::parse(r.output);
  CHECK(jr.at("class") == "OffG");
  CHECK(jr.at("jacobian_image_dim") == 9);

  Json pts;
  pts["points"] = {{1, 2, -1}, {0, 1, 3}, {2, -1, 1}};
  auto bs = run_cli("boundary-system", pts.dump());
  CHECK(bs.exit_code == 0);
  auto jbs = Json::parse(bs.output);
  CHECK(jbs.at("det15").get<std::string>() != "0");
}
