#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "powercone/json_io.hpp"
#include "powercone/parse.hpp"
#include "powercone/rootfind.hpp"

using namespace powercone;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInconclusive = 2;

struct InputSource {
  std::string file;
  std::string expr;

  std::string read_raw() const {
    if (!expr.empty()) return expr;
    if (!file.empty() && file != "-") {
      std::ifstream in(file);
      if (!in) throw std::invalid_argument("cannot open input file: " + file);
      std::stringstream ss;
      ss << in.rdbuf();
      return ss.str();
    }
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }

  bool is_expr() const { return !expr.empty(); }
};

int fail_json(const std::string& message) {
  Json err;
  err["error"] = message;
  std::cout << err.dump() << "\n";
  return kExitError;
}

Json parse_json(const std::string& raw) {
  return Json::parse(raw);  // throws nlohmann parse_error
}

BinaryForm<Rational> read_octic(const InputSource& in) {
  std::string raw = in.read_raw();
  BinaryForm<Rational> f(8);
  if (in.is_expr()) {
    f = parse_binary_form(raw);
  } else {
    f = decode_binary_exact(parse_json(raw));
  }
  if (f.degree != 8) throw std::invalid_argument("expected a binary octic (degree 8)");
  return f;
}

BinaryForm<Rational> read_binary_form(const InputSource& in) {
  std::string raw = in.read_raw();
  if (in.is_expr()) return parse_binary_form(raw);
  return decode_binary_exact(parse_json(raw));
}

void emit(const Json& j, const std::string& format) {
  if (format == "json") {
    std::cout << j.dump() << "\n";
  } else {
    std::cout << j.dump(2) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sums of fourth powers of quadratics: membership, decompositions, faces and bounds"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  double tol = 1e-6;
  double solver_tol = 1e-8;
  int restarts = 5000;
  uint64_t seed = 0;
  int max_iter = 200;
  int precision_bits = 200;
  app.add_option("--format", format, "output format: json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--tol", tol, "decision band (default 1e-6)");
  app.add_option("--solver-tol", solver_tol, "interior point tolerance (default 1e-8)");
  app.add_option("--restarts", restarts, "multistart restart count (default 5000)");
  app.add_option("--seed", seed, "random seed (default 0)");
  app.add_option("--max-iter", max_iter, "iteration cap for local solvers");
  app.add_option("--precision-bits", precision_bits, "extended precision mantissa bits (default 200)");

  InputSource input;
  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("--file", input.file, "input file (canonical JSON), '-' for stdin");
    cmd->add_option("--expr", input.expr, "inline polynomial expression, e.g. \"x^8 - 2*x^4*y^4\"");
  };

  auto* member = app.add_subcommand("member", "membership of an octic in the fourth-powers cone");
  int member_cone = 28;
  member->add_option("--cone", member_cone,
                     "28: octics as fourth powers of quadratics (default); 24: quartics as fourth powers of linear forms")
      ->check(CLI::IsMember({28, 24}));
  add_input(member);

  auto* decompose_cmd = app.add_subcommand("decompose", "multistart search for sum-of-fourth-powers representations");
  int dec_k = 3;
  bool dec_length = false;
  decompose_cmd->add_option("--k", dec_k, "number of summands (1..4, default 3)");
  decompose_cmd->add_flag("--length", dec_length, "estimate the length instead of fixing k");
  add_input(decompose_cmd);

  auto* classify_cmd = app.add_subcommand("classify", "face classification of a boundary octic");
  add_input(classify_cmd);

  auto* reznick_cmd = app.add_subcommand("reznick", "doubly-positive refutation checks for a boundary octic");
  add_input(reznick_cmd);

  auto* apolar_cmd = app.add_subcommand("apolar", "apolar ideal generators of a binary form");
  add_input(apolar_cmd);

  auto* dualq_cmd = app.add_subcommand("dual-quartic", "the ternary quartic of an octic functional");
  add_input(dualq_cmd);

  auto* bsys_cmd = app.add_subcommand("boundary-system", "15x15 four-zero system at three projective points");
  add_input(bsys_cmd);

  auto* ong_cmd = app.add_subcommand("on-g", "classify a triple of quadratics against the boundary hypersurface");
  add_input(ong_cmd);

  auto* ladder_cmd = app.add_subcommand("ladder", "length-increasing ladder polynomials");
  int ladder_s = 2, ladder_n = 3;
  std::vector<long> ladder_r;
  ladder_cmd->add_option("--s", ladder_s, "power parameter (2s-th powers)");
  ladder_cmd->add_option("--n", ladder_n, "number of levels");
  ladder_cmd->add_option("--r", ladder_r, "explicit exponent sequence");

  auto* bounds_cmd = app.add_subcommand("bounds", "dimension bounds for homogeneous Pythagoras numbers");
  int b_n = 2, b_s = 2, b_d = 2;
  bounds_cmd->add_option("--n", b_n, "number of variables");
  bounds_cmd->add_option("--s", b_s, "half power (2s-th powers)");
  bounds_cmd->add_option("--d", b_d, "base degree");

  auto* adm_cmd = app.add_subcommand("admissible", "strict admissibility of a bivariate polynomial");
  std::vector<double> adm_matrix;
  adm_cmd->add_option("--matrix", adm_matrix, "test f o M for M = m00,m01,m10,m11 (rationalized)")
      ->expected(4);
  add_input(adm_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (member->parsed()) {
      if (member_cone == 28) {
        auto f = read_octic(input);
        auto m = membership_value(f, solver_tol, tol);
        emit(encode(m), format);
        return m.decision == Membership::Boundary ? kExitInconclusive : kExitOk;
      }
      auto g = read_binary_form(input);
      if (g.degree != 4) throw std::invalid_argument("cone 24 expects a binary quartic");
      auto m = membership_quartic_cone(g, solver_tol, tol);
      emit(encode(m), format);
      return m.decision == Membership::Boundary ? kExitInconclusive : kExitOk;
    }

    if (decompose_cmd->parsed()) {
      auto f = read_octic(input);
      if (dec_length) {
        auto est = length_estimate(f, restarts, seed, solver_tol);
        Json j;
        j["length"] = (est.length == LengthClass::NotInCone) ? Json("not_in_cone")
                                                             : Json(static_cast<int>(est.length));
        j["membership_value"] = est.membership;
        if (est.witness) j["witness"] = encode(*est.witness);
        emit(j, format);
        return est.length == LengthClass::NotInCone || est.witness ? kExitOk : kExitInconclusive;
      }
      if (dec_k < 1 || dec_k > 4) throw std::invalid_argument("--k must be between 1 and 4");
      auto reps = find_all_real_reps(to_float(f), dec_k, restarts, seed, solver_tol);
      Json j;
      j["count"] = reps.size();
      j["decompositions"] = Json::array();
      for (const auto& r : reps) j["decompositions"].push_back(encode(r));
      emit(j, format);
      return kExitOk;
    }

    if (classify_cmd->parsed()) {
      auto f = read_octic(input);
      auto rep = classify_boundary_point(f, solver_tol);
      emit(encode(rep), format);
      return rep.face_type == FaceType::Inconclusive ? kExitInconclusive : kExitOk;
    }

    if (reznick_cmd->parsed()) {
      auto f = read_octic(input);
      auto rep = reznick_refute(f, tol, seed, restarts);
      emit(encode(rep), format);
      return rep.verdict == RefutationVerdict::NotDoublyPositive ? kExitOk : kExitInconclusive;
    }

    if (apolar_cmd->parsed()) {
      auto f = read_binary_form(input);
      auto ideal = apolar_ideal(f);
      emit(encode(ideal), format);
      return kExitOk;
    }

    if (dualq_cmd->parsed()) {
      auto L = read_octic(input);
      emit(encode(eval_map(L)), format);
      return kExitOk;
    }

    if (bsys_cmd->parsed()) {
      auto j = parse_json(input.read_raw());
      auto pts = j.at("points");
      if (!pts.is_array() || pts.size() != 3)
        throw std::invalid_argument("boundary-system expects {\"points\": [[a,b,c], [a,b,c], [a,b,c]]}");
      bool exact = true;
      for (const auto& p : pts)
        for (const auto& c : p)
          if (c.is_number_float()) exact = false;
      if (exact) {
        std::array<std::array<Rational, 3>, 3> P;
        for (int i = 0; i < 3; ++i)
          for (int k = 0; k < 3; ++k) {
            const auto& c = pts[i][k];
            P[i][k] = c.is_string() ? make_rational(c.get<std::string>())
                                    : Rational(c.get<long>());
          }
        emit(encode(four_zero_system(P)), format);
      } else {
        std::array<std::array<BigFloat, 3>, 3> P;
        for (int i = 0; i < 3; ++i)
          for (int k = 0; k < 3; ++k) P[i][k] = BigFloat(pts[i][k].get<double>(), precision_bits);
        emit(encode(four_zero_system(P)), format);
      }
      return kExitOk;
    }

    if (ong_cmd->parsed()) {
      auto j = parse_json(input.read_raw());
      auto qs = j.at("quadratics");
      if (!qs.is_array() || qs.size() != 3)
        throw std::invalid_argument("on-g expects {\"quadratics\": [form, form, form]}");
      Json out;
      if (!is_float_form(qs[0])) {
        Triple<Rational> t{decode_binary_exact(qs[0]), decode_binary_exact(qs[1]),
                           decode_binary_exact(qs[2])};
        auto cls = on_boundary_hypersurface(t);
        out["class"] = cls == BoundaryClass::OnG ? "OnG"
                       : cls == BoundaryClass::OffG ? "OffG"
                                                    : "DependentTriple";
        out["jacobian_image_dim"] = jacobian_image_dim(t);
      } else {
        Triple<double> t{decode_binary_float(qs[0]), decode_binary_float(qs[1]),
                         decode_binary_float(qs[2])};
        auto cls = on_boundary_hypersurface(t, tol);
        out["class"] = cls == BoundaryClass::OnG ? "OnG"
                       : cls == BoundaryClass::OffG ? "OffG"
                                                    : "DependentTriple";
        auto sv = differential_singular_values(t);
        out["singular_values"] = sv;
      }
      emit(out, format);
      return kExitOk;
    }

    if (ladder_cmd->parsed()) {
      std::optional<std::vector<long>> r;
      if (!ladder_r.empty()) r = ladder_r;
      emit(encode(ladder_build(ladder_s, ladder_n, r)), format);
      return kExitOk;
    }

    if (bounds_cmd->parsed()) {
      emit(encode(pythagoras_bounds(b_n, b_s, b_d)), format);
      return kExitOk;
    }

    if (adm_cmd->parsed()) {
      std::string raw = input.read_raw();
      BinaryPoly<Rational> p = input.is_expr() ? parse_binary_poly(raw)
                                               : decode_binary_poly(parse_json(raw));
      Admissibility a;
      if (!adm_matrix.empty()) {
        std::array<std::array<Rational, 2>, 2> M = {
            {{nearest_rational(adm_matrix[0], 1000000), nearest_rational(adm_matrix[1], 1000000)},
             {nearest_rational(adm_matrix[2], 1000000), nearest_rational(adm_matrix[3], 1000000)}}};
        a = is_admissible_via(p, M);
      } else {
        a = is_strictly_admissible(p);
      }
      emit(encode(a), format);
      return kExitOk;
    }
  } catch (const nlohmann::json::exception& e) {
    return fail_json(std::string("malformed JSON input: ") + e.what());
  } catch (const std::exception& e) {
    return fail_json(e.what());
  }
  return fail_json("no subcommand handled");
}
