#include "powercone/json_io.hpp"

#include <cmath>

namespace powercone {

std::string rational_str(const Rational& q) { return q.get_str(); }

namespace {

Json term_exact(std::vector<long> exp, const Rational& c) {
  Json t;
  t["exp"] = exp;
  t["num"] = c.get_num().get_str();
  t["den"] = c.get_den().get_str();
  return t;
}

Json term_float(std::vector<long> exp, double c) {
  Json t;
  t["exp"] = exp;
  t["coef"] = c;
  return t;
}

Rational term_coeff_exact(const Json& t) {
  if (!t.contains("num") || !t.contains("den"))
    throw std::invalid_argument("exact form term without num/den");
  return make_rational(t.at("num").get<std::string>(), t.at("den").get<std::string>());
}

}  // namespace

Json encode(const BinaryForm<Rational>& f) {
  Json j;
  j["arity"] = 2;
  j["degree"] = f.degree;
  j["terms"] = Json::array();
  for (int i = 0; i <= f.degree; ++i)
    if (f[i] != 0) j["terms"].push_back(term_exact({i, f.degree - i}, f[i]));
  return j;
}

Json encode(const BinaryForm<double>& f) {
  Json j;
  j["arity"] = 2;
  j["degree"] = f.degree;
  j["terms"] = Json::array();
  for (int i = 0; i <= f.degree; ++i)
    if (f[i] != 0) j["terms"].push_back(term_float({i, f.degree - i}, f[i]));
  return j;
}

Json encode(const TernaryForm<Rational>& f) {
  Json j;
  j["arity"] = 3;
  j["degree"] = f.degree;
  j["terms"] = Json::array();
  for (const auto& [e, c] : f.terms) j["terms"].push_back(term_exact({e[0], e[1], e[2]}, c));
  return j;
}

Json encode(const TernaryForm<double>& f) {
  Json j;
  j["arity"] = 3;
  j["degree"] = f.degree;
  j["terms"] = Json::array();
  for (const auto& [e, c] : f.terms) j["terms"].push_back(term_float({e[0], e[1], e[2]}, c));
  return j;
}

Json encode(const BinaryPoly<Rational>& p) {
  Json j;
  j["arity"] = 2;
  j["degree"] = p.total_degree();
  j["terms"] = Json::array();
  for (const auto& [e, c] : p.terms) j["terms"].push_back(term_exact({e.first, e.second}, c));
  return j;
}

bool is_float_form(const Json& j) {
  if (!j.contains("terms") || j.at("terms").empty()) return false;
  return j.at("terms").front().contains("coef");
}

BinaryForm<Rational> decode_binary_exact(const Json& j) {
  if (j.value("arity", 0) != 2) throw std::invalid_argument("expected a binary form (arity 2)");
  int d = j.at("degree").get<int>();
  if (d < 0) throw std::invalid_argument("negative degree");
  BinaryForm<Rational> f(d);
  for (const auto& t : j.at("terms")) {
    auto exp = t.at("exp").get<std::vector<long>>();
    if (exp.size() != 2 || exp[0] < 0 || exp[1] < 0 || exp[0] + exp[1] != d)
      throw std::invalid_argument("binary form exponent does not match the declared degree");
    f[static_cast<int>(exp[0])] += term_coeff_exact(t);
  }
  return f;
}

BinaryForm<double> decode_binary_float(const Json& j) {
  if (j.value("arity", 0) != 2) throw std::invalid_argument("expected a binary form (arity 2)");
  int d = j.at("degree").get<int>();
  if (d < 0) throw std::invalid_argument("negative degree");
  BinaryForm<double> f(d);
  for (const auto& t : j.at("terms")) {
    auto exp = t.at("exp").get<std::vector<long>>();
    if (exp.size() != 2 || exp[0] + exp[1] != d)
      throw std::invalid_argument("binary form exponent does not match the declared degree");
    if (t.contains("coef"))
      f[static_cast<int>(exp[0])] += t.at("coef").get<double>();
    else
      f[static_cast<int>(exp[0])] += term_coeff_exact(t).get_d();
  }
  return f;
}

TernaryForm<Rational> decode_ternary_exact(const Json& j) {
  if (j.value("arity", 0) != 3) throw std::invalid_argument("expected a ternary form (arity 3)");
  int d = j.at("degree").get<int>();
  TernaryForm<Rational> f(d);
  for (const auto& t : j.at("terms")) {
    auto exp = t.at("exp").get<std::vector<long>>();
    if (exp.size() != 3) throw std::invalid_argument("ternary exponent must have three entries");
    f.add_term({static_cast<int>(exp[0]), static_cast<int>(exp[1]), static_cast<int>(exp[2])},
               term_coeff_exact(t));
  }
  return f;
}

BinaryPoly<Rational> decode_binary_poly(const Json& j) {
  if (j.value("arity", 0) != 2) throw std::invalid_argument("expected arity 2");
  BinaryPoly<Rational> p;
  for (const auto& t : j.at("terms")) {
    auto exp = t.at("exp").get<std::vector<long>>();
    if (exp.size() != 2 || exp[0] < 0 || exp[1] < 0)
      throw std::invalid_argument("invalid exponent pair");
    p.add_term(exp[0], exp[1], term_coeff_exact(t));
  }
  return p;
}

// ---------------------------------------------------------------------------

namespace {

const char* membership_str(Membership m) {
  switch (m) {
    case Membership::Member:
      return "member";
    case Membership::NonMember:
      return "non_member";
    default:
      return "boundary";
  }
}

const char* status_str(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal:
      return "optimal";
    case SdpStatus::Infeasible:
      return "infeasible";
    case SdpStatus::Unbounded:
      return "unbounded";
    default:
      return "max_iter";
  }
}

Json encode_gram(const SymMat& X) {
  Json rows = Json::array();
  for (int i = 0; i < X.n; ++i) {
    Json row = Json::array();
    for (int j = 0; j < X.n; ++j) row.push_back(X.at(i, j));
    rows.push_back(row);
  }
  return rows;
}

Json encode_zero(const ProjectivePointR2& z) {
  Json j;
  j["point"] = {z.xi[0], z.xi[1], z.xi[2]};
  j["discriminant"] = z.discriminant;
  return j;
}

Json encode_dual(const DualElement& d) {
  Json j;
  j["functional"] = encode(d.functional);
  j["quartic"] = encode(d.quartic);
  if (d.functional_exact) j["functional_exact"] = encode(*d.functional_exact);
  j["exact_psd"] = d.exact_psd;
  j["float_only_warning"] = d.float_only_warning;
  return j;
}

}  // namespace

Json encode(const MembershipResult& m) {
  Json j;
  j["value"] = m.value;
  j["status"] = status_str(m.solver_status);
  j["member"] = (m.decision == Membership::Member)
                    ? Json(true)
                    : (m.decision == Membership::NonMember ? Json(false) : Json("boundary"));
  j["objective_norm"] = m.objective_norm;
  j["certificate"] = encode_dual(m.certificate);
  j["certificate_min_eig"] = m.certificate_min_eig;
  j["gram"] = encode_gram(m.gram);
  if (m.exact_value) j["exact_value"] = rational_str(*m.exact_value);
  return j;
}

Json encode(const MembershipQuarticResult& m) {
  Json j;
  j["value"] = m.value;
  j["status"] = status_str(m.solver_status);
  j["member"] = (m.decision == Membership::Member)
                    ? Json(true)
                    : (m.decision == Membership::NonMember ? Json(false) : Json("boundary"));
  j["certificate"] = encode(m.certificate_quartic);
  j["gram"] = encode_gram(m.gram);
  return j;
}

Json encode(const Decomposition& d) {
  Json j;
  j["summands"] = Json::array();
  for (const auto& q : d.summands) j["summands"].push_back(encode(q));
  j["residual_norm"] = d.residual_norm;
  j["canonical"] = d.canonical;
  return j;
}

Json encode(const FaceReport& r) {
  Json j;
  switch (r.face_type) {
    case FaceType::F1:
      j["face_type"] = "F1";
      break;
    case FaceType::F2:
      j["face_type"] = "F2";
      break;
    case FaceType::F3:
      j["face_type"] = "F3";
      break;
    case FaceType::L4Sigma24:
      j["face_type"] = "L4Sigma24";
      break;
    case FaceType::NonExposedRayL8:
      j["face_type"] = "NonExposedRayL8";
      break;
    case FaceType::NonExposedEdge:
      j["face_type"] = "NonExposedEdge";
      break;
    default:
      j["face_type"] = "Inconclusive";
  }
  j["exposed"] = (r.exposed == Exposedness::Exposed)
                     ? Json(true)
                     : (r.exposed == Exposedness::NotExposed ? Json(false) : Json("unknown"));
  j["generators"] = Json::array();
  for (const auto& g : r.generators) j["generators"].push_back(encode(g));
  j["cone_coefficients"] = r.cone_coefficients;
  j["zeros"] = Json::array();
  for (const auto& z : r.zeros) j["zeros"].push_back(encode_zero(z));
  if (r.certificate) j["certificate"] = encode_dual(*r.certificate);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json encode(const RefutationReport& r) {
  Json j;
  j["verdict"] = (r.verdict == RefutationVerdict::NotDoublyPositive) ? "NotDoublyPositive" : "Inconclusive";
  j["input"] = encode(r.input);
  j["checks"] = {{"boundary", r.boundary_ok},
                 {"no_fourth_power_factor", r.no_fourth_power_factor_ok},
                 {"finite_zero_certificate", r.finite_zero_certificate_ok},
                 {"length3", r.length3_ok},
                 {"identity", r.identity_check}};
  j["zero_quadrics_rank"] = r.zero_quadrics_rank;
  j["zeros"] = Json::array();
  for (const auto& z : r.zeros) j["zeros"].push_back(encode_zero(z));
  if (r.certificate) j["certificate"] = encode_dual(*r.certificate);
  if (r.length3_witness) j["length3_witness"] = encode(*r.length3_witness);
  if (!r.failed.empty()) j["failed"] = r.failed;
  return j;
}

Json encode(const ApolarIdeal& ideal) {
  Json j;
  j["gen_low"] = encode(ideal.gen_low);
  j["gen_high"] = encode(ideal.gen_high);
  j["degrees"] = {ideal.gen_low.degree, ideal.gen_high.degree};
  return j;
}

Json encode(const FourZeroSystem<Rational>& s) {
  Json j;
  j["det15"] = rational_str(s.det15);
  j["lines"] = {encode(s.l12), encode(s.l13), encode(s.l23)};
  j["quadrics"] = {encode(s.q1), encode(s.q2), encode(s.q3)};
  Json g = Json::array();
  for (int i = 0; i < 3; ++i) {
    Json row = Json::array();
    for (int k = 0; k < 3; ++k) row.push_back(rational_str(s.gram_family[i][k]));
    g.push_back(row);
  }
  j["gram_family"] = g;
  j["charpoly_t2"] = rational_str(s.charpoly_t2);
  j["charpoly_t1"] = rational_str(s.charpoly_t1);
  return j;
}

Json encode(const FourZeroSystem<BigFloat>& s) {
  Json j;
  j["det15"] = s.det15.to_double();
  j["det15_relative"] = (abs(s.det15) / s.hadamard).to_double();
  j["lines"] = {encode(to_float(s.l12)), encode(to_float(s.l13)), encode(to_float(s.l23))};
  j["quadrics"] = {encode(to_float(s.q1)), encode(to_float(s.q2)), encode(to_float(s.q3))};
  Json g = Json::array();
  for (int i = 0; i < 3; ++i) {
    Json row = Json::array();
    for (int k = 0; k < 3; ++k) row.push_back(s.gram_family[i][k].to_double());
    g.push_back(row);
  }
  j["gram_family"] = g;
  j["charpoly_t2"] = s.charpoly_t2.to_double();
  j["charpoly_t1"] = s.charpoly_t1.to_double();
  return j;
}

Json encode(const Ladder& l) {
  Json j;
  j["s"] = l.s;
  j["r_seq"] = l.r_seq;
  j["levels"] = Json::array();
  for (const auto& level : l.levels) j["levels"].push_back(encode(level));
  return j;
}

namespace {

Json integer_json(const Integer& v) {
  // numbers when they fit losslessly in 64 bits, strings otherwise
  if (v.fits_slong_p()) return Json(v.get_si());
  return Json(v.get_str());
}

}  // namespace

Json encode(const PythagorasBounds& b) {
  Json j;
  j["lower"] = integer_json(b.lower);
  j["upper"] = integer_json(b.upper);
  j["asymptotic"] = integer_json(b.asymptotic);
  return j;
}

Json encode(const Admissibility& a) {
  Json j;
  j["strict"] = a.strict;
  if (!a.reason.empty()) j["reason"] = a.reason;
  return j;
}

}  // namespace powercone
