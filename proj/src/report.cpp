#include "bgw/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace bgw {

Json json_float(double x) {
  if (!std::isfinite(x)) return Json(nullptr);
  if (x == 0.0) return Json(0.0);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return Json(std::strtod(buf, nullptr));
}

Json json_complex(const Complex& z) { return Json{{"re", json_float(z.real())}, {"im", json_float(z.imag())}}; }

Json to_json(const Rational& r) { return Json(r.str()); }

Json to_json(const ConstraintReport& r) {
  Json j;
  j["check"] = r.check;
  j["operator"] = r.op;
  j["group"] = r.group;
  j["checked_monomials"] = r.checked;
  j["watermark"] = r.watermark;
  if (const auto* q = std::get_if<Rational>(&r.max_residual))
    j["max_residual"] = to_json(*q);
  else
    j["max_residual"] = json_float(std::get<double>(r.max_residual));
  j["violation_count"] = r.violation_count;
  j["passed"] = r.passed();
  Json vs = Json::array();
  for (const auto& v : r.violations)
    vs.push_back({{"location", v.location}, {"lambda", v.lambda}, {"lhs", v.lhs}, {"rhs", v.rhs}});
  j["violations"] = vs;
  return j;
}

Json to_json(const std::vector<ConstraintReport>& rs) {
  Json a = Json::array();
  for (const auto& r : rs) a.push_back(to_json(r));
  return a;
}

namespace {

Json monomial_json(const Monomial& m) {
  Json a = Json::array();
  for (const auto& [v, e] : m.factors()) a.push_back({v.level, v.slot, e});
  return a;
}

template <class S, class F>
Json series_json(const BasicSeries<S>& s, F coeff) {
  Json terms = Json::array();
  for (const auto& [m, l] : s.terms())
    for (const auto& [e, c] : l.entries()) terms.push_back({{"monomial", monomial_json(m)}, {"lambda", e}, {"coeff", coeff(c)}});
  Json j;
  j["system"] = variable_system_name(s.system());
  j["max_degree"] = s.caps().max_degree;
  j["max_level"] = s.caps().max_level;
  j["max_genus"] = s.caps().max_genus;
  j["watermark"] = s.valid_degree();
  j["terms"] = terms;
  return j;
}

}  // namespace

Json to_json(const ExactSeries& s) {
  return series_json(s, [](const Rational& c) { return to_json(c); });
}

Json to_json(const NumericSeries& s) {
  return series_json(s, [](const Complex& c) { return json_complex(c); });
}

Json to_json(const CharacterTable& ct, const CanonicalBasis& cb) {
  Json j;
  j["r"] = ct.r;
  j["degrees"] = ct.degrees;
  Json values = Json::array();
  for (const auto& row : ct.values) {
    Json jr = Json::array();
    for (const auto& z : row) jr.push_back(json_complex(z));
    values.push_back(jr);
  }
  j["values"] = values;
  j["tolerance"] = json_float(ct.tolerance);
  j["orthogonality_residual"] = json_float(ct.orthogonality_residual);
  Json nus = Json::array();
  for (const auto& nu : cb.nus) nus.push_back(to_json(nu));
  j["nu"] = nus;
  Json fs = Json::array();
  for (const auto& f : cb.vectors) {
    Json jf = Json::array();
    for (const auto& z : f) jf.push_back(json_complex(z));
    fs.push_back(jf);
  }
  j["idempotents"] = fs;
  return j;
}

Json group_json(const ClassAlgebra& algebra) {
  const auto& g = algebra.group();
  const auto& cd = algebra.conjugacy();
  Json j;
  j["order"] = g.order();
  j["r"] = cd.num_classes();
  j["abelian"] = g.is_abelian();
  Json classes = Json::array();
  for (std::size_t k = 0; k < cd.num_classes(); ++k) {
    Json c;
    c["index"] = k;
    c["representative"] = g.name(cd.representative[k]);
    c["size"] = cd.class_size[k];
    c["centralizer_order"] = cd.class_centralizer(static_cast<ClassIndex>(k));
    c["inverse_class"] = cd.inverse_class[k];
    Json members = Json::array();
    for (Element x : cd.classes[k]) members.push_back(g.name(x));
    c["elements"] = members;
    classes.push_back(c);
  }
  j["classes"] = classes;
  j["class_sizes"] = cd.class_size;
  std::vector<std::size_t> cent;
  for (std::size_t k = 0; k < cd.num_classes(); ++k) cent.push_back(cd.class_centralizer(static_cast<ClassIndex>(k)));
  j["centralizer_orders"] = cent;
  return j;
}

std::string summary_line(const ConstraintReport& r) {
  std::ostringstream os;
  os << (r.passed() ? "PASS " : "FAIL ") << r.check << " [" << r.op << "]";
  if (!r.group.empty()) os << " group=" << r.group;
  os << " checked=" << r.checked;
  if (r.watermark >= 0) os << " watermark=" << r.watermark;
  if (const auto* q = std::get_if<Rational>(&r.max_residual))
    os << " max_residual=" << q->str();
  else
    os << " max_residual=" << json_float(std::get<double>(r.max_residual)).dump();
  if (!r.passed()) {
    os << " violations=" << r.violation_count;
    if (!r.violations.empty())
      os << " first=" << r.violations.front().location << "@lambda^" << r.violations.front().lambda;
  }
  return os.str();
}

}  // namespace bgw
