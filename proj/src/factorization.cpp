#include "bgw/factorization.hpp"

#include <utility>

#include "bgw/correlators.hpp"
#include "bgw/error.hpp"
#include "bgw/virasoro.hpp"

namespace bgw {

ConstraintReport factorization_check(const OmegaEngine& engine, const CanonicalBasis& cb, const SeriesCaps& caps,
                                     double tol, const std::string& label, bool throw_on_failure) {
  const NumericSeries lhs = class_to_rescaled(to_numeric(class_potential(engine, caps)), cb);
  const NumericSeries rhs = to_numeric(canonical_rescaled_potential(cb.nus, caps));
  ConstraintReport rep;
  rep.check = "factorization";
  rep.op = "Phi^G(u) = sum_alpha Phi(u~^alpha)";
  rep.group = label;
  rep.watermark = caps.max_degree;
  rep.max_residual = 0.0;
  KeySet keys;
  for (const auto* s : {&lhs, &rhs})
    for (const auto& [m, l] : s->terms())
      for (const auto& [e, c] : l.entries()) keys.insert({m, e});
  double worst = -1.0;
  CoefficientKey worst_key;
  for (const auto& [m, e] : keys) {
    ++rep.checked;
    const Complex a = lhs.coefficient(m, e), b = rhs.coefficient(m, e);
    const double diff = std::abs(a - b);
    rep.note_residual(diff);
    if (diff > worst) {
      worst = diff;
      worst_key = {m, e};
    }
    if (diff > tol) rep.add_violation({m.str(), e, json_complex(a).dump(), json_complex(b).dump()});
  }
  if (throw_on_failure && !rep.passed())
    throw Error(ErrorKind::ToleranceExceeded, "worst monomial " + worst_key.first.str() + " at lambda^" +
                                                  std::to_string(worst_key.second) + " differs by " +
                                                  json_float(worst).dump());
  return rep;
}

}  // namespace bgw
