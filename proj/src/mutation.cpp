#include "bgw/mutation.hpp"

#include <algorithm>
#include <memory>

#include "bgw/error.hpp"
#include "bgw/kdv.hpp"
#include "bgw/virasoro.hpp"

namespace bgw {

ExactSeries mutate(const ExactSeries& phi, const Monomial& m, int lambda) {
  const Rational c = phi.coefficient(m, lambda);
  if (c.is_zero()) throw Error(ErrorKind::InvalidInput, "no coefficient at " + m.str());
  ExactSeries out = phi;
  out.add_term(m, lambda, c);
  return out;
}

std::vector<std::pair<Monomial, int>> mutation_candidates(const ExactSeries& phi, int max_genus, int max_degree) {
  std::vector<std::pair<Monomial, int>> out;
  for (const auto& [m, l] : phi.terms())
    for (const auto& [e, c] : l.entries())
      if (e <= 2 * max_genus - 2 && m.degree() <= max_degree) out.emplace_back(m, e);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    return a < b;
  });
  return out;
}

namespace {

bool certified_nonzero(const ExactSeries& s, int n, const SeriesCaps& caps) {
  for (const auto& [m, l] : s.terms())
    for (const auto& [e, c] : l.entries())
      if (virasoro_certified(n, m.degree(), e, caps)) return true;
  return false;
}

}  // namespace

std::vector<MutationOutcome> mutation_sweep(const MutationInputs& in,
                                            const std::vector<std::pair<Monomial, int>>& candidates) {
  const auto ctx = VirasoroContext::from_algebra(*in.algebra);
  const SeriesCaps& caps = in.z->caps();
  std::vector<DifferentialOperator> ops;
  for (int n : in.ns) ops.push_back(virasoro_operator({VirasoroSpec::Flavor::Diagonal, n, 0}, ctx, caps.max_level));
  std::unique_ptr<KdvSystem> kdv;
  if (in.kdv_phi) kdv = std::make_unique<KdvSystem>(*in.algebra, *in.kdv_phi, in.kdv_a_max, in.kdv_degree);
  std::vector<MutationOutcome> out;
  for (const auto& [m, e] : candidates) {
    MutationOutcome o{m, e, {}};
    ExactSeries delta(caps, VariableSystem::ClassBasis);
    delta.add_term(m, e, in.phi->coefficient(m, e));
    ExactSeries factor = exponential(delta);
    factor.add_term(Monomial(), 0, Rational(-1));
    const ExactSeries w = multiply(factor, *in.z);
    for (std::size_t i = 0; i < ops.size() && !o.detected(); ++i)
      if (certified_nonzero(apply_operator(ops[i], w), in.ns[i], caps))
        o.detector = "virasoro L_" + std::to_string(in.ns[i]);
    if (!o.detected() && kdv && m.degree() <= in.kdv_phi->caps().max_degree &&
        e <= 2 * in.kdv_phi->caps().max_genus - 2) {
      ExactSeries kd(in.kdv_phi->caps(), VariableSystem::ClassBasis);
      kd.add_term(m, e, in.kdv_phi->coefficient(m, e));
      for (const auto& rep : kdv->perturbation(kd, ""))
        if (!rep.passed()) {
          o.detector = "kdv " + rep.op;
          break;
        }
    }
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace bgw
