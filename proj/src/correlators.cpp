#include "bgw/correlators.hpp"

#include <algorithm>
#include <numeric>

#include "bgw/error.hpp"
#include "bgw/psi.hpp"

namespace bgw {

std::vector<int> CorrelatorKey::levels() const {
  std::vector<int> out;
  for (const auto& ins : insertions) out.push_back(ins.level);
  return out;
}

OmegaKey CorrelatorKey::omega_key() const {
  OmegaKey k{genus, {}};
  for (const auto& ins : insertions) k.classes.push_back(ins.cls);
  return k;
}

CorrelatorValue orbifold_correlator_detail(const OmegaEngine& engine, const CorrelatorKey& key) {
  if (key.genus < 0) throw Error(ErrorKind::InvalidInput, "negative genus");
  for (const auto& ins : key.insertions) {
    if (ins.level < 0) throw Error(ErrorKind::InvalidInput, "negative descendant level");
    if (ins.cls >= engine.algebra().rank()) throw Error(ErrorKind::InvalidInput, "class index out of range");
  }
  CorrelatorValue out;
  if (key.insertions.empty()) {
    out.vanishing_reason = "no-insertions";
    return out;
  }
  if (!key.stable())
    throw Error(ErrorKind::UnstableKey, "(g, n) = (" + std::to_string(key.genus) + ", " +
                                            std::to_string(key.insertions.size()) + ") is unstable");
  const auto levels = key.levels();
  const int n = static_cast<int>(levels.size());
  if (std::accumulate(levels.begin(), levels.end(), 0) != 3 * key.genus - 3 + n) {
    out.vanishing_reason = "dimension";
    return out;
  }
  out.psi = psi_intersection(key.genus, levels);
  out.omega = engine.recursive(key.omega_key());
  out.value = out.psi * out.omega;
  if (out.value.is_zero()) out.vanishing_reason = out.omega.is_zero() ? "omega" : "dimension";
  return out;
}

Rational orbifold_correlator(const OmegaEngine& engine, const CorrelatorKey& key) {
  return orbifold_correlator_detail(engine, key).value;
}

namespace {

Rational canonical_value(int genus, const Rational& nu, const std::vector<int>& levels) {
  if (!is_stable(genus, levels.size()))
    throw Error(ErrorKind::UnstableKey, "(g, n) = (" + std::to_string(genus) + ", " +
                                            std::to_string(levels.size()) + ") is unstable");
  return nu.pow(1 - genus) * psi_intersection(genus, levels);
}

// 1 / prod (multiplicity of each variable)!
Rational symmetry_factor(const std::vector<SeriesVar>& vars) {
  Rational f(1);
  std::size_t run = 1;
  for (std::size_t i = 1; i <= vars.size(); ++i) {
    if (i < vars.size() && vars[i] == vars[i - 1]) {
      ++run;
    } else {
      f /= factorial(static_cast<int>(run));
      run = 1;
    }
  }
  return f;
}

Monomial monomial_of(const std::vector<SeriesVar>& vars) {
  Monomial m;
  for (const auto& v : vars) m = m.times(v);
  return m;
}

void extend(std::vector<SeriesVar>& vars, std::size_t n, int budget, int level_cap, std::size_t rank,
            const std::function<void(const std::vector<SeriesVar>&)>& emit) {
  const std::size_t left = n - vars.size();
  if (left == 0) {
    if (budget == 0) emit(vars);
    return;
  }
  SeriesVar start = vars.empty() ? SeriesVar{0, 0} : vars.back();
  for (int level = start.level; level < level_cap; ++level) {
    // Every remaining variable has level >= this one.
    if (static_cast<long>(level) * static_cast<long>(left) > budget) break;
    if (static_cast<long>(level_cap - 1) * static_cast<long>(left) < budget) continue;
    int first_slot = level == start.level ? start.slot : 0;
    for (std::size_t slot = static_cast<std::size_t>(first_slot); slot < rank; ++slot) {
      vars.push_back({level, static_cast<int>(slot)});
      extend(vars, n, budget - level, level_cap, rank, emit);
      vars.pop_back();
    }
  }
}

}  // namespace

void for_each_dimension_key(int max_genus, int max_degree, int level_cap, std::size_t rank,
                            const std::function<void(int, const std::vector<SeriesVar>&)>& visit) {
  for (int g = 0; g <= max_genus; ++g) {
    for (int n = 1; n <= max_degree; ++n) {
      if (!is_stable(g, static_cast<std::size_t>(n))) continue;
      std::vector<SeriesVar> vars;
      extend(vars, static_cast<std::size_t>(n), 3 * g - 3 + n, level_cap, rank,
             [&](const std::vector<SeriesVar>& v) { visit(g, v); });
    }
  }
}

Rational canonical_correlator(int genus, const CanonicalBasis& cb, const std::vector<std::size_t>& alphas,
                              const std::vector<int>& levels) {
  if (alphas.size() != levels.size()) throw Error(ErrorKind::DimensionMismatch, "one index per insertion");
  for (std::size_t a : alphas)
    if (a >= cb.rank()) throw Error(ErrorKind::InvalidInput, "canonical index out of range");
  if (!is_stable(genus, levels.size()))
    throw Error(ErrorKind::UnstableKey, "(g, n) = (" + std::to_string(genus) + ", " +
                                            std::to_string(levels.size()) + ") is unstable");
  if (std::adjacent_find(alphas.begin(), alphas.end(), std::not_equal_to<>()) != alphas.end()) return Rational(0);
  return canonical_value(genus, cb.nus[alphas.front()], levels);
}

ExactSeries class_potential(const OmegaEngine& engine, const SeriesCaps& caps) {
  ExactSeries phi(caps, VariableSystem::ClassBasis);
  const std::size_t r = engine.algebra().rank();
  for_each_dimension_key(caps.max_genus, caps.max_degree, caps.max_level + 1, r,
                         [&](int g, const std::vector<SeriesVar>& vars) {
                           OmegaKey key{g, {}};
                           std::vector<int> levels;
                           for (const auto& v : vars) {
                             key.classes.push_back(static_cast<ClassIndex>(v.slot));
                             levels.push_back(v.level);
                           }
                           Rational omega = engine.recursive(key);
                           if (omega.is_zero()) return;
                           phi.add_term(monomial_of(vars), 2 * g - 2,
                                        psi_intersection(g, levels) * omega * symmetry_factor(vars));
                         });
  return phi;
}

ExactSeries canonical_rescaled_potential(const std::vector<Rational>& nus, const SeriesCaps& caps) {
  ExactSeries phi(caps, VariableSystem::CanonicalRescaled);
  const std::size_t r = nus.size();
  for_each_dimension_key(caps.max_genus, caps.max_degree, caps.max_level + 1, 1,
                         [&](int g, const std::vector<SeriesVar>& vars) {
                           std::vector<int> levels;
                           int shift = 0;
                           for (const auto& v : vars) {
                             levels.push_back(v.level);
                             shift += v.level - 1;
                           }
                           // u_a = nu^{(a-1)/3} u~_a; the exponents add up to g - 1.
                           const int rescale = shift / 3;
                           for (std::size_t alpha = 0; alpha < r; ++alpha) {
                             std::vector<SeriesVar> mine = vars;
                             for (auto& v : mine) v.slot = static_cast<int>(alpha);
                             Rational c = canonical_value(g, nus[alpha], levels) * nus[alpha].pow(rescale);
                             phi.add_term(monomial_of(mine), 2 * g - 2, c * symmetry_factor(mine));
                           }
                         });
  return phi;
}

ExactSeries potential(const OmegaEngine& engine, const SeriesCaps& caps, PotentialBasis basis,
                      const std::vector<Rational>& nus) {
  if (basis == PotentialBasis::Class) return class_potential(engine, caps);
  if (nus.size() != engine.algebra().rank())
    throw Error(ErrorKind::DimensionMismatch, "need one nu per canonical index");
  return canonical_rescaled_potential(nus, caps);
}

ExactSeries partition_function(const ExactSeries& phi) { return exponential(phi); }

namespace {

void for_each_sorted_tuple(std::size_t rank, std::size_t len,
                           const std::function<void(const std::vector<ClassIndex>&)>& visit) {
  std::vector<ClassIndex> t;
  std::function<void(ClassIndex)> rec = [&](ClassIndex from) {
    if (t.size() == len) {
      visit(t);
      return;
    }
    for (ClassIndex c = from; c < rank; ++c) {
      t.push_back(c);
      rec(c);
      t.pop_back();
    }
  };
  rec(0);
}

}  // namespace

TensorReport tensor_omega_check(const ClassAlgebra& g, const ClassAlgebra& h, int max_genus, int max_n,
                                const OmegaOptions& options) {
  ClassAlgebra prod(direct_product(g.group(), h.group()));
  OmegaEngine eg(g), eh(h), ep(prod);
  const auto& cdp = prod.conjugacy();
  const std::size_t nh = h.order();
  TensorReport report;
  for (int genus = 0; genus <= max_genus; ++genus) {
    for (int n = 0; n <= max_n; ++n) {
      for_each_sorted_tuple(prod.rank(), static_cast<std::size_t>(n), [&](const std::vector<ClassIndex>& cls) {
        OmegaKey kp{genus, cls}, kg{genus, {}}, kh{genus, {}};
        for (ClassIndex c : cls) {
          const Element rep = cdp.representative[c];
          kg.classes.push_back(g.conjugacy().class_of[rep / nh]);
          kh.classes.push_back(h.conjugacy().class_of[rep % nh]);
        }
        Rational lhs = ep.bruteforce(kp, options);
        Rational rhs = eg.recursive(kg) * eh.recursive(kh);
        ++report.checked;
        if (lhs != rhs) report.mismatches.push_back({genus, cls, lhs, rhs});
      });
    }
  }
  return report;
}

}  // namespace bgw
