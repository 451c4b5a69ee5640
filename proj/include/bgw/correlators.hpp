#pragma once

#include <string>
#include <vector>

#include "bgw/characters.hpp"
#include "bgw/omega.hpp"
#include "bgw/series.hpp"

namespace bgw {

struct Insertion {
  int level = 0;
  ClassIndex cls = 0;
  auto operator<=>(const Insertion&) const = default;
};

struct CorrelatorKey {
  int genus = 0;
  std::vector<Insertion> insertions;

  bool stable() const { return 2 * genus - 2 + static_cast<int>(insertions.size()) > 0; }
  std::vector<int> levels() const;
  OmegaKey omega_key() const;
};

struct CorrelatorValue {
  Rational value;
  Rational psi;
  Rational omega;
  /// Empty when the value is nonzero; otherwise "no-insertions", "dimension"
  /// or "omega".
  std::string vanishing_reason;
};

/// <tau_{a_1}(e_{m_1}) ... tau_{a_n}(e_{m_n})>_g = <tau_{a_1} ... tau_{a_n}>_g Omega_g(m).
CorrelatorValue orbifold_correlator_detail(const OmegaEngine& engine, const CorrelatorKey& key);
Rational orbifold_correlator(const OmegaEngine& engine, const CorrelatorKey& key);

/// nu_alpha^{1-g} <tau_{a_1} ... tau_{a_n}>_g when every insertion carries the
/// same index alpha, zero otherwise.
Rational canonical_correlator(int genus, const CanonicalBasis& cb, const std::vector<std::size_t>& alphas,
                              const std::vector<int>& levels);

enum class PotentialBasis { Class, CanonicalRescaled };

/// Phi^G = sum_g lambda^{2g-2} Phi_g. The coefficient of prod t_{a_i}^{m_i} is
/// the correlator divided by the product of factorials of repeated variables.
///
/// In the class basis, slot m is the class m (identity in slot 0). In the
/// canonical-rescaled basis, slot alpha carries the variables u~^alpha; the
/// coefficients are canonical correlators times the u -> u~ rescaling.
ExactSeries potential(const OmegaEngine& engine, const SeriesCaps& caps, PotentialBasis basis,
                      const std::vector<Rational>& nus = {});
ExactSeries class_potential(const OmegaEngine& engine, const SeriesCaps& caps);
ExactSeries canonical_rescaled_potential(const std::vector<Rational>& nus, const SeriesCaps& caps);

/// Z^G = exp(Phi^G).
ExactSeries partition_function(const ExactSeries& phi);

/// Calls visit(genus, vars) for every multiset of variables of size n (sorted,
/// with levels < levels_cap and slots < rank) whose level sum is 3g - 3 + n,
/// for every stable (g, n) with g <= max_genus and 1 <= n <= max_degree.
void for_each_dimension_key(int max_genus, int max_degree, int level_cap, std::size_t rank,
                            const std::function<void(int, const std::vector<SeriesVar>&)>& visit);

struct TensorMismatch {
  int genus = 0;
  std::vector<ClassIndex> product_classes;
  Rational product_value;
  Rational factor_value;
};

struct TensorReport {
  std::size_t checked = 0;
  std::vector<TensorMismatch> mismatches;
  bool passed() const { return mismatches.empty(); }
};

/// Omega^{GxH}_g((a_1,b_1), ...) = Omega^G_g(a) Omega^H_g(b), with the
/// product side brute-forced and the factor side computed recursively, for
/// every class tuple of length <= max_n (sorted) and genus <= max_genus.
TensorReport tensor_omega_check(const ClassAlgebra& g, const ClassAlgebra& h, int max_genus, int max_n,
                                const OmegaOptions& options = {});

}  // namespace bgw
