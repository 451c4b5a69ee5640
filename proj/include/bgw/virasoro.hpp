#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bgw/characters.hpp"
#include "bgw/class_algebra.hpp"
#include "bgw/report.hpp"
#include "bgw/series.hpp"

namespace bgw {

/// One term of a differential operator of order <= 2 on truncated series.
struct OperatorTerm {
  enum class Kind {
    Derivative,  // c d/da
    Linear,      // c t_a d/db
    Second,      // c lambda^2 d^2/(da db), a <= b
    Multiply,    // c lambda^-2 t_a t_b, a <= b
    Constant,    // c
  };
  Kind kind = Kind::Constant;
  Rational coeff;
  SeriesVar a;
  SeriesVar b;
};

struct DifferentialOperator {
  VariableSystem system = VariableSystem::Generic;
  std::vector<OperatorTerm> terms;
  /// Largest number of derivatives in any term.
  int order() const;
};

struct VirasoroSpec {
  enum class Flavor { PerIndex, Diagonal };
  Flavor flavor = Flavor::Diagonal;
  int n = 0;
  /// Canonical index for PerIndex.
  std::size_t alpha = 0;

  std::string str() const;
};

/// Data the diagonal operators need: the metric and its inverse in the class
/// basis (identity class in slot 0).
struct VirasoroContext {
  std::size_t rank = 1;
  RationalMatrix eta;
  RationalMatrix eta_inv;

  static VirasoroContext from_algebra(const ClassAlgebra& algebra);
  /// Trivial metric of the given rank (enough for per-index operators).
  static VirasoroContext identity(std::size_t rank);
};

/// Per-index operators act on the u~^alpha variables (slot alpha) of a
/// CanonicalRescaled series; diagonal ones on the t^m of a ClassBasis series.
/// The i-sum is cut at level max_level. Throws LevelCapExceeded when
/// n + 1 > max_level.
DifferentialOperator virasoro_operator(const VirasoroSpec& spec, const VirasoroContext& ctx, int max_level);

using CoefficientKey = std::pair<Monomial, int>;
using KeySet = std::set<CoefficientKey>;

/// Applies op term by term. Output terms above the degree or level caps are
/// skipped; when touched is given, every output key that received a
/// contribution is recorded there (even if the contributions cancel). The
/// result's watermark drops by op.order().
template <class S>
BasicSeries<S> apply_operator(const DifferentialOperator& op, const BasicSeries<S>& z, KeySet* touched = nullptr);

template <class S>
BasicSeries<S> apply_virasoro(const VirasoroSpec& spec, const VirasoroContext& ctx, const BasicSeries<S>& z) {
  return apply_operator(virasoro_operator(spec, ctx, z.caps().max_level), z);
}

/// Whether the coefficient (degree d, lambda^e) of L_n Z is determined by the
/// exact part of Z = exp(Phi), where Phi carries every genus <= G and degree
/// <= D term.
bool virasoro_certified(int n, int degree, int lambda, const SeriesCaps& caps);

/// Highest output degree compared for L_n.
int virasoro_watermark(int n, const SeriesCaps& caps);

/// Compares every certified coefficient of op(z) with zero.
ConstraintReport annihilation_report(const DifferentialOperator& op, int n, const ExactSeries& z,
                                     const std::string& op_name, const std::string& label);

struct VirasoroOptions {
  std::vector<int> ns{-1, 0, 1, 2};
  bool diagonal = true;
  bool per_index = true;
};

/// L_n Z^G = 0 in class-basis variables and L_n^(alpha) Z^G = 0 in u~
/// variables, exactly, on every certified coefficient.
std::vector<ConstraintReport> virasoro_check(const ClassAlgebra& algebra, const ExactSeries& z_class,
                                             const ExactSeries& z_canonical, const CanonicalBasis& cb,
                                             const VirasoroOptions& opts, const std::string& label);

/// A random polynomial with levels <= max_level - 2 and degree <= max_degree - 4.
ExactSeries random_test_series(const SeriesCaps& caps, VariableSystem system, std::size_t rank, std::uint64_t seed,
                               std::size_t terms = 24);

/// [L_m, L_n] F = (m - n) L_{m+n} F on a random test series, exactly (zero
/// on the right for per-index operators with different indices).
ConstraintReport commutator_check(const VirasoroSpec& s1, const VirasoroSpec& s2, const VirasoroContext& ctx,
                                  const SeriesCaps& caps, std::uint64_t seed, const std::string& label);

/// L_m = sum_alpha nu_alpha^{-m/3} L_m^(alpha) after moving a random class-basis
/// series to u~ variables, within tol.
ConstraintReport operator_identity_check(const ClassAlgebra& algebra, const CanonicalBasis& cb, int m,
                                         const SeriesCaps& caps, std::uint64_t seed, double tol,
                                         const std::string& label);

/// Class-basis series to u~ variables: t^m = sum_alpha f_alpha[m] u^alpha, then
/// u_a^alpha = nu_alpha^{(a-1)/3} u~_a^alpha.
NumericSeries class_to_rescaled(const NumericSeries& s, const CanonicalBasis& cb);

}  // namespace bgw
