#pragma once

#include <string>

#include "bgw/characters.hpp"
#include "bgw/omega.hpp"
#include "bgw/report.hpp"
#include "bgw/series.hpp"

namespace bgw {

/// Moves the class-basis potential to u~ variables numerically and compares it
/// with sum_alpha Phi(u~^alpha) coefficientwise. The residual is the largest
/// absolute difference. With throw_on_failure, a residual above tol raises
/// ToleranceExceeded naming the worst monomial.
ConstraintReport factorization_check(const OmegaEngine& engine, const CanonicalBasis& cb, const SeriesCaps& caps,
                                     double tol, const std::string& label, bool throw_on_failure = false);

}  // namespace bgw
