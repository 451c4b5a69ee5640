#pragma once

#include <vector>

#include "bgw/rational.hpp"

namespace bgw {

/// k!! over odd k >= -1, with (-1)!! = 1.
Rational double_factorial(int k);

/// True when 2g - 2 + n > 0.
bool is_stable(int genus, std::size_t n);

/// <tau_{a_1} ... tau_{a_n}>_g on the moduli of stable curves. Zero unless
/// sum a_i = 3g - 3 + n. Computed from the string and dilaton equations and
/// the Virasoro (DVV) recursion, seeded only by <tau_0^3>_0 = 1 and the L_0
/// constant 1/16. Throws UnstableKey for unstable (g, n).
Rational psi_intersection(int genus, const std::vector<int>& levels);

}  // namespace bgw
