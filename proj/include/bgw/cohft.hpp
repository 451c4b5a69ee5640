#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bgw/omega.hpp"
#include "bgw/report.hpp"

namespace bgw {

/// Commutativity, associativity, unit and eta(a*b, c) = eta(a, b*c) on all
/// basis pairs and triples, exactly.
std::vector<ConstraintReport> frobenius_checks(const ClassAlgebra& algebra, const std::string& label);

/// eta(e_j, e_k) = <tau_0(e_j) tau_0(e_k) tau_0(e_0)>_0, the 3-point
/// correlators against a direct triple count, and
/// e_j * e_k = sum <tau_0(e_j) tau_0(e_k) tau_0(e_l)>_0 eta^{lm} e_m.
std::vector<ConstraintReport> correlator_frobenius_checks(const OmegaEngine& engine, const std::string& label);

struct CohftOptions {
  int max_genus = 2;
  int max_n = 4;
  int random_trials = 50;
  std::uint64_t seed = 1;
  OmegaOptions omega;
};

/// Omega_g(gamma) = sum_zeta Omega_{g1}(gamma_I, zeta) eta^{zeta xi} Omega_{g2}(xi, gamma_J)
/// for every g1 + g2 = g and every subset I. All Omega values are brute-forced.
ConstraintReport cutting_trees_check(const OmegaEngine& engine, const CohftOptions& opts, const std::string& label);
/// Omega_g(gamma) = sum eta^{zeta xi} Omega_{g-1}(zeta, xi, gamma), g >= 1.
ConstraintReport cutting_loops_check(const OmegaEngine& engine, const CohftOptions& opts, const std::string& label);
/// Omega_g(gamma) = Omega_g(1, gamma).
ConstraintReport forgetting_tails_check(const OmegaEngine& engine, const CohftOptions& opts, const std::string& label);
/// Omega does not depend on the order of its arguments (random keys).
ConstraintReport permutation_invariance_check(const OmegaEngine& engine, const CohftOptions& opts,
                                              const std::string& label);
/// Replacing arguments by conjugate elements changes nothing: class labels
/// resolved from conjugated representatives give the same Omega, and the
/// element-level count #{prod [alpha_i, beta_i] = prod sigma_j} is invariant
/// under simultaneous conjugation of the sigma_j.
ConstraintReport conjugation_invariance_check(const OmegaEngine& engine, const CohftOptions& opts,
                                              const std::string& label);
/// <tau_0(e_0) tau_{a_1}(e_{m_1}) ...>_g = sum_j <... tau_{a_j - 1}(e_{m_j}) ...>_g.
ConstraintReport string_equation_check(const OmegaEngine& engine, const CohftOptions& opts, const std::string& label);

std::vector<ConstraintReport> cohft_checks(const OmegaEngine& engine, const CohftOptions& opts,
                                           const std::string& label);

}  // namespace bgw
