#pragma once

#include <string>
#include <vector>

#include "bgw/class_algebra.hpp"
#include "bgw/series.hpp"

namespace bgw {

/// phi with the coefficient of m lambda^e doubled.
ExactSeries mutate(const ExactSeries& phi, const Monomial& m, int lambda);

/// Genus <= max_genus coefficients of phi, by degree and then monomial.
std::vector<std::pair<Monomial, int>> mutation_candidates(const ExactSeries& phi, int max_genus, int max_degree);

struct MutationOutcome {
  Monomial monomial;
  int lambda = 0;
  /// Name of the first check that saw the change, empty if none did.
  std::string detector;
  bool detected() const { return !detector.empty(); }
};

struct MutationInputs {
  const ClassAlgebra* algebra = nullptr;
  /// Class-basis Phi and Z = exp(Phi) of the Virasoro check, which must
  /// already pass.
  const ExactSeries* phi = nullptr;
  const ExactSeries* z = nullptr;
  /// Class-basis potential of the KdV check, which must already pass, and
  /// its parameters.
  const ExactSeries* kdv_phi = nullptr;
  int kdv_degree = 4;
  int kdv_a_max = 2;
  std::vector<int> ns{-1, 0, 1, 2};
};

/// Doubles one coefficient of Phi at a time and looks for a nonzero certified
/// coefficient of L_n Z_mut (diagonal, n in ns), then for a KdV violation of
/// the mutated KdV potential, computed as the change of the KdV residual.
///
/// Since L_n is linear and L_n Z vanishes on the certified coefficients,
/// L_n Z_mut agrees there with L_n W for W = Z (exp(c m lambda^e) - 1), which
/// is what gets computed.
std::vector<MutationOutcome> mutation_sweep(const MutationInputs& in,
                                            const std::vector<std::pair<Monomial, int>>& candidates);

}  // namespace bgw
