#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "bgw/class_algebra.hpp"

namespace bgw {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

struct CharacterOptions {
  double tolerance = 1e-9;
  std::uint64_t seed = 1;
  int max_retries = 20;
};

/// Irreducible characters evaluated on class representatives. Row 0 is the
/// trivial character; the remaining rows are sorted by degree and then by
/// their values, so the order does not depend on the random seed.
struct CharacterTable {
  std::size_t r = 0;
  std::vector<int> degrees;
  std::vector<ComplexVector> values;  // values[alpha][k]
  double tolerance = 1e-9;
  /// max |<chi_a, chi_b> - delta_ab| observed.
  double orthogonality_residual = 0.0;
};

/// Orthogonal idempotents f_alpha written in the class basis, with
/// nu_alpha = eta(f_alpha, f_alpha) = (dim V_alpha / |G|)^2.
struct CanonicalBasis {
  std::vector<ComplexVector> vectors;
  std::vector<Rational> nus;
  double tolerance = 1e-9;

  std::size_t rank() const { return nus.size(); }
};

/// Burnside's method: the f_alpha are the common eigenvectors of the class
/// multiplication matrices, found from one random rational combination.
CharacterTable character_table(const ClassAlgebra& algebra, const CharacterOptions& options = {});

CanonicalBasis canonical_basis(const CharacterTable& ct, const ClassAlgebra& algebra);

/// Coefficients c with v = sum_alpha c_alpha f_alpha, via c_alpha = eta(v, f_alpha) / nu_alpha.
ComplexVector to_canonical_coordinates(const ClassVector& v, const CanonicalBasis& cb,
                                       const ClassAlgebra& algebra);

// Floating-point versions of the algebra operations, for checks in the
// canonical basis.
ComplexVector numeric_product(const ClassAlgebra& algebra, const ComplexVector& u, const ComplexVector& v);
Complex numeric_pairing(const ClassAlgebra& algebra, const ComplexVector& u, const ComplexVector& v);

struct CanonicalBasisResiduals {
  double idempotency = 0.0;    // max |f_a * f_b - delta_ab f_a|
  double orthogonality = 0.0;  // max |eta(f_a, f_b) - delta_ab nu_a|
  double unit = 0.0;           // max |sum f_a - e_1|
};

CanonicalBasisResiduals canonical_basis_residuals(const CanonicalBasis& cb, const ClassAlgebra& algebra);

}  // namespace bgw
