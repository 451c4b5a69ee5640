#pragma once

#include <cstdint>
#include <vector>

#include "bgw/group.hpp"
#include "bgw/rational.hpp"

namespace bgw {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// An element of the state space in the conjugacy-class basis; e_k is the
/// indicator of class k.
struct ClassVector {
  std::vector<Rational> coeffs;

  static ClassVector basis(std::size_t rank, std::size_t k);
  static ClassVector zero(std::size_t rank) { return {std::vector<Rational>(rank)}; }
  std::size_t size() const { return coeffs.size(); }
  bool operator==(const ClassVector&) const = default;
};

/// eta_{jk} = delta_{k, inv(j)} / |C(rep_j)|
RationalMatrix metric(const ConjugacyData& cd);
/// eta^{jk} = delta_{k, inv(j)} |C(rep_j)|
RationalMatrix inverse_metric(const ConjugacyData& cd);

/// #{(x, y) in C_i x C_j : x y = rep_k}
std::uint64_t class_mult_coefficient(const GroupTable& g, const ConjugacyData& cd, ClassIndex i,
                                     ClassIndex j, ClassIndex k);

/// All a_{ijk}, computed in one O(|G| r) sweep.
class StructureConstants {
 public:
  StructureConstants() = default;
  StructureConstants(const GroupTable& g, const ConjugacyData& cd);

  std::size_t rank() const { return r_; }
  std::uint64_t operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return a_[(i * r_ + j) * r_ + k];
  }

 private:
  std::size_t r_ = 0;
  std::vector<std::uint64_t> a_;
};

/// The Frobenius algebra (H, *, eta) of a finite group, in the class basis.
class ClassAlgebra {
 public:
  explicit ClassAlgebra(GroupTable g);

  const GroupTable& group() const { return group_; }
  const ConjugacyData& conjugacy() const { return cd_; }
  const StructureConstants& structure() const { return sc_; }
  std::size_t rank() const { return cd_.num_classes(); }
  std::size_t order() const { return group_.order(); }

  /// Nonzero only for k == inverse_class[j].
  Rational metric_entry(std::size_t j, std::size_t k) const;
  Rational inverse_metric_entry(std::size_t j, std::size_t k) const;

  ClassVector unit() const { return ClassVector::basis(rank(), 0); }
  ClassVector product(const ClassVector& u, const ClassVector& v) const;
  Rational pairing(const ClassVector& u, const ClassVector& v) const;

 private:
  GroupTable group_;
  ConjugacyData cd_;
  StructureConstants sc_;
};

/// Bilinear extension of e_i * e_j = sum_k a_{ijk} e_k.
ClassVector quantum_product(const ClassAlgebra& algebra, const ClassVector& u, const ClassVector& v);

}  // namespace bgw
