#include "bgw/class_algebra.hpp"

#include "bgw/error.hpp"

namespace bgw {

ClassVector ClassVector::basis(std::size_t rank, std::size_t k) {
  ClassVector v = zero(rank);
  v.coeffs.at(k) = 1;
  return v;
}

RationalMatrix metric(const ConjugacyData& cd) {
  const std::size_t r = cd.num_classes();
  RationalMatrix m(r, std::vector<Rational>(r));
  for (std::size_t j = 0; j < r; ++j)
    m[j][cd.inverse_class[j]] = Rational(1, static_cast<long>(cd.class_centralizer(static_cast<ClassIndex>(j))));
  return m;
}

RationalMatrix inverse_metric(const ConjugacyData& cd) {
  const std::size_t r = cd.num_classes();
  RationalMatrix m(r, std::vector<Rational>(r));
  for (std::size_t j = 0; j < r; ++j)
    m[j][cd.inverse_class[j]] = Rational(static_cast<long>(cd.class_centralizer(static_cast<ClassIndex>(j))));
  return m;
}

std::uint64_t class_mult_coefficient(const GroupTable& g, const ConjugacyData& cd, ClassIndex i,
                                     ClassIndex j, ClassIndex k) {
  const Element target = cd.representative.at(k);
  std::uint64_t count = 0;
  for (Element x : cd.classes.at(i)) count += cd.class_of[g.mul(g.inv(x), target)] == j;
  return count;
}

StructureConstants::StructureConstants(const GroupTable& g, const ConjugacyData& cd)
    : r_(cd.num_classes()), a_(r_ * r_ * r_, 0) {
  // For each x and target rep_k, y = x^{-1} rep_k is the unique partner.
  for (Element x = 0; x < g.order(); ++x) {
    const Element xinv = g.inv(x);
    const std::size_t i = cd.class_of[x];
    for (std::size_t k = 0; k < r_; ++k) {
      const std::size_t j = cd.class_of[g.mul(xinv, cd.representative[k])];
      ++a_[(i * r_ + j) * r_ + k];
    }
  }
}

ClassAlgebra::ClassAlgebra(GroupTable g)
    : group_(std::move(g)), cd_(conjugacy_data(group_)), sc_(group_, cd_) {}

Rational ClassAlgebra::metric_entry(std::size_t j, std::size_t k) const {
  if (cd_.inverse_class.at(j) != k) return Rational(0);
  return Rational(1, static_cast<long>(cd_.class_centralizer(static_cast<ClassIndex>(j))));
}

Rational ClassAlgebra::inverse_metric_entry(std::size_t j, std::size_t k) const {
  if (cd_.inverse_class.at(j) != k) return Rational(0);
  return Rational(static_cast<long>(cd_.class_centralizer(static_cast<ClassIndex>(j))));
}

ClassVector ClassAlgebra::product(const ClassVector& u, const ClassVector& v) const {
  const std::size_t r = rank();
  if (u.size() != r || v.size() != r)
    throw Error(ErrorKind::DimensionMismatch, "class vectors must have length " + std::to_string(r));
  ClassVector out = ClassVector::zero(r);
  for (std::size_t i = 0; i < r; ++i) {
    if (u.coeffs[i].is_zero()) continue;
    for (std::size_t j = 0; j < r; ++j) {
      if (v.coeffs[j].is_zero()) continue;
      Rational uv = u.coeffs[i] * v.coeffs[j];
      for (std::size_t k = 0; k < r; ++k) {
        std::uint64_t a = sc_(i, j, k);
        if (a != 0) out.coeffs[k] += uv * Rational(static_cast<long>(a));
      }
    }
  }
  return out;
}

Rational ClassAlgebra::pairing(const ClassVector& u, const ClassVector& v) const {
  const std::size_t r = rank();
  if (u.size() != r || v.size() != r)
    throw Error(ErrorKind::DimensionMismatch, "class vectors must have length " + std::to_string(r));
  Rational out;
  for (std::size_t j = 0; j < r; ++j) {
    if (u.coeffs[j].is_zero()) continue;
    std::size_t k = cd_.inverse_class[j];
    out += u.coeffs[j] * v.coeffs[k] * metric_entry(j, k);
  }
  return out;
}

ClassVector quantum_product(const ClassAlgebra& algebra, const ClassVector& u, const ClassVector& v) {
  return algebra.product(u, v);
}

}  // namespace bgw
