#include "bgw/characters.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <tuple>

#include "bgw/error.hpp"

namespace bgw {

namespace {

struct Attempt {
  bool ok = false;
  std::string failure;
  CharacterTable table;
};

Attempt try_character_table(const ClassAlgebra& algebra, std::mt19937_64& rng, double tol) {
  const std::size_t r = algebra.rank();
  const auto& cd = algebra.conjugacy();
  const auto& sc = algebra.structure();
  const double order = static_cast<double>(algebra.order());

  // M = sum_i c_i M_i with (M_i)_{kj} = a_{ijk}.
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
  for (std::size_t i = 0; i < r; ++i) {
    double c = static_cast<double>(rng() % 997 + 1);
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k)
        m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) += c * static_cast<double>(sc(i, j, k));
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success) return {false, "eigen-decomposition did not converge", {}};
  const auto& lambda = solver.eigenvalues();
  double scale = 1.0;
  for (Eigen::Index a = 0; a < lambda.size(); ++a) scale = std::max(scale, std::abs(lambda(a)));
  for (Eigen::Index a = 0; a < lambda.size(); ++a)
    for (Eigen::Index b = a + 1; b < lambda.size(); ++b)
      if (std::abs(lambda(a) - lambda(b)) < 1e-6 * scale) return {false, "repeated eigenvalue", {}};

  CharacterTable ct;
  ct.r = r;
  ct.tolerance = tol;
  for (std::size_t a = 0; a < r; ++a) {
    Eigen::VectorXcd v = solver.eigenvectors().col(static_cast<Eigen::Index>(a));
    Complex v0 = v(0);
    if (std::abs(v0) < 1e-12) return {false, "eigenvector vanishes on the identity class", {}};
    // chi(rep_k) is proportional to the f-coefficient on the inverse class.
    ComplexVector chi(r);
    double norm = 0.0;
    for (std::size_t k = 0; k < r; ++k) {
      chi[k] = v(static_cast<Eigen::Index>(cd.inverse_class[k])) / v0;
      norm += static_cast<double>(cd.class_size[k]) * std::norm(chi[k]);
    }
    double degree = std::sqrt(order / norm);
    long d = std::lround(degree);
    if (d < 1 || std::abs(degree - static_cast<double>(d)) > 1e-6)
      return {false, "non-integral character degree " + std::to_string(degree), {}};
    for (auto& x : chi) x *= static_cast<double>(d);
    chi[0] = static_cast<double>(d);
    ct.degrees.push_back(static_cast<int>(d));
    ct.values.push_back(std::move(chi));
  }
  long sum_sq = 0;
  for (int d : ct.degrees) sum_sq += long{d} * d;
  if (sum_sq != static_cast<long>(algebra.order()))
    return {false, "sum of squared degrees " + std::to_string(sum_sq) + " != |G|", {}};

  // Canonical order: trivial character first, then by degree and values.
  auto is_trivial = [&](const ComplexVector& chi) {
    return std::all_of(chi.begin(), chi.end(), [&](Complex z) { return std::abs(z - 1.0) < 1e-6; });
  };
  auto key = [&](std::size_t a) {
    std::vector<long long> q;
    for (Complex z : ct.values[a]) {
      q.push_back(std::llround(z.real() * 1e6));
      q.push_back(std::llround(z.imag() * 1e6));
    }
    return std::make_tuple(!is_trivial(ct.values[a]), ct.degrees[a], q);
  };
  std::vector<std::size_t> perm(r);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  CharacterTable sorted = ct;
  for (std::size_t a = 0; a < r; ++a) {
    sorted.degrees[a] = ct.degrees[perm[a]];
    sorted.values[a] = ct.values[perm[a]];
  }

  double residual = 0.0;
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < r; ++b) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < r; ++k)
        s += static_cast<double>(cd.class_size[k]) * sorted.values[a][k] * std::conj(sorted.values[b][k]);
      s /= order;
      residual = std::max(residual, std::abs(s - (a == b ? 1.0 : 0.0)));
    }
    for (std::size_t k = 0; k < r; ++k)
      residual = std::max(residual,
                          std::abs(sorted.values[a][cd.inverse_class[k]] - std::conj(sorted.values[a][k])));
  }
  sorted.orthogonality_residual = residual;
  if (residual > tol) return {false, "orthogonality residual " + std::to_string(residual), {}};
  return {true, {}, std::move(sorted)};
}

}  // namespace

CharacterTable character_table(const ClassAlgebra& algebra, const CharacterOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::string last;
  for (int attempt = 0; attempt < std::max(1, options.max_retries); ++attempt) {
    Attempt a = try_character_table(algebra, rng, options.tolerance);
    if (a.ok) return std::move(a.table);
    last = a.failure;
  }
  throw Error(ErrorKind::DegenerateSpectrum,
              "no usable random combination after " + std::to_string(options.max_retries) +
                  " attempts (last: " + last + ")");
}

ComplexVector numeric_product(const ClassAlgebra& algebra, const ComplexVector& u, const ComplexVector& v) {
  const std::size_t r = algebra.rank();
  if (u.size() != r || v.size() != r) throw Error(ErrorKind::DimensionMismatch, "vector length");
  const auto& sc = algebra.structure();
  ComplexVector out(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      Complex uv = u[i] * v[j];
      if (uv == 0.0) continue;
      for (std::size_t k = 0; k < r; ++k) out[k] += uv * static_cast<double>(sc(i, j, k));
    }
  return out;
}

Complex numeric_pairing(const ClassAlgebra& algebra, const ComplexVector& u, const ComplexVector& v) {
  const auto& cd = algebra.conjugacy();
  if (u.size() != cd.num_classes() || v.size() != cd.num_classes())
    throw Error(ErrorKind::DimensionMismatch, "vector length");
  Complex out = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j)
    out += u[j] * v[cd.inverse_class[j]] / static_cast<double>(cd.class_centralizer(static_cast<ClassIndex>(j)));
  return out;
}

CanonicalBasisResiduals canonical_basis_residuals(const CanonicalBasis& cb, const ClassAlgebra& algebra) {
  const std::size_t r = cb.rank();
  CanonicalBasisResiduals res;
  ComplexVector sum(r);
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t k = 0; k < r; ++k) sum[k] += cb.vectors[a][k];
    for (std::size_t b = 0; b < r; ++b) {
      ComplexVector p = numeric_product(algebra, cb.vectors[a], cb.vectors[b]);
      for (std::size_t k = 0; k < r; ++k)
        res.idempotency = std::max(res.idempotency, std::abs(p[k] - (a == b ? cb.vectors[a][k] : 0.0)));
      Complex eta = numeric_pairing(algebra, cb.vectors[a], cb.vectors[b]);
      res.orthogonality =
          std::max(res.orthogonality, std::abs(eta - (a == b ? cb.nus[a].to_double() : 0.0)));
    }
  }
  for (std::size_t k = 0; k < r; ++k) res.unit = std::max(res.unit, std::abs(sum[k] - (k == 0 ? 1.0 : 0.0)));
  return res;
}

CanonicalBasis canonical_basis(const CharacterTable& ct, const ClassAlgebra& algebra) {
  const std::size_t r = algebra.rank();
  if (ct.r != r) throw Error(ErrorKind::DimensionMismatch, "character table rank differs from class count");
  const auto& cd = algebra.conjugacy();
  const auto order = static_cast<long>(algebra.order());
  CanonicalBasis cb;
  cb.tolerance = ct.tolerance;
  for (std::size_t a = 0; a < r; ++a) {
    const double scale = static_cast<double>(ct.degrees[a]) / static_cast<double>(order);
    ComplexVector f(r);
    for (std::size_t k = 0; k < r; ++k) f[k] = scale * ct.values[a][cd.inverse_class[k]];
    cb.vectors.push_back(std::move(f));
    cb.nus.push_back(Rational(ct.degrees[a], order).pow(2));
  }
  CanonicalBasisResiduals res = canonical_basis_residuals(cb, algebra);
  double worst = std::max({res.idempotency, res.orthogonality, res.unit});
  if (worst > cb.tolerance)
    throw Error(ErrorKind::IdempotencyCheckFailed, "canonical basis residual " + std::to_string(worst));
  return cb;
}

ComplexVector to_canonical_coordinates(const ClassVector& v, const CanonicalBasis& cb,
                                       const ClassAlgebra& algebra) {
  const std::size_t r = cb.rank();
  if (v.size() != r) throw Error(ErrorKind::DimensionMismatch, "vector length");
  ComplexVector vc(r);
  for (std::size_t k = 0; k < r; ++k) vc[k] = v.coeffs[k].to_double();
  ComplexVector c(r);
  for (std::size_t a = 0; a < r; ++a) c[a] = numeric_pairing(algebra, vc, cb.vectors[a]) / cb.nus[a].to_double();
  double scale = 1.0;
  for (Complex z : vc) scale = std::max(scale, std::abs(z));
  for (std::size_t k = 0; k < r; ++k) {
    Complex s = 0.0;
    for (std::size_t a = 0; a < r; ++a) s += c[a] * cb.vectors[a][k];
    if (std::abs(s - vc[k]) > cb.tolerance * scale)
      throw Error(ErrorKind::ReconstructionFailed, "canonical coordinates do not reproduce the vector");
  }
  return c;
}

}  // namespace bgw
