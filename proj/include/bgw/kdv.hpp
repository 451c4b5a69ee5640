#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bgw/omega.hpp"
#include "bgw/report.hpp"
#include "bgw/series.hpp"

namespace bgw {

/// Extra degree carried by the potential so that the five-derivative term is
/// exact up to the compared degree.
inline constexpr int kKdvHeadroom = 5;

/// Caps of the potential the KdV check needs to compare coefficients up to
/// degree max_degree at genus <= max_genus.
SeriesCaps kdv_potential_caps(int max_degree, int max_genus);

/// The KdV equation for a fixed class-basis potential. For a = 1..a_max and
/// v = e_k it compares
///   (2a+1) lambda^-2 eta^{m1 m2} d_{a,v} d_{0,m1} d_{0,m2} Phi
/// with
///   eta^{m1 m2} eta^{m3 m4} d_{a-1,v} d_{0,m1} Phi * d_{0,m2} d_{0,m3} d_{0,m4} Phi
///   + 2 eta^{m1 m2} eta^{m3 m4} d_{a-1,v} d_{0,m1} d_{0,m3} Phi * d_{0,m2} d_{0,m4} Phi
///   + 1/4 eta^{m1 m2} eta^{m3 m4} d_{a-1,v} d_{0,m1} d_{0,m2} d_{0,m3} d_{0,m4} Phi
/// on every coefficient of degree <= max_degree and lambda^e with
/// e <= 2 max_genus - 4. phi must be built with kdv_potential_caps.
class KdvSystem {
 public:
  KdvSystem(const ClassAlgebra& algebra, const ExactSeries& phi, int a_max, int max_degree);
  ~KdvSystem();
  KdvSystem(const KdvSystem&) = delete;
  KdvSystem& operator=(const KdvSystem&) = delete;

  /// One report per (a, v).
  std::vector<ConstraintReport> check(const std::string& label) const;

  /// Change of the residual when phi is replaced by phi + delta, as one
  /// report per (a, v); reports stop after the first nonzero one. If check()
  /// passes, a failed report here means the KdV check of phi + delta fails.
  std::vector<ConstraintReport> perturbation(const ExactSeries& delta, const std::string& label) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::vector<ConstraintReport> kdv_check(const ClassAlgebra& algebra, const ExactSeries& phi, int a_max,
                                        int max_degree, const std::string& label);

}  // namespace bgw
