#include "bgw/kdv.hpp"

#include <functional>

#include "bgw/error.hpp"
#include "bgw/virasoro.hpp"

namespace bgw {

SeriesCaps kdv_potential_caps(int max_degree, int max_genus) {
  return SeriesCaps::for_potential(max_degree + kKdvHeadroom, max_genus);
}

namespace {

// Derivatives of one series that enter the equation. lap is the contraction
// eta^{m1 m2} d_{0,m1} d_{0,m2}.
struct Pieces {
  ExactSeries lap, lap2;
  std::vector<ExactSeries> d0, d00, dlap, d00_low;
};

// Y-side factors d_{a-1,v} d_{0,m1} X and d_{a-1,v} d_{0,m1} d_{0,m3} X.
struct Left {
  std::vector<ExactSeries> d0, d00;
};

}  // namespace

struct KdvSystem::Impl {
  const ClassAlgebra* algebra;
  int a_max, max_degree, top_lambda, r;
  SeriesCaps caps;
  std::vector<int> inv;
  std::vector<Rational> eta_up;
  Pieces base;
  std::vector<Left> base_left;  // indexed by (a-1) r + v

  ExactSeries blank() const {
    ExactSeries s(caps, VariableSystem::ClassBasis);
    s.set_lambda_window(-8, 2 * caps.max_genus);
    return s;
  }

  ExactSeries d(const ExactSeries& s, SeriesVar v, int keep) const {
    ExactSeries out = blank();
    for (const auto& [m, l] : s.terms()) {
      if (m.degree() > keep + 1) continue;
      const int k = m.exponent(v);
      if (k == 0) continue;
      const Monomial reduced = m.without(v);
      const Rational f(k);
      for (const auto& [e, c] : l.entries()) out.add_term(reduced, e, c * f);
    }
    return out;
  }

  ExactSeries laplacian(const ExactSeries& s, int keep) const {
    ExactSeries out = blank();
    for (int m = 0; m < r; ++m) {
      ExactSeries x = d(d(s, {0, m}, keep + 1), {0, inv[m]}, keep);
      x *= eta_up[m];
      out += x;
    }
    return out;
  }

  Pieces pieces(const ExactSeries& s) const {
    const int D = max_degree;
    Pieces p;
    p.lap = laplacian(s, D + 3);
    p.lap2 = laplacian(p.lap, D + 1);
    for (int m = 0; m < r; ++m) {
      p.d0.push_back(d(s, {0, m}, D + 2));
      p.dlap.push_back(d(p.lap, {0, m}, D));
    }
    for (int m1 = 0; m1 < r; ++m1)
      for (int m3 = 0; m3 < r; ++m3) {
        p.d00.push_back(d(p.d0[static_cast<std::size_t>(m1)], {0, m3}, D + 1));
        p.d00_low.push_back(truncate_degree(p.d00.back(), D));
      }
    return p;
  }

  Left left(const Pieces& p, int a, int v) const {
    Left out;
    for (const auto& x : p.d0) out.d0.push_back(d(x, {a - 1, v}, max_degree));
    for (const auto& x : p.d00) out.d00.push_back(d(x, {a - 1, v}, max_degree));
    return out;
  }

  // (2a+1) lambda^-2 d_{a,v} lap X - 1/4 d_{a-1,v} lap^2 X.
  ExactSeries linear(const Pieces& p, int a, int v) const {
    ExactSeries out = blank();
    const ExactSeries top = d(p.lap, {a, v}, max_degree);
    for (const auto& [m, l] : top.terms())
      for (const auto& [e, c] : l.entries()) out.add_term(m, e - 2, c * Rational(2 * a + 1));
    ExactSeries t = d(p.lap2, {a - 1, v}, max_degree);
    t *= Rational(-1, 4);
    out += t;
    return out;
  }

  // The two product terms with Y on the left and Z on the right.
  ExactSeries quadratic(const Left& y, const Pieces& z) const {
    ExactSeries out = blank();
    for (int m1 = 0; m1 < r; ++m1) {
      const auto& a1 = y.d0[static_cast<std::size_t>(m1)];
      const auto& b1 = z.dlap[static_cast<std::size_t>(inv[m1])];
      if (!a1.is_zero() && !b1.is_zero()) {
        ExactSeries p = multiply(a1, b1, max_degree);
        p *= eta_up[m1];
        out += p;
      }
      for (int m3 = 0; m3 < r; ++m3) {
        const auto& a2 = y.d00[static_cast<std::size_t>(m1 * r + m3)];
        const auto& b2 = z.d00_low[static_cast<std::size_t>(inv[m1] * r + inv[m3])];
        if (a2.is_zero() || b2.is_zero()) continue;
        ExactSeries p = multiply(a2, b2, max_degree);
        p *= Rational(2) * eta_up[m1] * eta_up[m3];
        out += p;
      }
    }
    return out;
  }

  ConstraintReport report(const ExactSeries& residual, int a, int v, const std::string& label) const {
    ConstraintReport rep;
    rep.check = "kdv";
    rep.op = "a=" + std::to_string(a) + " v=e_" + std::to_string(v);
    rep.group = label;
    rep.watermark = max_degree;
    for (const auto& [m, l] : residual.terms())
      for (const auto& [e, c] : l.entries())
        if (m.degree() <= max_degree && e <= top_lambda) {
          ++rep.checked;
          rep.note_residual(c);
          rep.add_violation({m.str(), e, c.str(), "0"});
        }
    return rep;
  }
};

KdvSystem::KdvSystem(const ClassAlgebra& algebra, const ExactSeries& phi, int a_max, int max_degree)
    : impl_(std::make_unique<Impl>()) {
  if (phi.system() != VariableSystem::ClassBasis)
    throw Error(ErrorKind::VariableSystemMismatch, "KdV check runs on a class-basis potential");
  const SeriesCaps& caps = phi.caps();
  if (max_degree < 0) throw Error(ErrorKind::InvalidInput, "negative KdV degree");
  if (caps.max_degree < max_degree + kKdvHeadroom)
    throw Error(ErrorKind::CapMismatch, "potential needs degree " + std::to_string(max_degree + kKdvHeadroom));
  if (a_max < 1 || a_max > caps.max_level) throw Error(ErrorKind::LevelCapExceeded, "KdV level out of range");
  auto& s = *impl_;
  s.algebra = &algebra;
  s.a_max = a_max;
  s.max_degree = max_degree;
  s.top_lambda = 2 * caps.max_genus - 4;
  s.caps = caps;
  s.r = static_cast<int>(algebra.rank());
  const auto& cd = algebra.conjugacy();
  for (int m = 0; m < s.r; ++m) {
    s.inv.push_back(static_cast<int>(cd.inverse_class[static_cast<std::size_t>(m)]));
    s.eta_up.emplace_back(static_cast<long>(cd.class_centralizer(static_cast<ClassIndex>(m))));
  }
  s.base = s.pieces(phi);
  for (int a = 1; a <= a_max; ++a)
    for (int v = 0; v < s.r; ++v) s.base_left.push_back(s.left(s.base, a, v));
}

KdvSystem::~KdvSystem() = default;

std::vector<ConstraintReport> KdvSystem::check(const std::string& label) const {
  const auto& s = *impl_;
  std::vector<ConstraintReport> out;
  for (int a = 1; a <= s.a_max; ++a)
    for (int v = 0; v < s.r; ++v) {
      const ExactSeries lhs = s.linear(s.base, a, v);
      const ExactSeries rhs = s.quadratic(s.base_left[static_cast<std::size_t>((a - 1) * s.r + v)], s.base);
      ConstraintReport rep;
      rep.check = "kdv";
      rep.op = "a=" + std::to_string(a) + " v=e_" + std::to_string(v);
      rep.group = label;
      rep.watermark = s.max_degree;
      KeySet keys;
      for (const auto* x : {&lhs, &rhs})
        for (const auto& [m, l] : x->terms())
          for (const auto& [e, c] : l.entries())
            if (m.degree() <= s.max_degree && e <= s.top_lambda) keys.insert({m, e});
      for (const auto& [m, e] : keys) {
        ++rep.checked;
        const Rational x = lhs.coefficient(m, e), y = rhs.coefficient(m, e);
        rep.note_residual(x - y);
        if (x != y) rep.add_violation({m.str(), e, x.str(), y.str()});
      }
      out.push_back(std::move(rep));
    }
  return out;
}

std::vector<ConstraintReport> KdvSystem::perturbation(const ExactSeries& delta, const std::string& label) const {
  const auto& s = *impl_;
  if (!(delta.caps() == s.caps) || delta.system() != VariableSystem::ClassBasis)
    throw Error(ErrorKind::CapMismatch, "perturbation must match the potential");
  const Pieces pd = s.pieces(delta);
  std::vector<ConstraintReport> out;
  for (int a = 1; a <= s.a_max; ++a)
    for (int v = 0; v < s.r; ++v) {
      const Left ld = s.left(pd, a, v);
      const Left& lb = s.base_left[static_cast<std::size_t>((a - 1) * s.r + v)];
      ExactSeries res = s.linear(pd, a, v);
      res -= s.quadratic(ld, s.base);
      res -= s.quadratic(lb, pd);
      res -= s.quadratic(ld, pd);
      out.push_back(s.report(res, a, v, label));
      if (!out.back().passed()) return out;
    }
  return out;
}

std::vector<ConstraintReport> kdv_check(const ClassAlgebra& algebra, const ExactSeries& phi, int a_max,
                                        int max_degree, const std::string& label) {
  return KdvSystem(algebra, phi, a_max, max_degree).check(label);
}

}  // namespace bgw
