#include "bgw/virasoro.hpp"

#include <cmath>
#include <map>
#include <random>
#include <utility>

#include "bgw/error.hpp"
#include "bgw/psi.hpp"

namespace bgw {

int DifferentialOperator::order() const {
  int o = 0;
  for (const auto& t : terms) {
    if (t.kind == OperatorTerm::Kind::Second) o = std::max(o, 2);
    if (t.kind == OperatorTerm::Kind::Derivative || t.kind == OperatorTerm::Kind::Linear) o = std::max(o, 1);
  }
  return o;
}

std::string VirasoroSpec::str() const {
  std::string s = "L_" + std::to_string(n);
  if (flavor == Flavor::PerIndex) return s + "^(" + std::to_string(alpha) + ")";
  return s + " diagonal";
}

VirasoroContext VirasoroContext::from_algebra(const ClassAlgebra& algebra) {
  return {algebra.rank(), metric(algebra.conjugacy()), inverse_metric(algebra.conjugacy())};
}

VirasoroContext VirasoroContext::identity(std::size_t rank) {
  RationalMatrix id(rank, std::vector<Rational>(rank));
  for (std::size_t i = 0; i < rank; ++i) id[i][i] = 1;
  return {rank, id, id};
}

DifferentialOperator virasoro_operator(const VirasoroSpec& spec, const VirasoroContext& ctx, int max_level) {
  const int n = spec.n;
  if (n < -1) throw Error(ErrorKind::InvalidInput, "Virasoro index must be >= -1");
  if (n + 1 > max_level)
    throw Error(ErrorKind::LevelCapExceeded, spec.str() + " needs level " + std::to_string(n + 1) +
                                                 " but the cap is " + std::to_string(max_level));
  const bool diagonal = spec.flavor == VirasoroSpec::Flavor::Diagonal;
  if (!diagonal && spec.alpha >= ctx.rank) throw Error(ErrorKind::InvalidInput, "canonical index out of range");
  DifferentialOperator op;
  op.system = diagonal ? VariableSystem::ClassBasis : VariableSystem::CanonicalRescaled;
  using K = OperatorTerm::Kind;
  const Rational two_pow = Rational(2).pow(n + 1);
  std::vector<int> slots;
  if (diagonal)
    for (std::size_t m = 0; m < ctx.rank; ++m) slots.push_back(static_cast<int>(m));
  else
    slots.push_back(static_cast<int>(spec.alpha));
  const int unit_slot = diagonal ? 0 : static_cast<int>(spec.alpha);
  // Pairings used by the quadratic terms, restricted to the active slots.
  auto pairing = [&](const RationalMatrix& mat, int m1, int m2) -> Rational {
    if (!diagonal) return Rational(1);
    return mat[static_cast<std::size_t>(m1)][static_cast<std::size_t>(m2)];
  };

  op.terms.push_back({K::Derivative, -double_factorial(2 * n + 3) / two_pow, {n + 1, unit_slot}, {}});
  for (int i = std::max(0, -n); i <= max_level && i + n <= max_level; ++i) {
    Rational c = double_factorial(2 * i + 2 * n + 1) / (double_factorial(2 * i - 1) * two_pow);
    for (int m : slots) op.terms.push_back({K::Linear, c, {i, m}, {i + n, m}});
  }
  // lambda^2/2 sum_{i+j=n-1} (2i+1)!!(2j+1)!!/2^{n+1} eta^{m1 m2} d_{i,m1} d_{j,m2},
  // merged over unordered pairs of variables.
  std::map<std::pair<SeriesVar, SeriesVar>, Rational> second, mult;
  for (int i = 0; i <= n - 1; ++i) {
    const int j = n - 1 - i;
    Rational c = double_factorial(2 * i + 1) * double_factorial(2 * j + 1) / (two_pow * Rational(2));
    for (int m1 : slots)
      for (int m2 : slots) {
        Rational e = pairing(ctx.eta_inv, m1, m2);
        if (e.is_zero()) continue;
        SeriesVar a{i, m1}, b{j, m2};
        if (b < a) std::swap(a, b);
        second[{a, b}] += c * e;
      }
  }
  if (n == -1)
    for (int m1 : slots)
      for (int m2 : slots) {
        Rational e = pairing(ctx.eta, m1, m2);
        if (e.is_zero()) continue;
        SeriesVar a{0, m1}, b{0, m2};
        if (b < a) std::swap(a, b);
        mult[{a, b}] += e / Rational(2);
      }
  for (const auto& [ab, c] : second)
    if (!c.is_zero()) op.terms.push_back({K::Second, c, ab.first, ab.second});
  for (const auto& [ab, c] : mult)
    if (!c.is_zero()) op.terms.push_back({K::Multiply, c, ab.first, ab.second});
  if (n == 0)
    op.terms.push_back({K::Constant, Rational(diagonal ? static_cast<long>(ctx.rank) : 1L, 16), {}, {}});
  return op;
}

template <class S>
BasicSeries<S> apply_operator(const DifferentialOperator& op, const BasicSeries<S>& z, KeySet* touched) {
  if (op.system != z.system())
    throw Error(ErrorKind::VariableSystemMismatch, "operator acts on " + variable_system_name(op.system) +
                                                       " variables, series is " + variable_system_name(z.system()));
  using K = OperatorTerm::Kind;
  const SeriesCaps& caps = z.caps();
  BasicSeries<S> out(caps, z.system());
  out.set_lambda_window(z.lambda_min() - 2, z.lambda_max() + 2);
  out.set_valid_degree(z.valid_degree() - op.order());

  struct Scaled {
    const OperatorTerm* term;
    S coeff;
  };
  std::map<SeriesVar, std::vector<Scaled>> first;
  std::map<std::pair<SeriesVar, SeriesVar>, std::vector<Scaled>> second;
  std::vector<Scaled> mult;
  S constant{};
  for (const auto& t : op.terms) {
    S c = ScalarTraits<S>::from_rational(t.coeff);
    switch (t.kind) {
      case K::Derivative: first[t.a].push_back({&t, c}); break;
      case K::Linear:
        if (t.a.level <= caps.max_level) first[t.b].push_back({&t, c});
        break;
      case K::Second: second[{t.a, t.b}].push_back({&t, c}); break;
      case K::Multiply: mult.push_back({&t, c}); break;
      case K::Constant: constant += c; break;
    }
  }
  auto emit = [&](const Monomial& m, int e, const S& v) {
    if (m.degree() > caps.max_degree) return;
    if (touched) touched->insert({m, e});
    out.add_term(m, e, v);
  };
  for (const auto& [m, l] : z.terms()) {
    const std::size_t nf = m.num_factors();
    for (std::size_t i = 0; i < nf; ++i) {
      const SeriesVar v = m.var(i);
      const int k = m.exponent_at(i);
      auto it = first.find(v);
      if (it != first.end()) {
        const Monomial reduced = m.without(v);
        const S kk = ScalarTraits<S>::from_rational(Rational(k));
        for (const auto& s : it->second) {
          const Monomial target = s.term->kind == K::Linear ? reduced.times(s.term->a) : reduced;
          for (const auto& [e, c] : l.entries()) emit(target, e, s.coeff * kk * c);
        }
      }
      for (std::size_t j = i; j < nf; ++j) {
        const SeriesVar w = m.var(j);
        long mult_factor = i == j ? static_cast<long>(k) * (k - 1) : static_cast<long>(k) * m.exponent_at(j);
        if (mult_factor == 0) continue;
        auto jt = second.find({v, w});
        if (jt == second.end()) continue;
        const Monomial target = m.without(v).without(w);
        const S ff = ScalarTraits<S>::from_rational(Rational(mult_factor));
        for (const auto& s : jt->second)
          for (const auto& [e, c] : l.entries()) emit(target, e + 2, s.coeff * ff * c);
      }
    }
    if (m.degree() + 2 <= caps.max_degree)
      for (const auto& s : mult) {
        const Monomial target = m.times(s.term->a).times(s.term->b);
        for (const auto& [e, c] : l.entries()) emit(target, e - 2, s.coeff * c);
      }
    if (!ScalarTraits<S>::is_zero(constant))
      for (const auto& [e, c] : l.entries()) emit(m, e, constant * c);
  }
  return out;
}

template ExactSeries apply_operator(const DifferentialOperator&, const ExactSeries&, KeySet*);
template NumericSeries apply_operator(const DifferentialOperator&, const NumericSeries&, KeySet*);

namespace {

int floor_div3(int x) { return x >= 0 ? x / 3 : -((-x + 2) / 3); }

// Z = exp(Phi) is exact at (d, e) unless a genus > G term of Phi could reach it.
bool z_exact(int d, int e, const SeriesCaps& caps) {
  if (d > caps.max_degree) return false;
  if (d <= 0) return true;
  return e < 2 * caps.max_genus - 2 * floor_div3(d - 1);
}

}  // namespace

int virasoro_watermark(int n, const SeriesCaps& caps) { return caps.max_degree - (n >= 1 ? 2 : 1); }

bool virasoro_certified(int n, int d, int e, const SeriesCaps& caps) {
  if (d < 0 || d > virasoro_watermark(n, caps)) return false;
  if (!z_exact(d + 1, e, caps) || !z_exact(d, e, caps)) return false;
  if (n >= 1 && !z_exact(d + 2, e - 2, caps)) return false;
  if (n == -1 && d >= 2 && !z_exact(d - 2, e + 2, caps)) return false;
  return true;
}

ConstraintReport annihilation_report(const DifferentialOperator& op, int n, const ExactSeries& z,
                                     const std::string& op_name, const std::string& label) {
  ConstraintReport rep;
  rep.check = "virasoro";
  rep.op = op_name;
  rep.group = label;
  rep.watermark = virasoro_watermark(n, z.caps());
  KeySet touched;
  ExactSeries out = apply_operator(op, z, &touched);
  for (const auto& [m, e] : touched) {
    if (!virasoro_certified(n, m.degree(), e, z.caps())) continue;
    ++rep.checked;
    Rational c = out.coefficient(m, e);
    rep.note_residual(c);
    if (!c.is_zero()) rep.add_violation({m.str(), e, c.str(), "0/1"});
  }
  return rep;
}

std::vector<ConstraintReport> virasoro_check(const ClassAlgebra& algebra, const ExactSeries& z_class,
                                             const ExactSeries& z_canonical, const CanonicalBasis& cb,
                                             const VirasoroOptions& opts, const std::string& label) {
  std::vector<ConstraintReport> out;
  const auto ctx = VirasoroContext::from_algebra(algebra);
  if (opts.diagonal)
    for (int n : opts.ns) {
      VirasoroSpec spec{VirasoroSpec::Flavor::Diagonal, n, 0};
      out.push_back(annihilation_report(virasoro_operator(spec, ctx, z_class.caps().max_level), n, z_class,
                                        spec.str(), label));
    }
  if (opts.per_index)
    for (std::size_t alpha = 0; alpha < cb.rank(); ++alpha)
      for (int n : opts.ns) {
        VirasoroSpec spec{VirasoroSpec::Flavor::PerIndex, n, alpha};
        out.push_back(annihilation_report(virasoro_operator(spec, ctx, z_canonical.caps().max_level), n,
                                          z_canonical, spec.str(), label));
      }
  return out;
}

ExactSeries random_test_series(const SeriesCaps& caps, VariableSystem system, std::size_t rank, std::uint64_t seed,
                               std::size_t terms) {
  std::mt19937_64 rng(seed);
  ExactSeries s(caps, system);
  s.set_lambda_window(-12, 12);
  const int top_level = std::max(0, caps.max_level - 2);
  const int top_degree = std::max(0, caps.max_degree - 4);
  for (std::size_t t = 0; t < terms; ++t) {
    const int degree = static_cast<int>(rng() % static_cast<std::uint64_t>(top_degree + 1));
    Monomial m;
    for (int k = 0; k < degree; ++k)
      m = m.times({static_cast<int>(rng() % static_cast<std::uint64_t>(top_level + 1)),
                   static_cast<int>(rng() % rank)});
    const int lambda = 2 * (static_cast<int>(rng() % 3) - 1);
    const long num = static_cast<long>(rng() % 19) - 9;
    const long den = static_cast<long>(rng() % 5) + 1;
    s.add_term(m, lambda, Rational(num, den));
  }
  return s;
}

ConstraintReport commutator_check(const VirasoroSpec& s1, const VirasoroSpec& s2, const VirasoroContext& ctx,
                                  const SeriesCaps& caps, std::uint64_t seed, const std::string& label) {
  if (s1.flavor != s2.flavor) throw Error(ErrorKind::InvalidInput, "commutator of different operator families");
  if (s1.n + s2.n < -1) throw Error(ErrorKind::InvalidInput, "commutator needs m + n >= -1");
  const VariableSystem sys =
      s1.flavor == VirasoroSpec::Flavor::Diagonal ? VariableSystem::ClassBasis : VariableSystem::CanonicalRescaled;
  const ExactSeries f = random_test_series(caps, sys, ctx.rank, seed);
  const int A = caps.max_level;
  auto op1 = virasoro_operator(s1, ctx, A), op2 = virasoro_operator(s2, ctx, A);
  ExactSeries lhs = apply_operator(op1, apply_operator(op2, f)) - apply_operator(op2, apply_operator(op1, f));
  ExactSeries rhs(caps, sys);
  rhs.merge_window(lhs);
  const bool same = s1.flavor == VirasoroSpec::Flavor::Diagonal || s1.alpha == s2.alpha;
  if (same && s1.n != s2.n) {
    VirasoroSpec sum{s1.flavor, s1.n + s2.n, s1.alpha};
    rhs = apply_operator(virasoro_operator(sum, ctx, A), f);
    rhs *= Rational(s1.n - s2.n);
  }
  ConstraintReport rep;
  rep.check = "commutator";
  rep.op = "[" + s1.str() + ", " + s2.str() + "]";
  rep.group = label;
  rep.watermark = caps.max_degree;
  KeySet keys;
  for (const auto* s : {&std::as_const(lhs), &std::as_const(rhs)})
    for (const auto& [m, l] : s->terms())
      for (const auto& [e, c] : l.entries()) keys.insert({m, e});
  for (const auto& [m, e] : keys) {
    ++rep.checked;
    Rational a = lhs.coefficient(m, e), b = rhs.coefficient(m, e);
    rep.note_residual(a - b);
    if (a != b) rep.add_violation({m.str(), e, a.str(), b.str()});
  }
  return rep;
}

NumericSeries class_to_rescaled(const NumericSeries& s, const CanonicalBasis& cb) {
  const std::size_t r = cb.rank();
  ScalarMatrix<Complex> m(r, std::vector<Complex>(r));
  for (std::size_t slot = 0; slot < r; ++slot)
    for (std::size_t alpha = 0; alpha < r; ++alpha) m[slot][alpha] = cb.vectors[alpha][slot];
  NumericSeries u = substitute_linear(s, m, VariableSystem::Canonical);
  NumericSeries out = substitute_rescale<Complex>(u, std::function<Complex(SeriesVar)>([&](SeriesVar v) {
    const double nu = cb.nus[static_cast<std::size_t>(v.slot)].to_double();
    return Complex(std::pow(nu, (v.level - 1) / 3.0), 0.0);
  }));
  out.set_system(VariableSystem::CanonicalRescaled);
  return out;
}

ConstraintReport operator_identity_check(const ClassAlgebra& algebra, const CanonicalBasis& cb, int m,
                                         const SeriesCaps& caps, std::uint64_t seed, double tol,
                                         const std::string& label) {
  const auto ctx = VirasoroContext::from_algebra(algebra);
  const ExactSeries f = random_test_series(caps, VariableSystem::ClassBasis, algebra.rank(), seed);
  const NumericSeries lhs =
      class_to_rescaled(to_numeric(apply_operator(virasoro_operator({VirasoroSpec::Flavor::Diagonal, m, 0}, ctx,
                                                                    caps.max_level),
                                                  f)),
                        cb);
  const NumericSeries fu = class_to_rescaled(to_numeric(f), cb);
  NumericSeries rhs(caps, VariableSystem::CanonicalRescaled);
  rhs.merge_window(lhs);
  for (std::size_t alpha = 0; alpha < cb.rank(); ++alpha) {
    NumericSeries part = apply_operator(
        virasoro_operator({VirasoroSpec::Flavor::PerIndex, m, alpha}, ctx, caps.max_level), fu);
    part *= Complex(std::pow(cb.nus[alpha].to_double(), -m / 3.0), 0.0);
    rhs += part;
  }
  ConstraintReport rep;
  rep.check = "operator-identity";
  rep.op = "L_" + std::to_string(m) + " = sum nu^(-m/3) L_" + std::to_string(m) + "^(alpha)";
  rep.group = label;
  rep.watermark = caps.max_degree;
  rep.max_residual = 0.0;
  KeySet keys;
  for (const auto* s : {&std::as_const(lhs), &std::as_const(rhs)})
    for (const auto& [mono, l] : s->terms())
      for (const auto& [e, c] : l.entries()) keys.insert({mono, e});
  for (const auto& [mono, e] : keys) {
    ++rep.checked;
    const Complex a = lhs.coefficient(mono, e), b = rhs.coefficient(mono, e);
    const double diff = std::abs(a - b) / std::max(1.0, std::abs(a));
    rep.note_residual(diff);
    if (diff > tol)
      rep.add_violation({mono.str(), e, json_complex(a).dump(), json_complex(b).dump()});
  }
  return rep;
}

}  // namespace bgw
