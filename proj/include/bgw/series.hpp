#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bgw/error.hpp"
#include "bgw/rational.hpp"

namespace bgw {

/// The formal variable t_a^m: descendant level a, basis slot m.
struct SeriesVar {
  int level = 0;
  int slot = 0;
  auto operator<=>(const SeriesVar&) const = default;
};

/// A product of variables with positive exponents, stored as a sorted list of
/// packed (level, slot, exponent) words so that comparison is a plain
/// lexicographic compare.
class Monomial {
 public:
  static constexpr int kMaxLevel = 4095;
  static constexpr int kMaxSlot = 4095;
  static constexpr int kMaxExponent = 255;

  Monomial() = default;
  static Monomial of(SeriesVar v, int exponent = 1);
  /// Inverse of str().
  static Monomial parse(std::string_view text);
  /// Repeated variables are merged.
  static Monomial from_factors(const std::vector<std::pair<SeriesVar, int>>& factors);

  int degree() const { return degree_; }
  bool is_one() const { return packed_.empty(); }
  int exponent(SeriesVar v) const;
  std::vector<std::pair<SeriesVar, int>> factors() const;
  std::size_t num_factors() const { return packed_.size(); }
  SeriesVar var(std::size_t i) const { return {static_cast<int>(packed_[i] >> 20), static_cast<int>((packed_[i] >> 8) & 0xfff)}; }
  int exponent_at(std::size_t i) const { return static_cast<int>(packed_[i] & 0xff); }
  int max_level() const;
  int max_slot() const;
  /// Sum of levels counted with multiplicity.
  int level_sum() const;

  Monomial operator*(const Monomial& o) const;
  Monomial times(SeriesVar v, int exponent = 1) const;
  /// Lowers the exponent of v by one; v must be present.
  Monomial without(SeriesVar v) const;

  /// e.g. "t[1,0]^2 t[0,2]", "1" for the empty product.
  std::string str() const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.packed_ == b.packed_; }
  friend auto operator<=>(const Monomial& a, const Monomial& b) { return a.packed_ <=> b.packed_; }

 private:
  static std::uint32_t pack(SeriesVar v, int e);
  std::vector<std::uint32_t> packed_;
  int degree_ = 0;
};

using Complex = std::complex<double>;

enum class ScalarMode { Exact, Numeric };

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr ScalarMode mode = ScalarMode::Exact;
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static Rational from_rational(const Rational& r) { return r; }
  static double magnitude(const Rational& x) { return std::abs(x.to_double()); }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr ScalarMode mode = ScalarMode::Numeric;
  static bool is_zero(const Complex& x) { return x == Complex(0.0, 0.0); }
  static Complex from_rational(const Rational& r) { return {r.to_double(), 0.0}; }
  static double magnitude(const Complex& x) { return std::abs(x); }
};

/// Coefficient of one monomial: a finite Laurent polynomial in lambda with
/// even exponents.
template <class S>
class Laurent {
 public:
  using Entry = std::pair<int, S>;

  bool empty() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }
  S get(int exponent) const {
    for (const auto& [e, c] : entries_)
      if (e == exponent) return c;
    return S{};
  }
  /// Adds and drops the entry if it cancels.
  void add(int exponent, const S& value) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), exponent,
                               [](const Entry& a, int e) { return a.first < e; });
    if (it != entries_.end() && it->first == exponent) {
      it->second += value;
      if (ScalarTraits<S>::is_zero(it->second)) entries_.erase(it);
    } else if (!ScalarTraits<S>::is_zero(value)) {
      entries_.insert(it, {exponent, value});
    }
  }
  bool operator==(const Laurent&) const = default;

 private:
  std::vector<Entry> entries_;
};

/// Which coordinates a series is written in. Operators that depend on the
/// basis (the Virasoro family) refuse series in the wrong system.
enum class VariableSystem { Generic, ClassBasis, Canonical, CanonicalRescaled };

std::string variable_system_name(VariableSystem s);

struct SeriesCaps {
  int max_degree = 6;  // D_max: total t-degree
  int max_level = 9;   // A_max: descendant level
  int max_genus = 2;   // G_max
  bool operator==(const SeriesCaps&) const = default;

  /// Every nonzero correlator of genus <= G with <= D insertions has
  /// levels <= 3G - 3 + D.
  static SeriesCaps for_potential(int max_degree, int max_genus) {
    return {max_degree, std::max(1, 3 * max_genus - 3 + max_degree), max_genus};
  }
};

/// Truncated power series in the t_a^m with Laurent-in-lambda coefficients.
///
/// Monomials above max_degree are silently dropped (that is the truncation).
/// The lambda window is [lambda_min, lambda_max]; exponents below it raise
/// GenusUnderflow, exponents above it are clipped and counted. valid_degree
/// is the watermark up to which coefficients are exact; it starts at
/// max_degree and drops by one per differentiation.
template <class S>
class BasicSeries {
 public:
  using Scalar = S;
  using Terms = std::map<Monomial, Laurent<S>>;

  explicit BasicSeries(SeriesCaps caps = {}, VariableSystem system = VariableSystem::Generic)
      : caps_(caps), system_(system), lambda_min_(-2), lambda_max_(std::max(2 * caps.max_genus - 2, -2)),
        valid_degree_(caps.max_degree) {}

  static BasicSeries constant(SeriesCaps caps, const S& value, VariableSystem system = VariableSystem::Generic) {
    BasicSeries s(caps, system);
    s.set_lambda_window(std::min(s.lambda_min_, 0), std::max(s.lambda_max_, 0));
    s.add_term(Monomial(), 0, value);
    return s;
  }

  const SeriesCaps& caps() const { return caps_; }
  VariableSystem system() const { return system_; }
  void set_system(VariableSystem s) { system_ = s; }
  int lambda_min() const { return lambda_min_; }
  int lambda_max() const { return lambda_max_; }
  void set_lambda_window(int lo, int hi) {
    if (lo % 2 != 0 || hi % 2 != 0 || lo > hi) throw Error(ErrorKind::InvalidInput, "bad lambda window");
    lambda_min_ = lo;
    lambda_max_ = hi;
  }
  int valid_degree() const { return valid_degree_; }
  void set_valid_degree(int d) { valid_degree_ = std::min(d, caps_.max_degree); }
  std::size_t clipped() const { return clipped_; }
  void add_clipped(std::size_t n) { clipped_ += n; }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Number of stored (monomial, lambda-exponent) coefficients.
  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& [m, l] : terms_) n += l.entries().size();
    return n;
  }

  S coefficient(const Monomial& m, int lambda) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? S{} : it->second.get(lambda);
  }

  /// Adds value to the coefficient of m * lambda^exponent, applying the
  /// truncation rules. Returns false when the term was dropped.
  bool add_term(const Monomial& m, int lambda, const S& value) {
    if (m.degree() > caps_.max_degree) return false;
    if (lambda % 2 != 0) throw Error(ErrorKind::InvalidInput, "odd lambda exponent");
    if (m.max_level() > caps_.max_level)
      throw Error(ErrorKind::LevelCapExceeded, "variable level " + std::to_string(m.max_level()) +
                                                   " exceeds cap " + std::to_string(caps_.max_level));
    if (ScalarTraits<S>::is_zero(value)) return true;
    if (lambda < lambda_min_)
      throw Error(ErrorKind::GenusUnderflow, "lambda^" + std::to_string(lambda) + " is below the window floor lambda^" +
                                                 std::to_string(lambda_min_));
    if (lambda > lambda_max_) {
      ++clipped_;
      return false;
    }
    auto& l = terms_[m];
    l.add(lambda, value);
    if (l.empty()) terms_.erase(m);
    return true;
  }

  BasicSeries& operator+=(const BasicSeries& o) {
    check_compatible(o);
    merge_window(o);
    for (const auto& [m, l] : o.terms_)
      for (const auto& [e, c] : l.entries()) add_term(m, e, c);
    valid_degree_ = std::min(valid_degree_, o.valid_degree_);
    clipped_ += o.clipped_;
    return *this;
  }
  BasicSeries& operator-=(const BasicSeries& o) {
    check_compatible(o);
    merge_window(o);
    for (const auto& [m, l] : o.terms_)
      for (const auto& [e, c] : l.entries()) add_term(m, e, -c);
    valid_degree_ = std::min(valid_degree_, o.valid_degree_);
    clipped_ += o.clipped_;
    return *this;
  }
  BasicSeries& operator*=(const S& factor) {
    if (ScalarTraits<S>::is_zero(factor)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, l] : terms_) {
      Laurent<S> scaled;
      for (const auto& [e, c] : l.entries()) scaled.add(e, c * factor);
      l = std::move(scaled);
    }
    return *this;
  }

  friend BasicSeries operator+(BasicSeries a, const BasicSeries& b) { return a += b; }
  friend BasicSeries operator-(BasicSeries a, const BasicSeries& b) { return a -= b; }

  void check_compatible(const BasicSeries& o) const {
    if (!(caps_ == o.caps_)) throw Error(ErrorKind::CapMismatch, "series caps differ");
    if (system_ != o.system_)
      throw Error(ErrorKind::VariableSystemMismatch,
                  variable_system_name(system_) + " vs " + variable_system_name(o.system_));
  }

  /// Widens this window to cover the other operand's.
  void merge_window(const BasicSeries& o) {
    lambda_min_ = std::min(lambda_min_, o.lambda_min_);
    lambda_max_ = std::max(lambda_max_, o.lambda_max_);
  }

 private:
  SeriesCaps caps_;
  VariableSystem system_;
  int lambda_min_;
  int lambda_max_;
  int valid_degree_;
  std::size_t clipped_ = 0;
  Terms terms_;
};

using ExactSeries = BasicSeries<Rational>;
using NumericSeries = BasicSeries<Complex>;

template <class S>
BasicSeries<S> scale(BasicSeries<S> s, const S& factor) {
  s *= factor;
  return s;
}

/// Truncated product. The result window is the union of the operands'.
/// degree_cap, when given, truncates below the caps.
template <class S>
BasicSeries<S> multiply(const BasicSeries<S>& a, const BasicSeries<S>& b, int degree_cap = -1) {
  a.check_compatible(b);
  BasicSeries<S> out(a.caps(), a.system());
  out.set_lambda_window(std::min(a.lambda_min(), b.lambda_min()), std::max(a.lambda_max(), b.lambda_max()));
  out.set_valid_degree(std::min(a.valid_degree(), b.valid_degree()));
  out.add_clipped(a.clipped() + b.clipped());
  const int cap = degree_cap < 0 ? a.caps().max_degree : std::min(degree_cap, a.caps().max_degree);
  // Bucket b by degree so pairs over the cap are never visited.
  std::vector<std::vector<const typename BasicSeries<S>::Terms::value_type*>> by_degree(
      static_cast<std::size_t>(cap) + 1);
  for (const auto& t : b.terms())
    if (t.first.degree() <= cap) by_degree[static_cast<std::size_t>(t.first.degree())].push_back(&t);
  for (const auto& [ma, la] : a.terms()) {
    for (int d = 0; d + ma.degree() <= cap; ++d) {
      for (const auto* tb : by_degree[static_cast<std::size_t>(d)]) {
        Monomial m = ma * tb->first;
        for (const auto& [ea, ca] : la.entries())
          for (const auto& [eb, cb] : tb->second.entries()) out.add_term(m, ea + eb, ca * cb);
      }
    }
  }
  return out;
}

template <class S>
BasicSeries<S> operator*(const BasicSeries<S>& a, const BasicSeries<S>& b) {
  return multiply(a, b);
}

template <class S>
BasicSeries<S> homogeneous_part(const BasicSeries<S>& s, int degree) {
  BasicSeries<S> out(s.caps(), s.system());
  out.set_lambda_window(s.lambda_min(), s.lambda_max());
  out.set_valid_degree(s.valid_degree());
  for (const auto& [m, l] : s.terms())
    if (m.degree() == degree)
      for (const auto& [e, c] : l.entries()) out.add_term(m, e, c);
  return out;
}

/// Drops everything above the given degree (caps are kept).
template <class S>
BasicSeries<S> truncate_degree(const BasicSeries<S>& s, int degree) {
  BasicSeries<S> out(s.caps(), s.system());
  out.set_lambda_window(s.lambda_min(), s.lambda_max());
  out.set_valid_degree(std::min(s.valid_degree(), degree));
  for (const auto& [m, l] : s.terms())
    if (m.degree() <= degree)
      for (const auto& [e, c] : l.entries()) out.add_term(m, e, c);
  return out;
}

template <class S>
S coefficient(const BasicSeries<S>& s, const Monomial& m, int lambda) {
  return s.coefficient(m, lambda);
}

/// Default lambda floor for exponentials: lambda^(-2 ceil(D/3)).
inline int default_exponential_floor(int max_degree) { return -2 * ((max_degree + 2) / 3); }

/// exp(s) for s without constant term, through the degree recursion
/// d Z_d = sum_k k s_k Z_{d-k}. Genus-zero (lambda^-2) terms must have
/// degree >= 3 so that the lambda exponents stay bounded below.
template <class S>
BasicSeries<S> exponential(const BasicSeries<S>& s, int lambda_floor) {
  const int cap = s.caps().max_degree;
  for (const auto& [m, l] : s.terms()) {
    if (m.is_one()) throw Error(ErrorKind::PreconditionViolated, "exponential needs a zero constant term");
    for (const auto& [e, c] : l.entries())
      if (e < 0 && m.degree() < 3 * (-e / 2))
        throw Error(ErrorKind::PreconditionViolated,
                    "term " + m.str() + " at lambda^" + std::to_string(e) + " has degree below 3 per lambda^-2");
  }
  const int top = std::max(s.lambda_max(), 0);
  auto windowed = [&](BasicSeries<S> x) {
    x.set_lambda_window(std::min(lambda_floor, x.lambda_min()), top);
    return x;
  };
  std::vector<BasicSeries<S>> parts, z;
  for (int d = 0; d <= cap; ++d) parts.push_back(windowed(homogeneous_part(s, d)));
  BasicSeries<S> one(s.caps(), s.system());
  one = windowed(one);
  one.add_term(Monomial(), 0, ScalarTraits<S>::from_rational(Rational(1)));
  z.push_back(one);
  BasicSeries<S> out = one;
  for (int d = 1; d <= cap; ++d) {
    BasicSeries<S> zd = windowed(BasicSeries<S>(s.caps(), s.system()));
    for (int k = 1; k <= d; ++k) {
      if (parts[static_cast<std::size_t>(k)].is_zero() || z[static_cast<std::size_t>(d - k)].is_zero()) continue;
      BasicSeries<S> p = multiply(parts[static_cast<std::size_t>(k)], z[static_cast<std::size_t>(d - k)]);
      p *= ScalarTraits<S>::from_rational(Rational(k));
      zd += p;
    }
    zd *= ScalarTraits<S>::from_rational(Rational(1, d));
    out += zd;
    z.push_back(std::move(zd));
  }
  out.set_valid_degree(s.valid_degree());
  return out;
}

template <class S>
BasicSeries<S> exponential(const BasicSeries<S>& s) {
  return exponential(s, default_exponential_floor(s.caps().max_degree));
}

template <class S>
BasicSeries<S> partial_derivative(const BasicSeries<S>& s, SeriesVar v) {
  BasicSeries<S> out(s.caps(), s.system());
  out.set_lambda_window(s.lambda_min(), s.lambda_max());
  out.set_valid_degree(s.valid_degree() - 1);
  for (const auto& [m, l] : s.terms()) {
    int k = m.exponent(v);
    if (k == 0) continue;
    Monomial reduced = m.without(v);
    S factor = ScalarTraits<S>::from_rational(Rational(k));
    for (const auto& [e, c] : l.entries()) out.add_term(reduced, e, c * factor);
  }
  return out;
}

template <class S>
BasicSeries<S> second_partial(const BasicSeries<S>& s, SeriesVar v1, SeriesVar v2) {
  return partial_derivative(partial_derivative(s, v1), v2);
}

/// Multiplies each monomial by the product of factor(v) over its variables
/// (with multiplicity).
template <class S>
BasicSeries<S> substitute_rescale(const BasicSeries<S>& s, const std::function<S(SeriesVar)>& factor) {
  BasicSeries<S> out(s.caps(), s.system());
  out.set_lambda_window(s.lambda_min(), s.lambda_max());
  out.set_valid_degree(s.valid_degree());
  std::map<SeriesVar, S> cache;
  auto f = [&](SeriesVar v) -> const S& {
    auto it = cache.find(v);
    if (it == cache.end()) {
      S x = factor(v);
      if (ScalarTraits<S>::is_zero(x)) throw Error(ErrorKind::PreconditionViolated, "zero rescaling factor");
      it = cache.emplace(v, x).first;
    }
    return it->second;
  };
  for (const auto& [m, l] : s.terms()) {
    S w = ScalarTraits<S>::from_rational(Rational(1));
    for (std::size_t i = 0; i < m.num_factors(); ++i)
      for (int k = 0; k < m.exponent_at(i); ++k) w *= f(m.var(i));
    for (const auto& [e, c] : l.entries()) out.add_term(m, e, c * w);
  }
  return out;
}

template <class S>
BasicSeries<S> substitute_rescale(const BasicSeries<S>& s, const std::map<SeriesVar, S>& factors) {
  return substitute_rescale<S>(s, std::function<S(SeriesVar)>([&](SeriesVar v) {
    auto it = factors.find(v);
    return it == factors.end() ? ScalarTraits<S>::from_rational(Rational(1)) : it->second;
  }));
}

template <class S>
using ScalarMatrix = std::vector<std::vector<S>>;

namespace detail {

template <class S>
bool is_invertible(ScalarMatrix<S> a) {
  const std::size_t n = a.size();
  double scale = 0.0;
  for (const auto& row : a)
    for (const auto& x : row) scale = std::max(scale, ScalarTraits<S>::magnitude(x));
  const double eps = ScalarTraits<S>::mode == ScalarMode::Exact ? 0.0 : 1e-12 * std::max(scale, 1.0);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    double best = eps;
    for (std::size_t row = col; row < n; ++row) {
      double mag = ScalarTraits<S>::magnitude(a[row][col]);
      bool usable = ScalarTraits<S>::mode == ScalarMode::Exact ? !ScalarTraits<S>::is_zero(a[row][col]) : mag > best;
      if (usable && (pivot == n || mag > ScalarTraits<S>::magnitude(a[pivot][col]))) pivot = row;
    }
    if (pivot == n) return false;
    std::swap(a[col], a[pivot]);
    for (std::size_t row = col + 1; row < n; ++row) {
      S f = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
    }
  }
  return true;
}

}  // namespace detail

/// Replaces every t_a^m by sum_{m'} matrix[m][m'] t_a^{m'} (the same matrix
/// at every level). The result is tagged with the given variable system.
template <class S>
BasicSeries<S> substitute_linear(const BasicSeries<S>& s, const ScalarMatrix<S>& matrix, VariableSystem target) {
  const std::size_t r = matrix.size();
  for (const auto& row : matrix)
    if (row.size() != r) throw Error(ErrorKind::DimensionMismatch, "basis change must be square");
  if (!detail::is_invertible(matrix)) throw Error(ErrorKind::SingularMatrix, "basis change is singular");
  BasicSeries<S> out(s.caps(), target);
  out.set_lambda_window(s.lambda_min(), s.lambda_max());
  out.set_valid_degree(s.valid_degree());
  for (const auto& [m, l] : s.terms()) {
    if (m.max_slot() >= static_cast<int>(r)) throw Error(ErrorKind::DimensionMismatch, "slot outside basis change");
    std::map<Monomial, S> expansion{{Monomial(), ScalarTraits<S>::from_rational(Rational(1))}};
    for (std::size_t i = 0; i < m.num_factors(); ++i) {
      SeriesVar v = m.var(i);
      for (int rep = 0; rep < m.exponent_at(i); ++rep) {
        std::map<Monomial, S> next;
        for (const auto& [pm, pc] : expansion) {
          for (std::size_t j = 0; j < r; ++j) {
            const S& w = matrix[static_cast<std::size_t>(v.slot)][j];
            if (ScalarTraits<S>::is_zero(w)) continue;
            next[pm.times({v.level, static_cast<int>(j)})] += pc * w;
          }
        }
        expansion = std::move(next);
      }
    }
    for (const auto& [pm, pc] : expansion)
      for (const auto& [e, c] : l.entries()) out.add_term(pm, e, c * pc);
  }
  return out;
}

NumericSeries to_numeric(const ExactSeries& s);

}  // namespace bgw
