#pragma once

#include <json.hpp>
#include <string>
#include <variant>
#include <vector>

#include "bgw/characters.hpp"
#include "bgw/series.hpp"

namespace bgw {

using Json = nlohmann::json;

struct Violation {
  std::string location;  // monomial, key, or triple
  int lambda = 0;
  std::string lhs;
  std::string rhs;
};

/// Outcome of one family of coefficient comparisons.
struct ConstraintReport {
  std::string check;     // "virasoro", "kdv", "cohft", ...
  std::string op;        // e.g. "L_1 diagonal", "L_0^(2)"
  std::string group;
  std::size_t checked = 0;
  std::variant<Rational, double> max_residual = Rational(0);
  /// Highest t-degree at which coefficients were compared; -1 when not
  /// applicable.
  int watermark = -1;
  std::size_t violation_count = 0;
  std::vector<Violation> violations;  // the first few only

  static constexpr std::size_t kMaxListed = 20;

  bool passed() const { return violation_count == 0; }
  void add_violation(Violation v) {
    ++violation_count;
    if (violations.size() < kMaxListed) violations.push_back(std::move(v));
  }
  void note_residual(const Rational& r) {
    if (auto* cur = std::get_if<Rational>(&max_residual); cur && r.abs() > *cur) *cur = r.abs();
  }
  void note_residual(double r) {
    if (auto* cur = std::get_if<double>(&max_residual); cur && r > *cur) *cur = r;
  }
};

/// Rounds to 15 significant digits so that printed floats are reproducible.
Json json_float(double x);
Json json_complex(const Complex& z);
Json to_json(const Rational& r);
Json to_json(const ConstraintReport& r);
Json to_json(const std::vector<ConstraintReport>& rs);
Json to_json(const ExactSeries& s);
Json to_json(const NumericSeries& s);
Json to_json(const CharacterTable& ct, const CanonicalBasis& cb);
Json group_json(const ClassAlgebra& algebra);

/// One-line summary for text output.
std::string summary_line(const ConstraintReport& r);

}  // namespace bgw
