#include "bgw/series.hpp"

#include <regex>

namespace bgw {

std::uint32_t Monomial::pack(SeriesVar v, int e) {
  if (v.level < 0 || v.level > kMaxLevel || v.slot < 0 || v.slot > kMaxSlot)
    throw Error(ErrorKind::InvalidInput, "series variable out of range");
  if (e < 1 || e > kMaxExponent) throw Error(ErrorKind::InvalidInput, "monomial exponent out of range");
  return (static_cast<std::uint32_t>(v.level) << 20) | (static_cast<std::uint32_t>(v.slot) << 8) |
         static_cast<std::uint32_t>(e);
}

Monomial Monomial::of(SeriesVar v, int exponent) {
  Monomial m;
  m.packed_.push_back(pack(v, exponent));
  m.degree_ = exponent;
  return m;
}

Monomial Monomial::from_factors(const std::vector<std::pair<SeriesVar, int>>& factors) {
  Monomial m;
  for (const auto& [v, e] : factors)
    if (e > 0) m = m.times(v, e);
  return m;
}

int Monomial::exponent(SeriesVar v) const {
  const std::uint32_t key = pack(v, 1) & ~0xffu;
  for (std::uint32_t w : packed_)
    if ((w & ~0xffu) == key) return static_cast<int>(w & 0xff);
  return 0;
}

std::vector<std::pair<SeriesVar, int>> Monomial::factors() const {
  std::vector<std::pair<SeriesVar, int>> out;
  for (std::size_t i = 0; i < packed_.size(); ++i) out.emplace_back(var(i), exponent_at(i));
  return out;
}

int Monomial::max_level() const {
  int m = 0;
  for (std::size_t i = 0; i < packed_.size(); ++i) m = std::max(m, var(i).level);
  return m;
}

int Monomial::max_slot() const {
  int m = 0;
  for (std::size_t i = 0; i < packed_.size(); ++i) m = std::max(m, var(i).slot);
  return m;
}

int Monomial::level_sum() const {
  int s = 0;
  for (std::size_t i = 0; i < packed_.size(); ++i) s += var(i).level * exponent_at(i);
  return s;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial out;
  out.packed_.reserve(packed_.size() + o.packed_.size());
  std::size_t i = 0, j = 0;
  while (i < packed_.size() || j < o.packed_.size()) {
    if (j == o.packed_.size() || (i < packed_.size() && (packed_[i] >> 8) < (o.packed_[j] >> 8))) {
      out.packed_.push_back(packed_[i++]);
    } else if (i == packed_.size() || (o.packed_[j] >> 8) < (packed_[i] >> 8)) {
      out.packed_.push_back(o.packed_[j++]);
    } else {
      int e = static_cast<int>((packed_[i] & 0xff) + (o.packed_[j] & 0xff));
      if (e > kMaxExponent) throw Error(ErrorKind::InvalidInput, "monomial exponent overflow");
      out.packed_.push_back((packed_[i] & ~0xffu) | static_cast<std::uint32_t>(e));
      ++i;
      ++j;
    }
  }
  out.degree_ = degree_ + o.degree_;
  return out;
}

Monomial Monomial::times(SeriesVar v, int exponent) const { return *this * of(v, exponent); }

Monomial Monomial::without(SeriesVar v) const {
  const std::uint32_t key = pack(v, 1) & ~0xffu;
  Monomial out = *this;
  for (std::size_t i = 0; i < out.packed_.size(); ++i) {
    if ((out.packed_[i] & ~0xffu) != key) continue;
    if ((out.packed_[i] & 0xff) == 1)
      out.packed_.erase(out.packed_.begin() + static_cast<std::ptrdiff_t>(i));
    else
      --out.packed_[i];
    --out.degree_;
    return out;
  }
  throw Error(ErrorKind::InvalidInput, "variable not present in monomial");
}

std::string Monomial::str() const {
  if (packed_.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < packed_.size(); ++i) {
    if (i) out += " ";
    SeriesVar v = var(i);
    out += "t[" + std::to_string(v.level) + "," + std::to_string(v.slot) + "]";
    if (exponent_at(i) > 1) out += "^" + std::to_string(exponent_at(i));
  }
  return out;
}

Monomial Monomial::parse(std::string_view text) {
  static const std::regex factor(R"(\s*t\[(\d+),(\d+)\](?:\^(\d+))?\s*)");
  std::string rest(text);
  Monomial m;
  if (std::regex_match(rest, std::regex(R"(\s*1\s*)"))) return m;
  std::smatch match;
  bool any = false;
  while (!rest.empty()) {
    if (!std::regex_search(rest, match, factor, std::regex_constants::match_continuous))
      throw Error(ErrorKind::InvalidInput, "cannot parse monomial '" + std::string(text) + "'");
    const int e = match[3].matched ? std::stoi(match[3]) : 1;
    m = m.times({std::stoi(match[1]), std::stoi(match[2])}, e);
    rest = match.suffix();
    any = true;
  }
  if (!any) throw Error(ErrorKind::InvalidInput, "empty monomial");
  return m;
}

std::string variable_system_name(VariableSystem s) {
  switch (s) {
    case VariableSystem::Generic: return "generic";
    case VariableSystem::ClassBasis: return "class";
    case VariableSystem::Canonical: return "canonical";
    case VariableSystem::CanonicalRescaled: return "canonical-rescaled";
  }
  return "unknown";
}

NumericSeries to_numeric(const ExactSeries& s) {
  NumericSeries out(s.caps(), s.system());
  out.set_lambda_window(s.lambda_min(), s.lambda_max());
  out.set_valid_degree(s.valid_degree());
  for (const auto& [m, l] : s.terms())
    for (const auto& [e, c] : l.entries()) out.add_term(m, e, Complex(c.to_double(), 0.0));
  return out;
}

}  // namespace bgw
