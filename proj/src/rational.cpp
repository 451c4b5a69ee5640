#include "bgw/rational.hpp"

#include <ostream>

#include "bgw/error.hpp"

namespace bgw {

std::string_view error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::OrderExceedsLimit: return "OrderExceedsLimit";
    case ErrorKind::UnsupportedName: return "UnsupportedName";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorKind::IdempotencyCheckFailed: return "IdempotencyCheckFailed";
    case ErrorKind::ReconstructionFailed: return "ReconstructionFailed";
    case ErrorKind::CapMismatch: return "CapMismatch";
    case ErrorKind::GenusUnderflow: return "GenusUnderflow";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::WorkCapExceeded: return "WorkCapExceeded";
    case ErrorKind::UnstableKey: return "UnstableKey";
    case ErrorKind::VariableSystemMismatch: return "VariableSystemMismatch";
    case ErrorKind::LevelCapExceeded: return "LevelCapExceeded";
    case ErrorKind::ToleranceExceeded: return "ToleranceExceeded";
  }
  return "Unknown";
}

Rational::Rational(long num, long den) {
  if (den == 0) throw Error(ErrorKind::InvalidInput, "zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::from_integers(const mpz_class& num, const mpz_class& den) {
  if (sgn(den) == 0) throw Error(ErrorKind::InvalidInput, "zero denominator");
  return Rational(mpq_class(num, den));
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) {
    throw Error(ErrorKind::InvalidInput, "not a rational: '" + s + "'");
  }
  if (sgn(q.get_den()) == 0) throw Error(ErrorKind::InvalidInput, "zero denominator: '" + s + "'");
  return Rational(q);
}

std::string Rational::str() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorKind::InvalidInput, "division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::pow(int exponent) const {
  if (exponent < 0) {
    if (is_zero()) throw Error(ErrorKind::InvalidInput, "zero to a negative power");
    return Rational(1) / pow(-exponent);
  }
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return from_integers(num, den);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n < 0 ? 0 : n));
  return Rational(mpq_class(f));
}

}  // namespace bgw
