#include "siegelkit/scalar.hpp"

#include <cmath>
#include <sstream>

namespace siegelkit {

BigFloat Precision::eps_rec() const { return pow2(-(bits - 30)); }
BigFloat Precision::eps_orth() const { return pow2(-(bits - 30)); }
BigFloat Precision::eps_pivot() const { return pow2(-(bits / 2)); }
BigFloat Precision::eps_sing() const { return pow2(-(bits / 2)); }

int Precision::digits10() const {
  // ceil(bits * log10 2) plus slack so the mantissa has at least `bits` bits.
  return static_cast<int>(std::ceil(bits * 0.30102999566398120)) + 2;
}

int Precision::out_digits() const { return bits / 3; }

ScopedPrecision::ScopedPrecision(const Precision& prec)
    : saved_digits10_(BigFloat::default_precision()) {
  if (prec.bits < 8) throw DomainError("precision must be at least 8 bits");
  BigFloat::default_precision(static_cast<unsigned>(prec.digits10()));
}

ScopedPrecision::~ScopedPrecision() { BigFloat::default_precision(saved_digits10_); }

BigFloat pow2(int e) { return ldexp(BigFloat(1), e); }

BigInt round_to_int(const BigFloat& x) { return static_cast<BigInt>(round(x)); }

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw IoError("empty rational literal");
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw IoError("rational literal with zero denominator: '" + text + "'");
    return Rational(num) / Rational(den);
  } catch (const IoError&) {
    throw;
  } catch (const std::exception&) {
    throw IoError("malformed rational literal: '" + text + "'");
  }
}

std::string to_string(const Rational& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

std::string to_string(const BigFloat& x, int significant_digits) {
  if (significant_digits < 2) significant_digits = 2;
  // str() counts digits after the point in scientific mode.
  return x.str(significant_digits - 1, std::ios_base::scientific);
}

}  // namespace siegelkit
