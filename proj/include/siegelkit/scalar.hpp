#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <string>

#include "siegelkit/errors.hpp"

namespace siegelkit {

namespace mp = boost::multiprecision;

/// Arbitrary-size integer (GMP-backed).
using BigInt = mp::number<mp::gmp_int, mp::et_off>;

/// Exact rational, always kept in lowest terms with positive denominator
/// (GMP canonicalizes on every operation; zero is 0/1).
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

/// Arbitrary-precision binary float (MPFR-backed, variable precision).
/// The working precision comes from the active Precision context.
using BigFloat = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

/// Working-precision context. Tolerances are derived from the bit count:
/// 30 guard bits absorb the O(n^3) rounding of the factorizations at
/// dimensions up to kMaxDim.
struct Precision {
  int bits = 128;

  BigFloat eps_rec() const;    // 2^-(bits-30), reconstruction tolerance
  BigFloat eps_orth() const;   // 2^-(bits-30), orthogonality tolerance
  BigFloat eps_pivot() const;  // 2^-(bits/2), positive-definiteness floor
  BigFloat eps_sing() const;   // 2^-(bits/2), near-singularity guard

  /// Decimal digits that give at least `bits` mantissa bits.
  int digits10() const;
  /// Significant digits used when serializing BigFloat values (bits/3).
  int out_digits() const;
};

/// Applies a Precision to the MPFR default and restores the previous value
/// on destruction. The MPFR default is process-wide, so all concurrent work
/// must share one precision; worker threads re-assert the same value.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(const Precision& prec);
  ~ScopedPrecision();
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  unsigned saved_digits10_;
};

/// 2^e at the current working precision.
BigFloat pow2(int e);

/// Nearest integer (ties away from zero).
BigInt round_to_int(const BigFloat& x);

/// Parses "a", "-a" or "a/b". Throws IoError on malformed input or b = 0.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& x);

/// Decimal scientific notation with the given number of significant digits.
std::string to_string(const BigFloat& x, int significant_digits);

}  // namespace siegelkit
