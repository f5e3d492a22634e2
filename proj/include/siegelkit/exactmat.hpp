#pragma once

#include "siegelkit/matrix.hpp"

namespace siegelkit {

/// Height of a rational matrix: max over entries of max(|numerator|,
/// denominator), entries in lowest terms. Always >= 1.
BigInt height(const RationalMatrix& m);
BigInt height(const IntegerMatrix& m);

/// Largest lowest-terms denominator among the entries; 1 iff m is integral.
BigInt denominator(const RationalMatrix& m);

/// Exact determinant by fraction-free (Bareiss) elimination.
BigInt det(const IntegerMatrix& m);
Rational det(const RationalMatrix& m);

/// |det| = 1, checked exactly.
bool is_unimodular(const IntegerMatrix& m);

struct HnfResult {
  IntegerMatrix h;  // upper triangular, positive diagonal, h(i,j) in [0, h(j,j)) for i < j
  IntegerMatrix u;  // unimodular, u * m = h
};

/// Row-style Hermite normal form. Throws SingularMatrix if det m = 0.
HnfResult hnf(const IntegerMatrix& m);

/// Exact inverse. Throws SingularMatrix if det m = 0.
RationalMatrix inverse(const RationalMatrix& m);

/// Exact symmetric positive-definiteness test via leading principal minors.
bool is_positive_definite(const RationalMatrix& m);

}  // namespace siegelkit
