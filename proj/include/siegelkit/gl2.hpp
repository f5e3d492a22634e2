#pragma once

#include <vector>

#include "siegelkit/matrix.hpp"

namespace siegelkit {

struct UpperHalfPoint {
  BigFloat re;
  BigFloat im;  // > 0
};

/// Moebius action z -> (a z + b) / (c z + d) of a real 2x2 matrix with
/// positive determinant. im is multiplied by det(g) / |c z + d|^2.
UpperHalfPoint mobius(const RealMatrix& g, const UpperHalfPoint& z);

struct FundamentalDomainCert {
  UpperHalfPoint point;  // -1/2 <= re <= 1/2 and |z| >= 1, within tolerance
  IntegerMatrix delta;   // in SL_2(Z), exact; point = delta . input
};

/// Gauss reduction into the standard fundamental domain: translate re into
/// [-1/2, 1/2], invert while |z| < 1. Throws PrecisionExhausted when the
/// loop fails to settle at the working precision.
FundamentalDomainCert reduce_point(const UpperHalfPoint& z, const Precision& prec);

/// All Hermite-form matrices [[a, b], [0, d]] with a d = N and 0 <= b < d,
/// ordered by (a, b); there are sigma_1(N) of them.
std::vector<IntegerMatrix> isogeny_matrices(const BigInt& N);

struct Gl2Record {
  BigInt N;
  int idx;
  BigInt a, b, d;  // the Hermite representative
  BigInt H;        // height of gamma = delta * m
  BigFloat ratio;  // H / N
};

struct Gl2Summary {
  double slope = 0;        // least-squares slope of log max_N H against log N
  BigFloat max_ratio;      // corpus maximum of H / N
  std::size_t count = 0;
  std::size_t cert_violations = 0;  // gamma whose action left the domain
};

struct Gl2Result {
  std::vector<Gl2Record> records;
  Gl2Summary summary;
};

/// For every N <= n_max and every Hermite representative m, reduces the
/// translate m.x and records the height of gamma = delta * m. Requires x in
/// the fundamental domain within tol. Each gamma is re-checked to map x into
/// the domain; violations are counted in the summary.
Gl2Result hp_experiment(const UpperHalfPoint& x, int n_max, const Precision& prec,
                        const BigFloat& tol);

}  // namespace siegelkit
