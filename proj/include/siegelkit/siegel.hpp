#pragma once

#include <vector>

#include "siegelkit/decomp.hpp"
#include "siegelkit/matrix.hpp"

namespace siegelkit {

/// Parameters (u, t) of the standard Siegel set Omega_u A_t K. t is stored
/// through its square so that t = sqrt(3)/2 stays exactly comparable
/// (t <= sqrt(3)/2 iff t^2 <= 3/4).
struct SiegelParams {
  Rational u;
  Rational t_squared;

  /// u >= 1/2 and t <= sqrt(3)/2, compared exactly. When set, the Siegel set
  /// is a fundamental set for GL_n(Z).
  bool fundamental() const { return u >= Rational(1, 2) && t_squared <= Rational(3, 4); }

  /// t at the current working precision.
  BigFloat t() const { return sqrt(BigFloat(t_squared)); }
  BigFloat u_real() const { return BigFloat(u); }

  static SiegelParams standard_fundamental() { return {Rational(1, 2), Rational(3, 4)}; }
  static SiegelParams from_t(const Rational& u, const Rational& t);
  static SiegelParams from_t_squared(const Rational& u, const Rational& t2);

  /// Parses a t specification: the token "sqrt3over2" or an exact rational.
  /// Returns the squared value.
  static Rational parse_t_squared(const std::string& text);
};

/// True iff every strict upper entry satisfies |nu_ij| <= u + tol.
/// Throws ShapeError if nu is not unit upper triangular within tol.
bool in_omega(const RealMatrix& nu, const BigFloat& u, const BigFloat& tol);

/// True iff alpha_j / alpha_{j+1} >= t * (1 - tol) for every j.
/// Throws DomainError if any alpha_j <= 0.
bool in_at(const RealVector& alpha, const BigFloat& t, const BigFloat& tol);

struct MembershipResult {
  bool member;
  IwasawaDecomposition dec;
};

/// Decomposes g and tests nu against Omega_u and alpha against A_t.
MembershipResult in_siegel(const RealMatrix& g, const SiegelParams& params, const BigFloat& tol,
                           const Precision& prec);

struct ReductionResult {
  IntegerMatrix delta;      // unimodular, delta * g in the Siegel set
  IwasawaDecomposition dec; // decomposition of delta * g
  int swaps;
};

/// Potential tracked by the reduction loop: prod_j alpha_j^(2*j) with j
/// counted from 0. Size reduction leaves it fixed; every row swap strictly
/// decreases it.
BigFloat siegel_potential(const RealVector& alpha);

/// Reduces g into the fundamental Siegel set by a unimodular matrix,
/// alternating size-reduction rows (integer shears) with adjacent row swaps
/// wherever alpha_j / alpha_{j+1} < t. Requires fundamental params.
/// Throws PrecisionExhausted if membership cannot be certified within tol.
/// When `potential_trace` is given, the potential is appended once per
/// decomposition round.
ReductionResult reduce_to_siegel(const RealMatrix& g, const SiegelParams& params,
                                 const Precision& prec, const BigFloat& tol,
                                 std::vector<BigFloat>* potential_trace = nullptr);

}  // namespace siegelkit
