#include "siegelkit/siegel.hpp"

namespace siegelkit {

SiegelParams SiegelParams::from_t(const Rational& u, const Rational& t) {
  if (u <= 0 || t <= 0) throw DomainError("Siegel parameters require u > 0 and t > 0");
  return {u, t * t};
}

SiegelParams SiegelParams::from_t_squared(const Rational& u, const Rational& t2) {
  if (u <= 0 || t2 <= 0) throw DomainError("Siegel parameters require u > 0 and t > 0");
  return {u, t2};
}

Rational SiegelParams::parse_t_squared(const std::string& text) {
  if (text == "sqrt3over2") return Rational(3, 4);
  Rational t = parse_rational(text);
  if (t <= 0) throw DomainError("Siegel parameter t must be positive");
  return t * t;
}

bool in_omega(const RealMatrix& nu, const BigFloat& u, const BigFloat& tol) {
  require_square(nu, "in_omega");
  const Index n = nu.rows();
  for (Index i = 0; i < n; ++i) {
    if (abs(nu(i, i) - 1) > tol)
      throw ShapeError("in_omega requires a unit upper triangular matrix (diagonal entry " +
                       std::to_string(i + 1) + " differs from 1 beyond tolerance)");
    for (Index j = 0; j < i; ++j)
      if (abs(nu(i, j)) > tol)
        throw ShapeError("in_omega requires a unit upper triangular matrix (subdiagonal entry (" +
                         std::to_string(i + 1) + "," + std::to_string(j + 1) +
                         ") is nonzero beyond tolerance)");
  }
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (abs(nu(i, j)) > u + tol) return false;
  return true;
}

bool in_at(const RealVector& alpha, const BigFloat& t, const BigFloat& tol) {
  const Index n = alpha.size();
  for (Index i = 0; i < n; ++i)
    if (alpha(i) <= 0)
      throw DomainError("in_at requires positive diagonal entries (entry " +
                        std::to_string(i + 1) + " is not positive)");
  BigFloat threshold = t * (BigFloat(1) - tol);
  for (Index j = 0; j + 1 < n; ++j)
    if (alpha(j) / alpha(j + 1) < threshold) return false;
  return true;
}

MembershipResult in_siegel(const RealMatrix& g, const SiegelParams& params, const BigFloat& tol,
                           const Precision& prec) {
  ScopedPrecision scope(prec);
  IwasawaDecomposition dec = iwasawa(g, prec);
  bool member =
      in_omega(dec.nu, params.u_real(), tol) && in_at(dec.alpha, params.t(), tol);
  return {member, std::move(dec)};
}

BigFloat siegel_potential(const RealVector& alpha) {
  BigFloat p(1);
  for (Index j = 0; j < alpha.size(); ++j)
    for (Index e = 0; e < 2 * j; ++e) p *= alpha(j);
  return p;
}

ReductionResult reduce_to_siegel(const RealMatrix& g, const SiegelParams& params,
                                 const Precision& prec, const BigFloat& tol,
                                 std::vector<BigFloat>* potential_trace) {
  ScopedPrecision scope(prec);
  require_square(g, "reduce_to_siegel");
  if (!params.fundamental())
    throw DomainError("reduce_to_siegel requires fundamental parameters (u >= 1/2 and "
                      "t <= sqrt(3)/2)");

  const Index n = g.rows();
  const BigFloat t = params.t();
  IntegerMatrix delta = IntegerMatrix::Identity(n, n);

  const int max_rounds = 10000;
  int swaps = 0;
  for (int round = 0; round < max_rounds; ++round) {
    IwasawaDecomposition dec = iwasawa(integer_lift(delta) * g, prec);
    if (potential_trace) potential_trace->push_back(siegel_potential(dec.alpha));

    // Size reduction: shear each row by integer multiples of later rows,
    // columns ascending so finished entries stay put. alpha and kappa are
    // untouched.
    for (Index i = 0; i + 1 < n; ++i) {
      for (Index j = i + 1; j < n; ++j) {
        BigInt c = round_to_int(dec.nu(i, j));
        if (c != 0) {
          delta.row(i) -= c * delta.row(j);
          dec.nu.row(i) -= BigFloat(c) * dec.nu.row(j);
        }
      }
    }

    Index bad = -1;
    for (Index j = 0; j + 1 < n; ++j) {
      if (dec.alpha(j) / dec.alpha(j + 1) < t) {
        bad = j;
        break;
      }
    }
    if (bad < 0) {
      IwasawaDecomposition final_dec = iwasawa(integer_lift(delta) * g, prec);
      if (in_omega(final_dec.nu, params.u_real(), tol) &&
          in_at(final_dec.alpha, t, tol))
        return {std::move(delta), std::move(final_dec), swaps};
      throw PrecisionExhausted("reduce_to_siegel could not certify membership within tolerance "
                               "at the working precision; retry with more bits");
    }
    delta.row(bad).swap(delta.row(bad + 1));
    ++swaps;
  }
  throw PrecisionExhausted("reduce_to_siegel exceeded the swap budget; retry with more bits");
}

}  // namespace siegelkit
