#pragma once

#include "siegelkit/matrix.hpp"

namespace siegelkit {

struct UduFactorization {
  RealMatrix nu;  // unit upper triangular
  RealVector d;   // positive pivots, a = nu * diag(d) * nu^T
};

/// Factors a symmetric positive definite matrix as nu * diag(d) * nu^T with
/// nu unit upper triangular. Pivots are produced from the bottom-right
/// corner up. Throws ShapeError if a is not symmetric within
/// eps_rec * max(1, |a|_inf), NotPositiveDefinite if any pivot <= eps_pivot.
UduFactorization udu_factor(const RealMatrix& a, const Precision& prec);

/// g = nu * diag(alpha) * kappa with nu unit upper triangular, alpha
/// positive, kappa orthogonal.
struct IwasawaDecomposition {
  RealMatrix nu;
  RealVector alpha;
  RealMatrix kappa;

  RealMatrix reconstruct() const { return nu * alpha.asDiagonal() * kappa; }
};

/// Iwasawa (NAK) decomposition via the UDU^T factorization of g * g^T;
/// alpha_i = sqrt(d_i), kappa = diag(alpha)^-1 * nu^-1 * g with one Newton
/// re-orthogonalization step if the drift exceeds eps_orth / 4.
/// Throws NearSingular when g fails the invertibility estimate.
IwasawaDecomposition iwasawa(const RealMatrix& g, const Precision& prec);

}  // namespace siegelkit
