#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "siegelkit/siegel.hpp"

namespace siegelkit {

/// A GL_n Siegel set given by a rational full flag (the columns of `flag`
/// conjugate the standard Borel), a maximal compact subgroup encoded as the
/// orthogonal group of an exact positive-definite form, a cone threshold t,
/// and a finite list of samples representing the compact set Omega.
struct SiegelTripleGLn {
  RationalMatrix flag;  // g_P, invertible
  RationalMatrix form;  // Q, symmetric positive definite
  Rational t_squared;
  std::vector<RealMatrix> omega_samples;
};

struct StandardizationResult {
  RationalMatrix gamma_q;  // conjugates the flag's parabolic to the Borel
  RealMatrix sigma;        // upper triangular, sigma sigma^T = Q'^-1
  RealMatrix tau;          // unit upper triangular factor of sigma
  RealVector beta;         // positive diagonal of sigma
  BigFloat u_prime;        // sample max of the transformed Omega, plus margin
  BigFloat s;              // t * min_j beta_j / beta_{j+1}
};

/// Produces gamma_q and sigma = tau * diag(beta) such that conjugating the
/// triple's Siegel set by gamma_q and right-multiplying by sigma lands in
/// the standard Siegel set with parameters (u_prime, s). Throws
/// NotPositiveDefinite for a bad form, SingularMatrix for a singular flag,
/// InconsistentOmega if a transformed Omega sample is not unit upper
/// triangular within tolerance.
StandardizationResult standardize(const SiegelTripleGLn& triple, const Precision& prec,
                                  const BigFloat& sample_margin = BigFloat(1) / 20);

struct ContainmentGrid {
  int scale_points = 10;    // logarithmic scales along the boundary rays
  int kappa_samples = 10;   // Q-orthogonal samples (the first is always 1)
  double log_scale_range = 3.0;
  std::uint64_t seed = 1;
};

struct ContainmentFailure {
  int omega_idx;
  int scale_idx;
  int kappa_idx;
  std::string what;
};

struct ContainmentReport {
  int points_checked = 0;
  std::vector<ContainmentFailure> failures;
};

/// Checks, over a finite grid of Siegel-set elements omega * alpha * kappa
/// (alpha on boundary rays with consecutive ratios exactly t, kappa sampled
/// from the form's orthogonal group), that the standardized conjugate lies
/// in the standard Siegel set with parameters (u_prime + margin,
/// s * (1 - margin)). Failures are reported, not thrown.
ContainmentReport verify_containment(const SiegelTripleGLn& triple,
                                     const StandardizationResult& result,
                                     const ContainmentGrid& grid, const Precision& prec,
                                     const BigFloat& check_margin, const BigFloat& tol);

}  // namespace siegelkit
