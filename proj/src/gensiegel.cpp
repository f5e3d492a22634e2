#include "siegelkit/gensiegel.hpp"

#include "siegelkit/exactmat.hpp"
#include "siegelkit/rng.hpp"

namespace siegelkit {

namespace {

/// Upper-triangular factor with positive diagonal of an SPD matrix:
/// a = sigma * sigma^T (reverse Cholesky, via the UDU^T factorization).
RealMatrix reverse_cholesky(const RealMatrix& a, const Precision& prec) {
  UduFactorization f = udu_factor(a, prec);
  RealMatrix sigma = f.nu;
  for (Index j = 0; j < a.cols(); ++j) sigma.col(j) *= sqrt(f.d(j));
  return sigma;
}

void validate_triple(const SiegelTripleGLn& triple) {
  require_square(triple.flag, "standardize flag");
  require_square(triple.form, "standardize form");
  if (triple.flag.rows() != triple.form.rows())
    throw ShapeError("standardize requires the flag and the form to share one dimension");
  if (triple.t_squared <= 0) throw DomainError("standardize requires t > 0");
  for (Index i = 0; i < triple.form.rows(); ++i)
    for (Index j = i + 1; j < triple.form.cols(); ++j)
      if (triple.form(i, j) != triple.form(j, i))
        throw ShapeError("standardize requires an exactly symmetric form");
  if (!is_positive_definite(triple.form))
    throw NotPositiveDefinite("standardize requires a positive definite form (an exact leading "
                              "minor is not positive)");
  if (det(triple.flag) == 0)
    throw SingularMatrix("standardize requires an invertible flag matrix");
}

}  // namespace

StandardizationResult standardize(const SiegelTripleGLn& triple, const Precision& prec,
                                  const BigFloat& sample_margin) {
  ScopedPrecision scope(prec);
  validate_triple(triple);
  const Index n = triple.flag.rows();

  // Conjugating by the flag moves the parabolic to the standard Borel and
  // the compact to the orthogonal group of Q' = g_P^T Q g_P.
  RationalMatrix q_prime = triple.flag.transpose() * triple.form * triple.flag;
  RationalMatrix q_prime_inv = inverse(q_prime);

  RealMatrix sigma = reverse_cholesky(rational_lift(q_prime_inv), prec);
  RealVector beta(n);
  for (Index j = 0; j < n; ++j) beta(j) = sigma(j, j);
  RealMatrix tau = sigma;
  for (Index j = 0; j < n; ++j) tau.col(j) /= beta(j);

  RealMatrix flag_inv = rational_lift(inverse(triple.flag));
  RealMatrix flag_real = rational_lift(triple.flag);
  BigFloat shape_tol = prec.eps_rec() * BigFloat(1000);
  BigFloat u_raw(0);
  for (std::size_t s = 0; s < triple.omega_samples.size(); ++s) {
    const RealMatrix& omega = triple.omega_samples[s];
    require_square(omega, "standardize omega sample");
    if (omega.rows() != n) throw ShapeError("standardize omega sample has the wrong dimension");
    RealMatrix w = flag_inv * omega * flag_real * tau;
    BigFloat scale = max_abs(w);
    if (scale < 1) scale = 1;
    for (Index i = 0; i < n; ++i) {
      if (abs(w(i, i) - 1) > shape_tol * scale)
        throw InconsistentOmega("omega sample " + std::to_string(s + 1) +
                                " does not conjugate into the unipotent group (diagonal)");
      for (Index j = 0; j < i; ++j)
        if (abs(w(i, j)) > shape_tol * scale)
          throw InconsistentOmega("omega sample " + std::to_string(s + 1) +
                                  " does not conjugate into the unipotent group (lower part)");
    }
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j)
        if (abs(w(i, j)) > u_raw) u_raw = abs(w(i, j));
  }

  BigFloat t_real = sqrt(BigFloat(triple.t_squared));
  BigFloat min_ratio(1);
  for (Index j = 0; j + 1 < n; ++j) {
    BigFloat r = beta(j) / beta(j + 1);
    if (j == 0 || r < min_ratio) min_ratio = r;
  }

  StandardizationResult result;
  result.gamma_q = triple.flag;
  result.sigma = std::move(sigma);
  result.tau = std::move(tau);
  result.beta = std::move(beta);
  result.u_prime = u_raw * (1 + sample_margin);
  result.s = t_real * min_ratio;
  return result;
}

ContainmentReport verify_containment(const SiegelTripleGLn& triple,
                                     const StandardizationResult& result,
                                     const ContainmentGrid& grid, const Precision& prec,
                                     const BigFloat& check_margin, const BigFloat& tol) {
  ScopedPrecision scope(prec);
  const Index n = triple.flag.rows();
  const BigFloat t_real = sqrt(BigFloat(triple.t_squared));

  RealMatrix flag_real = rational_lift(triple.flag);
  RealMatrix flag_inv = rational_lift(inverse(triple.flag));
  // The triple's torus is the conjugate of the diagonal by flag * sigma.
  RealMatrix conj = flag_real * result.sigma;
  RealMatrix conj_inv = result.sigma.inverse() * flag_inv;
  // Q-orthogonal samples are L r L^-1 with L L^T = Q^-1 and r orthogonal.
  RealMatrix l_factor = reverse_cholesky(rational_lift(inverse(triple.form)), prec);
  RealMatrix l_inv = l_factor.inverse();

  const BigFloat u_check = result.u_prime + check_margin;
  const BigFloat s_check = result.s * (1 - check_margin);

  ContainmentReport report;
  Rng rng = Rng::derive({grid.seed, 0xE1});
  for (int ks = 0; ks < grid.kappa_samples; ++ks) {
    RealMatrix r =
        ks == 0 ? RealMatrix(RealMatrix::Identity(n, n)) : random_orthogonal(n, rng, prec);
    RealMatrix kappa = l_factor * r * l_inv;
    for (int sc = 0; sc < grid.scale_points; ++sc) {
      BigFloat lambda(1);
      if (grid.scale_points > 1) {
        BigFloat lo = BigFloat(-grid.log_scale_range);
        BigFloat step = BigFloat(2 * grid.log_scale_range) / (grid.scale_points - 1);
        lambda = exp(lo + step * sc);
      }
      // Boundary ray: consecutive ratios exactly t.
      RealVector a(n);
      a(n - 1) = lambda;
      for (Index j = n - 2; j >= 0; --j) a(j) = a(j + 1) * t_real;
      RealMatrix alpha = conj * a.asDiagonal() * conj_inv;

      for (std::size_t om = 0; om < triple.omega_samples.size(); ++om) {
        RealMatrix g = triple.omega_samples[om] * alpha * kappa;
        RealMatrix standardized = flag_inv * g * flag_real * result.sigma;
        ++report.points_checked;
        std::string what;
        try {
          IwasawaDecomposition dec = iwasawa(standardized, prec);
          if (!in_omega(dec.nu, u_check, tol))
            what = "unipotent part exceeded u'";
          else if (!in_at(dec.alpha, s_check, tol))
            what = "diagonal ratio fell below s";
        } catch (const std::exception& e) {
          what = e.what();
        }
        if (!what.empty())
          report.failures.push_back({static_cast<int>(om), sc, ks, std::move(what)});
      }
    }
  }
  return report;
}

}  // namespace siegelkit
