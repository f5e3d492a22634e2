#include "siegelkit/decomp.hpp"

namespace siegelkit {

UduFactorization udu_factor(const RealMatrix& a, const Precision& prec) {
  ScopedPrecision scope(prec);
  require_square(a, "udu_factor");
  const Index n = a.rows();

  BigFloat scale = max_abs(a);
  if (scale < 1) scale = 1;
  BigFloat eps_sym = prec.eps_rec() * scale;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (abs(a(i, j) - a(j, i)) > eps_sym)
        throw ShapeError("udu_factor requires a symmetric matrix (entry (" + std::to_string(i) +
                         "," + std::to_string(j) + ") differs from its transpose)");

  RealMatrix nu = RealMatrix::Identity(n, n);
  RealVector d(n);
  for (Index j = n - 1; j >= 0; --j) {
    BigFloat pivot = a(j, j);
    for (Index k = j + 1; k < n; ++k) pivot -= nu(j, k) * nu(j, k) * d(k);
    if (pivot <= prec.eps_pivot())
      throw NotPositiveDefinite("udu_factor requires positive reverse leading minors; pivot " +
                                std::to_string(j) + " is not positive at the working precision");
    d(j) = pivot;
    for (Index i = j - 1; i >= 0; --i) {
      BigFloat s = a(i, j);
      for (Index k = j + 1; k < n; ++k) s -= nu(i, k) * nu(j, k) * d(k);
      nu(i, j) = s / pivot;
    }
  }
  return {std::move(nu), std::move(d)};
}

IwasawaDecomposition iwasawa(const RealMatrix& g, const Precision& prec) {
  ScopedPrecision scope(prec);
  require_square(g, "iwasawa");
  const Index n = g.rows();

  RealMatrix gram = g * g.transpose();
  // Symmetrize rounding noise before factoring.
  gram = ((gram + gram.transpose()) / BigFloat(2)).eval();

  UduFactorization f;
  try {
    f = udu_factor(gram, prec);
  } catch (const NotPositiveDefinite&) {
    throw NearSingular("iwasawa requires an invertible matrix (the Gram matrix lost positivity "
                       "at the working precision)");
  }

  RealVector alpha(n);
  for (Index i = 0; i < n; ++i) alpha(i) = sqrt(f.d(i));

  BigFloat amax = alpha(0), amin = alpha(0);
  for (Index i = 1; i < n; ++i) {
    if (alpha(i) > amax) amax = alpha(i);
    if (alpha(i) < amin) amin = alpha(i);
  }
  if (amin <= prec.eps_sing() * amax)
    throw NearSingular("iwasawa requires an invertible matrix (singular value estimate below "
                       "the working-precision guard)");

  RealMatrix kappa = f.nu.triangularView<Eigen::UnitUpper>().solve(g);
  for (Index i = 0; i < n; ++i) kappa.row(i) /= alpha(i);

  RealMatrix drift = kappa * kappa.transpose() - RealMatrix::Identity(n, n);
  if (max_abs(drift) > prec.eps_orth() / 4) {
    // One Newton step toward the orthogonal factor.
    kappa = (kappa * (BigFloat(3) * RealMatrix::Identity(n, n) - kappa.transpose() * kappa) /
             BigFloat(2))
                .eval();
  }

  return {std::move(f.nu), std::move(alpha), std::move(kappa)};
}

}  // namespace siegelkit
