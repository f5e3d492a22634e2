#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "siegelkit/rng.hpp"
#include "siegelkit/siegel.hpp"

namespace siegelkit {

struct SiegelSamplePoint {
  RealMatrix mu;      // unit upper triangular, strict-upper entries in [-u, u]
  RealVector alpha;   // consecutive log-ratios in [log t, log t + 2], last entry 1
  RealMatrix kappa2;  // random orthogonal
};

/// Deterministic sample of a point mu * diag(alpha) * kappa2 in the Siegel
/// set. A fixed seed reproduces bit-identical output at a fixed precision.
SiegelSamplePoint sample_siegel_point(Index n, const SiegelParams& params, std::uint64_t seed,
                                      const Precision& prec);

/// Draws m = (1/D) M with M integral, |det m| = N and denominator(m) = D,
/// both exact. Construction: random upper-triangular T with positive
/// diagonal of product N * D^n and off-diagonal entries uniform below the
/// pivots, multiplied by bounded-word unimodular matrices on both sides;
/// rejected until the denominator is exactly D. Throws RetriesExhausted
/// after `retry_budget` failures (an infeasible (N, D) request).
RationalMatrix sample_rational_map(Index n, const BigInt& N, const BigInt& D, std::uint64_t seed,
                                   int retry_budget = 1000, int word_length = -1);

/// A gamma in S.S^-1 together with the witness data of the master identity
/// gamma * mu * diag(alpha) = nu * diag(beta) * kappa.
struct WitnessedElement {
  RationalMatrix gamma;
  Index n;
  Rational N;  // |det gamma|, recomputed exactly
  BigInt D;    // denominator(gamma), recomputed exactly
  RealMatrix mu, nu;
  RealVector alpha, beta;
  RealMatrix kappa;
  SiegelParams params;

  /// |gamma * mu * diag(alpha) - nu * diag(beta) * kappa|_inf.
  BigFloat residual() const;
};

/// Generates a witnessed element: samples x in the Siegel set and a rational
/// map m, reduces m*x back into the set by a unimodular delta, and returns
/// gamma = delta * m with the recovered decomposition. Requires fundamental
/// params. Propagates PrecisionExhausted and RetriesExhausted.
WitnessedElement generate_witnessed(Index n, const BigInt& N, const BigInt& D,
                                    const SiegelParams& params, std::uint64_t seed,
                                    const Precision& prec, const BigFloat& tol);

/// Measured ratios, one per intermediate bound in the height estimate; each
/// is the maximal quotient of the bounded side by its bound, so the
/// empirical constants are the corpus maxima of these fields.
struct LemmaReport {
  BigFloat r32;  // max over leading entries (i,j) of alpha_j / (D beta_i)
  BigFloat r33;  // max_k alpha_k / (D beta_k)
  BigFloat r34;  // max over nonempty J of prod_J beta / (N D^(n-|J|) prod_J alpha)
  BigFloat r35;  // max over same-segment (i,j) of beta_j / (N D^(n-1) alpha_i)
  BigFloat r36;  // max |kappa_pq| over p, q in different segments
  BigFloat r37;  // max_ij |gamma_ij| / (N D^(n-1))
  BigFloat rH;   // H(gamma) / max(N D^n, D)
  /// Self-check: both sides of the row-length identity recomputed
  /// independently; max relative difference over the rows.
  BigFloat row_length_check;
};

/// Computes every ratio field (ratios are reported, never thresholded here).
/// All 2^n - 1 subsets are enumerated for r34.
LemmaReport verify_lemmas(const WitnessedElement& w, const Precision& prec);

struct ExperimentRecord {
  std::uint64_t seed;  // per-sample derived seed
  Index n;
  Rational N;
  BigInt D;
  BigInt H;
  LemmaReport report;
  double ms;  // wall time; excluded from deterministic serialization by default
  std::optional<WitnessedElement> witness;  // kept only when requested
};

/// Integer sampling law for N and D.
struct IntegerLaw {
  enum class Kind { Fixed, Uniform, LogUniform, Choice };
  Kind kind = Kind::Fixed;
  BigInt value = 1;          // Fixed
  BigInt lo = 1, hi = 1;     // Uniform / LogUniform (inclusive)
  std::vector<BigInt> choices;

  BigInt sample(Rng& rng) const;
  static IntegerLaw fixed(const BigInt& v);
  static IntegerLaw uniform(const BigInt& lo, const BigInt& hi);
  static IntegerLaw log_uniform(const BigInt& lo, const BigInt& hi);
  static IntegerLaw choice(std::vector<BigInt> values);
};

struct ExperimentConfig {
  std::vector<Index> dims;  // one block of `samples` draws per dimension
  IntegerLaw n_law;         // law for N
  IntegerLaw d_law;         // law for D
  int samples = 0;          // per dimension
  std::uint64_t seed = 0;
  SiegelParams params = SiegelParams::standard_fundamental();
  int precision_bits = 128;
  int threads = 1;
  BigFloat membership_tol = BigFloat(1e-12);
  bool keep_witnesses = false;
};

struct SlopeFit {
  Index n;
  BigInt D;
  double slope;
  int points;
};

struct ExperimentFailure {
  std::size_t index;
  std::uint64_t seed;
  std::string message;
};

struct ExperimentSummary {
  bool defined = false;  // false iff the record list is empty
  std::size_t count = 0;
  LemmaReport max_report;  // fieldwise maxima
  std::vector<SlopeFit> slopes;  // least-squares slope of log H vs log N per (n, D)
  std::optional<ExperimentFailure> failure;
};

struct ExperimentResult {
  std::vector<ExperimentRecord> records;
  ExperimentSummary summary;
};

/// Runs the configured corpus. Deterministic for a fixed config and seed:
/// the record order equals the derivation order regardless of thread count.
/// On a sample failure the completed prefix of records is kept and the
/// failing seed is recorded in the summary.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace siegelkit
