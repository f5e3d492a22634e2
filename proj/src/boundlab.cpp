#include "siegelkit/boundlab.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "siegelkit/exactmat.hpp"
#include "siegelkit/rng.hpp"
#include "siegelkit/segments.hpp"

namespace siegelkit {

namespace {

// Stream tags for seed derivation.
constexpr std::uint64_t kTagPoint = 0xA1;
constexpr std::uint64_t kTagKappa = 0xA2;
constexpr std::uint64_t kTagMap = 0xB1;
constexpr std::uint64_t kTagLawN = 0xC1;
constexpr std::uint64_t kTagLawD = 0xC2;
constexpr std::uint64_t kTagSample = 0xD1;

}  // namespace

SiegelSamplePoint sample_siegel_point(Index n, const SiegelParams& params, std::uint64_t seed,
                                      const Precision& prec) {
  ScopedPrecision scope(prec);
  if (n < 1 || n > kMaxDim) throw ShapeError("sample_siegel_point requires 1 <= n <= 16");

  Rng rng = Rng::derive({seed, kTagPoint});
  BigFloat u = params.u_real();
  RealMatrix mu = RealMatrix::Identity(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) mu(i, j) = rng.uniform(-u, u);

  BigFloat log_t = log(params.t());
  RealVector alpha(n);
  alpha(n - 1) = 1;
  for (Index j = n - 2; j >= 0; --j)
    alpha(j) = alpha(j + 1) * exp(rng.uniform(log_t, log_t + 2));

  Rng rng_kappa = Rng::derive({seed, kTagKappa});
  RealMatrix kappa2 = random_orthogonal(n, rng_kappa, prec);
  return {std::move(mu), std::move(alpha), std::move(kappa2)};
}

namespace {

std::vector<std::pair<BigInt, int>> factorize(BigInt v) {
  std::vector<std::pair<BigInt, int>> factors;
  auto strip = [&](const BigInt& p) {
    int e = 0;
    while (v % p == 0) {
      v /= p;
      ++e;
    }
    if (e) factors.emplace_back(p, e);
  };
  strip(BigInt(2));
  strip(BigInt(3));
  for (BigInt p(5); p * p <= v; p += 2) strip(p);
  if (v > 1) factors.emplace_back(v, 1);
  return factors;
}

}  // namespace

RationalMatrix sample_rational_map(Index n, const BigInt& N, const BigInt& D, std::uint64_t seed,
                                   int retry_budget, int word_length) {
  if (n < 1 || n > kMaxDim) throw ShapeError("sample_rational_map requires 1 <= n <= 16");
  if (N < 1 || D < 1) throw DomainError("sample_rational_map requires N >= 1 and D >= 1");
  if (word_length < 0) word_length = 2 * static_cast<int>(n) + 2;

  auto n_factors = factorize(N);
  auto d_factors = factorize(D);
  Rng rng = Rng::derive({seed, kTagMap});

  for (int attempt = 0; attempt < retry_budget; ++attempt) {
    std::vector<BigInt> diag(static_cast<std::size_t>(n), BigInt(1));
    // Two regimes for the determinant split: a corner split concentrating N
    // in the leading slot (the off-diagonal entries then stay small and the
    // right word is skipped, so the row lattice keeps minima 1 and ~N, the
    // extreme isogeny-type shape), or a per-prime multinomial spread with
    // uniform off-diagonals (a random index-N sublattice, balanced minima
    // ~N^(1/n)). The mixture keeps the corpus heights tracking N.
    bool corner = rng.below_int(10) < 9;
    if (corner) {
      diag[0] *= N;
    } else {
      for (const auto& [p, e] : n_factors)
        for (int k = 0; k < e; ++k)
          diag[static_cast<std::size_t>(rng.below_int(static_cast<int>(n)))] *= p;
    }
    for (const auto& [p, e] : d_factors)
      for (int k = 0; k < static_cast<int>(n) * e; ++k)
        diag[static_cast<std::size_t>(rng.below_int(static_cast<int>(n)))] *= p;

    IntegerMatrix t = IntegerMatrix::Identity(n, n);
    for (Index j = 0; j < n; ++j) t(j, j) = diag[static_cast<std::size_t>(j)];
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) t(i, j) = rng.below(t(j, j));

    IntegerMatrix m = random_unimodular(n, rng, word_length) * t;
    if (!corner) m = m * random_unimodular(n, rng, word_length);

    RationalMatrix out(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) out(i, j) = Rational(m(i, j)) / Rational(D);
    if (denominator(out) == D) return out;
  }
  throw RetriesExhausted("sample_rational_map could not realize denominator exactly " + D.str() +
                         " within " + std::to_string(retry_budget) +
                         " retries; the (N, D) request may be infeasible");
}

BigFloat WitnessedElement::residual() const {
  return max_abs(RealMatrix(rational_lift(gamma) * mu * alpha.asDiagonal() -
                            nu * beta.asDiagonal() * kappa));
}

WitnessedElement generate_witnessed(Index n, const BigInt& N, const BigInt& D,
                                    const SiegelParams& params, std::uint64_t seed,
                                    const Precision& prec, const BigFloat& tol) {
  ScopedPrecision scope(prec);
  if (!params.fundamental())
    throw DomainError("generate_witnessed requires fundamental parameters (u >= 1/2 and "
                      "t <= sqrt(3)/2)");

  SiegelSamplePoint point = sample_siegel_point(n, params, seed, prec);
  RationalMatrix m = sample_rational_map(n, N, D, seed);

  RealMatrix x = point.mu * point.alpha.asDiagonal() * point.kappa2;
  ReductionResult red = reduce_to_siegel(rational_lift(m) * x, params, prec, tol);

  RationalMatrix gamma = to_rational(red.delta) * m;
  Rational n_exact = abs(det(gamma));
  BigInt d_exact = denominator(gamma);

  IwasawaDecomposition dec =
      iwasawa(rational_lift(gamma) * point.mu * point.alpha.asDiagonal(), prec);
  if (!(in_omega(dec.nu, params.u_real(), tol) && in_at(dec.alpha, params.t(), tol)))
    throw PrecisionExhausted("generate_witnessed could not certify the witness within tolerance; "
                             "retry with more bits");

  WitnessedElement w;
  w.gamma = std::move(gamma);
  w.n = n;
  w.N = std::move(n_exact);
  w.D = std::move(d_exact);
  w.mu = std::move(point.mu);
  w.nu = std::move(dec.nu);
  w.alpha = std::move(point.alpha);
  w.beta = std::move(dec.alpha);
  w.kappa = std::move(dec.kappa);
  w.params = params;
  return w;
}

LemmaReport verify_lemmas(const WitnessedElement& w, const Precision& prec) {
  ScopedPrecision scope(prec);
  const Index n = w.n;
  const BigFloat d_real = BigFloat(w.D);
  const BigFloat n_real = BigFloat(w.N);
  BigFloat d_pow_nm1(1);
  for (Index k = 0; k + 1 < n; ++k) d_pow_nm1 *= d_real;

  std::vector<LeadingEntry> leads = leading_entries(w.gamma);
  SegmentPartition part = segment_partition(w.gamma);

  LemmaReport rep;
  rep.r32 = 0;
  for (const LeadingEntry& le : leads) {
    BigFloat v = w.alpha(le.col) / (d_real * w.beta(le.row));
    if (v > rep.r32) rep.r32 = v;
  }

  rep.r33 = 0;
  for (Index k = 0; k < n; ++k) {
    BigFloat v = w.alpha(k) / (d_real * w.beta(k));
    if (v > rep.r33) rep.r33 = v;
  }

  rep.r34 = 0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    BigFloat num(1), den_alpha(1);
    int size = 0;
    for (Index k = 0; k < n; ++k)
      if (mask & (1u << k)) {
        num *= w.beta(k);
        den_alpha *= w.alpha(k);
        ++size;
      }
    BigFloat d_pow(1);
    for (Index k = 0; k < n - size; ++k) d_pow *= d_real;
    BigFloat v = num / (n_real * d_pow * den_alpha);
    if (v > rep.r34) rep.r34 = v;
  }

  rep.r35 = 0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (part.same_segment(i, j)) {
        BigFloat v = w.beta(j) / (n_real * d_pow_nm1 * w.alpha(i));
        if (v > rep.r35) rep.r35 = v;
      }

  rep.r36 = 0;
  for (Index p = 0; p < n; ++p)
    for (Index q = 0; q < n; ++q)
      if (!part.same_segment(p, q) && abs(w.kappa(p, q)) > rep.r36) rep.r36 = abs(w.kappa(p, q));

  RealMatrix gamma_real = rational_lift(w.gamma);
  rep.r37 = 0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      BigFloat v = abs(gamma_real(i, j)) / (n_real * d_pow_nm1);
      if (v > rep.r37) rep.r37 = v;
    }

  Rational bound = w.N;
  for (Index k = 0; k < n; ++k) bound *= Rational(w.D);
  if (bound < Rational(w.D)) bound = Rational(w.D);
  rep.rH = BigFloat(Rational(height(w.gamma)) / bound);

  // Row-length identity: both sides recomputed from scratch.
  RealMatrix gm = gamma_real * w.mu;
  rep.row_length_check = 0;
  for (Index i = 0; i < n; ++i) {
    BigFloat lhs(0), rhs(0);
    for (Index p = 0; p < n; ++p) {
      lhs += gm(i, p) * gm(i, p) * w.alpha(p) * w.alpha(p);
      rhs += w.nu(i, p) * w.nu(i, p) * w.beta(p) * w.beta(p);
    }
    BigFloat rel = abs(lhs - rhs) / rhs;
    if (rel > rep.row_length_check) rep.row_length_check = rel;
  }
  return rep;
}

BigInt IntegerLaw::sample(Rng& rng) const {
  switch (kind) {
    case Kind::Fixed:
      return value;
    case Kind::Uniform:
      return lo + rng.below(hi - lo + 1);
    case Kind::LogUniform: {
      // Uniform in log space over [lo, hi], rounded to the nearest integer.
      BigFloat llo = log(BigFloat(lo));
      BigFloat lhi = log(BigFloat(hi));
      BigInt v = round_to_int(exp(rng.uniform(llo, lhi)));
      if (v < lo) v = lo;
      if (v > hi) v = hi;
      return v;
    }
    case Kind::Choice:
      return choices[static_cast<std::size_t>(rng.below_int(static_cast<int>(choices.size())))];
  }
  throw DomainError("unknown integer law");
}

IntegerLaw IntegerLaw::fixed(const BigInt& v) {
  IntegerLaw law;
  law.kind = Kind::Fixed;
  law.value = v;
  return law;
}

IntegerLaw IntegerLaw::uniform(const BigInt& lo, const BigInt& hi) {
  if (lo > hi || lo < 1) throw DomainError("uniform law requires 1 <= lo <= hi");
  IntegerLaw law;
  law.kind = Kind::Uniform;
  law.lo = lo;
  law.hi = hi;
  return law;
}

IntegerLaw IntegerLaw::log_uniform(const BigInt& lo, const BigInt& hi) {
  if (lo > hi || lo < 1) throw DomainError("loguniform law requires 1 <= lo <= hi");
  IntegerLaw law;
  law.kind = Kind::LogUniform;
  law.lo = lo;
  law.hi = hi;
  return law;
}

IntegerLaw IntegerLaw::choice(std::vector<BigInt> values) {
  if (values.empty()) throw DomainError("choice law requires at least one value");
  IntegerLaw law;
  law.kind = Kind::Choice;
  law.choices = std::move(values);
  return law;
}

namespace {

struct SampleOutcome {
  bool ok = false;
  ExperimentRecord record;
  std::string message;
  std::uint64_t seed = 0;
};

double log_of(const BigInt& v) { return static_cast<double>(log(BigFloat(v))); }
double log_of(const Rational& v) { return static_cast<double>(log(BigFloat(v))); }

void max_into(LemmaReport& acc, const LemmaReport& r) {
  auto upd = [](BigFloat& a, const BigFloat& b) {
    if (b > a) a = b;
  };
  upd(acc.r32, r.r32);
  upd(acc.r33, r.r33);
  upd(acc.r34, r.r34);
  upd(acc.r35, r.r35);
  upd(acc.r36, r.r36);
  upd(acc.r37, r.r37);
  upd(acc.rH, r.rH);
  upd(acc.row_length_check, r.row_length_check);
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  Precision prec{config.precision_bits};
  ScopedPrecision scope(prec);

  struct Job {
    Index n;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (Index n : config.dims)
    for (int k = 0; k < config.samples; ++k)
      jobs.push_back({n, Rng::derive_key({config.seed, kTagSample, static_cast<std::uint64_t>(n),
                                          static_cast<std::uint64_t>(k)})});

  std::vector<SampleOutcome> outcomes(jobs.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    ScopedPrecision thread_scope(prec);
    for (;;) {
      std::size_t idx = next.fetch_add(1);
      if (idx >= jobs.size()) return;
      const Job& job = jobs[idx];
      SampleOutcome& out = outcomes[idx];
      out.seed = job.seed;
      auto t0 = std::chrono::steady_clock::now();
      try {
        Rng law_rng_n = Rng::derive({job.seed, kTagLawN});
        Rng law_rng_d = Rng::derive({job.seed, kTagLawD});
        BigInt N = config.n_law.sample(law_rng_n);
        BigInt D = config.d_law.sample(law_rng_d);
        WitnessedElement w =
            generate_witnessed(job.n, N, D, config.params, job.seed, prec, config.membership_tol);
        ExperimentRecord rec;
        rec.seed = job.seed;
        rec.n = job.n;
        rec.N = w.N;
        rec.D = w.D;
        rec.H = height(w.gamma);
        rec.report = verify_lemmas(w, prec);
        rec.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                     .count();
        if (config.keep_witnesses) rec.witness = std::move(w);
        out.record = std::move(rec);
        out.ok = true;
      } catch (const std::exception& e) {
        out.ok = false;
        out.message = e.what();
      }
    }
  };

  int threads = std::max(1, config.threads);
  if (threads == 1 || jobs.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  ExperimentResult result;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (!outcomes[i].ok) {
      result.summary.failure = ExperimentFailure{i, outcomes[i].seed, outcomes[i].message};
      break;
    }
    result.records.push_back(std::move(outcomes[i].record));
  }

  ExperimentSummary& summary = result.summary;
  summary.count = result.records.size();
  summary.defined = !result.records.empty();
  if (summary.defined) {
    summary.max_report = result.records.front().report;
    for (std::size_t i = 1; i < result.records.size(); ++i)
      max_into(summary.max_report, result.records[i].report);

    // Least-squares slope of log H against log N per (n, D) group.
    struct Group {
      Index n;
      BigInt D;
      std::vector<std::pair<double, double>> pts;
    };
    std::vector<Group> groups;
    for (const auto& rec : result.records) {
      Group* g = nullptr;
      for (auto& cand : groups)
        if (cand.n == rec.n && cand.D == rec.D) {
          g = &cand;
          break;
        }
      if (!g) {
        groups.push_back({rec.n, rec.D, {}});
        g = &groups.back();
      }
      g->pts.emplace_back(log_of(rec.N), log_of(rec.H));
    }
    for (const auto& g : groups) {
      if (g.pts.size() < 3) continue;
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (auto [x, y] : g.pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
      }
      double count = static_cast<double>(g.pts.size());
      double denom = count * sxx - sx * sx;
      if (denom <= 1e-9) continue;  // no spread in N
      summary.slopes.push_back(
          {g.n, g.D, (count * sxy - sx * sy) / denom, static_cast<int>(g.pts.size())});
    }
  }
  return result;
}

}  // namespace siegelkit
