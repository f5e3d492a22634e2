// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Thresholds are pinned in code; every expected value is computed
// by an oracle or taken from a hand-checked example.

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "siegelkit/boundlab.hpp"
#include "siegelkit/exactmat.hpp"
#include "siegelkit/gensiegel.hpp"
#include "siegelkit/gl2.hpp"
#include "siegelkit/records.hpp"
#include "siegelkit/segments.hpp"
#include "siegelkit/siegel.hpp"

using namespace siegelkit;

namespace {

const Precision kPrec{128};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << (detail.tellp() > 0 ? "; " : "") << what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- criterion 1 -----------------------------------------------------------

Outcome criterion1() {
  Outcome out;
  ScopedPrecision scope(kPrec);
  auto t0 = std::chrono::steady_clock::now();
  const BigFloat bound = pow2(-98);
  Rng rng(1001);
  int bad_rec = 0, bad_orth = 0;
  for (int it = 0; it < 1000; ++it) {
    Index n = 1 + (it % 6);
    RealMatrix g = oracles::random_invertible_real(n, rng, BigFloat("1e-3"));
    IwasawaDecomposition dec = iwasawa(g, kPrec);
    if (max_abs(RealMatrix(dec.reconstruct() - g)) > bound) ++bad_rec;
    if (max_abs(RealMatrix(dec.kappa * dec.kappa.transpose() - RealMatrix::Identity(n, n))) >
        bound)
      ++bad_orth;
  }
  double secs = seconds_since(t0);
  out.require(bad_rec == 0, std::to_string(bad_rec) + " reconstruction residuals above 2^-98");
  out.require(bad_orth == 0, std::to_string(bad_orth) + " orthogonality residuals above 2^-98");
  out.require(secs <= 30.0, "runtime " + std::to_string(secs) + "s exceeds 30s");
  out.detail << (out.detail.tellp() > 0 ? "; " : "") << "1000 samples, n <= 6, "
             << std::to_string(secs) << "s";
  return out;
}

// --- criterion 2 -----------------------------------------------------------

Outcome criterion2() {
  Outcome out;
  ScopedPrecision scope(kPrec);
  auto t0 = std::chrono::steady_clock::now();
  SiegelParams params = SiegelParams::standard_fundamental();
  const BigFloat tol("1e-12");
  Rng rng(1002);
  int bad_det = 0, bad_member = 0, bad_potential = 0;
  for (int it = 0; it < 500; ++it) {
    Index n = 2 + (it % 3);
    RealMatrix g = oracles::random_invertible_real(n, rng, BigFloat("1e-2"));
    std::vector<BigFloat> trace;
    ReductionResult r = reduce_to_siegel(g, params, kPrec, tol, &trace);
    BigInt dd = det(r.delta);
    if (!(dd == 1 || dd == -1)) ++bad_det;
    if (!in_siegel(integer_lift(r.delta) * g, params, tol, kPrec).member) ++bad_member;
    for (std::size_t k = 0; k + 1 < trace.size(); ++k)
      if (trace[k + 1] > trace[k] * (1 + pow2(-80))) {
        ++bad_potential;
        break;
      }
  }
  double secs = seconds_since(t0);
  out.require(bad_det == 0, std::to_string(bad_det) + " non-unimodular deltas");
  out.require(bad_member == 0, std::to_string(bad_member) + " memberships failed at 1e-12");
  out.require(bad_potential == 0, std::to_string(bad_potential) + " non-monotone potentials");
  out.require(secs <= 60.0, "runtime " + std::to_string(secs) + "s exceeds 60s");
  out.detail << (out.detail.tellp() > 0 ? "; " : "") << "500 reductions, n <= 4, "
             << std::to_string(secs) << "s";
  return out;
}

// --- criterion 3 -----------------------------------------------------------

Outcome criterion3() {
  Outcome out;
  Rng rng(1003);
  int mismatches = 0, star_failures = 0;
  for (int it = 0; it < 1000; ++it) {
    Index n = 2 + (it % 4);
    RationalMatrix gamma = oracles::random_invertible_sparse(n, rng, 50);
    SegmentPartition part = segment_partition(gamma);
    bool lattice_ok = true;
    if (oracles::cuts_of(part) != oracles::brute_force_finest_cuts(gamma, &lattice_ok) ||
        !lattice_ok)
      ++mismatches;
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < i; ++j) {
        if (!part.same_segment(i, j)) continue;
        try {
          if (!oracles::satisfies_star(gamma, witnessing_sequence(gamma, i, j), i, j))
            ++star_failures;
        } catch (const Error&) {
          ++star_failures;
        }
      }
  }
  out.require(mismatches == 0, std::to_string(mismatches) + " brute-force mismatches");
  out.require(star_failures == 0, std::to_string(star_failures) + " star-condition failures");
  out.detail << (out.detail.tellp() > 0 ? "; " : "") << "1000 sparse matrices, n <= 5";
  return out;
}

// --- criterion 4 -----------------------------------------------------------

struct Gl3Class {
  std::vector<std::pair<int, int>> zeros;
  std::vector<std::pair<int, int>> stars;
  std::vector<Index> starts;
};

RationalMatrix instantiate_class(const Gl3Class& cls, Rng& rng) {
  for (;;) {
    RationalMatrix m(3, 3);
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 3; ++j) {
        if (rng.below_int(2)) {
          int num = 1 + rng.below_int(5);
          m(i, j) = Rational(rng.below_int(2) ? num : -num);
        } else {
          m(i, j) = 0;
        }
      }
    for (auto [i, j] : cls.zeros) m(i - 1, j - 1) = 0;
    for (auto [i, j] : cls.stars) {
      int num = 1 + rng.below_int(5);
      m(i - 1, j - 1) = Rational(rng.below_int(2) ? num : -num);
    }
    if (oracles::laplace_det(m) != 0) return m;
  }
}

Outcome criterion4() {
  Outcome out;
  const std::vector<Gl3Class> classes = {
      {{{2, 1}, {3, 1}, {3, 2}}, {{1, 1}, {2, 2}, {3, 3}}, {0, 1, 2}},
      {{{2, 1}, {3, 1}}, {{1, 1}, {3, 2}}, {0, 1}},
      {{{3, 1}, {3, 2}}, {{2, 1}, {3, 3}}, {0, 2}},
      {{}, {{3, 1}}, {0}},
      {{{3, 1}}, {{2, 1}, {3, 2}}, {0}},
  };
  Rng rng(1004);
  int bad_partitions = 0, bad_sequences = 0;
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (int it = 0; it < 200; ++it) {
      RationalMatrix gamma = instantiate_class(classes[c], rng);
      if (segment_partition(gamma).starts() != classes[c].starts) ++bad_partitions;
      if (c == 3) {
        std::vector<LeadingEntry> expect{{2, 0}};
        if (!(witnessing_sequence(gamma, 2, 0) == expect)) ++bad_sequences;
      }
      if (c == 4) {
        std::vector<LeadingEntry> expect{{2, 1}, {1, 0}};
        if (!(witnessing_sequence(gamma, 2, 0) == expect)) ++bad_sequences;
      }
    }
  out.require(bad_partitions == 0, std::to_string(bad_partitions) + " partition mismatches");
  out.require(bad_sequences == 0, std::to_string(bad_sequences) + " witnessing-sequence mismatches");
  out.detail << (out.detail.tellp() > 0 ? "; " : "")
             << "5 classes x 200 instances, sequences [(3,1)] and [(3,2),(2,1)]";
  return out;
}

// --- criteria 5, 6, 9: the witnessed corpus --------------------------------

std::vector<ExperimentConfig> corpus_configs(int threads, bool keep_witnesses) {
  std::vector<ExperimentConfig> configs;
  int block = 0;
  for (Index n : {2, 3})
    for (int d : {1, 2, 3}) {
      ExperimentConfig config;
      config.dims = {n};
      config.n_law = IntegerLaw::log_uniform(BigInt(1), BigInt(1000));
      config.d_law = IntegerLaw::fixed(BigInt(d));
      config.samples = 350;
      config.seed = 20260810 + 100 * block++;
      config.precision_bits = kPrec.bits;
      config.threads = threads;
      config.keep_witnesses = keep_witnesses;
      configs.push_back(config);
    }
  return configs;
}

struct Corpus {
  std::vector<ExperimentResult> blocks;
  std::vector<const ExperimentRecord*> records;
  std::string csv;
};

Corpus run_corpus(int threads, bool keep_witnesses) {
  Corpus corpus;
  for (const ExperimentConfig& config : corpus_configs(threads, keep_witnesses))
    corpus.blocks.push_back(run_experiment(config));
  std::string csv;
  for (std::size_t b = 0; b < corpus.blocks.size(); ++b) {
    for (const auto& rec : corpus.blocks[b].records) corpus.records.push_back(&rec);
    std::string block_csv = records_to_csv(corpus.blocks[b].records, kPrec.out_digits());
    csv += block_csv;
  }
  corpus.csv = std::move(csv);
  return corpus;
}

Outcome criterion5(const Corpus& corpus) {
  Outcome out;
  ScopedPrecision scope(kPrec);
  const BigFloat tight("1e-20");
  std::size_t count = corpus.records.size();
  int bad_residual = 0, bad_r36 = 0, bad_det_identity = 0, bad_full_set = 0, bad_finite = 0;
  for (const ExperimentRecord* rec : corpus.records) {
    const WitnessedElement& w = *rec->witness;
    if (w.residual() > tight) ++bad_residual;
    if (rec->report.r36 > BigFloat("1e-8")) ++bad_r36;
    BigFloat pa(1), pb(1);
    for (Index i = 0; i < w.n; ++i) {
      pa *= w.alpha(i);
      pb *= w.beta(i);
    }
    BigFloat full_set_ratio = pb / (BigFloat(w.N) * pa);
    if (abs(pb - BigFloat(w.N) * pa) > tight * pb) ++bad_det_identity;
    if (abs(full_set_ratio - 1) > tight) ++bad_full_set;
    for (const BigFloat* f : {&rec->report.r32, &rec->report.r33, &rec->report.r34,
                              &rec->report.r35, &rec->report.r36, &rec->report.r37,
                              &rec->report.rH})
      if (!(*f == *f) || isinf(*f) || *f < 0) ++bad_finite;
  }
  out.require(count >= 2000, "only " + std::to_string(count) + " elements");
  for (const auto& block : corpus.blocks)
    out.require(!block.summary.failure, "a corpus block failed");
  out.require(bad_residual == 0, std::to_string(bad_residual) + " residuals above 1e-20");
  out.require(bad_r36 == 0, std::to_string(bad_r36) + " off-block kappa entries above 1e-8");
  out.require(bad_det_identity == 0,
              std::to_string(bad_det_identity) + " det identities beyond 1e-20");
  out.require(bad_full_set == 0, std::to_string(bad_full_set) + " full-set ratios beyond 1e-20");
  out.require(bad_finite == 0, std::to_string(bad_finite) + " non-finite ratio fields");
  out.detail << (out.detail.tellp() > 0 ? "; " : "") << count
             << " witnessed elements across n in {2,3}, D in {1,2,3}";
  return out;
}

Outcome criterion6(const Corpus& corpus) {
  Outcome out;
  ScopedPrecision scope(kPrec);
  BigFloat max_low(0), max_high(0);
  for (const ExperimentRecord* rec : corpus.records) {
    if (rec->N <= 100) {
      if (rec->report.rH > max_low) max_low = rec->report.rH;
    } else {
      if (rec->report.rH > max_high) max_high = rec->report.rH;
    }
  }
  out.require(max_low > 0 && max_high > 0, "a N-range is empty");
  out.require(max_high <= 2 * max_low,
              "max rH over N in (100,1000] is " + to_string(max_high, 6) + " vs " +
                  to_string(max_low, 6) + " over N <= 100");

  double slope = 0;
  int points = 0;
  for (const auto& block : corpus.blocks)
    for (const auto& fit : block.summary.slopes)
      if (fit.n == 2 && fit.D == 1) {
        slope = fit.slope;
        points = fit.points;
      }
  out.require(points >= 300, "missing the (n=2, D=1) slope fit");
  out.require(slope >= 0.8 && slope <= 1.05,
              "slope " + std::to_string(slope) + " outside [0.8, 1.05]");
  out.detail << (out.detail.tellp() > 0 ? "; " : "") << "max rH " << to_string(max_low, 4)
             << " / " << to_string(max_high, 4) << ", slope " << slope << " (" << points
             << " samples)";
  return out;
}

// --- criterion 7 -----------------------------------------------------------

Outcome criterion7() {
  Outcome out;
  ScopedPrecision scope(kPrec);
  auto t0 = std::chrono::steady_clock::now();
  const BigFloat tol("1e-10");

  int count_mismatches = 0;
  for (int n = 1; n <= 100; ++n)
    if (BigInt(isogeny_matrices(BigInt(n)).size()) != oracles::sigma1(BigInt(n)))
      ++count_mismatches;
  out.require(count_mismatches == 0,
              std::to_string(count_mismatches) + " isogeny counts differ from sigma_1");

  Rng rng(1007);
  std::vector<UpperHalfPoint> bases;
  bases.push_back({BigFloat(0), BigFloat(1)});
  for (int k = 0; k < 2; ++k)
    bases.push_back({rng.uniform(BigFloat(-1) / 2, BigFloat(1) / 2),
                     rng.uniform(BigFloat(1), BigFloat(3) / 2)});

  std::ostringstream slopes;
  for (std::size_t k = 0; k < bases.size(); ++k) {
    Gl2Result result = hp_experiment(bases[k], 500, kPrec, tol);
    out.require(result.summary.cert_violations == 0,
                "base point " + std::to_string(k) + ": " +
                    std::to_string(result.summary.cert_violations) + " domain violations");
    out.require(result.summary.slope >= 0.8 && result.summary.slope <= 1.05,
                "base point " + std::to_string(k) + ": slope " +
                    std::to_string(result.summary.slope) + " outside [0.8, 1.05]");
    slopes << (k ? ", " : "") << result.summary.slope;

    // The recorded constant H/N stays flat: its maximum over N in (100, 500]
    // is within a factor 2 of its maximum over N <= 100.
    BigFloat low(0), high(0);
    for (const Gl2Record& rec : result.records) {
      if (rec.N <= 100) {
        if (rec.ratio > low) low = rec.ratio;
      } else if (rec.ratio > high) {
        high = rec.ratio;
      }
    }
    out.require(low > 0 && high <= 2 * low,
                "base point " + std::to_string(k) + ": H/N max " + to_string(high, 4) +
                    " over N in (100,500] vs " + to_string(low, 4) + " over N <= 100");
  }
  double secs = seconds_since(t0);
  out.require(secs <= 120.0, "runtime " + std::to_string(secs) + "s exceeds 120s");
  out.detail << (out.detail.tellp() > 0 ? "; " : "") << "slopes " << slopes.str()
             << " (all < 10), " << std::to_string(secs) << "s";
  return out;
}

// --- criterion 8 -----------------------------------------------------------

SiegelTripleGLn random_triple(Index n, Rng& rng) {
  SiegelTripleGLn t;
  for (;;) {
    RationalMatrix f(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        f(i, j) = Rational(rng.below_int(7) - 3, 1 + rng.below_int(2));
    if (det(f) != 0) {
      t.flag = f;
      break;
    }
  }
  RationalMatrix a(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) a(i, j) = Rational(rng.below_int(5) - 2);
  t.form = a.transpose() * a + RationalMatrix::Identity(n, n);
  t.t_squared = (rng.below_int(2)) ? Rational(3, 4) : Rational(9, 25);
  RealMatrix flag_real = rational_lift(t.flag);
  RealMatrix flag_inv = rational_lift(inverse(t.flag));
  int count = 1 + rng.below_int(2);
  for (int s = 0; s < count; ++s) {
    RealMatrix nu0 = RealMatrix::Identity(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j)
        nu0(i, j) = rng.uniform(BigFloat(-1) / 2, BigFloat(1) / 2);
    t.omega_samples.push_back(flag_real * nu0 * flag_inv);
  }
  return t;
}

Outcome criterion8() {
  Outcome out;
  ScopedPrecision scope(kPrec);
  const BigFloat margin = BigFloat(1) / 50;
  const BigFloat tol("1e-12");

  // The diagonal-form example, checked against hand values.
  SiegelTripleGLn example;
  example.flag = RationalMatrix::Identity(2, 2);
  example.form = parse_matrix_text("4 0; 0 1");
  example.t_squared = Rational(3, 4);
  example.omega_samples = {RealMatrix::Identity(2, 2)};
  StandardizationResult r = standardize(example, kPrec);
  out.require(abs(r.sigma(0, 0) - BigFloat(1) / 2) <= pow2(-90) &&
                  abs(r.sigma(1, 1) - 1) <= pow2(-90) && abs(r.sigma(0, 1)) <= pow2(-90),
              "sigma differs from diag(1/2, 1)");
  out.require(r.u_prime == 0, "u' is not 0 on the example");
  out.require(abs(r.s - SiegelParams::standard_fundamental().t() / 2) <= pow2(-90),
              "s is not t/2 on the example");
  ContainmentGrid grid;
  grid.scale_points = 10;
  grid.kappa_samples = 10;
  grid.seed = 42;
  out.require(verify_containment(example, r, grid, kPrec, margin, tol).failures.empty(),
              "containment failures on the example");

  Rng rng(1008);
  int bad_inverse = 0, bad_containment = 0, bad_control = 0;
  for (int it = 0; it < 20; ++it) {
    Index n = 2 + rng.below_int(3);
    SiegelTripleGLn triple = random_triple(n, rng);
    StandardizationResult res = standardize(triple, kPrec);

    RationalMatrix q_prime = triple.flag.transpose() * triple.form * triple.flag;
    if (max_abs(RealMatrix(res.sigma * res.sigma.transpose() * rational_lift(q_prime) -
                           RealMatrix::Identity(n, n))) > BigFloat("1e-20"))
      ++bad_inverse;

    grid.seed = 4242 + static_cast<std::uint64_t>(it);
    if (!verify_containment(triple, res, grid, kPrec, margin, tol).failures.empty())
      ++bad_containment;

    StandardizationResult corrupted = res;
    Index worst = 0;
    for (Index j = 1; j + 1 < n; ++j)
      if (corrupted.beta(j) / corrupted.beta(j + 1) <
          corrupted.beta(worst) / corrupted.beta(worst + 1))
        worst = j;
    corrupted.beta(worst) /= BigFloat(11) / 10;
    corrupted.sigma = corrupted.tau * corrupted.beta.asDiagonal();
    if (verify_containment(triple, corrupted, grid, kPrec, margin, tol).failures.empty())
      ++bad_control;
  }
  out.require(bad_inverse == 0, std::to_string(bad_inverse) + " sigma sigma^T Q' != I at 1e-20");
  out.require(bad_containment == 0,
              std::to_string(bad_containment) + " triples with containment failures");
  out.require(bad_control == 0,
              std::to_string(bad_control) + " corrupted controls wrongly passed");
  out.detail << (out.detail.tellp() > 0 ? "; " : "")
             << "example + 20 random triples, 100-point grids, negative controls";
  return out;
}

Outcome criterion9(const Corpus& reference) {
  Outcome out;
  Corpus rerun = run_corpus(8, false);
  out.require(rerun.csv == reference.csv,
              "CSV outputs differ between 1 and 8 threads");
  out.detail << (out.detail.tellp() > 0 ? "; " : "") << rerun.records.size()
             << " records, byte-identical CSV at 1 and 8 threads";
  return out;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    Outcome outcome;
  };
  std::vector<Entry> entries;

  entries.push_back({1, "Iwasawa round-trip", criterion1()});
  entries.push_back({2, "Siegel reduction", criterion2()});
  entries.push_back({3, "segments vs brute force", criterion3()});
  entries.push_back({4, "GL3 partition classes", criterion4()});

  Corpus corpus = run_corpus(1, true);
  entries.push_back({5, "lemma suite on witnessed elements", criterion5(corpus)});
  entries.push_back({6, "height-bound stability", criterion6(corpus)});
  entries.push_back({7, "GL2 exponent improvement", criterion7()});
  entries.push_back({8, "Siegel-set standardization", criterion8()});
  entries.push_back({9, "reproducibility", criterion9(corpus)});

  int failures = 0;
  for (const Entry& e : entries) {
    if (!e.outcome.pass) ++failures;
    std::cout << (e.outcome.pass ? "[PASS]" : "[FAIL]") << " criterion " << e.id << ": " << e.name
              << " - " << e.outcome.detail.str() << "\n";
  }
  if (failures) std::cout << failures << " criterion(s) failed\n";
  return failures;
}
