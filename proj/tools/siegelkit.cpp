#include "CLI11.hpp"
#include "json.hpp"

#include <iostream>
#include <optional>
#include <string>

#include "siegelkit/boundlab.hpp"
#include "siegelkit/exactmat.hpp"
#include "siegelkit/gensiegel.hpp"
#include "siegelkit/gl2.hpp"
#include "siegelkit/records.hpp"
#include "siegelkit/segments.hpp"
#include "siegelkit/siegel.hpp"

namespace sk = siegelkit;

namespace {

struct GlobalOpts {
  int precision = 128;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out;
  bool json = false;
  bool csv = false;
};

sk::RationalMatrix load_matrix(const std::string& path) {
  return sk::parse_matrix_any(sk::read_file(path));
}

sk::SiegelParams params_from(const std::string& u_text, const std::string& t_text) {
  sk::Rational u = sk::parse_rational(u_text);
  if (u <= 0) throw sk::DomainError("Siegel parameter u must be positive");
  return sk::SiegelParams::from_t_squared(u, sk::SiegelParams::parse_t_squared(t_text));
}

void emit(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty())
    std::cout << text;
  else
    sk::write_file(g.out, text);
}

void print_decomposition(const sk::IwasawaDecomposition& dec, int digits) {
  std::cout << "nu =\n" << sk::format_matrix_display(dec.nu, digits);
  std::cout << "alpha = (";
  for (sk::Index i = 0; i < dec.alpha.size(); ++i) {
    if (i) std::cout << ", ";
    std::cout << sk::to_string(dec.alpha(i), digits);
  }
  std::cout << ")\n";
  std::cout << "kappa =\n" << sk::format_matrix_display(dec.kappa, digits);
}

int cmd_decompose(const GlobalOpts& g, const std::string& matrix_path) {
  sk::Precision prec{g.precision};
  sk::ScopedPrecision scope(prec);
  sk::RealMatrix m = sk::rational_lift(load_matrix(matrix_path));
  sk::IwasawaDecomposition dec = sk::iwasawa(m, prec);
  print_decomposition(dec, prec.out_digits());
  return 0;
}

int cmd_membership(const GlobalOpts& g, const std::string& matrix_path, const std::string& u_text,
                   const std::string& t_text, const std::string& tol_text) {
  sk::Precision prec{g.precision};
  sk::ScopedPrecision scope(prec);
  sk::SiegelParams params = params_from(u_text, t_text);
  sk::BigFloat tol(tol_text);
  auto res = sk::in_siegel(sk::rational_lift(load_matrix(matrix_path)), params, tol, prec);
  std::cout << (res.member ? "member" : "not a member") << "\n";
  print_decomposition(res.dec, prec.out_digits());
  return 0;
}

int cmd_reduce(const GlobalOpts& g, const std::string& matrix_path, const std::string& u_text,
               const std::string& t_text, const std::string& tol_text) {
  sk::Precision prec{g.precision};
  sk::ScopedPrecision scope(prec);
  sk::SiegelParams params = params_from(u_text, t_text);
  sk::BigFloat tol(tol_text);
  auto res = sk::reduce_to_siegel(sk::rational_lift(load_matrix(matrix_path)), params, prec, tol);
  std::cout << "delta =\n" << sk::format_matrix_display(res.delta);
  std::cout << "swaps = " << res.swaps << "\n";
  print_decomposition(res.dec, prec.out_digits());
  return 0;
}

int cmd_segments(const GlobalOpts&, const std::string& matrix_path, const std::string& pair) {
  sk::RationalMatrix gamma = load_matrix(matrix_path);
  std::cout << "leading entries:";
  for (const sk::LeadingEntry& le : sk::leading_entries(gamma))
    std::cout << " (" << (le.row + 1) << "," << (le.col + 1) << ")";
  std::cout << "\n";
  sk::SegmentPartition part = sk::segment_partition(gamma);
  std::cout << "segments: " << part.to_string() << "\n";
  if (!pair.empty()) {
    auto comma = pair.find(',');
    if (comma == std::string::npos)
      throw sk::IoError("--pair expects \"i,j\" with 1-based indices");
    sk::Index i = std::stol(pair.substr(0, comma)) - 1;
    sk::Index j = std::stol(pair.substr(comma + 1)) - 1;
    std::cout << "witnessing sequence for (" << (i + 1) << "," << (j + 1) << "):";
    for (const sk::LeadingEntry& le : sk::witnessing_sequence(gamma, i, j))
      std::cout << " (" << (le.row + 1) << "," << (le.col + 1) << ")";
    std::cout << "\n";
  }
  return 0;
}

sk::IntegerLaw law_from_json(const nlohmann::json& j) {
  auto big = [](const nlohmann::json& v) {
    return v.is_string() ? sk::BigInt(v.get<std::string>()) : sk::BigInt(v.get<long long>());
  };
  if (j.is_number_integer() || j.is_string()) return sk::IntegerLaw::fixed(big(j));
  std::string law = j.at("law").get<std::string>();
  if (law == "fixed") return sk::IntegerLaw::fixed(big(j.at("value")));
  if (law == "uniform") return sk::IntegerLaw::uniform(big(j.at("min")), big(j.at("max")));
  if (law == "loguniform") return sk::IntegerLaw::log_uniform(big(j.at("min")), big(j.at("max")));
  if (law == "choice") {
    std::vector<sk::BigInt> values;
    for (const auto& v : j.at("values")) values.push_back(big(v));
    return sk::IntegerLaw::choice(std::move(values));
  }
  throw sk::IoError("unknown law '" + law + "' (expected fixed, uniform, loguniform or choice)");
}

sk::ExperimentConfig config_from_json(const std::string& text, const GlobalOpts& g,
                                      bool seed_given, bool threads_given, bool precision_given) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw sk::IoError(std::string("config parse failure: ") + e.what());
  }
  sk::ExperimentConfig config;
  for (const auto& d : j.at("dims")) config.dims.push_back(d.get<sk::Index>());
  config.n_law = law_from_json(j.at("N"));
  config.d_law = law_from_json(j.at("D"));
  config.samples = j.at("samples").get<int>();
  config.seed = j.value("seed", std::uint64_t{1});
  config.params = params_from(j.value("u", std::string("1/2")),
                              j.value("t", std::string("sqrt3over2")));
  config.precision_bits = j.value("precision", 128);
  config.threads = j.value("threads", 1);
  if (seed_given) config.seed = g.seed;
  if (threads_given) config.threads = g.threads;
  if (precision_given) config.precision_bits = g.precision;
  return config;
}

int cmd_experiment(const GlobalOpts& g, const std::string& config_path, bool emit_matrices,
                   bool timing, bool seed_given, bool threads_given, bool precision_given) {
  sk::ExperimentConfig config = config_from_json(sk::read_file(config_path), g, seed_given,
                                                 threads_given, precision_given);
  config.keep_witnesses = emit_matrices;
  sk::Precision prec{config.precision_bits};
  sk::ScopedPrecision scope(prec);
  sk::ExperimentResult result = sk::run_experiment(config);

  std::string payload = g.json ? sk::records_to_json(result.records, prec.out_digits(), timing,
                                                     emit_matrices)
                               : sk::records_to_csv(result.records, prec.out_digits(), timing);
  emit(g, payload);

  std::ostream& log = g.out.empty() ? std::cerr : std::cout;
  log << "records: " << result.summary.count << "\n";
  if (result.summary.defined) {
    const sk::LemmaReport& m = result.summary.max_report;
    int digits = 6;
    log << "max r32 " << sk::to_string(m.r32, digits) << ", r33 " << sk::to_string(m.r33, digits)
        << ", r34 " << sk::to_string(m.r34, digits) << ", r35 " << sk::to_string(m.r35, digits)
        << ", r36 " << sk::to_string(m.r36, digits) << ", r37 " << sk::to_string(m.r37, digits)
        << ", rH " << sk::to_string(m.rH, digits) << "\n";
    for (const auto& s : result.summary.slopes)
      log << "slope log H vs log N at n=" << s.n << " D=" << s.D << ": " << s.slope << " ("
          << s.points << " samples)\n";
  } else {
    log << "summary: undefined (no records)\n";
  }
  if (result.summary.failure) {
    log << "sample " << result.summary.failure->index << " failed (seed "
        << result.summary.failure->seed << "): " << result.summary.failure->message << "\n";
    return 1;
  }
  return 0;
}

int cmd_gl2(const GlobalOpts& g, const std::string& x_text, int nmax, const std::string& csv_path,
            const std::string& tol_text) {
  sk::Precision prec{g.precision};
  sk::ScopedPrecision scope(prec);
  auto comma = x_text.find(',');
  if (comma == std::string::npos) throw sk::IoError("--x expects \"re,im\"");
  sk::UpperHalfPoint x{sk::BigFloat(x_text.substr(0, comma)),
                       sk::BigFloat(x_text.substr(comma + 1))};
  sk::Gl2Result result = sk::hp_experiment(x, nmax, prec, sk::BigFloat(tol_text));
  std::string payload = sk::gl2_records_to_csv(result.records, prec.out_digits());
  if (!csv_path.empty())
    sk::write_file(csv_path, payload);
  else
    emit(g, payload);
  std::ostream& log = (csv_path.empty() && g.out.empty()) ? std::cerr : std::cout;
  log << "records: " << result.summary.count << "\n";
  log << "slope of log max H vs log N: " << result.summary.slope << "\n";
  log << "max H/N: " << sk::to_string(result.summary.max_ratio, 6) << "\n";
  log << "domain violations: " << result.summary.cert_violations << "\n";
  return result.summary.cert_violations == 0 ? 0 : 1;
}

sk::RealMatrix real_matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw sk::IoError("expected an array of arrays for a matrix");
  sk::Index n = static_cast<sk::Index>(j.size());
  sk::RealMatrix m(n, n);
  for (sk::Index i = 0; i < n; ++i) {
    const auto& row = j.at(static_cast<std::size_t>(i));
    if (static_cast<sk::Index>(row.size()) != n) throw sk::IoError("matrix rows differ in length");
    for (sk::Index k = 0; k < n; ++k) {
      const auto& v = row.at(static_cast<std::size_t>(k));
      m(i, k) = v.is_string() ? sk::BigFloat(v.get<std::string>())
                              : sk::BigFloat(v.get<double>());
    }
  }
  return m;
}

sk::RationalMatrix rational_matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw sk::IoError("expected an array of arrays for a matrix");
  std::ostringstream text;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (i) text << "; ";
    for (std::size_t k = 0; k < j.at(i).size(); ++k) {
      if (k) text << ' ';
      const auto& v = j.at(i).at(k);
      text << (v.is_string() ? v.get<std::string>() : std::to_string(v.get<long long>()));
    }
  }
  return sk::parse_matrix_text(text.str());
}

int cmd_standardize(const GlobalOpts& g, const std::string& triple_path, bool verify,
                    int grid_points) {
  sk::Precision prec{g.precision};
  sk::ScopedPrecision scope(prec);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(sk::read_file(triple_path));
  } catch (const sk::Error&) {
    throw;
  } catch (const std::exception& e) {
    throw sk::IoError(std::string("triple parse failure: ") + e.what());
  }
  sk::SiegelTripleGLn triple;
  triple.flag = rational_matrix_from_json(j.at("g_P"));
  triple.form = rational_matrix_from_json(j.at("Q"));
  triple.t_squared = sk::SiegelParams::parse_t_squared(
      j.at("t").is_string() ? j.at("t").get<std::string>() : sk::to_string(sk::Rational(j.at("t").get<long long>())));
  for (const auto& jo : j.value("omega", nlohmann::json::array()))
    triple.omega_samples.push_back(real_matrix_from_json(jo));

  sk::StandardizationResult result = sk::standardize(triple, prec);
  int digits = prec.out_digits();
  nlohmann::json out;
  out["gamma_q"] = sk::format_matrix_text(result.gamma_q);
  nlohmann::json sigma = nlohmann::json::array();
  for (sk::Index i = 0; i < result.sigma.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (sk::Index k = 0; k < result.sigma.cols(); ++k)
      row.push_back(sk::to_string(result.sigma(i, k), digits));
    sigma.push_back(std::move(row));
  }
  out["sigma"] = std::move(sigma);
  nlohmann::json beta = nlohmann::json::array();
  for (sk::Index i = 0; i < result.beta.size(); ++i)
    beta.push_back(sk::to_string(result.beta(i), digits));
  out["beta"] = std::move(beta);
  out["u_prime"] = sk::to_string(result.u_prime, digits);
  out["s"] = sk::to_string(result.s, digits);

  if (verify) {
    sk::ContainmentGrid grid;
    grid.scale_points = grid_points;
    grid.kappa_samples = grid_points;
    grid.seed = g.seed;
    sk::ContainmentReport report = sk::verify_containment(
        triple, result, grid, prec, sk::BigFloat(1) / 50, sk::BigFloat("1e-12"));
    out["containment_points"] = report.points_checked;
    out["containment_failures"] = report.failures.size();
  }
  emit(g, out.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"siegelkit - reduction theory in GL_n: Siegel sets, Iwasawa decompositions, "
               "segment combinatorics and height-bound experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  auto* opt_precision = app.add_option("--precision", g.precision, "working precision in bits")
                            ->capture_default_str();
  auto* opt_seed = app.add_option("--seed", g.seed, "64-bit experiment seed")->capture_default_str();
  auto* opt_threads = app.add_option("--threads", g.threads, "worker threads")->capture_default_str();
  app.add_option("--out", g.out, "output path (default: stdout)");
  app.add_flag("--json", g.json, "emit JSON instead of CSV");
  app.add_flag("--csv", g.csv, "emit CSV (default)");

  std::string matrix_path, u_text = "1/2", t_text = "sqrt3over2", tol_text = "1e-12";
  std::string pair_text, config_path, x_text = "0,1", csv_path, triple_path;
  int nmax = 100, grid_points = 10;
  bool emit_matrices = false, timing = false, verify = false;

  CLI::App* c_decompose = app.add_subcommand("decompose", "Iwasawa decomposition g = nu alpha kappa");
  c_decompose->add_option("--matrix", matrix_path, "matrix file (text or JSON)")->required();

  CLI::App* c_membership = app.add_subcommand("membership", "test membership in Omega_u A_t K");
  c_membership->add_option("--matrix", matrix_path, "matrix file")->required();
  c_membership->add_option("--u", u_text, "Omega bound u (rational)")->capture_default_str();
  c_membership->add_option("--t", t_text, "A_t threshold (rational or sqrt3over2)")
      ->capture_default_str();
  c_membership->add_option("--tol", tol_text, "membership tolerance")->capture_default_str();

  CLI::App* c_reduce = app.add_subcommand("reduce", "reduce into the fundamental Siegel set");
  c_reduce->add_option("--matrix", matrix_path, "matrix file")->required();
  c_reduce->add_option("--u", u_text, "Omega bound u >= 1/2")->capture_default_str();
  c_reduce->add_option("--t", t_text, "A_t threshold <= sqrt(3)/2")->capture_default_str();
  c_reduce->add_option("--tol", tol_text, "certification tolerance")->capture_default_str();

  CLI::App* c_segments = app.add_subcommand("segments", "leading entries and segment partition");
  c_segments->add_option("--matrix", matrix_path, "matrix file")->required();
  c_segments->add_option("--pair", pair_text, "print a witnessing sequence for \"i,j\" (1-based)");

  CLI::App* c_experiment = app.add_subcommand("experiment", "height-bound experiment corpus");
  c_experiment->add_option("--config", config_path, "JSON config file")->required();
  c_experiment->add_flag("--emit-matrices", emit_matrices, "embed witness matrices in JSON output");
  c_experiment->add_flag("--timing", timing, "emit wall-clock times (breaks byte reproducibility)");

  CLI::App* c_gl2 = app.add_subcommand("gl2", "upper half-plane isogeny experiment");
  c_gl2->add_option("--x", x_text, "base point \"re,im\" in the fundamental domain")
      ->capture_default_str();
  c_gl2->add_option("--nmax", nmax, "largest determinant")->capture_default_str();
  c_gl2->add_option("--csv", csv_path, "CSV output path");
  c_gl2->add_option("--tol", tol_text, "domain tolerance")->capture_default_str();

  CLI::App* c_standardize = app.add_subcommand("standardize", "conjugate a Siegel triple into a "
                                                              "standard Siegel set");
  c_standardize->add_option("--triple", triple_path, "JSON triple file")->required();
  c_standardize->add_flag("--verify", verify, "run the containment grid check");
  c_standardize->add_option("--grid", grid_points, "grid points per axis")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (c_decompose->parsed()) return cmd_decompose(g, matrix_path);
    if (c_membership->parsed()) return cmd_membership(g, matrix_path, u_text, t_text, tol_text);
    if (c_reduce->parsed()) return cmd_reduce(g, matrix_path, u_text, t_text, tol_text);
    if (c_segments->parsed()) return cmd_segments(g, matrix_path, pair_text);
    if (c_experiment->parsed())
      return cmd_experiment(g, config_path, emit_matrices, timing, opt_seed->count() > 0,
                            opt_threads->count() > 0, opt_precision->count() > 0);
    if (c_gl2->parsed()) return cmd_gl2(g, x_text, nmax, csv_path, tol_text);
    if (c_standardize->parsed()) return cmd_standardize(g, triple_path, verify, grid_points);
  } catch (const sk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
