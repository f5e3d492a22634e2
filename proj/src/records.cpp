#include "siegelkit/records.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace siegelkit {

namespace {

std::string format_ms(double ms, bool include_timing) {
  if (!include_timing) return "0";
  std::ostringstream os;
  os.setf(std::ios_base::fixed);
  os.precision(3);
  os << ms;
  return os.str();
}

}  // namespace

std::string records_to_csv(const std::vector<ExperimentRecord>& records, int out_digits,
                           bool include_timing) {
  std::ostringstream os;
  os << "seed,n,N,D,H,r32,r33,r34,r35,r36,r37,rH,ms\n";
  for (const auto& r : records) {
    os << r.seed << ',' << r.n << ',' << to_string(r.N) << ',' << r.D.str() << ',' << r.H.str()
       << ',' << to_string(r.report.r32, out_digits) << ',' << to_string(r.report.r33, out_digits)
       << ',' << to_string(r.report.r34, out_digits) << ',' << to_string(r.report.r35, out_digits)
       << ',' << to_string(r.report.r36, out_digits) << ',' << to_string(r.report.r37, out_digits)
       << ',' << to_string(r.report.rH, out_digits) << ',' << format_ms(r.ms, include_timing)
       << '\n';
  }
  return os.str();
}

namespace {

nlohmann::json real_matrix_json(const RealMatrix& m, int digits) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j), digits));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json real_vector_json(const RealVector& v, int digits) {
  nlohmann::json out = nlohmann::json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_string(v(i), digits));
  return out;
}

}  // namespace

std::string records_to_json(const std::vector<ExperimentRecord>& records, int out_digits,
                            bool include_timing, bool emit_matrices) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json j;
    j["seed"] = r.seed;
    j["n"] = r.n;
    j["N"] = to_string(r.N);
    j["D"] = r.D.str();
    j["H"] = r.H.str();
    j["r32"] = to_string(r.report.r32, out_digits);
    j["r33"] = to_string(r.report.r33, out_digits);
    j["r34"] = to_string(r.report.r34, out_digits);
    j["r35"] = to_string(r.report.r35, out_digits);
    j["r36"] = to_string(r.report.r36, out_digits);
    j["r37"] = to_string(r.report.r37, out_digits);
    j["rH"] = to_string(r.report.rH, out_digits);
    j["ms"] = format_ms(r.ms, include_timing);
    if (emit_matrices && r.witness) {
      const WitnessedElement& w = *r.witness;
      nlohmann::json jm;
      jm["gamma"] = format_matrix_text(w.gamma);
      jm["mu"] = real_matrix_json(w.mu, out_digits);
      jm["nu"] = real_matrix_json(w.nu, out_digits);
      jm["alpha"] = real_vector_json(w.alpha, out_digits);
      jm["beta"] = real_vector_json(w.beta, out_digits);
      jm["kappa"] = real_matrix_json(w.kappa, out_digits);
      j["witness"] = std::move(jm);
    }
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::vector<ExperimentRecord> records_from_json(const std::string& text) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw IoError(std::string("records JSON parse failure: ") + e.what());
  }
  if (!arr.is_array()) throw IoError("records JSON must be an array");
  std::vector<ExperimentRecord> out;
  for (const auto& j : arr) {
    ExperimentRecord r;
    r.seed = j.at("seed").get<std::uint64_t>();
    r.n = j.at("n").get<Index>();
    r.N = parse_rational(j.at("N").get<std::string>());
    r.D = BigInt(j.at("D").get<std::string>());
    r.H = BigInt(j.at("H").get<std::string>());
    r.report.r32 = BigFloat(j.at("r32").get<std::string>());
    r.report.r33 = BigFloat(j.at("r33").get<std::string>());
    r.report.r34 = BigFloat(j.at("r34").get<std::string>());
    r.report.r35 = BigFloat(j.at("r35").get<std::string>());
    r.report.r36 = BigFloat(j.at("r36").get<std::string>());
    r.report.r37 = BigFloat(j.at("r37").get<std::string>());
    r.report.rH = BigFloat(j.at("rH").get<std::string>());
    r.report.row_length_check = 0;
    r.ms = std::stod(j.at("ms").get<std::string>());
    out.push_back(std::move(r));
  }
  return out;
}

std::string gl2_records_to_csv(const std::vector<Gl2Record>& records, int out_digits) {
  std::ostringstream os;
  os << "N,idx,a,b,d,H,ratio\n";
  for (const auto& r : records)
    os << r.N.str() << ',' << r.idx << ',' << r.a.str() << ',' << r.b.str() << ',' << r.d.str()
       << ',' << r.H.str() << ',' << to_string(r.ratio, out_digits) << '\n';
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  os << text;
  if (!os) throw IoError("write failure on '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace siegelkit
