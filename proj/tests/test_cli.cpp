#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct CmdResult {
  int exit_code;
  std::string out;
};

CmdResult run_cli(const std::string& args) {
  std::string cmd = std::string(SIEGELKIT_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path write_temp(const std::string& name, const std::string& text) {
  fs::path dir = fs::temp_directory_path() / "siegelkit-cli-tests";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream os(p);
  os << text;
  return p;
}

}  // namespace

TEST_CASE("decompose prints the Iwasawa data") {
  auto m = write_temp("m.txt", "2 1; 0 1");
  auto r = run_cli("decompose --matrix " + m.string() + " --precision 128");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("nu =") != std::string::npos);
  CHECK(r.out.find("alpha = (2.0000") != std::string::npos);
  CHECK(r.out.find("kappa =") != std::string::npos);
}

TEST_CASE("membership verdicts") {
  auto inside = write_temp("in.txt", "1 0; 0 1");
  auto r = run_cli("membership --matrix " + inside.string() + " --u 1/2 --t sqrt3over2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("member") == 0);

  auto outside = write_temp("out.txt", "2 1; 0 1");
  r = run_cli("membership --matrix " + outside.string() + " --u 1/2 --t sqrt3over2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("not a member") != std::string::npos);
}

TEST_CASE("reduce prints an exact delta") {
  auto m = write_temp("d.txt", "1 0; 0 4");
  auto r = run_cli("reduce --matrix " + m.string() + " --u 1/2 --t sqrt3over2 --precision 128");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("[0, 1]") != std::string::npos);
  CHECK(r.out.find("[1, 0]") != std::string::npos);
  CHECK(r.out.find("alpha = (4.0000") != std::string::npos);
}

TEST_CASE("segments prints the partition and witnessing chain") {
  auto m = write_temp("t1.txt", "1 1 1; 1 0 0; 0 1 0");
  auto r = run_cli("segments --matrix " + m.string() + " --pair 3,1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("leading entries: (1,1) (2,1) (3,2)") != std::string::npos);
  CHECK(r.out.find("segments: {1,2,3}") != std::string::npos);
  CHECK(r.out.find("witnessing sequence for (3,1): (3,2) (2,1)") != std::string::npos);

  auto upper = write_temp("t2.txt", "3 1 1/2; 0 2 5; 0 0 1");
  r = run_cli("segments --matrix " + upper.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("segments: {1}, {2}, {3}") != std::string::npos);
}

TEST_CASE("usage errors exit 2, domain errors exit 1") {
  CHECK(run_cli("segments").exit_code == 2);            // missing --matrix
  CHECK(run_cli("bogus-subcommand").exit_code == 2);
  CHECK(run_cli("decompose --matrix /nonexistent/x.txt").exit_code == 1);

  auto singular = write_temp("sing.txt", "1 1; 1 1");
  auto r = run_cli("decompose --matrix " + singular.string());
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("error:") != std::string::npos);
  CHECK(r.out.find("invertible") != std::string::npos);

  auto bad_params = write_temp("bp.txt", "1 0; 0 1");
  r = run_cli("reduce --matrix " + bad_params.string() + " --u 1/4 --t sqrt3over2");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("u >= 1/2") != std::string::npos);
}

TEST_CASE("experiment subcommand writes a CSV corpus") {
  auto cfg = write_temp("cfg.json", R"({
    "dims": [2], "N": {"law": "loguniform", "min": 1, "max": 40},
    "D": 1, "samples": 4, "seed": 5, "u": "1/2", "t": "sqrt3over2",
    "precision": 128, "threads": 1
  })");
  fs::path out = fs::temp_directory_path() / "siegelkit-cli-tests" / "exp.csv";
  auto r = run_cli("experiment --config " + cfg.string() + " --out " + out.string());
  CHECK(r.exit_code == 0);
  std::ifstream is(out);
  std::string header;
  std::getline(is, header);
  CHECK(header == "seed,n,N,D,H,r32,r33,r34,r35,r36,r37,rH,ms");
  int rows = 0;
  std::string line;
  while (std::getline(is, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 4);
  CHECK(r.out.find("records: 4") != std::string::npos);
}

TEST_CASE("experiment emits a JSON mirror with witnesses") {
  auto cfg = write_temp("cfgj.json", R"({
    "dims": [2], "N": 4, "D": 1, "samples": 2, "seed": 6,
    "u": "1/2", "t": "sqrt3over2", "precision": 128, "threads": 1
  })");
  auto r = run_cli("experiment --config " + cfg.string() + " --json --emit-matrices");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"witness\"") != std::string::npos);
  CHECK(r.out.find("\"gamma\"") != std::string::npos);
  CHECK(r.out.find("\"rH\"") != std::string::npos);
}

TEST_CASE("gl2 subcommand") {
  fs::path out = fs::temp_directory_path() / "siegelkit-cli-tests" / "gl2.csv";
  auto r = run_cli("gl2 --x 0,1 --nmax 12 --csv " + out.string());
  CHECK(r.exit_code == 0);
  std::ifstream is(out);
  std::string header;
  std::getline(is, header);
  CHECK(header == "N,idx,a,b,d,H,ratio");
  CHECK(r.out.find("domain violations: 0") != std::string::npos);
}

TEST_CASE("standardize subcommand") {
  auto triple = write_temp("triple.json", R"({
    "g_P": [["1","0"],["0","1"]],
    "Q": [["4","0"],["0","1"]],
    "t": "sqrt3over2",
    "omega": [[["1","0"],["0","1"]]]
  })");
  auto r = run_cli("standardize --triple " + triple.string() + " --verify --grid 4");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"gamma_q\"") != std::string::npos);
  CHECK(r.out.find("\"u_prime\"") != std::string::npos);
  CHECK(r.out.find("\"containment_failures\": 0") != std::string::npos);
  // s = t/2 = sqrt(3)/4 = 0.4330...
  CHECK(r.out.find("4.3301") != std::string::npos);
}
