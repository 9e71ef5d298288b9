#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "polsim/config.hpp"

namespace fs = std::filesystem;
using polsim::cli::run;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / "polsim_cli_test";
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) out.push_back(field);
  return out;
}

}  // namespace

TEST_CASE("dispersion emits the seven columns over [0, 2] q_res") {
  TempDir tmp;
  std::string out = tmp.file("fig1.csv");
  REQUIRE(run({"dispersion", "--out", out, "--points", "11"}) == 0);
  auto lines = split_lines(slurp(out));
  std::size_t header = 0;
  while (header < lines.size() && lines[header].starts_with("#")) ++header;
  CHECK(lines[header] ==
        "q_over_qres,omega_LP_mev,omega_UP_mev,alpha_LP_sq,beta_LP_sq,"
        "alpha_UP_sq,beta_UP_sq");
  CHECK(lines.size() - header - 1 == 11);
  auto first = split_csv(lines[header + 1]);
  auto last = split_csv(lines.back());
  CHECK(first[0] == "0");
  CHECK(last[0] == "2");
}

TEST_CASE("outputs are byte-identical across reruns and thread counts") {
  TempDir tmp;
  std::string a = tmp.file("a.csv"), b = tmp.file("b.csv"),
              c = tmp.file("c.csv");
  REQUIRE(run({"dispersion", "--out", a, "--points", "101",
               "--threads", "1"}) == 0);
  REQUIRE(run({"dispersion", "--out", b, "--points", "101",
               "--threads", "1"}) == 0);
  REQUIRE(run({"dispersion", "--out", c, "--points", "101",
               "--threads", "4"}) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) == slurp(c));
}

TEST_CASE("provenance hash matches the resolved config") {
  TempDir tmp;
  std::string cfg_path = tmp.file("gaas.cfg");
  {
    std::ofstream cfg(cfg_path);
    cfg << "omega12 = 140\n";
  }
  std::string out = tmp.file("disp.csv");
  REQUIRE(run({"dispersion", "--config", cfg_path, "--out", out,
               "--points", "3"}) == 0);
  polsim::DeviceConfig resolved = polsim::load_config("omega12 = 140\n");
  char expect[32];
  std::snprintf(expect, sizeof expect, "%016llx",
                static_cast<unsigned long long>(polsim::config_hash(resolved)));
  CHECK(slurp(out).find(std::string("# config_hash: ") + expect) !=
        std::string::npos);
}

TEST_CASE("exit codes: usage 2, config validation 3, numeric failure 4") {
  TempDir tmp;
  CHECK(run({"no-such-subcommand"}) == 2);
  CHECK(run({"dynamics"}) == 2);  // missing required --intensity
  CHECK(run({"dispersion", "--format", "yaml"}) == 2);
  CHECK(run({"dispersion", "--set", "absorption=1.5", "--out",
             tmp.file("x.csv")}) == 3);
  CHECK(run({"dispersion", "--set", "nonsense_key=1", "--out",
             tmp.file("y.csv")}) == 3);

  setenv("POLSIM_MEMO_BUDGET", "3", 1);
  int rc = run({"correlator", "--table-max", "6", "--N", "50", "--mode",
                "float", "--out", tmp.file("z.csv")});
  unsetenv("POLSIM_MEMO_BUDGET");
  CHECK(rc == 4);
}

TEST_CASE("correlator single key prints the exact rational") {
  TempDir tmp;
  std::string out = tmp.file("k.csv");
  REQUIRE(run({"correlator", "--key", "1", "1", "1", "0", "--N", "10",
               "--out", out}) == 0);
  auto lines = split_lines(slurp(out));
  CHECK(lines.back() == "1,1,1,0,10,4/5,rational");
}

TEST_CASE("correlator table covers every valid key up to the bound") {
  TempDir tmp;
  std::string out = tmp.file("table.csv");
  REQUIRE(run({"correlator", "--table-max", "3", "--N", "7", "--out", out})
          == 0);
  auto lines = split_lines(slurp(out));
  int rows = 0;
  for (const auto& l : lines)
    if (!l.starts_with("#") && !l.starts_with("n,")) ++rows;
  // sum over t = n+m of (t+1) pairs times t values of s: 2 + 6 + 12 = 20.
  CHECK(rows == 20);
}

TEST_CASE("oracle-check exits zero on agreement") {
  TempDir tmp;
  std::string out = tmp.file("oracle.csv");
  CHECK(run({"oracle-check", "--max-nm", "3", "--N-list", "2", "5", "--out",
             out}) == 0);
  std::string text = slurp(out);
  CHECK(text.find("MISMATCH") == std::string::npos);
  CHECK(text.find("# all_match: true") != std::string::npos);
}

TEST_CASE("threshold JSON carries the ledger and classifies intensities") {
  TempDir tmp;
  std::string out = tmp.file("thr.json");
  REQUIRE(run({"threshold", "--out", out}) == 0);
  std::string text = slurp(out);
  CHECK(text.find("\"m_thr\"") != std::string::npos);
  CHECK(text.find("\"intensity_thr_w_cm2\"") != std::string::npos);
  CHECK(text.find("\"hopfield_convention\"") != std::string::npos);
  CHECK(text.find("\"provenance\"") != std::string::npos);

  CHECK(run({"threshold", "--intensity", "1000", "--out",
             tmp.file("below.json")}) == 0);
  CHECK(run({"threshold", "--intensity", "9e9", "--out",
             tmp.file("above.json")}) == 1);
}

TEST_CASE("dynamics exits by regime and emits t,m,n") {
  TempDir tmp;
  std::string out = tmp.file("dyn.csv");
  REQUIRE(run({"dynamics", "--intensity", "8000", "--t-end", "4",
               "--out", out}) == 0);
  auto lines = split_lines(slurp(out));
  bool saw_header = false;
  for (const auto& l : lines)
    if (l == "t_ps,m,n") saw_header = true;
  CHECK(saw_header);

  // Slightly above threshold (I_thr ~ 4.1e4 on the preset): growth regime.
  CHECK(run({"dynamics", "--intensity", "5e4", "--t-end", "2000",
             "--linearized", "--out", tmp.file("hot.csv")}) == 1);
}

TEST_CASE("rate-sweep decomposition columns multiply back to the rate") {
  TempDir tmp;
  std::string out = tmp.file("rates.csv");
  REQUIRE(run({"rate-sweep", "--min", "1e10", "--max", "2e11", "--points",
               "7", "--out", out}) == 0);
  auto lines = split_lines(slurp(out));
  std::size_t header = 0;
  while (header < lines.size() && lines[header].starts_with("#")) ++header;
  auto cols = split_csv(lines[header]);
  REQUIRE(cols.size() == 12);
  for (std::size_t i = header + 1; i < lines.size(); ++i) {
    auto row = split_csv(lines[i]);
    double gamma = std::stod(row[1]);
    double density_nm2 = std::stod(row[6]) * 1e-14;
    double product = std::stod(row[2]) * std::stod(row[3]) *
                     std::stod(row[4]) * std::stod(row[5]) * density_nm2 *
                     std::stod(row[7]) * std::stod(row[8]) *
                     std::stod(row[9]);
    CHECK(gamma == doctest::Approx(product).epsilon(1e-9));
  }
}

TEST_CASE("bosonicity-sweep reports the zeta fit in provenance") {
  TempDir tmp;
  std::string out = tmp.file("inset.csv");
  REQUIRE(run({"bosonicity-sweep", "--modes", "matter", "--points", "12",
               "--max-ratio", "0.1", "--out", out}) == 0);
  std::string text = slurp(out);
  CHECK(text.find("# zeta: ") != std::string::npos);
  CHECK(text.find("m_over_N,n,B,est_error") != std::string::npos);
}

TEST_CASE("json format mirrors the csv records") {
  TempDir tmp;
  std::string out = tmp.file("disp.json");
  REQUIRE(run({"dispersion", "--points", "3", "--format", "json", "--out",
               out}) == 0);
  std::string text = slurp(out);
  CHECK(text.find("\"columns\": [\"q_over_qres\"") != std::string::npos);
  CHECK(text.find("\"rows\": [") != std::string::npos);
}
