#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "doctest.h"
#include "hullfacets/cli.hpp"
#include "hullfacets/csvio.hpp"

using namespace hullfacets;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
  CsvTable table;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  RunResult r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  if (r.code == 0 || r.code == 3) {
    std::istringstream in(r.out);
    r.table = parse_csv(in);
  }
  return r;
}

double cell(const CsvTable& t, std::size_t row, const std::string& col) {
  for (std::size_t c = 0; c < t.header.size(); ++c)
    if (t.header[c] == col) return std::stod(t.rows[row][c]);
  throw std::runtime_error("missing column " + col);
}

std::string body_only(const std::string& text) {
  std::istringstream in(text);
  std::string line, body;
  while (std::getline(in, line))
    if (line.empty() || line[0] != '#') body += line + "\n";
  return body;
}

}  // namespace

TEST_CASE("kernels subcommand tabulates the gaussian pair norm") {
  const RunResult r = run_cli({"kernels", "--model", "gaussian", "--d", "2",
                               "--kernel", "K", "--x", "0:5:0.5"});
  REQUIRE(r.code == 0);
  REQUIRE(r.table.rows.size() == 11);
  CHECK(r.table.header ==
        std::vector<std::string>{"x", "value", "abs_error"});
  for (std::size_t i = 0; i < r.table.rows.size(); ++i) {
    const double x = cell(r.table, i, "x");
    CHECK(cell(r.table, i, "value") ==
          doctest::Approx(std::exp(-0.5 * x * x)).epsilon(1e-7));
  }
}

TEST_CASE("kernels subcommand exposes the closed-form surface fractions") {
  const RunResult r = run_cli({"kernels", "--model", "gaussian", "--d", "3",
                               "--kernel", "lambda", "--x", "0,0.5,1"});
  REQUIRE(r.code == 0);
  // (1 - r^2)^{(d-2)/2} at d=3
  CHECK(cell(r.table, 0, "value") == doctest::Approx(1.0));
  CHECK(cell(r.table, 1, "value") == doctest::Approx(std::sqrt(0.75)));
  CHECK(cell(r.table, 2, "value") == doctest::Approx(0.0));
  CHECK(cell(r.table, 1, "abs_error") == 0.0);
}

TEST_CASE("expect ratio column approaches one from below") {
  const RunResult r =
      run_cli({"expect", "--model", "uniform_ball", "--d", "2", "--N",
               "10,100,1000,10000", "--method", "both"});
  REQUIRE(r.code == 0);
  REQUIRE(r.table.rows.size() == 4);
  double prev = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double ratio = cell(r.table, i, "ratio");
    CHECK(ratio > prev);
    CHECK(ratio < 1.0);
    prev = ratio;
  }
  CHECK(prev > 0.99);
}

TEST_CASE("expect emits json with a manifest") {
  const RunResult r =
      run_cli({"expect", "--model", "gaussian", "--d", "2", "--N", "50",
               "--method", "exact", "--out", "json"});
  REQUIRE(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.contains("manifest"));
  CHECK(j["manifest"]["version"].get<std::string>() == tool_version());
  REQUIRE(j["rows"].size() == 1);
  CHECK(j["rows"][0]["N"].get<long long>() == 50);
  CHECK(j["rows"][0]["exact"].get<double>() ==
        doctest::Approx(7.9727583664299262).epsilon(1e-7));
  CHECK(!j["rows"][0]["simplified"].get<bool>());
}

TEST_CASE("csv output round-trips byte-identically") {
  const RunResult r =
      run_cli({"expect", "--model", "uniform_ball", "--d", "3", "--N",
               "20,40", "--method", "both"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  const CsvTable parsed = parse_csv(in);
  std::ostringstream re;
  emit_csv(parsed, re);
  CHECK(re.str() == r.out);
}

TEST_CASE("identical invocations give identical numeric output") {
  const std::vector<std::string> args = {"mc",     "--model", "gaussian",
                                         "--d",    "3",       "--N",
                                         "12",     "--reps",  "40",
                                         "--seed", "99"};
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(body_only(a.out) == body_only(b.out));  // manifests differ by time

  std::vector<std::string> threaded = args;
  threaded.push_back("--threads");
  threaded.push_back("2");
  const RunResult c = run_cli(threaded);
  REQUIRE(c.code == 0);
  CHECK(cell(a.table, 0, "mean") == cell(c.table, 0, "mean"));
  CHECK(cell(a.table, 0, "std_error") == cell(c.table, 0, "std_error"));
}

TEST_CASE("environment variable supplies the default seed") {
  setenv("HULLFACETS_SEED", "99", 1);
  const RunResult env_run = run_cli(
      {"mc", "--model", "gaussian", "--d", "3", "--N", "12", "--reps", "40"});
  unsetenv("HULLFACETS_SEED");
  const RunResult flag_run =
      run_cli({"mc", "--model", "gaussian", "--d", "3", "--N", "12", "--reps",
               "40", "--seed", "99"});
  REQUIRE(env_run.code == 0);
  CHECK(cell(env_run.table, 0, "mean") == cell(flag_run.table, 0, "mean"));
  CHECK(env_run.table.rows[0][4] == "99");  // seed column
}

TEST_CASE("per-replicate output satisfies the dimension-3 face identity") {
  const RunResult r =
      run_cli({"mc", "--model", "gaussian", "--d", "3", "--N", "15", "--reps",
               "30", "--seed", "5", "--per-replicate"});
  REQUIRE(r.code == 0);
  REQUIRE(r.table.rows.size() == 30);
  for (std::size_t i = 0; i < r.table.rows.size(); ++i) {
    const int f = static_cast<int>(cell(r.table, i, "facets"));
    const int v = static_cast<int>(cell(r.table, i, "vertices"));
    CHECK(f == 2 * v - 4);
  }
}

TEST_CASE("outside-probability mode emits a sane row") {
  const RunResult r =
      run_cli({"mc", "--model", "uniform_ball", "--d", "2", "--N", "10",
               "--reps", "2", "--seed", "4", "--p-outside", "--trials",
               "400"});
  REQUIRE(r.code == 0);
  const double p = cell(r.table, 0, "p_hat");
  CHECK(p > 0.0);
  CHECK(p < 1.0);
  CHECK(cell(r.table, 0, "std_error") > 0.0);
  CHECK(std::fabs(cell(r.table, 0, "diff_mean")) <
        3.0 * cell(r.table, 0, "diff_std_error") + 1e-12);
}

TEST_CASE("compare agrees at a typical seed and flags a tail seed") {
  const RunResult ok = run_cli({"compare", "--model", "uniform_ball", "--d",
                                "2", "--N", "30", "--reps", "100", "--seed",
                                "1", "--strict"});
  CHECK(ok.code == 0);
  REQUIRE(ok.table.rows.size() == 1);
  CHECK(ok.table.rows[0].back() == "yes");
  const double lo = cell(ok.table, 0, "mc_ci99_lo");
  const double hi = cell(ok.table, 0, "mc_ci99_hi");
  CHECK(lo < cell(ok.table, 0, "exact"));
  CHECK(cell(ok.table, 0, "exact") < hi);

  // seed 36 sits in the 1% tail by construction; strict must exit 3
  const RunResult tail = run_cli({"compare", "--model", "uniform_ball", "--d",
                                  "2", "--N", "30", "--reps", "100", "--seed",
                                  "36", "--strict"});
  CHECK(tail.code == 3);
  CHECK(tail.err.find("disagreement") != std::string::npos);
  const RunResult lax = run_cli({"compare", "--model", "uniform_ball", "--d",
                                 "2", "--N", "30", "--reps", "100", "--seed",
                                 "36"});
  CHECK(lax.code == 0);
  CHECK(lax.table.rows[0].back() == "no");
}

TEST_CASE("threshold table orders families by tail weight") {
  const auto row_of = [](const std::string& family, const char* k) {
    std::vector<std::string> args = {"table", "--family", family,
                                     "--d", "5,10,20"};
    if (k) {
      args.push_back("--k");
      args.push_back(k);
    }
    return run_cli(args);
  };
  const RunResult alg = row_of("poly", "1");
  const RunResult gauss = row_of("gaussian", nullptr);
  const RunResult ball = row_of("uniform-ball", nullptr);
  REQUIRE(alg.code == 0);
  REQUIRE(gauss.code == 0);
  REQUIRE(ball.code == 0);
  for (std::size_t i = 0; i < 3; ++i) {
    const double a = cell(alg.table, i, "log10_min_N");
    const double g = cell(gauss.table, i, "log10_min_N");
    const double b = cell(ball.table, i, "log10_min_N");
    CHECK(a <= g);
    CHECK(g <= b);
    CHECK(cell(alg.table, i, "ratio") == doctest::Approx(10.0).epsilon(1e-6));
  }
}

TEST_CASE("precision flag shortens numeric cells") {
  const RunResult full = run_cli({"kernels", "--model", "gaussian", "--d",
                                  "2", "--kernel", "K", "--x", "0.5,1.5"});
  const RunResult short6 =
      run_cli({"kernels", "--model", "gaussian", "--d", "2", "--kernel", "K",
               "--x", "0.5,1.5", "--precision", "6"});
  REQUIRE(full.code == 0);
  REQUIRE(short6.code == 0);
  CHECK(full.table.rows[0][1].size() > short6.table.rows[0][1].size());
  CHECK(std::stod(short6.table.rows[0][1]) ==
        doctest::Approx(std::stod(full.table.rows[0][1])).epsilon(1e-5));
}

TEST_CASE("output flag writes the table to a file") {
  const std::string path = "/tmp/hullfacets_cli_test_out.csv";
  std::filesystem::remove(path);
  const RunResult r =
      run_cli({"table", "--family", "poly", "--k", "2", "--d", "5",
               "--output", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  REQUIRE(f.good());
  const CsvTable t = parse_csv(f);
  CHECK(t.rows.size() == 1);
  CHECK(t.rows[0][0] == "algebraic");
  std::filesystem::remove(path);
}

TEST_CASE("model spec files and builtin names resolve to the same model") {
  const std::string path = "/tmp/hullfacets_cli_test_model.json";
  {
    std::ofstream f(path);
    f << "{\"family\": \"t\", \"d\": 2, \"k\": 3.0}";
  }
  const RunResult by_file = run_cli(
      {"expect", "--model", path, "--N", "100", "--method", "exact"});
  const RunResult by_name =
      run_cli({"expect", "--model", "t", "--d", "2", "--k", "3", "--N", "100",
               "--method", "exact"});
  REQUIRE(by_file.code == 0);
  REQUIRE(by_name.code == 0);
  CHECK(cell(by_file.table, 0, "exact") == cell(by_name.table, 0, "exact"));
  std::filesystem::remove(path);
}

TEST_CASE("usage and numeric failures map to distinct exit codes") {
  CHECK(run_cli({"expect", "--model", "nosuch", "--d", "2", "--N", "10"})
            .code == 1);
  CHECK(run_cli({"expect", "--model", "gaussian", "--N", "10"}).code == 1);
  CHECK(run_cli({"kernels", "--model", "gaussian", "--d", "2", "--kernel",
                 "Z", "--x", "1"})
            .code == 1);
  CHECK(run_cli({"expect", "--model", "gaussian", "--d", "2", "--N", "2"})
            .code == 1);  // N <= d
  CHECK(run_cli({"nonsense"}).code == 1);
  CHECK(run_cli({}).code == 1);
  CHECK(run_cli({"table", "--family", "uniform-ball", "--d", "30"}).code ==
        2);  // threshold out of range

  const RunResult usage =
      run_cli({"expect", "--model", "nosuch", "--d", "2", "--N", "10"});
  CHECK(usage.err.find("\"error\":\"usage\"") != std::string::npos);
  CHECK(usage.err.find('\n') == usage.err.size() - 1);  // single line
}

TEST_CASE("help and version are reachable") {
  std::ostringstream out, err;
  CHECK(cli::run({"--version"}, out, err) == 0);
  CHECK(out.str().find("hullfacets") != std::string::npos);
  std::ostringstream out2, err2;
  CHECK(cli::run({"--help"}, out2, err2) == 0);
  CHECK(out2.str().find("expect") != std::string::npos);
}
