#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "fixtures.hpp"
#include "taxchain/oracle.hpp"

using namespace taxchain;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "taxchain");
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("taxchain_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_rows(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream text(slurp(p));
  std::string line;
  std::getline(text, line);
  while (std::getline(text, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("solve prints the limited-risk equilibrium") {
  const auto r = run({"solve", "--structure", "r", "--config", taxfix::preset("fig6.ini")});
  CHECK(r.code == 0);
  for (const char* field : {"y_star", "e_star", "b_star", "pi_r", "pi_pc", "pi_hq", "fixed_wage",
                            "lemma2_b_residual", "boundary_b", "iterations"}) {
    CHECK(r.out.find(std::string(field) + " = ") != std::string::npos);
  }
}

TEST_CASE("solve with overrides") {
  const auto r = run({"solve", "-s", "c", "-c", taxfix::preset("fig4.ini"), "-o", "tax.tau0=0.05"});
  CHECK(r.code == 0);
  CHECK(r.out.find("e_star = 4.97") != std::string::npos);
}

TEST_CASE("sweep writes one row per point with falling intensity") {
  const auto dir = scratch("sweep");
  const auto csv = dir / "s.csv";
  const auto r = run({"sweep", "--structure", "r", "--config", taxfix::preset("fig6.ini"), "--param", "tau0",
                      "--from", "0.30", "--to", "0.05", "--steps", "26", "--out", csv.string(), "--jobs", "3"});
  REQUIRE(r.code == 0);
  const auto rows = read_rows(csv);
  REQUIRE(rows.size() == 26);
  double prev = 2.0;
  for (const auto& row : rows) {
    const double b = std::stod(row[5]);
    CHECK(b < prev);
    prev = b;
  }
  // Endpoints against the grid oracle.
  for (std::size_t i : {std::size_t{0}, std::size_t{25}}) {
    Scenario s = taxfix::limited_risk_base();
    s.tau0 = std::stod(rows[i][2]);
    const auto o = oracle_solve_r(s, 500, 500);
    CHECK(std::abs(std::stod(rows[i][5]) - o.b) <= o.b_step);
    CHECK(std::abs(std::stod(rows[i][4]) - o.e) <= o.e_step);
  }
  fs::remove_all(dir);
}

TEST_CASE("sweep to stdout") {
  const auto r = run({"sweep", "-s", "c", "-c", taxfix::preset("fig5.ini"), "--param", "alpha", "--from", "0.1",
                      "--to", "0.5", "--steps", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("structure,param_name", 0) == 0);
}

TEST_CASE("reproduce fig7 matches the profit anchors and is deterministic") {
  const auto a = scratch("fig7a");
  const auto b = scratch("fig7b");
  REQUIRE(run({"reproduce", "fig7", "--out", a.string(), "--jobs", "4"}).code == 0);
  REQUIRE(run({"reproduce", "fig7", "--out", b.string()}).code == 0);
  const struct {
    const char* file;
    double pi;
  } anchors[] = {{"fig7_R_alpha_0.10_beta_0.30.csv", 8123},
                 {"fig7_R_alpha_0.30_beta_0.30.csv", 8241},
                 {"fig7_R_alpha_0.50_beta_0.30.csv", 8351.5},
                 {"fig7_R_alpha_0.10_beta_0.50.csv", 9014.6},
                 {"fig7_R_alpha_0.10_beta_0.70.csv", 9912}};
  for (const auto& anchor : anchors) {
    CAPTURE(anchor.file);
    const auto rows = read_rows(a / anchor.file);
    REQUIRE(rows.size() == 26);
    // tau0 runs 0.30 .. 0.05 in steps of 0.01; tau0 = 0.10 is row 20.
    CHECK(std::stod(rows[20][2]) == doctest::Approx(0.10));
    CHECK(std::stod(rows[20][8]) == doctest::Approx(anchor.pi).epsilon(0.005));
    CHECK(slurp(a / anchor.file) == slurp(b / anchor.file));
  }
  CHECK(slurp(a / "fig7_turning_points.csv") == slurp(b / "fig7_turning_points.csv"));
  CHECK(slurp(a / "fig7_turning_points.csv").find("\n0.1,0.3,0.18") != std::string::npos);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("threshold") {
  const auto ok = run({"threshold", "-c", taxfix::preset("fig7.ini")});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("location = 0.18") != std::string::npos);
  const auto none = run({"threshold", "-s", "c", "-c", taxfix::preset("fig5.ini")});
  CHECK(none.code == cli::kExitDetection);
  CHECK(none.err.find("NoTurningPoint") != std::string::npos);
}

TEST_CASE("boundary") {
  const auto ok = run({"boundary", "-s", "c", "-c", taxfix::preset("fig8c.ini"), "--alpha-steps", "3"});
  CHECK(ok.code == 0);
  CHECK(ok.out.rfind("alpha,beta,status,note\n", 0) == 0);
  // At the low raw-material price the royalty derivative wins everywhere.
  const auto none = run({"boundary", "-s", "c", "-c", taxfix::preset("fig8c.ini"), "-o", "market.gamma0=20",
                         "--alpha-steps", "3"});
  CHECK(none.code == cli::kExitDetection);
}

TEST_CASE("verify") {
  const auto r = run({"verify", "--count", "5", "--seed", "40"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("PASS oracle_equivalence_R (5/5)") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == cli::kExitFailure);
  CHECK(run({"frobnicate"}).code == cli::kExitFailure);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"solve", "-c", taxfix::preset("fig6.ini")}).code == cli::kExitFailure);
  CHECK(run({"solve", "-s", "x", "-c", taxfix::preset("fig6.ini")}).code == cli::kExitFailure);
  CHECK(run({"solve", "-s", "r", "-c", "/nonexistent.ini"}).code == cli::kExitConfig);
  CHECK(run({"solve", "-s", "r", "-c", taxfix::preset("fig6.ini"), "-o", "tax.tau0=0.9"}).code == cli::kExitConfig);
  CHECK(run({"solve", "-s", "r", "-c", taxfix::preset("fig6.ini"), "-o", "tax.zeta=1"}).code == cli::kExitConfig);
  CHECK(run({"reproduce", "fig9", "--out", "/tmp"}).code == cli::kExitFailure);

  CHECK(cli::exit_code_for(ErrorKind::InfeasibleScenario) == 2);
  CHECK(cli::exit_code_for(ErrorKind::ArmLengthViolation) == 2);
  CHECK(cli::exit_code_for(ErrorKind::NonConvergence) == 3);
  CHECK(cli::exit_code_for(ErrorKind::DensityVanishes) == 3);
  CHECK(cli::exit_code_for(ErrorKind::ConfigParseError) == 4);
  CHECK(cli::exit_code_for(ErrorKind::UnknownKey) == 4);
  CHECK(cli::exit_code_for(ErrorKind::InvariantViolation) == 4);
  CHECK(cli::exit_code_for(ErrorKind::NoTurningPoint) == 5);
  CHECK(cli::exit_code_for(ErrorKind::MultipleTurningPoints) == 5);
  CHECK(cli::exit_code_for(ErrorKind::RootNotBracketed) == 5);
}

TEST_CASE("non-convergence surfaces as exit 3") {
  const auto r = run({"solve", "-s", "r", "-c", taxfix::preset("fig6.ini"), "-o", "solver.max_iter=2", "-o",
                      "solver.damping=0.01"});
  CHECK(r.code == cli::kExitNonConvergence);
}

}  // TEST_SUITE
