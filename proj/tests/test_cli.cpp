#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

// RITSIM_CLI_PATH is injected by the build as the full path to the binary.

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int g_tmp_counter = 0;

std::string tmp_path(const std::string& tag) {
  return "/tmp/ritsim_cli_" + std::to_string(g_tmp_counter++) + "_" + tag;
}

CliResult run_cli(const std::string& args) {
  CliResult res;
  std::string out_file = tmp_path("stdout");
  std::string err_file = tmp_path("stderr");
  std::string cmd = std::string(RITSIM_CLI_PATH) + " " + args + " > " +
                    out_file + " 2> " + err_file;
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  res.out = slurp(out_file);
  res.err = slurp(err_file);
  std::remove(out_file.c_str());
  std::remove(err_file.c_str());
  return res;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> cells_of(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

const char* kRunHeader =
    "run,policy,lambda,v,rho,capital_d,horizon,warmup,seed,n_captured,"
    "n_escaped,capture_fraction,ci_low,ci_high";

}  // namespace

TEST_CASE("help exits cleanly and names the subcommands") {
  CliResult res = run_cli("--help");
  CHECK(res.code == 0);
  CHECK(res.out.find("run") != std::string::npos);
  CHECK(res.out.find("sweep") != std::string::npos);
  CHECK(res.out.find("bounds") != std::string::npos);
}

TEST_CASE("a missing subcommand is a usage error") {
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("frobnicate").code == 2);
}

TEST_CASE("single run emits a header and one row") {
  CliResult res = run_cli(
      "run --policy fcfs --lambda 1 --horizon 200 --warmup 0 --seed 5");
  REQUIRE(res.code == 0);
  std::vector<std::string> lines = lines_of(res.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == kRunHeader);
  std::vector<std::string> cells = cells_of(lines[1]);
  REQUIRE(cells.size() == 14);
  CHECK(cells[0] == "0");
  CHECK(cells[1] == "fcfs");
  CHECK(cells[2] == "1");
  CHECK(cells[6] == "200");
  CHECK(std::stod(cells[11]) >= 0.0);
  CHECK(std::stod(cells[11]) <= 1.0);
}

TEST_CASE("replicated runs add per-run rows and an aggregate") {
  CliResult res = run_cli(
      "run --policy la --lambda 1 --horizon 150 --warmup 0 --seed 8 --runs 3");
  REQUIRE(res.code == 0);
  std::vector<std::string> lines = lines_of(res.out);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == kRunHeader);
  CHECK(cells_of(lines[1])[0] == "0");
  CHECK(cells_of(lines[2])[0] == "1");
  CHECK(cells_of(lines[3])[0] == "2");
  std::vector<std::string> agg = cells_of(lines[4]);
  CHECK(agg[0] == "aggregate");
  CHECK(agg[8] == "8");  // aggregate row carries the base seed
  CHECK(!agg[12].empty());
  CHECK(!agg[13].empty());
  // the three replica seeds are distinct
  CHECK(cells_of(lines[1])[8] != cells_of(lines[2])[8]);
  CHECK(cells_of(lines[2])[8] != cells_of(lines[3])[8]);
}

TEST_CASE("config files feed defaults and flags override them") {
  std::string cfg_path = tmp_path("config");
  {
    std::ofstream cfg(cfg_path);
    cfg << "# scenario under test\n";
    cfg << "lambda = 2\n";
    cfg << "v = 0.5\n";
    cfg << "rho = 3\n";
    cfg << "capital_d = 20\n";
    cfg << "horizon = 150\n";
    cfg << "warmup = 0\n";
    cfg << "seed = 9\n";
  }
  CliResult res = run_cli("run --policy fcfs --config " + cfg_path);
  REQUIRE(res.code == 0);
  std::vector<std::string> cells = cells_of(lines_of(res.out)[1]);
  CHECK(cells[2] == "2");
  CHECK(cells[6] == "150");
  CHECK(cells[8] == "9");

  CliResult over =
      run_cli("run --policy fcfs --config " + cfg_path + " --lambda 3");
  REQUIRE(over.code == 0);
  CHECK(cells_of(lines_of(over.out)[1])[2] == "3");
  std::remove(cfg_path.c_str());
}

TEST_CASE("a missing config file is a runtime failure that names the path") {
  CliResult res = run_cli("run --policy fcfs --config /tmp/no_such_config_xyz");
  CHECK(res.code == 1);
  CHECK(res.err.find("/tmp/no_such_config_xyz") != std::string::npos);
}

TEST_CASE("a malformed config line is reported with its line number") {
  std::string cfg_path = tmp_path("badconfig");
  {
    std::ofstream cfg(cfg_path);
    cfg << "lambda = 1\n";
    cfg << "v = abc\n";
  }
  CliResult res = run_cli("run --policy fcfs --config " + cfg_path);
  CHECK(res.code == 1);
  CHECK(res.err.find(cfg_path + ":2") != std::string::npos);
  std::remove(cfg_path.c_str());
}

TEST_CASE("an unknown policy is a usage error that lists the valid ones") {
  CliResult res = run_cli("run --policy warp --lambda 1");
  CHECK(res.code == 2);
  CHECK(res.err.find("warp") != std::string::npos);
  CHECK(res.err.find("fcfs") != std::string::npos);
  CHECK(res.err.find("rmhp") != std::string::npos);
}

TEST_CASE("identical invocations produce byte-identical files") {
  std::string f1 = tmp_path("rep1.csv");
  std::string f2 = tmp_path("rep2.csv");
  std::string args =
      "run --policy sac --lambda 1 --horizon 200 --warmup 0 --seed 31 "
      "--runs 3 --out ";
  REQUIRE(run_cli(args + f1).code == 0);
  REQUIRE(run_cli(args + f2).code == 0);
  std::string a = slurp(f1);
  std::string b = slurp(f2);
  CHECK(!a.empty());
  CHECK(a == b);
  std::remove(f1.c_str());
  std::remove(f2.c_str());
}

TEST_CASE("sweep covers the full rate-by-policy grid") {
  CliResult res = run_cli(
      "sweep --lambdas 0.5,1 --policies fcfs,ncla --runs 2 "
      "--horizon 100 --warmup 0 --seed 2");
  REQUIRE(res.code == 0);
  std::vector<std::string> lines = lines_of(res.out);
  REQUIRE(lines.size() == 5);  // header + 2 rates x 2 policies
  CHECK(lines[0] ==
        "lambda,policy,mean_fraction,ci_low,ci_high,runs,upper_bound,"
        "policy_lower_bound,la_ncla_factor,seed");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string> cells = cells_of(lines[i]);
    REQUIRE(cells.size() == 10);
    CHECK((cells[1] == "fcfs" || cells[1] == "ncla"));
    CHECK(cells[5] == "2");
    CHECK(!cells[6].empty());
    if (cells[1] == "fcfs") CHECK(!cells[7].empty());
    if (cells[1] == "ncla") CHECK(cells[7].empty());  // no guarantee of its own
    double mean = std::stod(cells[2]);
    CHECK(mean >= 0.0);
    CHECK(mean <= 1.0);
  }
}

TEST_CASE("sweep refuses a single replica") {
  CHECK(run_cli("sweep --lambdas 1 --runs 1 --horizon 50").code == 2);
}

TEST_CASE("bounds reports the closed forms and flags degeneracy") {
  CliResult res = run_cli("bounds --lambdas 0,5 --v 0.5 --rho 3 --capital-d 20");
  REQUIRE(res.code == 0);
  std::vector<std::string> lines = lines_of(res.out);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] ==
        "lambda,v,rho,capital_d,upper_bound,fcfs_lower_bound,la_lower_bound,"
        "rmhp_lower_bound,travel_time_lower_bound,optimality_ratio,"
        "improved_ratio,status");
  std::vector<std::string> zero = cells_of(lines[1]);
  REQUIRE(zero.size() == 12);
  CHECK(zero[0] == "0");
  CHECK(zero[4] == "1");
  CHECK(zero[11].find("degenerate") != std::string::npos);
  std::vector<std::string> five = cells_of(lines[2]);
  REQUIRE(five.size() == 12);
  CHECK(five[11] == "ok");
  double upper = std::stod(five[4]);
  CHECK(upper > 0.0);
  CHECK(upper <= 1.0);
  CHECK(std::stod(five[5]) <= upper);
  CHECK(!five[6].empty());
}

TEST_CASE("an unparseable rate grid is a usage error") {
  CHECK(run_cli("bounds --lambdas abc").code == 2);
  CHECK(run_cli("bounds --lambdas 1,,2").code == 2);
  CHECK(run_cli("run --policy fcfs --runs 0").code == 2);
}
