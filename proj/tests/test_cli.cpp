#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "thornlab/graph.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

const char* binary() {
  const char* bin = std::getenv("THORNLAB_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "THORNLAB_BIN must point at the thornlab binary");
  return bin;
}

CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(binary()) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.out.append(buffer, got);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("thornlab_cli_" + std::to_string(getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path file(const std::string& name, const std::string& content) const {
    fs::path p = path / name;
    std::ofstream out(p);
    out << content;
    return p;
  }
};

}  // namespace

TEST_CASE("version banner") {
  CliResult r = run_cli("--version");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("thornlab") != std::string::npos);
  CHECK(r.out.find("formula registry") != std::string::npos);
}

TEST_CASE("construct") {
  CliResult r = run_cli("construct --base cycle:3 --type II --r 3 --t uniform:1");
  CHECK(r.exit_code == 0);
  thornlab::Graph g = thornlab::read_edge_list(r.out);
  CHECK(g.order() == 9);   // n' = 3 + 3*1*(3-1)
  CHECK(g.size() == 12);   // m' = 3 + 3*1*3

  r = run_cli("construct --base path:2 --type I --r 2 --t uniform:0");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "0 1\n");

  r = run_cli("construct --base cycle:3 --type I --r 2 --t uniform:1 --format dot");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("graph G {", 0) == 0);

  CHECK(run_cli("construct --base cycle:2 --type II --r 3 --t uniform:1").exit_code == 2);
  CHECK(run_cli("construct --base cycle:3 --type II --r 2 --t uniform:1").exit_code == 2);
  CHECK(run_cli("construct --base cycle:3 --type II --r 3 --t 1,2").exit_code == 2);
  CHECK(run_cli("construct --base mystery:3 --type II --r 3 --t uniform:1").exit_code == 2);
}

TEST_CASE("index") {
  TempDir tmp;
  fs::path c5 = tmp.file("c5.el", thornlab::write_edge_list(thornlab::make_cycle(5)));
  fs::path p3 = tmp.file("p3.el", thornlab::write_edge_list(thornlab::make_path(3)));
  fs::path bad = tmp.file("bad.el", "0 0\n");

  CliResult r = run_cli("index " + c5.string() + " --index hm");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "80\n");

  r = run_cli("index " + p3.string() + " --index em2");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "1\n");

  r = run_cli("index " + p3.string() + " --index hm --human");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "hm: 18\n");

  CHECK(run_cli("index " + bad.string() + " --index hm").exit_code == 2);
  CHECK(run_cli("index " + (tmp.path / "none.el").string() + " --index hm").exit_code == 2);
  CHECK(run_cli("index " + c5.string() + " --index zag").exit_code == 2);
}

TEST_CASE("formula") {
  CliResult r = run_cli("formula --id T2 --base cycle:3 --t uniform:1 --r 3 --with-oracle");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "456\n456\n0\n");

  r = run_cli("formula --id C1 --base cycle:3 --t uniform:1 --r 3 --with-oracle");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "234\n210\n24\n");

  r = run_cli("formula --id E2a --base path:5 --t uniform:0 --r 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "50\n");

  // E*a entries are path-only.
  CHECK(run_cli("formula --id E2a --base cycle:4 --t uniform:1 --r 3").exit_code == 2);
  CHECK(run_cli("formula --id C1 --base cycle:3 --t 1,2,0 --r 3").exit_code == 2);
  CHECK(run_cli("formula --id T9 --base cycle:3 --t uniform:1 --r 3").exit_code == 2);

  r = run_cli("formula --list");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("T1\n") != std::string::npos);
  CHECK(r.out.find("E7b_rst\n") != std::string::npos);
}

TEST_CASE("audit exit codes and reports") {
  TempDir tmp;
  std::string t2_config = R"({
    "bases": [{"family": "cycle", "n_range": [3, 6]}],
    "types": ["II"],
    "r_range": [3, 5],
    "t_modes": [{"mode": "uniform", "values": [0, 1, 2]}],
    "formulas": ["T2"]
  })";
  fs::path cfg = tmp.file("t2.json", t2_config);
  fs::path report = tmp.path / "t2_report.json";
  CliResult r = run_cli("audit --config " + cfg.string() + " --report " + report.string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(report));

  std::string c1_config = R"({
    "bases": [{"family": "cycle", "n_range": [3, 3]}],
    "types": ["I"],
    "r_range": [2, 3],
    "t_modes": [{"mode": "uniform", "values": [1]}],
    "formulas": ["C1"]
  })";
  fs::path cfg2 = tmp.file("c1.json", c1_config);
  r = run_cli("audit --config " + cfg2.string() + " --format markdown");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("| C1 |") != std::string::npos);

  CHECK(run_cli("audit --config " + (tmp.path / "missing.json").string()).exit_code == 2);
  CHECK(run_cli("audit").exit_code == 2);

  // Default grid restricted to T2: every point matches.
  r = run_cli("audit --default-grid --formulas T2 --format markdown");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("| T2 |") != std::string::npos);
  CHECK(r.out.find("(none)") != std::string::npos);
}

TEST_CASE("full default-grid audit finds the cataloged mismatches") {
  CliResult r = run_cli("audit --default-grid --format markdown --workers 2");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("| T1 |") != std::string::npos);
  CHECK(r.out.find("| E7b_rst |") != std::string::npos);
}
