// End-to-end checks of the command-line tool (runs the built binary).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"

#ifndef AIM_CLI_PATH
#error "AIM_CLI_PATH must point at the built binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = std::string(AIM_CLI_PATH) + " " + args +
                          (merge_stderr ? " 2>&1" : " 2>/dev/null");
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe))
    r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("solve prints the harmonic ladder") {
  const auto r = run("--problem harmonic1d --levels 3 --emax 8 solve");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("1.000000000000") != std::string::npos);
  CHECK(r.out.find("3.000000000000") != std::string::npos);
  CHECK(r.out.find("5.000000000000") != std::string::npos);
}

TEST_CASE("csv output is deterministic and well formed") {
  const std::string cmd =
      "--problem gk --gamma 1 --levels 2 --emax 14 --format csv solve";
  const auto first = run(cmd);
  const auto second = run(cmd);
  CHECK(first.exit_code == 0);
  CHECK(first.out == second.out);
  CHECK(first.out.rfind("problem,param_json,level,E_aim,E_oracle,E_exact,"
                        "delta_residual,n_iter,x0,stabilized\n",
                        0) == 0);
  CHECK(count_lines(first.out) == 3);  // header + 2 rows
  CHECK(first.out.find("gk,\"{\"\"gamma\"\":1}\",0,") != std::string::npos);
}

TEST_CASE("bad numeric flag exits with usage error") {
  const auto r = run("--problem spiked --gamma 3 --A bad solve", true);
  CHECK(r.exit_code == 1);
}

TEST_CASE("hermite cannot be solved for energies") {
  const auto r = run("--problem hermite --k 3 solve", true);
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("no energy parameter") != std::string::npos);
}

TEST_CASE("custom potential syntax error names the offset") {
  const auto r = run("--problem custom --potential 2x solve", true);
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("offset 1") != std::string::npos);
}

TEST_CASE("scan emits brackets") {
  const auto r = run("--problem harmonic1d --emax 10 --estep 0.5 scan");
  CHECK(r.exit_code == 0);
  CHECK(count_lines(r.out) >= 5);
}

TEST_CASE("verify harmonic against closed form passes") {
  const auto r = run("--problem harmonic1d --levels 3 --emax 8 verify");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("config file feeds flags and flags win") {
  const std::string path = "/tmp/aim_cli_test.cfg";
  {
    std::ofstream cfg(path);
    cfg << "problem=harmonic1d\nlevels=2\nemax=8\n";
  }
  const auto from_file = run("--config " + path + " solve");
  CHECK(from_file.exit_code == 0);
  CHECK(from_file.out.find("3.000000000000") != std::string::npos);
  const auto overridden =
      run("--config " + path + " --levels 1 --format csv solve");
  CHECK(overridden.exit_code == 0);
  CHECK(count_lines(overridden.out) == 2);  // header + 1 row
  std::remove(path.c_str());
}

TEST_CASE("reconstruct emits x,y,psi csv") {
  const auto r = run(
      "--problem hermite --k 2 --xmin 1 --xmax 2 --points 101 reconstruct");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("x,y,psi\n", 0) == 0);
  CHECK(count_lines(r.out) == 102);
  // Spot check the psi/y ratio at the last sample: exp(-x^2/2) at x = 2.
  const auto tail = r.out.substr(r.out.rfind('\n', r.out.size() - 2) + 1);
  double x = 0, y = 0, psi = 0;
  REQUIRE(std::sscanf(tail.c_str(), "%lf,%lf,%lf", &x, &y, &psi) == 3);
  CHECK(x == doctest::Approx(2.0));
  CHECK(psi / y == doctest::Approx(std::exp(-2.0)).epsilon(1e-9));
}

TEST_CASE("config echo makes runs reproducible from the log") {
  const auto r =
      run("--problem quartic --A 0.1 --levels 1 --emax 4 solve", true);
  CHECK(r.out.find("# command=solve") != std::string::npos);
  CHECK(r.out.find("problem=quartic") != std::string::npos);
  CHECK(r.out.find("x0_policy=") != std::string::npos);
  CHECK(r.out.find("iters=12") != std::string::npos);
}
