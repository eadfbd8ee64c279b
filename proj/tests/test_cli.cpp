// End-to-end checks of the command-line tool: output contracts, exit codes,
// and byte-level determinism. The binary path is injected by the build.

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

#ifndef TAMEGRAD_CLI_PATH
#error "TAMEGRAD_CLI_PATH must be defined by the build"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(TAMEGRAD_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const char* kQuarticArg = "\"1/3*x^3+1/2*x^2+(x+y)^2*y^2+1/4*y^4\"";

}  // namespace

TEST_CASE("analyze emits the quartic certificate with exit 0") {
  auto r = run_cli(std::string("analyze --potential ") + kQuarticArg);
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema_version"] == "1");
  REQUIRE(j["certificates"].size() == 1);
  const auto& c = j["certificates"][0];
  CHECK(c["verdict"] == "NON_INTEGRABLE");
  CHECK(c["beta1"] == "2*x/(x+1)");
  CHECK(c["beta2"] == "12/(x+1)");
  CHECK(c["omega"]["A"] == "1/(x+1)^2");
  CHECK(c["omega"]["g"] == "2*x");
  CHECK(c["theta_integrand"]["A"] == "12/(x+1)^3");
  CHECK(c["line"]["display"] == "y = 0");
  CHECK(c["risch"]["kind"] == "no_solution");
  CHECK(c["hypotheses"]["omega_transcendental"] == true);
  CHECK(c["hypotheses"]["theta_elementary"] == false);
  CHECK(c["citations"].size() == 4);
}

TEST_CASE("analyze accepts --field input") {
  auto r = run_cli("analyze --field \"x^2+x+2*x*y^2+2*y^3;2*x^2*y+6*x*y^2+5*y^3\"");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["certificates"][0]["verdict"] == "NON_INTEGRABLE");
  CHECK(!j["input"].contains("potential"));
}

TEST_CASE("analyze reruns are byte-identical") {
  auto a = run_cli(std::string("analyze --potential ") + kQuarticArg);
  auto b = run_cli(std::string("analyze --potential ") + kQuarticArg);
  CHECK(a.out == b.out);
}

TEST_CASE("positioned parse errors exit with code 2") {
  CHECK(run_cli("analyze --potential \"x^(\"").exit_code == 2);
  CHECK(run_cli("analyze --potential \"1.5*x\"").exit_code == 2);
  CHECK(run_cli("analyze").exit_code == 2);
  CHECK(run_cli("analyze --potential \"x^2\" --field \"x;y\"").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("flow --potential \"x^2\" --start \"zebra\" ").exit_code == 2);
  CHECK(run_cli("lift --field \"x\"").exit_code == 2);
}

TEST_CASE("unsupported or degenerate analyses exit with code 3") {
  CHECK(run_cli("analyze --potential \"x^2+y^2\"").exit_code == 3);      // radial
  CHECK(run_cli("analyze --field \"1;y^2+1\"").exit_code == 3);          // no line
  CHECK(run_cli("analyze --potential \"7\"").exit_code == 3);            // constant
  auto r = run_cli("analyze --potential \"x^3/3\"");                      // Q identically 0
  CHECK(r.exit_code == 3);
  auto j = nlohmann::json::parse(r.out);  // still emits the degenerate certificate
  CHECK(j["certificates"][0]["verdict"] == "UNSUPPORTED");
}

TEST_CASE("inconclusive verdicts still exit 0") {
  auto r = run_cli("analyze --potential \"x^2/2-y^2/2\"");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  for (const auto& c : j["certificates"]) CHECK(c["verdict"] == "INCONCLUSIVE");
}

TEST_CASE("flow writes CSV with a header and full-precision rows") {
  auto r = run_cli(std::string("flow --potential ") + kQuarticArg +
                   " --start 0.5,0 --direction descent --t-max 1");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.rfind("t,x,y\n", 0) == 0);
  size_t rows = 0;
  for (char ch : r.out) rows += ch == '\n';
  CHECK(rows >= 3);
  CHECK(r.out.find("0.5,0\n") != std::string::npos);  // start row

  auto again = run_cli(std::string("flow --potential ") + kQuarticArg +
                       " --start 0.5,0 --direction descent --t-max 1");
  CHECK(again.out == r.out);
}

TEST_CASE("tame emits a schema-versioned report deterministically") {
  std::string args = std::string("tame --potential ") + kQuarticArg +
                     " --n-traj 6 --n-cuts 4 --seed 11";
  auto r = run_cli(args);
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema_version"] == "1");
  CHECK(j["n_traj"] == 6);
  CHECK(j["n_cuts"] == 4);
  CHECK(j["seed"] == 11);
  CHECK(j["counts"].size() == 6);
  CHECK(j["cuts"].size() == 4);
  CHECK(j.contains("b0"));
  CHECK(j.contains("stable"));
  auto again = run_cli(args);
  CHECK(again.out == r.out);
}

TEST_CASE("lift prints the canonical Hamiltonian and field") {
  auto r = run_cli("lift --field \"1;0\"");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out == "f = p1\nX_f = (1, 0, 0, 0)\n");

  auto swap = run_cli("lift --field \"y;x\"");
  REQUIRE(swap.exit_code == 0);
  CHECK(swap.out == "f = x*p2+y*p1\nX_f = (y, x, -p2, -p1)\n");
}

TEST_CASE("help is available and exits zero") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("analyze --help").exit_code == 0);
}
