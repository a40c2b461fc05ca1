#include <doctest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

// End-to-end runs of the installed binary.  The build defines
// FREECERT_CLI_PATH and FREECERT_DATA_DIR.

namespace {

using Json = nlohmann::json;

struct RunResult {
  int code = -1;
  std::string out;
  Json json;        // parsed stdout when it is JSON
  bool is_json = false;
};

std::string data_file(const std::string& name) {
  return std::string(FREECERT_DATA_DIR) + "/" + name;
}

std::string tmp_file(const std::string& stem) {
  return "/tmp/freecert_cli_" + std::to_string(::getpid()) + "_" + stem;
}

RunResult run_cli(const std::string& args) {
  RunResult r;
  const std::string out_path = tmp_file("stdout.txt");
  const std::string cmd = std::string(FREECERT_CLI_PATH) + " " + args + " > " +
                          out_path + " 2>&1";
  int raw = std::system(cmd.c_str());
  REQUIRE(raw != -1);
  REQUIRE(WIFEXITED(raw));
  r.code = WEXITSTATUS(raw);
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  std::remove(out_path.c_str());
  r.json = Json::parse(r.out, nullptr, false);
  r.is_json = !r.json.is_discarded();
  return r;
}

}  // namespace

TEST_CASE("fock dim reports the truncated dimension with the header") {
  RunResult r = run_cli("fock dim --g 2 --ell 4");
  CHECK(r.code == 0);
  REQUIRE(r.is_json);
  CHECK(r.json.at("dim").get<long>() == 31);
  CHECK(r.json.at("schema_version").get<int>() == 1);
  CHECK(r.json.contains("seed"));
  CHECK(r.json.at("tolerances").is_object());
  CHECK(r.json.at("verdict_line").is_string());
}

TEST_CASE("map ftheta at theta = 0 agrees with the identity") {
  RunResult r = run_cli("map ftheta --theta 0 --check identity");
  CHECK(r.code == 0);
  REQUIRE(r.is_json);
  REQUIRE(r.json.at("checks").is_array());
  bool saw_agreement = false;
  for (const Json& c : r.json["checks"]) {
    CHECK(c.at("pass").get<bool>());
    if (c.at("check").get<std::string>().find("agrees") != std::string::npos)
      saw_agreement = true;
  }
  CHECK(saw_agreement);
}

TEST_CASE("cert dominate writes a verifiable certificate file") {
  const std::string cert_path = tmp_file("dominate.json");
  RunResult r = run_cli("cert dominate --l1 " + data_file("cube.json") +
                        " --l2 " + data_file("half.json") + " --out " +
                        cert_path);
  CHECK(r.code == 0);
  REQUIRE(r.is_json);
  CHECK(r.json.at("status").get<std::string>() == "feasible");

  std::ifstream f(cert_path);
  REQUIRE(f.good());
  Json saved = Json::parse(f);
  REQUIRE(saved.contains("certificate"));
  CHECK(saved["certificate"].at("kind").get<std::string>() == "domination");
  CHECK(saved["certificate"].at("residual").get<double>() <= 1e-7);
  CHECK(saved["certificate"].at("V").is_array());
  std::remove(cert_path.c_str());
}

TEST_CASE("cert psatz refuses p = x over the symmetrized interval") {
  RunResult r = run_cli("cert psatz --p \"x\" --l " + data_file("diag.json"));
  CHECK(r.code == 1);
  REQUIRE(r.is_json);
  CHECK(r.json.at("status").get<std::string>() == "infeasible");
  REQUIRE(r.json.contains("witness"));
  CHECK(r.json["witness"].contains("x"));
}

TEST_CASE("cert psatz certifies 1 - x^2 over the symmetrized interval") {
  RunResult r =
      run_cli("cert psatz --p \"1 - x^2\" --l " + data_file("diag.json"));
  CHECK(r.code == 0);
  REQUIRE(r.is_json);
  CHECK(r.json.at("status").get<std::string>() == "feasible");
  CHECK(r.json.at("degree_cap").get<int>() == 1);
  CHECK(r.json.at("certificate").at("residual").get<double>() <= 1e-7);
}

TEST_CASE("domain check maps verdicts to exit codes") {
  const std::string dom = data_file("cube_domain.json");
  RunResult inside =
      run_cli("domain check --domain " + dom + " --x " + data_file("x_inside.json"));
  CHECK(inside.code == 0);
  REQUIRE(inside.is_json);
  CHECK(inside.json.at("containment").at("verdict").get<std::string>() ==
        "member");
  CHECK(inside.json["containment"].at("margin").get<double>() ==
        doctest::Approx(0.5).epsilon(1e-9));

  RunResult outside = run_cli("domain check --domain " + dom + " --x " +
                              data_file("x_outside.json"));
  CHECK(outside.code == 1);
  REQUIRE(outside.is_json);
  CHECK(outside.json.at("containment").at("verdict").get<std::string>() ==
        "non-member");
  CHECK(outside.json.contains("witness"));

  RunResult boundary = run_cli("domain check --domain " + dom + " --x " +
                               data_file("x_boundary.json"));
  CHECK(boundary.code == 2);
  REQUIRE(boundary.is_json);
  CHECK(boundary.json.at("containment").at("verdict").get<std::string>() ==
        "boundary");
}

TEST_CASE("eval poly multiplies matrices, not commuting symbols") {
  RunResult r = run_cli("eval poly --p \"x1 x2\" --x " +
                        data_file("x_inside.json"));
  CHECK(r.code == 0);
  REQUIRE(r.is_json);
  // X1 = [[0.25]], X2 = [[-0.5]] -> X1 X2 = [[-0.125]]; entries are
  // serialized as [re, im] pairs.
  CHECK(r.json.at("value")[0][0][0].get<double>() ==
        doctest::Approx(-0.125).epsilon(1e-12));
  CHECK(r.json.at("value")[0][0][1].get<double>() == 0.0);
}

TEST_CASE("missing files and bad flags exit with the input-error code") {
  RunResult missing = run_cli("cert dominate --l1 /nonexistent/nope.json --l2 " +
                              data_file("half.json"));
  CHECK(missing.code == 3);
  REQUIRE(missing.is_json);
  CHECK(missing.json.contains("error"));

  RunResult badflag = run_cli("fock dim --g 2 --ell 4 --bogus-flag 7");
  CHECK(badflag.code == 3);

  RunResult badpoly = run_cli("cert psatz --p \"x0 +\" --l " +
                              data_file("diag.json"));
  CHECK(badpoly.code == 3);
}

TEST_CASE("--help exits cleanly") {
  RunResult r = run_cli("--help");
  CHECK(r.code == 0);
  CHECK(r.out.find("cert") != std::string::npos);
}

TEST_CASE("global options fall through past subcommand names") {
  RunResult r = run_cli("fock dim --g 2 --ell 4 --seed 999");
  CHECK(r.code == 0);
  REQUIRE(r.is_json);
  CHECK(r.json.at("seed").get<long>() == 999);
}

TEST_CASE("human output collapses the report to the verdict line") {
  RunResult r = run_cli("fock dim --g 2 --ell 4 --output human");
  CHECK(r.code == 0);
  CHECK_FALSE(r.is_json);
  CHECK(r.out.find("31") != std::string::npos);
}
