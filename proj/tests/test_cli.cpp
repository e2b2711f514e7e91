#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubesec/cli.hpp"

namespace cli = cubesec::cli;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"cubesec"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "cubesec_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

double json_result(const std::string& text, const std::string& label) {
  const auto j = nlohmann::json::parse(text);
  for (const auto& r : j["results"]) {
    if (r["label"] == label) return r["value"].get<double>();
  }
  FAIL("missing result " << label);
  return 0.0;
}

}  // namespace

TEST_CASE("section text and JSON output") {
  const Outcome text = invoke({"section", "--n", "4", "--b", "0"});
  CHECK(text.code == cli::kExitOk);
  CHECK(text.out.find("A = 1.33333333333") != std::string::npos);

  const Outcome json = invoke({"section", "--n", "2", "--b", "1", "--dir", "two_coord", "--json"});
  REQUIRE(json.code == cli::kExitOk);
  const auto j = nlohmann::json::parse(json.out);
  CHECK(j["command"] == "section");
  CHECK(j["parameters"]["dir"] == "two_coord");
  CHECK(j.contains("timestamp"));
  CHECK(j["results"][0]["error_estimate"].get<double>() >= 0.0);
}

TEST_CASE("to_json without a timestamp is reproducible") {
  cli::OutputRecord rec;
  rec.command = "x";
  rec.parameters = {{"z", "1"}, {"a", "2"}};
  rec.results = {{"v", 0.1, 1e-17}};
  rec.timestamp = "2000-01-01T00:00:00Z";
  const std::string s = cli::to_json(rec, false);
  CHECK(s.find("timestamp") == std::string::npos);
  CHECK(s.find("\"z\"") < s.find("\"a\""));
  CHECK(nlohmann::json::parse(s)["results"][0]["value"].get<double>() == 0.1);
  CHECK(cli::format_number(0.1) == "0.10000000000000001");
}

TEST_CASE("limit") {
  const Outcome r = invoke({"limit", "--b", "0.5", "--json"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(std::abs(json_result(r.out, "limit") - 1.4787686673605554544) <= 1e-13);
  CHECK(invoke({"limit", "--b", "0"}).code == cli::kExitUsage);
  CHECK(invoke({"limit", "--b", "-1"}).code == cli::kExitUsage);
}

TEST_CASE("scan CSV is byte-identical across runs and ends with the limit row") {
  const fs::path a = scratch("a.csv");
  const fs::path b = scratch("b.csv");
  REQUIRE(invoke({"scan", "--b", "0.2", "--n-min", "2", "--n-max", "12", "--out", a.c_str()}).code ==
          cli::kExitOk);
  REQUIRE(invoke({"scan", "--b", "0.2", "--n-min", "2", "--n-max", "12", "--out", b.c_str()}).code ==
          cli::kExitOk);
  const std::string ca = slurp(a);
  CHECK(ca == slurp(b));
  CHECK(ca.rfind("n,b,A,err\n", 0) == 0);
  CHECK(ca.find("\ninf,0.20000000000000001,") != std::string::npos);
  int lines = 0;
  for (char c : ca) lines += c == '\n';
  CHECK(lines == 1 + 11 + 1);

  const Outcome json = invoke({"scan", "--b", "0", "--n-min", "3", "--n-max", "4", "--format", "json"});
  REQUIRE(json.code == cli::kExitOk);
  CHECK(std::abs(json_result(json.out, "n=4") - 4.0 / 3.0) <= 1e-12);
  CHECK(std::abs(json_result(json.out, "n=inf") - std::sqrt(6.0 / M_PI)) <= 1e-15);
}

TEST_CASE("exit codes") {
  CHECK(invoke({}).code == cli::kExitUsage);
  CHECK(invoke({"--help"}).code == cli::kExitOk);
  CHECK(invoke({"section", "--n", "1", "--b", "1"}).code == cli::kExitUsage);
  CHECK(invoke({"section", "--n", "3", "--b", "-1"}).code == cli::kExitUsage);
  CHECK(invoke({"section", "--n", "3", "--b", "1", "--dir", "sideways"}).code == cli::kExitUsage);
  CHECK(invoke({"section", "--n", "3"}).code == cli::kExitUsage);
  CHECK(invoke({"scan", "--b", "1", "--n-min", "1"}).code == cli::kExitUsage);
  CHECK(invoke({"verify", "--only", "nonsense"}).code == cli::kExitUsage);
  CHECK(invoke({"lambda0", "--lo", "0.5", "--hi", "0.6"}).code == cli::kExitBracketing);
  CHECK(invoke({"scan", "--b", "1", "--n-max", "3", "--out", "/nonexistent/dir/x.csv"}).code ==
        cli::kExitIo);
  CHECK(invoke({"--config", "/nonexistent/cubesec.conf", "section", "--n", "3", "--b", "1"}).code ==
        cli::kExitIo);

  const Outcome stuck = invoke({"section", "--n", "3", "--b", "1", "--tol", "1e-300"});
  CHECK(stuck.code == cli::kExitNonConvergence);
  CHECK(stuck.err.find("best estimate") != std::string::npos);
}

TEST_CASE("verify runs a single criterion") {
  const Outcome r = invoke({"verify", "--only", "definition", "--json"});
  CHECK(r.code == cli::kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["criteria"].size() == 1);
  CHECK(j["criteria"][0]["status"] == "PASS");
}

TEST_CASE("lambda0 is marked exploratory") {
  const Outcome r = invoke({"lambda0", "--tol", "1e-4", "--json"});
  REQUIRE(r.code == cli::kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["parameters"]["status"] == "exploratory");
  CHECK(std::abs(json_result(r.out, "root") - 0.1962627) <= 1e-4);
}

TEST_CASE("settings precedence: defaults < CUBESEC_TOL < config file < flags") {
  ::unsetenv("CUBESEC_TOL");
  CHECK(cli::load_settings(std::nullopt).quadrature.rel_tol == 1e-12);

  ::setenv("CUBESEC_TOL", "1e-9", 1);
  CHECK(cli::load_settings(std::nullopt).quadrature.rel_tol == 1e-9);

  const fs::path conf = scratch("cubesec.conf");
  {
    std::ofstream f(conf);
    f << "# comment\nrel_tol = 1e-10\nn_min = 5\nn_max = 7\n";
  }
  const cli::Settings s = cli::load_settings(conf.string());
  CHECK(s.quadrature.rel_tol == 1e-10);
  CHECK(s.n_min == 5);
  CHECK(s.n_max == 7);

  const Outcome flagged =
      invoke({"--config", conf.c_str(), "section", "--n", "3", "--b", "1", "--tol", "1e-11", "--json"});
  REQUIRE(flagged.code == cli::kExitOk);
  CHECK(nlohmann::json::parse(flagged.out)["parameters"]["rel_tol"] == "9.9999999999999994e-12");

  const Outcome from_file = invoke({"--config", conf.c_str(), "scan", "--b", "1"});
  REQUIRE(from_file.code == cli::kExitOk);
  CHECK(from_file.out.rfind("n,b,A,err\n5,", 0) == 0);
  ::unsetenv("CUBESEC_TOL");

  {
    std::ofstream f(conf);
    f << "tolerance = 1e-3\n";
  }
  CHECK_THROWS_AS(cli::load_settings(conf.string()), cubesec::DomainError);
  CHECK(invoke({"--config", conf.c_str(), "section", "--n", "3", "--b", "1"}).code ==
        cli::kExitUsage);
}
