#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "tdho");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = tdho::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("tdho_test_" + name);
}

}  // namespace

TEST_CASE("propagate example") {
  const Result r = run({"propagate", "--family", "power", "--k", "-2", "--v", "1000", "--lambda", "0.1"});
  REQUIRE(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 3);
  CHECK(l[0].rfind("# tdho", 0) == 0);
  CHECK(l[1].find("energy") != std::string::npos);
  CHECK(l[2].find("25.2499") != std::string::npos);
}

TEST_CASE("json output parses") {
  const Result r = run({"--format", "json", "cycle", "--v", "1", "--lambda", "10"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["command"] == "cycle");
  const auto& cols = j["columns"];
  const auto it = std::find(cols.begin(), cols.end(), "R");
  REQUIRE(it != cols.end());
  const double R = j["rows"][0][it - cols.begin()].get<double>();
  CHECK(R == doctest::Approx(10.713434991061346).epsilon(1e-12));
}

TEST_CASE("scan output does not depend on the worker count") {
  const std::vector<std::string> base = {"scan", "--family", "inverse-linear", "--v-grid", "0.01:100:200:log",
                                         "--lambda", "10"};
  auto with = [&](const char* w) {
    std::vector<std::string> a = {"--workers", w};
    a.insert(a.end(), base.begin(), base.end());
    return run(a);
  };
  const Result one = with("1"), four = with("4");
  REQUIRE(one.code == 0);
  CHECK(one.out == four.out);
  CHECK(lines(one.out).size() == 202);
}

TEST_CASE("exit codes") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"--version"}).code == 0);
  CHECK(run({}).code == 2);
  const Result unknown = run({"propagate", "--bogus", "1"});
  CHECK(unknown.code == 2);
  CHECK(nlohmann::json::parse(lines(unknown.err).at(0))["exit_code"] == 2);
  CHECK(run({"propagate", "--family", "quadratic"}).code == 2);
  CHECK(run({"scan", "--v-grid", "1:2"}).code == 2);
  CHECK(run({"--format", "xml", "cycle"}).code == 2);

  const Result domain = run({"propagate", "--lambda", "0"});
  CHECK(domain.code == 3);
  const auto j = nlohmann::json::parse(lines(domain.err).at(0));
  CHECK(j["error"] == "domain");
  CHECK(j["exit_code"] == 3);

  CHECK(run({"spectrum", "--L0", "1", "--v", "1e8", "--lambda", "0.5"}).code == 3);
  CHECK(run({"perturb", "--mode", "transitions", "--level", "3", "--cutoff", "10"}).code == 3);
}

TEST_CASE("verify") {
  const Result ok = run({"verify", "--cycles", "50", "--oracle-samples", "6", "--symplectic", "50", "--multimode", "5",
                         "--forced", "5"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("FAIL") == std::string::npos);
  CHECK(run({"verify", "--cycles", "0"}).code == 1);
}

TEST_CASE("config file values yield to flags") {
  const auto path = temp_file("config.json");
  {
    std::ofstream f(path);
    f << R"({"family": "power", "k": -3, "v": 1000, "lambda": 0.1})";
  }
  const Result from_file = run({"--config", path.string(), "propagate"});
  REQUIRE(from_file.code == 0);
  CHECK(lines(from_file.out)[2].find("power,-3,") != std::string::npos);
  const Result overridden = run({"--config", path.string(), "propagate", "--k", "-4"});
  REQUIRE(overridden.code == 0);
  CHECK(lines(overridden.out)[2].find("power,-4,") != std::string::npos);

  {
    std::ofstream f(path);
    f << R"({"no-such-option": 1})";
  }
  CHECK(run({"--config", path.string(), "propagate"}).code == 2);
  CHECK(run({"--config", (path.string() + ".missing"), "propagate"}).code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("output file") {
  const auto path = temp_file("out.csv");
  const Result r = run({"-o", path.string(), "cycle", "--lambda", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(lines(ss.str()).size() == 3);
  std::filesystem::remove(path);
}

TEST_CASE("other commands") {
  CHECK(run({"forced", "--amplitude", "0.5"}).code == 0);
  const Result ineq = run({"perturb", "--mode", "inequality", "--power", "6", "--n-max", "20"});
  CHECK(ineq.code == 0);
  CHECK(ineq.out.find("violations=0") != std::string::npos);
  CHECK(run({"perturb", "--mode", "transitions", "--level", "5", "--power", "3"}).code == 0);
  const Result spec = run({"spectrum", "--lambda", "0.5", "--samples", "20"});
  CHECK(spec.code == 0);
  CHECK(lines(spec.out).size() == 22);
  CHECK(run({"spectrum", "--sonoluminescence", "--L0", "1e-2", "--lambda", "1e-4"}).code == 0);
  const Result dips = run({"scan", "--v-grid", "0.005:0.05:100:log", "--lambda", "10", "--unity-tol", "1e-3"});
  CHECK(dips.code == 0);
  CHECK(lines(dips.out).size() > 2);
}
