#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = wmeans::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = std::string(WMEANS_TEST_TMP) + "/" + name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("compute mean prints the value first") {
  const auto r = run({"compute", "mean", "--kind", "power", "--p", "2", "--x", "1,7", "--w", "1,1"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("5\n", 0) == 0);
}

TEST_CASE("semideviation means name their defining sets") {
  const auto r = run({"compute", "mean", "--kind", "semidev", "--kernel", "sign", "--x", "1,2,3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("inf{y : e(y) <= 0}") != std::string::npos);
  const auto s = run({"--format", "structured", "compute", "mean", "--kind", "semidev", "--kernel", "sign",
                      "--semidev-kind", "upper-weak", "--x", "1,3"});
  const auto j = nlohmann::json::parse(s.out);
  CHECK(j["values"]["upper-weak"].get<double>() == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("homogenize the cosh mean") {
  const auto r = run({"homogenize", "--target", "mean", "--mean", "qa", "--generator", "cosh", "--x", "1,7", "--w",
                      "1,1", "--format", "structured"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["estimate"]["value"].get<double>() == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(j["estimate"]["converged"].get<bool>());
  CHECK(j["estimate"]["table"].size() > 8);
}

TEST_CASE("csv table") {
  const auto r = run({"homogenize", "--target", "qa", "--generator", "cosh", "--csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("t,value\n1,", 0) == 0);
  const auto e = run({"homogenize", "--target", "mean", "--mode", "envelope", "--mean", "qa", "--generator", "cosh",
                      "--x", "1,2", "--csv"});
  CHECK(e.code == 0);
  CHECK(e.out.rfind("side,t,value\nlower,", 0) == 0);
}

TEST_CASE("verify minkowski passes with a structured report") {
  const std::vector<std::string> args = {"--format", "structured", "verify", "--suite", "minkowski", "--kernel",
                                         "power:2", "--seed", "7", "--samples", "40", "--grid", "5"};
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["overall"] == "pass");
  CHECK(j["samples"] == 40);
}

TEST_CASE("verification failure exits 1 and prints a witness") {
  const auto r = run({"verify", "--suite", "comparison", "--kernel", "power:2", "--kernel-f", "power:1", "--samples",
                      "10"});
  CHECK(r.code == 1);
  CHECK(r.out.find("[FAIL]") != std::string::npos);
  CHECK(r.out.find("witness") != std::string::npos);
}

TEST_CASE("inconclusive exits 1") {
  const auto r = run({"verify", "--suite", "cei", "--kernel", "cosh", "--samples", "3"});
  CHECK(r.code == 1);
  CHECK(r.out.find("inconclusive") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"compute", "mean", "--kind", "median", "--x", "1"}).code == 2);
  CHECK(run({"compute", "mean", "--x", "1,2", "--w", "1"}).code == 2);
  CHECK(run({"compute", "mean", "--kind", "qa", "--generator", "expr:x +", "--x", "1,2"}).code == 2);
  CHECK(run({"verify", "--suite", "sandwich", "--bogus"}).code == 2);
  const auto r = run({"compute", "mean", "--x", "1,-2"});
  CHECK(r.code == 2);
  CHECK(r.err.find("EntryOutOfDomain") != std::string::npos);
}

TEST_CASE("numerical failures exit 3") {
  const auto r = run({"homogenize", "--target", "phi", "--generator", "expr:1 + 0 * x", "--u", "2"});
  CHECK(r.code == 3);
  CHECK(r.err.rfind("error: ", 0) == 0);
}

TEST_CASE("help exits 0") {
  const auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("verify") != std::string::npos);
}

TEST_CASE("catalog lists derivative availability") {
  const auto r = run({"catalog"});
  CHECK(r.code == 0);
  CHECK(r.out.find("cosh") != std::string::npos);
  CHECK(r.out.find("d1:analytic") != std::string::npos);
}

TEST_CASE("config file mirrors flags and rejects unknown keys") {
  const auto good = temp_file("good.ini", "format = \"structured\"\n[compute.mean]\nkind = \"power\"\np = \"2\"\nx = \"1,7\"\n");
  const auto r = run({"--config", good, "compute", "mean"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"value\": 5.0") != std::string::npos);
  const auto bad = temp_file("bad.ini", "colour = \"blue\"\n");
  CHECK(run({"--config", bad, "catalog"}).code == 2);
}
