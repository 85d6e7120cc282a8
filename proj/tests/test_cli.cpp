#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef CONCOP_CLI_PATH
#define CONCOP_CLI_PATH "concop"
#endif

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& args) {
  std::string cmd = std::string(CONCOP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

const char* kTmp = "/tmp/concop_cli_test";

}  // namespace

TEST_CASE("eval: closed form values and the empty-operator marker") {
  std::string dir = kTmp;
  if (std::system(("mkdir -p " + dir).c_str()) != 0) FAIL("mkdir failed");
  {
    std::ofstream spec(dir + "/psum.json");
    spec << R"({"op":"psum","args":[{"op":"E2"},{"op":"E2"}]})";
  }
  CHECK(run("eval --spec " + dir + "/psum.json --grid 0:10:0.1 --out " + dir + "/psum.csv") == 0);
  std::string csv = slurp(dir + "/psum.csv");
  CHECK(csv.rfind("t,y_lo,y_hi\n", 0) == 0);
  // row at t=2: 2 e^{-4/8}
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // header
  bool found = false;
  while (std::getline(lines, line)) {
    double t, lo, hi;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &lo, &hi) != 3) continue;
    if (std::abs(t - 2.0) < 1e-9) {
      CHECK(lo == doctest::Approx(2.0 * std::exp(-0.5)).epsilon(1e-9));
      found = true;
    }
  }
  CHECK(found);

  {
    std::ofstream spec(dir + "/empty.json");
    // disjoint domains sum to the empty operator
    spec << R"({"op":"add","args":[
      {"op":"restrict","lo":0,"hi":1,"args":[{"op":"const","c":0}]},
      {"op":"restrict","lo":2,"hi":3,"args":[{"op":"const","c":0}]}]})";
  }
  CHECK(run("eval --spec " + dir + "/empty.json --grid 0:5:1 --out " + dir + "/empty.csv") == 0);
  CHECK(slurp(dir + "/empty.csv").find("# empty operator") != std::string::npos);

  {
    std::ofstream spec(dir + "/bad.json");
    spec << R"({"op":"God knows"})";
  }
  CHECK(run("eval --spec " + dir + "/bad.json --out " + dir + "/bad.csv") == 2);
  CHECK(run("eval --spec " + dir + "/missing.json") == 2);
}

TEST_CASE("verify: exit codes and determinism") {
  std::string dir = kTmp;
  if (std::system(("mkdir -p " + dir).c_str()) != 0) FAIL("mkdir failed");
  std::string common = "verify --scenario SUM3_EXP --samples 5000 --seed 42 --out ";
  CHECK(run(common + dir + "/a.json") == 0);
  CHECK(run(common + dir + "/b.json") == 0);
  CHECK(slurp(dir + "/a.json") == slurp(dir + "/b.json"));
  CHECK(!slurp(dir + "/a.json").empty());

  CHECK(run("verify --scenario SUM3_EXP --samples 5000 --seed 42 --scale-bound 0.1 --out " +
            std::string(dir) + "/f.json") == 1);
  CHECK(run("verify --scenario NOPE --out " + std::string(dir) + "/n.json") == 4);
}

TEST_CASE("transport: closed form columns and parameter validation") {
  std::string dir = kTmp;
  if (std::system(("mkdir -p " + dir).c_str()) != 0) FAIL("mkdir failed");
  CHECK(run("transport --source laplace --target cauchy --q 2 --grid 0:10:0.5 --out " +
            std::string(dir) + "/tr.csv") == 0);
  std::string csv = slurp(dir + "/tr.csv");
  CHECK(csv.rfind("t,phi,phi_prime,h\n", 0) == 0);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);  // t = 0
  CHECK(line.rfind("0,0,", 0) == 0);
  while (std::getline(lines, line)) {
    if (line.rfind("4,", 0) == 0) {
      double phi = std::stod(line.substr(2));
      CHECK(phi == doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-12));
    }
  }

  // identity transport
  CHECK(run("transport --source laplace --target laplace --grid 0:5:1 --out " +
            std::string(dir) + "/id.csv") == 0);
  std::string idcsv = slurp(dir + "/id.csv");
  CHECK(idcsv.find("3,3,1,") != std::string::npos);

  // subexp target requires q in (0,1)
  CHECK(run("transport --source laplace --target subexp --q 1.5 --grid 0:5:1") == 2);
  CHECK(run("transport --source laplace --target nothere --grid 0:5:1") == 2);
}

TEST_CASE("eval CSV round-trips through 17-digit formatting") {
  std::string dir = kTmp;
  std::string csv = slurp(dir + "/psum.csv");
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  int rows = 0;
  while (std::getline(lines, line) && rows < 50) {
    if (line.empty() || line[0] == '#') continue;
    double t, lo, hi;
    CHECK(std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &lo, &hi) == 3);
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g", t, lo, hi);
    CHECK(line == buf);
    ++rows;
  }
  CHECK(rows > 10);
}

TEST_CASE("eval: algebra errors exit with code 3") {
  std::string dir = kTmp;
  if (std::system(("mkdir -p " + dir).c_str()) != 0) FAIL("mkdir failed");
  {
    std::ofstream spec(std::string(dir) + "/neg.json");
    // parallel product of operators whose domains leave R+
    spec << R"({"op":"pprod","args":[{"op":"const","c":1},{"op":"const","c":1}]})";
  }
  CHECK(run("eval --spec " + std::string(dir) + "/neg.json --grid 0:5:1 --out " +
            std::string(dir) + "/neg.csv") == 3);
}

TEST_CASE("log grid spec") {
  std::string dir = kTmp;
  if (std::system(("mkdir -p " + std::string(dir)).c_str()) != 0) FAIL("mkdir failed");
  {
    std::ofstream spec(std::string(dir) + "/e1.json");
    spec << R"({"op":"E1"})";
  }
  CHECK(run("eval --spec " + std::string(dir) + "/e1.json --grid log:0.1:100:31 --out " +
            std::string(dir) + "/log.csv") == 0);
  std::ifstream in(std::string(dir) + "/log.csv");
  std::string line;
  std::getline(in, line);
  int rows = 0;
  double prev = 0.0;
  while (std::getline(in, line)) {
    double t, lo, hi;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &lo, &hi) != 3) continue;
    CHECK(t > prev);
    prev = t;
    ++rows;
  }
  CHECK(rows == 31);
  CHECK(run("eval --spec " + std::string(dir) + "/e1.json --grid bogus") == 2);
}
