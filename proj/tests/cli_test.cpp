#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = ISOPERIM_CLI_PATH;

std::string work_dir() {
  static std::string dir = [] {
    fs::path d = fs::temp_directory_path() / "isoperim_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d.string();
  }();
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("profile output and manifest") {
  const std::string out = work_dir() + "/profile.csv";
  REQUIRE(run("profile --measure cauchy:1 --n 5 --out " + out) == 0);

  auto rows = read_csv(out);
  REQUIRE(rows.size() == 6u);
  CHECK(rows[0] == std::vector<std::string>{"p", "I(p)", "J(p)"});
  CHECK(std::stod(rows[3][0]) == doctest::Approx(0.5));
  CHECK(std::stod(rows[3][1]) == doctest::Approx(0.25).epsilon(1e-14));

  nlohmann::json man = nlohmann::json::parse(slurp(out + ".manifest.json"));
  CHECK(man["command"] == "profile");
  CHECK(man["measure"] == "cauchy:1");
  CHECK(man["n_points"] == 5);
  CHECK(man["outputs"][0] == out);
}

TEST_CASE("reruns are byte identical") {
  const std::string out = work_dir() + "/rerun.csv";
  REQUIRE(run("profile --measure subexp:0.5 --n 17 --out " + out) == 0);
  const std::string csv1 = slurp(out);
  const std::string man1 = slurp(out + ".manifest.json");
  REQUIRE(run("profile --measure subexp:0.5 --n 17 --out " + out) == 0);
  CHECK(slurp(out) == csv1);
  CHECK(slurp(out + ".manifest.json") == man1);
}

TEST_CASE("exit codes") {
  const std::string out = work_dir() + "/err.csv";
  CHECK(run("profile --measure cauchy:nope --n 5 --out " + out) == 2);
  CHECK(run("profile --measure cauchy:1 --n 0 --out " + out) == 2);
  CHECK(run("deficit --measure cauchy:1 --p 0.7 --lambda 0.1 --out " + out) ==
        2);
  CHECK(run("profile --measure cauchy:1 --n 5 --out " + work_dir() +
            "/no_such_dir/x.csv") == 3);
  CHECK(run("bogus-subcommand") == 2);
}

TEST_CASE("region map output") {
  const std::string out = work_dir() + "/regions.csv";
  const std::string svg = work_dir() + "/regions.svg";
  REQUIRE(run("regions --measure cauchy:1 --grid-n 12 --out " + out +
              " --svg " + svg) == 0);

  auto rows = read_csv(out);
  REQUIRE(rows.size() > 1u);
  CHECK(rows[0][2] == "winner");
  // cell nearest (p, lambda) = (0.2, 0.1) belongs to the two-sided family
  double best = 1e9;
  std::string winner;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double p = std::stod(rows[i][0]), l = std::stod(rows[i][1]);
    const double d = (p - 0.2) * (p - 0.2) + (l - 0.1) * (l - 0.1);
    if (d < best) {
      best = d;
      winner = rows[i][2];
    }
  }
  CHECK(winner == "E2");

  auto lam0 = read_csv(work_dir() + "/regions_lambda0.csv");
  REQUIRE(lam0.size() > 2u);
  const double p1 = std::stod(lam0[1][0]);
  const double l0 = std::stod(lam0[1][1]);
  CHECK(p1 == doctest::Approx((std::sqrt(5.0) - 1.0) / 4.0).epsilon(1e-8));
  CHECK(l0 == doctest::Approx(2.0 * p1).epsilon(1e-8));

  CHECK(slurp(svg).rfind("<svg", 0) == 0);

  nlohmann::json man = nlohmann::json::parse(slurp(out + ".manifest.json"));
  CHECK(man["p2"].get<double>() ==
        doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-8));
  CHECK(man["outputs"].size() == 4u);
}

TEST_CASE("region map without the corner structure") {
  const std::string out = work_dir() + "/regions_exp.csv";
  REQUIRE(run("regions --measure exp --grid-n 8 --out " + out) == 0);
  nlohmann::json man = nlohmann::json::parse(slurp(out + ".manifest.json"));
  CHECK(man["p1"].is_null());
  CHECK(man["p2"].is_null());
  CHECK(read_csv(work_dir() + "/regions_exp_lambda0.csv").size() == 1u);
}

TEST_CASE("oracle reports structural ties for the exponential") {
  const std::string out = work_dir() + "/oracle.csv";
  REQUIRE(run("oracle --measure exp --p 0.3 --grid-n 100 --k 2 --out " + out) ==
          0);
  auto rows = read_csv(out);
  REQUIRE(rows.size() == 2u);
  REQUIRE(rows[0][6] == "tie");
  CHECK(rows[1][6] == "1");
  CHECK(std::stod(rows[1][8]) <= std::stod(rows[1][9]));  // gap <= bound
}

TEST_CASE("cheeger manifest records the round trip residual") {
  const std::string out = work_dir() + "/cheeger.csv";
  REQUIRE(run("cheeger --measure cauchy:1 --grid-n 64 --out " + out) == 0);
  nlohmann::json man = nlohmann::json::parse(slurp(out + ".manifest.json"));
  CHECK(man["roundtrip_residual"].get<double>() <= 1e-6);
  auto rows = read_csv(out);
  REQUIRE(rows.size() == 65u);
}

TEST_CASE("rearrange round trip") {
  const std::string in = work_dir() + "/u.csv";
  {
    std::ofstream f(in);
    f << "x,value\n-0.8,0\n-0.4,1\n0,0.5\n0.4,2\n0.8,0\n";
  }
  const std::string out = work_dir() + "/rearranged.csv";
  REQUIRE(run("rearrange --measure cauchy:1 --in " + in + " --grid-n 32 --out " +
              out) == 0);
  auto rows = read_csv(out);
  REQUIRE(rows.size() == 33u);
  REQUIRE(rows[0] ==
          std::vector<std::string>{"t", "x", "u_sharp", "s", "u_star"});
  // u_star is nonincreasing in s; u_sharp is symmetric about the median
  double prev = 1e300;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double v = std::stod(rows[i][4]);
    CHECK(v <= prev + 1e-12);
    prev = v;
  }
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double mirror = std::stod(rows[rows.size() - i][2]);
    CHECK(std::stod(rows[i][2]) == doctest::Approx(mirror).epsilon(1e-9));
  }
}
