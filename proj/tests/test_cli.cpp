#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "thetaint/basis.hpp"
#include "thetaint/cli.hpp"
#include "thetaint/interp.hpp"

using namespace thetaint;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "theta_interp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> row;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) row.push_back(cell);
    rows.push_back(row);
  }
  return rows;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("theta_interp_test_" + name);
}

}  // namespace

TEST_CASE("grids") {
  const Grid g = parse_grid("0:4:401");
  CHECK(g.steps == 401);
  CHECK(g.at(0) == 0);
  CHECK(g.at(400) == 4);
  CHECK(g.at(100) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(parse_grid("-4:4:3").at(1) == 0);
  CHECK_THROWS_AS(parse_grid("1:0:5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("0:1:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("0:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("0:1:5x"), std::invalid_argument);
}

TEST_CASE("parallel_for keeps index order") {
  std::vector<int> v(1000, -1);
  parallel_for(1000, 4, [&](int i) { v[i] = i * i; });
  for (int i = 0; i < 1000; ++i) CHECK(v[i] == i * i);
  CHECK_THROWS_AS(parallel_for(10, 3, [](int i) { if (i == 7) throw std::runtime_error("x"); }), std::runtime_error);
  setenv("THETA_INTERP_THREADS", "3", 1);
  CHECK(thread_count() == 3);
  setenv("THETA_INTERP_THREADS", "0", 1);
  CHECK(thread_count() >= 1);
  setenv("THETA_INTERP_THREADS", "many", 1);
  CHECK_THROWS_AS(thread_count(), std::invalid_argument);
  unsetenv("THETA_INTERP_THREADS");
}

TEST_CASE("coeffs") {
  Run r = run({"coeffs", "--parity", "even", "--eps", "-", "--n", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == "[0, 252, -46, 1]\n");
  r = run({"coeffs", "--parity", "even", "--eps", "-", "--n", "3", "--format", "json"});
  CHECK(nlohmann::json::parse(r.out) ==
        nlohmann::json::parse(R"({"parity": "even", "eps": "-", "n": 3, "poly": ["0/1","252/1","-46/1","1/1"]})"));
  r = run({"coeffs", "--parity", "odd", "--eps", "+", "--n", "0:2"});
  CHECK(r.out == "n=0 [1]\nn=1 [-26, 1]\nn=2 [76, -50, 1]\n");
  CHECK(run({"coeffs", "--eps", "-", "--n", "0"}).code == 2);
  CHECK(run({"coeffs", "--parity", "sideways"}).code == 2);
  CHECK(run({"coeffs", "--n", "-1"}).code == 2);
}

TEST_CASE("eval-basis csv") {
  const Run r = run({"eval-basis", "--parity", "odd", "--eps", "+", "--n", "0", "--grid", "0:4:401"});
  REQUIRE(r.code == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 402);
  CHECK(rows[0] == std::vector<std::string>{"x", "d_plus_0"});
  double worst = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double x = std::strtod(rows[i][0].c_str(), nullptr);
    worst = std::max(worst, std::abs(std::strtod(rows[i][1].c_str(), nullptr) - d0_closed_form(x)));
  }
  CHECK(worst < 1e-8);

  // the text holds the exact doubles
  const Run e = run({"eval-basis", "--eps", "+", "--n", "2", "--grid", "0.1:2.9:7"});
  const auto er = csv(e.out);
  CHECK(er[0] == std::vector<std::string>{"x", "b_plus_2"});
  const Grid g = parse_grid("0.1:2.9:7");
  for (int i = 0; i < 7; ++i) {
    CHECK(std::strtod(er[i + 1][0].c_str(), nullptr) == g.at(i));
    CHECK(std::strtod(er[i + 1][1].c_str(), nullptr) == eval_b(Eps::plus, 2, g.at(i)).value);
  }
  CHECK(format_double(0.1) == "0.10000000000000001");

  // thread count does not change the output
  setenv("THETA_INTERP_THREADS", "1", 1);
  const Run one = run({"eval-basis", "--eps", "-", "--n", "3", "--grid", "0:3:13"});
  setenv("THETA_INTERP_THREADS", "4", 1);
  const Run four = run({"eval-basis", "--eps", "-", "--n", "3", "--grid", "0:3:13"});
  unsetenv("THETA_INTERP_THREADS");
  CHECK(one.out == four.out);

  CHECK(run({"eval-basis", "--grid", "0:1:1"}).code == 2);
  CHECK(run({"eval-basis", "--eps", "-", "--n", "0"}).code == 2);
  CHECK(run({"eval-basis", "--method", "guess"}).code == 2);
  CHECK(run({"eval-basis", "--abs-tol", "-1"}).code == 2);
  CHECK(run({"eval-basis", "--digits", "17", "--n", "3"}).code == 2);
}

TEST_CASE("eval-basis json and files") {
  const auto path = temp_file("eval.json");
  const Run r = run({"eval-basis", "--n", "1", "--grid", "0:1:3", "--format", "json", "-o", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  REQUIRE(j.size() == 3);
  CHECK(j[2]["x"] == 1.0);
  CHECK(std::abs(j[2]["value"].get<double>() - 1) < 1e-8);
  CHECK(j[0].contains("abs_error_estimate"));
  std::filesystem::remove(path);
  CHECK(run({"eval-basis", "-o", "/nonexistent/dir/file.csv"}).code == 1);
}

TEST_CASE("plot-data") {
  const Run r = run({"plot-data", "--grid", "-2:2:5"});
  REQUIRE(r.code == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == std::vector<std::string>{"x", "a_0", "ahat_0", "a_1", "ahat_1", "a_2", "ahat_2"});
  // x = 0: a_0 = ahat_0 = 1/2, a_1 = -1, ahat_1 = 1
  CHECK(std::abs(std::strtod(rows[3][1].c_str(), nullptr) - 0.5) < 1e-8);
  CHECK(std::abs(std::strtod(rows[3][3].c_str(), nullptr) + 1) < 1e-8);
  CHECK(std::abs(std::strtod(rows[3][4].c_str(), nullptr) - 1) < 1e-8);
  // even in x
  CHECK(rows[1][1] == rows[5][1]);
}

TEST_CASE("interpolate") {
  const auto path = temp_file("samples.json");
  {
    std::ofstream f(path);
    f << nlohmann::json(gaussian_samples(Parity::even, cplx(0, 1), 12)).dump();
  }
  const Run r = run({"interpolate", "--samples", path.string(), "--grid", "0:1.5:4"});
  REQUIRE(r.code == 0);
  const auto rows = csv(r.out);
  CHECK(rows[0] == std::vector<std::string>{"x", "re", "im", "basis_error", "tail_estimate"});
  for (int i = 1; i <= 4; ++i) {
    const double x = std::strtod(rows[i][0].c_str(), nullptr);
    CHECK(std::abs(std::strtod(rows[i][1].c_str(), nullptr) - std::exp(-M_PI * x * x)) < 1e-6);
  }
  {
    std::ofstream f(path);
    f << R"({"parity": "odd", "N": 2, "f": [[1, 0]], "fhat": [[0, 0]]})";
  }
  CHECK(run({"interpolate", "--samples", path.string()}).code == 2);
  std::filesystem::remove(path);
  CHECK(run({"interpolate", "--samples", path.string()}).code == 2);
  CHECK(run({"interpolate"}).code == 2);
}

TEST_CASE("verify") {
  const Run a = run({"verify", "--criteria", "1,2"});
  CHECK(a.code == 0);
  CHECK(a.out.find("criterion  1 PASS") != std::string::npos);
  CHECK(a.out.find("criterion  2 PASS") != std::string::npos);
  CHECK(a.out.find("criterion  3") == std::string::npos);
  const Run b = run({"verify", "--criteria", "1,2"});
  CHECK(a.out == b.out);
  CHECK(run({"verify", "--criteria", "12"}).code == 2);
  CHECK(run({"verify", "--criteria", "1,,2"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}
