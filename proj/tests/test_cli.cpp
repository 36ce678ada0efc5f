#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "svstmx/amse.hpp"

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(SVSTMX_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Pulls the literal text of "key":<value> out of a flat JSON object.
std::string json_field(const std::string& doc, const std::string& key) {
  const std::string needle = "\"" + key + "\":";
  const auto pos = doc.find(needle);
  REQUIRE(pos != std::string::npos);
  auto end = doc.find_first_of(",}", pos + needle.size());
  return doc.substr(pos + needle.size(), end - pos - needle.size());
}

std::vector<std::vector<double>> parse_csv(const std::string& text,
                                           std::string* header = nullptr) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  if (header != nullptr) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("amse endpoints through the CLI") {
  const auto zero = run_cli("amse --rho 0 --beta 1 --class mat");
  CHECK(zero.code == 0);
  CHECK(json_field(zero.out, "amse") == "0");
  CHECK(json_field(zero.out, "lambda_star") == "2");
  CHECK(json_field(zero.out, "delta_star") == "0");

  const auto one = run_cli("amse --rho 1 --beta 0.5 --class mat");
  CHECK(one.code == 0);
  CHECK(json_field(one.out, "amse") == "1");
  CHECK(json_field(one.out, "lambda_star") == "0");
}

TEST_CASE("amse sym snapshot equals the library values") {
  const auto res = run_cli("amse --rho 0.5 --class sym");
  CHECK(res.code == 0);
  const auto pt = svstmx::minimax_amse(svstmx::MatrixClass::sym(), 0.5);
  CHECK(json_field(res.out, "amse") == fmt12(pt.amse));
  CHECK(json_field(res.out, "lambda_star") == fmt12(pt.lambda_star));
  CHECK(json_field(res.out, "tuning_scale") == fmt12(pt.tuning_scale));
  CHECK(json_field(res.out, "lower_bound") == fmt12(0.75));
  CHECK(json_field(res.out, "ratio_bound") == fmt12(3.0));
}

TEST_CASE("identical invocations are byte-identical") {
  const std::string cmd = "finite-n --r 3 --m 20 --n 30 --trials 25 --seed 5";
  const auto a = run_cli(cmd);
  const auto b = run_cli(cmd);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());

  const auto c = run_cli("simulate --r 2 --m 16 --n 16 --mu 10 --trials 20 --seed 9");
  const auto d = run_cli("simulate --r 2 --m 16 --n 16 --mu 10 --trials 20 --seed 9");
  CHECK(c.out == d.out);
  const auto e = run_cli("simulate --r 2 --m 16 --n 16 --mu 10 --trials 20 --seed 10");
  CHECK(c.out != e.out);
}

TEST_CASE("csv schema and monotone curve columns") {
  const auto res = run_cli("curve --class mat --beta 0.5 --grid 0:1:0.25 --format csv");
  CHECK(res.code == 0);
  std::string header;
  const auto rows = parse_csv(res.out, &header);
  CHECK(header == "rho,gamma,lambda_star,amse,tuning_scale,lower_bound");
  REQUIRE(rows.size() == 5);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][0] > rows[i - 1][0]);   // rho strictly increasing
    CHECK(rows[i][3] >= rows[i - 1][3]);  // amse nondecreasing
    CHECK(rows[i][2] <= rows[i - 1][2]);  // lambda_star nonincreasing
  }
  CHECK(rows.front()[3] == 0.0);
  CHECK(rows.back()[3] == 1.0);
}

TEST_CASE("parametric rows agree with the direct solver") {
  for (const char* cls : {"mat", "sym"}) {
    const auto res = run_cli(std::string("parametric --class ") + cls +
                             " --theta-count 9 --format csv");
    CHECK(res.code == 0);
    const auto rows = parse_csv(res.out);
    REQUIRE(rows.size() == 9);
    for (const auto& row : rows) {
      CHECK(row[1] > 0.0);
      CHECK(row[1] < 1.0);
      CHECK(row[3] <= 1e-6);  // direct_gap column
    }
    // theta ascending sweeps rho from near 1 down to near 0
    CHECK(rows.front()[1] > rows.back()[1]);
  }
}

TEST_CASE("--out writes the same bytes as stdout") {
  const std::string path = "cli_out_test.json";
  const auto direct = run_cli("amse --rho 0.3 --beta 0.75 --class mat");
  const auto filed =
      run_cli("amse --rho 0.3 --beta 0.75 --class mat --out " + path);
  CHECK(filed.code == 0);
  CHECK(filed.out.empty());
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == direct.out);
  std::remove(path.c_str());
}

TEST_CASE("exit codes") {
  CHECK(run_cli("").code == 2);                       // missing subcommand
  CHECK(run_cli("amse").code == 2);                   // missing --rho
  CHECK(run_cli("amse --rho 2 --class mat").code == 2);
  CHECK(run_cli("amse --rho 0.5 --class bogus").code == 2);
  CHECK(run_cli("finite-n --r 30 --m 20 --n 20 --trials 5").code == 2);
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("sure-check --r 2 --m 10 --n 10 --lambda 0.5 --trials 5 --seed 3").code == 0);
}
