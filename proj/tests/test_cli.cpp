#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "monogamy/cli.hpp"
#include "monogamy/gaussian.hpp"
#include "monogamy/io.hpp"

using namespace monogamy;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "monogamy");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(MONOGAMY_DATA_DIR) + "/" + name; }

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> comments;
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream s(line);
  std::string cell;
  while (std::getline(s, cell, ',')) cells.push_back(cell);
  return cells;
}

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::stringstream s(text);
  std::string line;
  while (std::getline(s, line)) {
    if (line.rfind("#", 0) == 0) {
      csv.comments.push_back(line);
    } else if (csv.header.empty()) {
      csv.header = split(line);
    } else {
      csv.rows.push_back(split(line));
    }
  }
  return csv;
}

double comment_value(const Csv& csv, const std::string& key) {
  for (const auto& c : csv.comments) {
    const std::string prefix = "# " + key + "=";
    if (c.rfind(prefix, 0) == 0) return std::stod(c.substr(prefix.size()));
  }
  FAIL("missing footer " << key);
  return 0.0;
}

}  // namespace

TEST_CASE("help and usage errors") {
  const auto help = run({"--help"});
  CHECK(help.code == cli::kOk);
  CHECK(help.out.find("gaussian-scan") != std::string::npos);
  CHECK(run({}).code == cli::kInputError);
  CHECK(run({"frobnicate"}).code == cli::kInputError);
  CHECK(run({"gaussian-scan"}).code == cli::kInputError);
  CHECK(run({"gaussian-scan", "--family", "moebius"}).code == cli::kInputError);
  CHECK(run({"spin-scan", "--rings", "7..3"}).code == cli::kInputError);
  CHECK(run({"spin-scan", "--rings", "2..5"}).code == cli::kInputError);
}

TEST_CASE("bell-check exit codes") {
  const auto tri = run({"bell-check", data("triangle.json")});
  CHECK(tri.code == cli::kInfeasible);
  const auto doc = io::parse(tri.out);
  CHECK(doc["feasible"] == false);
  CHECK(doc["witness"]["value"].get<double>() == doctest::Approx(1.5));

  const auto path = run({"bell-check", data("path.json")});
  CHECK(path.code == cli::kOk);
  CHECK(io::parse(path.out)["feasible"] == true);

  CHECK(run({"bell-check", data("chsh_singlet.json")}).code == cli::kInfeasible);
  CHECK(run({"bell-check", data("missing.json")}).code == cli::kInputError);
  CHECK(run({"bell-check", data("werner_0.8.json")}).code == cli::kInputError);
}

TEST_CASE("chsh-scenario feeds bell-check") {
  const auto path = (std::filesystem::temp_directory_path() / "monogamy_chsh_test.json").string();
  CHECK(run({"chsh-scenario", "--visibility", "0.7", "--out", path}).code == cli::kOk);
  CHECK(run({"bell-check", path}).code == cli::kOk);
  CHECK(run({"chsh-scenario", "--visibility", "0.72", "--out", path}).code == cli::kOk);
  CHECK(run({"bell-check", path}).code == cli::kInfeasible);
  std::filesystem::remove(path);
}

TEST_CASE("gaussian-scan CSV") {
  const auto r = run({"gaussian-scan", "--family", "ring", "--n-min", "3", "--n-max", "12"});
  REQUIRE(r.code == cli::kOk);
  const Csv csv = parse_csv(r.out);
  CHECK(csv.header == std::vector<std::string>{"N", "vq", "vp", "delta", "eof_ebits", "e0_per_mode"});
  REQUIRE(csv.rows.size() == 10);
  for (const auto& row : csv.rows) {
    const std::size_t n = std::stoul(row[0]);
    CHECK(std::stod(row[3]) == doctest::Approx(gaussian::ring_delta(n)).epsilon(1e-11));
    CHECK(std::stod(row[4]) == doctest::Approx(gaussian::eof_symmetric(gaussian::ring_delta(n))).epsilon(1e-11));
  }
  CHECK(comment_value(csv, "ring_limit_delta") == doctest::Approx(2.0 / 3.141592653589793).epsilon(1e-11));
  CHECK(comment_value(csv, "qubit_chain_reference_eof") == 0.29);

  const auto cluster = parse_csv(run({"gaussian-scan", "--family", "cluster", "--n-min", "2", "--n-max", "5"}).out);
  CHECK(cluster.header.back() == "eof_n2_over_log2n");
  CHECK(cluster.rows.front()[4] == "inf");

  CHECK(run({"gaussian-scan", "--family", "hex", "--n-min", "46", "--n-max", "46"}).code == cli::kCapExceeded);
  CHECK(run({"gaussian-scan", "--family", "ring", "--n-min", "2"}).code == cli::kInputError);
}

TEST_CASE("spin-scan CSV") {
  const auto r = run({"spin-scan", "--rings", "3..8"});
  REQUIRE(r.code == cli::kOk);
  const Csv csv = parse_csv(r.out);
  CHECK(csv.header == std::vector<std::string>{"N", "f_max"});
  REQUIRE(csv.rows.size() == 6);
  CHECK(std::stod(csv.rows[0][1]) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(std::stod(csv.rows[1][1]) == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(comment_value(csv, "ln2") == doctest::Approx(std::log(2.0)));
  CHECK(comment_value(csv, "f_inf") == comment_value(csv, "f_inf_even"));
  CHECK(run({"spin-scan", "--rings", "3..15"}).code == cli::kCapExceeded);
}

TEST_CASE("cluster commands") {
  const Csv cmp = parse_csv(run({"cluster-compare", "--n-max", "6"}).out);
  CHECK(cmp.header == std::vector<std::string>{"N", "eof_qubit", "eof_gaussian"});
  REQUIRE(cmp.rows.size() == 5);
  CHECK(cmp.rows[0][2] == "inf");
  for (std::size_t i = 1; i < cmp.rows.size(); ++i) CHECK(std::stod(cmp.rows[i][1]) > std::stod(cmp.rows[i][2]));
  const Csv q = parse_csv(run({"qubit-cluster", "--n-max", "4"}).out);
  REQUIRE(q.rows.size() == 3);
  CHECK(std::stod(q.rows[2][1]) == doctest::Approx(0.5));
}

TEST_CASE("concurrence command and seeding") {
  const auto r = run({"concurrence", data("werner_0.8.json"), "--seed", "7"});
  REQUIRE(r.code == cli::kOk);
  const auto doc = io::parse(r.out);
  CHECK(doc["seed"] == 7);
  CHECK(doc["wootters"].get<double>() == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(doc["variational"].get<double>() == doctest::Approx(0.7).epsilon(1e-4));

  CHECK(io::parse(run({"concurrence", data("werner_0.8.json")}).out)["seed"] == cli::default_seed());
  ::setenv("MONOGAMY_SEED", "99", 1);
  CHECK(io::parse(run({"concurrence", data("werner_0.8.json")}).out)["seed"] == 99);
  ::setenv("MONOGAMY_SEED", "abc", 1);
  CHECK(run({"concurrence", data("werner_0.8.json")}).code == cli::kInputError);
  ::unsetenv("MONOGAMY_SEED");
  CHECK(run({"concurrence", data("path.json")}).code == cli::kInputError);
}

TEST_CASE("output is byte-identical across runs") {
  const std::vector<std::vector<std::string>> commands{
      {"gaussian-scan", "--family", "platonic"},
      {"spin-scan", "--rings", "3..7"},
      {"concurrence", data("werner_0.8.json"), "--restarts", "5"},
      {"bell-check", data("triangle.json")}};
  for (const auto& c : commands) CHECK(run(c).out == run(c).out);

  const auto path = (std::filesystem::temp_directory_path() / "monogamy_scan_test.csv").string();
  CHECK(run({"gaussian-scan", "--family", "tri", "--n-min", "3", "--n-max", "4", "--out", path}).code == cli::kOk);
  std::ifstream in(path);
  std::stringstream file;
  file << in.rdbuf();
  CHECK(file.str() == run({"gaussian-scan", "--family", "tri", "--n-min", "3", "--n-max", "4"}).out);
  std::filesystem::remove(path);
}
