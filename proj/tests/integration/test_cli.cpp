#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lrc/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = lrc::run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string code_file(const std::string& name) { return std::string(LRC_TEST_DATA_DIR) + "/codes/" + name; }

std::vector<std::vector<double>> parse_csv(const std::string& text, std::string* header = nullptr) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("version and help") {
  const auto v = run({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out == "1.0.0\n");
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
}

TEST_CASE("bound examples") {
  auto thm2 = run({"bound", "--kind", "thm2", "--delta", "0.14286", "--r", "2"});
  REQUIRE(thm2.code == 0);
  auto j = json::parse(thm2.out);
  CHECK(j["tool_version"] == "1.0.0");
  CHECK(j["result"]["value"].get<double>() == doctest::Approx(0.56867).epsilon(1e-3));
  CHECK(j["witnesses"]["mu"].get<double>() == doctest::Approx(3.66667).epsilon(1e-3));
  for (const char* key : {"tool_version", "query", "result", "witnesses", "assertions"}) CHECK(j.contains(key));

  // At rho = 0.15 exactly, mu = 11/3.
  j = json::parse(run({"bound", "--kind", "thm2", "--rho", "0.15", "--r", "2"}).out);
  CHECK(j["result"]["value"].get<double>() == doctest::Approx(0.568669193).epsilon(1e-9));
  CHECK(j["witnesses"]["mu"].get<double>() == doctest::Approx(11.0 / 3.0).epsilon(1e-8));

  j = json::parse(run({"bound", "--kind", "gopalan", "--delta", "0", "--r", "2"}).out);
  CHECK(j["result"]["value"].get<double>() == doctest::Approx(0.666666667));
  j = json::parse(run({"bound", "--kind", "thm2", "--delta", "0.6", "--r", "2"}).out);
  CHECK(j["result"]["value"].get<double>() == 0.0);

  j = json::parse(run({"bound", "--kind", "concave_oracle", "--rho", "0.1", "--r", "3"}).out);
  CHECK(j["result"]["value"].get<double>() == doctest::Approx(0.457182197).epsilon(1e-9));
  j = json::parse(run({"--mu-convention", "paper", "bound", "--kind", "thm2", "--rho", "0.1", "--r", "3"}).out);
  CHECK(j["result"]["value"].get<double>() == doctest::Approx(0.458275138).epsilon(1e-9));
  j = json::parse(run({"bound", "--kind", "mrrw", "--mrrw-form", "first", "--delta", "0.1", "--r", "1"}).out);
  CHECK(j["result"]["value"].get<double>() == doctest::Approx(0.721928095).epsilon(1e-9));

  j = json::parse(run({"bound", "--kind", "cm_shortening", "--n", "12", "--d", "4", "--r", "2"}).out);
  CHECK(j["result"]["dimension"].get<int>() == 7);
  j = json::parse(run({"bound", "--kind", "gopalan", "--n", "15", "--d", "5", "--r", "3"}).out);
  CHECK(j["result"]["dimension"].get<int>() == 9);
}

TEST_CASE("bound: CSV format") {
  const auto r = run({"--format", "csv", "bound", "--kind", "thm2", "--rho", "0.15", "--r", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("0.568669193") != std::string::npos);
}

TEST_CASE("bound: invalid input exits 1") {
  CHECK(run({"bound", "--kind", "thm2", "--delta", "1.5", "--r", "2"}).code == 1);
  CHECK(run({"bound", "--kind", "thm2", "--delta", "0.1", "--r", "0"}).code == 1);
  CHECK(run({"bound", "--kind", "nope", "--delta", "0.1", "--r", "2"}).code == 1);
  CHECK(run({"bound", "--kind", "thm2", "--r", "2"}).code == 1);
  CHECK(run({"bound", "--kind", "thm2", "--delta", "0.1", "--rho", "0.1", "--r", "2"}).code == 1);
  CHECK(run({"--format", "xml", "bound", "--kind", "thm2", "--delta", "0.1", "--r", "2"}).code == 1);
  const auto e = run({"bound", "--kind", "thm2", "--delta", "1.5", "--r", "2"});
  CHECK_FALSE(e.err.empty());
}

TEST_CASE("bound: numeric failure exits 2") {
  // The root lies beyond the bracketing range for this rho.
  const auto r = run({"bound", "--kind", "thm2", "--rho", "1e-25", "--r", "2"});
  CHECK(r.code == 2);
  CHECK(r.err.find("mu") != std::string::npos);
}

TEST_CASE("curve") {
  const auto r = run({"curve", "--r", "2", "--bounds", "gopalan,mrrw,cm_mrrw,thm1,thm2", "--step", "0.01",
                      "--delta-min", "0.01", "--grid", "512"});
  REQUIRE(r.code == 0);
  std::string header;
  const auto rows = parse_csv(r.out, &header);
  CHECK(header == "delta,gopalan,mrrw,cm_mrrw,thm1,thm2");
  REQUIRE(rows.size() == 50);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][0] > rows[i - 1][0]);
    for (std::size_t c = 1; c < rows[i].size(); ++c) CHECK(rows[i][c] <= rows[i - 1][c] + 1e-9);
  }
  CHECK(rows.back()[0] == 0.5);
  CHECK(rows.back()[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-9));  // gopalan: (1 - 1/2) r/(r+1)
  for (std::size_t c = 2; c < rows.back().size(); ++c) CHECK(std::abs(rows.back()[c]) <= 1e-9);
  // Row at delta = 0.40.
  CHECK(rows[39][0] == doctest::Approx(0.40));
  CHECK(rows[39][5] < rows[39][3]);

  const auto again = run({"curve", "--r", "2", "--bounds", "gopalan,mrrw,cm_mrrw,thm1,thm2", "--step", "0.01",
                          "--delta-min", "0.01", "--grid", "512", "--workers", "1"});
  CHECK(again.out == r.out);

  const auto svg = run({"--format", "svg", "curve", "--r", "2", "--bounds", "gopalan,thm2", "--step", "0.05"});
  CHECK(svg.code == 0);
  CHECK(svg.out.find("<svg") != std::string::npos);

  CHECK(run({"curve", "--r", "2", "--delta-min", "0.3", "--delta-max", "0.2"}).code == 1);
  CHECK(run({"curve", "--r", "2", "--bounds", "thm2,unknown"}).code == 1);
}

TEST_CASE("curve: unwritable output exits 2") {
  const auto r = run({"--out", "/nonexistent-dir/out.csv", "curve", "--r", "2", "--step", "0.1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("cannot write") != std::string::npos);
}

TEST_CASE("curve: --out writes the file") {
  const auto path = std::filesystem::temp_directory_path() / "lrcbounds_curve_test.csv";
  const auto r = run({"--out", path.string(), "curve", "--r", "3", "--bounds", "thm2", "--step", "0.1"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str().rfind("delta,thm2\n", 0) == 0);
  std::filesystem::remove(path);
}

TEST_CASE("diff") {
  const auto r2 = run({"diff", "--r", "2", "--bounds", "cm_mrrw,thm2", "--grid", "512"});
  REQUIRE(r2.code == 0);
  std::string header;
  const auto rows = parse_csv(r2.out, &header);
  CHECK(header == "delta,diff");
  const auto pos = r2.out.find("# sign_change lower=");
  REQUIRE(pos != std::string::npos);
  const double cross2 = std::stod(r2.out.substr(r2.out.find("crossover=", pos) + 10));
  CHECK(cross2 >= 0.35);
  CHECK(cross2 <= 0.41);

  const auto r4 = run({"diff", "--r", "4", "--bounds", "cm_mrrw,thm2", "--grid", "512"});
  REQUIRE(r4.code == 0);
  const auto pos4 = r4.out.find("crossover=");
  REQUIRE(pos4 != std::string::npos);
  CHECK(std::stod(r4.out.substr(pos4 + 10)) <= cross2);

  const auto same = run({"diff", "--r", "3", "--bounds", "thm2,thm2", "--step", "0.05"});
  REQUIRE(same.code == 0);
  for (const auto& row : parse_csv(same.out)) CHECK(row[1] == 0.0);
  CHECK(same.out.find("# sign_change none") != std::string::npos);

  CHECK(run({"diff", "--r", "2", "--bounds", "thm2"}).code == 1);
}

TEST_CASE("verify") {
  const auto ok = run({"verify", code_file("n3_r2_single_group.code")});
  REQUIRE(ok.code == 0);
  const auto j = json::parse(ok.out);
  CHECK(j["result"]["pass"] == true);
  CHECK(j["result"]["num_cosets"] == "4");
  for (const auto& c : j["assertions"]) CHECK(c["pass"] == true);
  CHECK(j["result"]["clo"][4]["count"] == "4");
  CHECK(j["result"]["clo"][4]["gf_bound"] == "4");

  const auto rep = json::parse(run({"verify", code_file("repetition3_dual.code"), "--no-monte-carlo"}).out);
  const auto eig = rep["result"]["spectrum"]["eigenvalues"];
  REQUIRE(eig.size() == 2);
  CHECK(eig[0].get<double>() == doctest::Approx(-3.0));
  CHECK(eig[1].get<double>() == doctest::Approx(3.0));
  CHECK(rep["result"]["pass"] == true);

  const auto seeded_a = run({"--seed", "5", "verify", code_file("n9_r2_three_groups_global.code"), "--rho", "0.2"});
  const auto seeded_b = run({"--seed", "5", "verify", code_file("n9_r2_three_groups_global.code"), "--rho", "0.2"});
  CHECK(seeded_a.code == 0);
  CHECK(seeded_a.out == seeded_b.out);

  const auto bad = run({"verify", code_file("overlapping_repair_rows.code")});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("disjointness violated") != std::string::npos);
  CHECK(run({"verify", code_file("missing.code")}).code == 1);
  CHECK(run({"verify", code_file("n3_r2_single_group.code"), "--rho", "0.7"}).code == 1);
  CHECK(run({"--out", "/nonexistent-dir/x.json", "verify", code_file("n3_r2_single_group.code")}).code == 2);
}

TEST_CASE("partition") {
  const auto r = run({"partition", code_file("path4_w2.rows"), "--w", "2"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["result"]["part_sizes"]["2"] == 4);
  CHECK(j["witnesses"]["pigeonhole_k"] == 2);

  const auto lrc = json::parse(run({"partition", code_file("n12_r2_four_groups_global.code"), "--w", "3"}).out);
  CHECK(lrc["result"]["part_sizes"]["3"] == 12);
  CHECK(lrc["result"]["tuples"].size() == 4);
  CHECK(lrc["result"]["tuples"][3]["source_row"] == 3);

  const auto single = json::parse(run({"partition", code_file("n3_r2_single_group.code"), "--w", "3"}).out);
  CHECK(single["result"]["parts"]["3"] == json::array({1, 2, 3}));

  CHECK(run({"partition", code_file("path4_w2.rows"), "--w", "3"}).code == 1);
}

TEST_CASE("count") {
  auto j = json::parse(run({"count", "--n", "6", "--r", "2", "--kmax", "2"}).out);
  CHECK(j["result"]["count"] == "16");
  j = json::parse(run({"count", "--n", "2", "--r", "1", "--kmax", "1", "--unrefined"}).out);
  CHECK(j["result"]["count"] == "3");
  CHECK(run({"count", "--n", "7", "--r", "2", "--kmax", "2"}).code == 1);
  const auto big = json::parse(run({"count", "--n", "300", "--r", "2", "--rho", "0.15"}).out);
  CHECK(big["result"].contains("count"));
}

TEST_CASE("the installed binary agrees with the in-process entry point") {
  const std::string cmd = std::string(LRC_CLI_PATH) + " bound --kind thm2 --rho 0.15 --r 2 > /dev/null 2>&1";
  CHECK(std::system(cmd.c_str()) == 0);
  const std::string bad = std::string(LRC_CLI_PATH) + " bound --kind thm2 --delta 2 --r 2 > /dev/null 2>&1";
  const int status = std::system(bad.c_str());
  CHECK(WEXITSTATUS(status) == 1);
}
