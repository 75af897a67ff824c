#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "lrc/coset_lab.hpp"
#include "lrc/errors.hpp"
#include "lrc/exact_counts.hpp"

using namespace lrc;

namespace {

CodeDescription make(int n, int r, std::vector<std::string> rows, std::vector<int> repair = {}) {
  CodeDescription d;
  d.n = n;
  d.r = r;
  for (const auto& s : rows) d.rows.push_back(parse_word(s));
  d.repair_rows = std::move(repair);
  return d;
}

BinaryLinearCode load(const std::string& name) {
  return canonicalize(load_code_file(std::string(LRC_TEST_DATA_DIR) + "/codes/" + name + ".code"));
}

std::string invariant_of(const CodeDescription& d) {
  try {
    canonicalize(d);
  } catch (const InvariantViolation& e) {
    return e.invariant();
  }
  return "";
}

const std::vector<std::string> kRegression = {
    "n3_r2_single_group",       "n2_r1_single_group",          "n6_r2_two_groups",
    "n9_r2_three_groups_global", "n8_r3_two_groups",            "n12_r3_three_groups_global",
    "n10_r4_two_groups_global", "n12_r2_four_groups_global",   "n14_r1_seven_pairs_global",
    "hypercube_n4",             "repetition3_dual",            "even_weight3",
    "hamming7"};

}  // namespace

TEST_CASE("words") {
  CHECK(parse_word("100") == 1u);
  CHECK(parse_word("0011") == 12u);
  CHECK(format_word(12u, 4) == "0011");
  CHECK(support(parse_word("10101")) == std::vector<int>{1, 3, 5});
  CHECK_THROWS_AS(parse_word("10a"), ParseError);
}

TEST_CASE("canonicalize") {
  CHECK(canonicalize(make(3, 2, {"111"})).dimension() == 2);
  CHECK(canonicalize(make(3, 2, {"110", "011", "101"})).dimension() == 1);
  CHECK(canonicalize(make(4, 1, {})).dimension() == 4);
  CHECK(canonicalize(make(6, 2, {"111000", "000111"}, {0, 1})).repair_groups().size() == 2);

  CHECK(invariant_of(make(3, 2, {"110", "011"}, {0, 1})) == "disjointness violated");
  CHECK(invariant_of(make(6, 2, {"111000"}, {0})) == "coverage gap");
  CHECK(invariant_of(make(4, 2, {"1111"}, {0})) == "repair-group size");
  CHECK(invariant_of(make(3, 2, {"111"}, {1})) == "repair index");
  CHECK(invariant_of(make(3, 0, {"111"})) == "locality");
  CodeDescription long_row = make(3, 2, {"111"});
  long_row.rows[0] = parse_word("1111");
  CHECK(invariant_of(long_row) == "row length");
}

TEST_CASE("code description parsing") {
  const auto d = parse_code_description("# comment\n\nn: 3\nr: 2   \nrows: 110 011\nrepair_rows:\n");
  CHECK(d.n == 3);
  CHECK(d.r == 2);
  CHECK(d.rows.size() == 2);
  CHECK(d.repair_rows.empty());
  CHECK(parse_code_description(to_text(d)).rows == d.rows);

  CHECK_THROWS_AS(parse_code_description("n: 3\nr: 2\nrows: 111\n"), ParseError);
  CHECK_THROWS_AS(parse_code_description("n: 3\nn: 3\nr: 2\nrows: 111\nrepair_rows:\n"), ParseError);
  CHECK_THROWS_AS(parse_code_description("n: x\nr: 2\nrows: 111\nrepair_rows:\n"), ParseError);
  CHECK_THROWS_AS(parse_code_description("n: 3\nr: 2\nrows: 111\nrepair_rows:\ncolour: red\n"), ParseError);
  CHECK_THROWS_AS(load_code_file("/nonexistent/file.code"), ParseError);
}

TEST_CASE("leader-weight histograms") {
  const auto s1 = coset_leader_weights(canonicalize(make(3, 2, {"111"})));
  CHECK(s1.leader_weight_histogram == std::vector<BigInt>{1, 3});
  CHECK(s1.num_cosets == 4);
  const auto s2 = coset_leader_weights(canonicalize(make(2, 1, {"11"})));
  CHECK(s2.leader_weight_histogram == std::vector<BigInt>{1, 1});
  const auto hamming = coset_leader_weights(load("hamming7"));
  BigInt total = 0;
  for (const auto& c : hamming.leader_weight_histogram) total += c;
  CHECK(total == 16);
  CHECK(hamming.num_cosets == 16);

  for (const auto& name : kRegression) {
    const auto s = coset_leader_weights(load(name));
    BigInt sum = 0;
    for (const auto& c : s.leader_weight_histogram) sum += c;
    CHECK(sum == s.num_cosets);
    CHECK(s.leader_weight_histogram.at(0) == 1);
  }
}

TEST_CASE("count_clo") {
  const auto code = canonicalize(make(3, 2, {"111"}));
  CHECK(count_clo(code, 1.0 / 3.0) == 4);
  for (const auto& name : kRegression) {
    const auto c = load(name);
    CHECK(count_clo(c, 0.0) == 1);
    for (double rho : {0.1, 0.2, 0.3, 0.4, 0.5}) {
      CHECK(count_clo(c, rho) <= ball_volume(c.length(), floor_radius(rho, c.length())));
    }
  }
}

TEST_CASE("S-inclusion") {
  const auto a = verify_S_inclusion(canonicalize(make(3, 2, {"111"}, {0})), 1.0 / 3.0);
  CHECK(a.pass());
  CHECK(a.clo == 4);
  CHECK(a.gf_bound == 4);
  const auto b = verify_S_inclusion(canonicalize(make(2, 1, {"11"}, {0})), 0.5);
  CHECK(b.pass());
  CHECK(b.clo == 2);
  CHECK(b.gf_bound == 2);
  const auto c = verify_S_inclusion(canonicalize(make(6, 2, {"111000", "000111"}, {0, 1})), 1.0 / 3.0);
  CHECK(c.pass());
  CHECK(c.gf_bound == 16);
  CHECK(c.clo <= 16);

  CHECK_THROWS_AS(verify_S_inclusion(load("hamming7"), 0.2), InvariantViolation);
}

TEST_CASE("S-inclusion over the regression set") {
  for (const auto& name : kRegression) {
    const auto code = load(name);
    if (!code.has_repair_structure()) continue;
    for (double rho : {0.1, 0.2, 0.3, 0.4, 0.5}) {
      const auto rep = verify_S_inclusion(code, rho);
      INFO(name << " rho=" << rho);
      CHECK(rep.pass());
      CHECK(rep.violating_leaders.empty());
      CHECK(rep.clo == count_clo(code, rho));
      CHECK(rep.gf_bound == gf_count(code.length(), Locality(code.locality()), rep.radius, true));
    }
  }
}

TEST_CASE("spectrum identity") {
  const auto rep = spectrum_check(load("repetition3_dual"));
  CHECK(rep.match);
  REQUIRE(rep.eigenvalues.size() == 2);
  CHECK(rep.eigenvalues[0] == doctest::Approx(-3.0));
  CHECK(rep.eigenvalues[1] == doctest::Approx(3.0));

  const auto even = spectrum_check(load("even_weight3"));
  CHECK(even.match);
  CHECK(even.expected == std::vector<double>{-1, -1, -1, 3});

  const auto cube = spectrum_check(load("hypercube_n4"));
  CHECK(cube.match);
  CHECK(cube.expected == std::vector<double>{-4, -2, -2, -2, -2, 0, 0, 0, 0, 0, 0, 2, 2, 2, 2, 4});

  for (const auto& name : kRegression) {
    const auto code = load(name);
    if (code.dimension() > kMaxSpectrumDimension) continue;
    const auto r = spectrum_check(code);
    INFO(name);
    CHECK(r.match);
    CHECK(r.max_deviation < 1e-6);
  }
  CHECK_THROWS_AS(spectrum_check(canonicalize(make(11, 1, {}))), SizeError);
}

TEST_CASE("min_distance") {
  CHECK(min_distance(load("even_weight3")) == 2);
  CHECK(min_distance(load("repetition3_dual")) == 3);
  CHECK(min_distance(load("hamming7")) == 3);
  CHECK_FALSE(min_distance(canonicalize(make(2, 1, {"10", "01"}))).has_value());
  CHECK(codewords(load("hamming7")).size() == 16);
}

TEST_CASE("exact leader probability") {
  const auto code = canonicalize(make(3, 2, {"111"}));
  CHECK(exact_leader_prob(code, 0.2) == doctest::Approx(0.896).epsilon(1e-12));
  CHECK(coset_leader_weights(code).exact_leader_prob(0.2) == doctest::Approx(0.896).epsilon(1e-12));
  for (const auto& name : kRegression) {
    const auto c = load(name);
    CHECK(exact_leader_prob(c, 0.0) == 1.0);
    const double p = exact_leader_prob(c, 0.3);
    CHECK(p > 0.0);
    CHECK(p <= 1.0 + 1e-12);
  }
  // Every vector is a leader when C-perp = {0}.
  CHECK(exact_leader_prob(load("hypercube_n4"), 0.37) == doctest::Approx(1.0));
}

TEST_CASE("Monte Carlo leader probability") {
  const auto code = canonicalize(make(3, 2, {"111"}));
  const auto a = estimate_leader_prob(code, 0.2, 100000, 7);
  const auto b = estimate_leader_prob(code, 0.2, 100000, 7);
  CHECK(a.estimate == b.estimate);
  CHECK(a.sigma == b.sigma);
  CHECK(std::abs(a.estimate - 0.896) <= 3 * a.sigma);
  CHECK(estimate_leader_prob(code, 0.0, 1000, 1).estimate == 1.0);
  CHECK_THROWS_AS(estimate_leader_prob(code, 0.2, 0, 1), InvalidParameter);
}

TEST_CASE("Monte Carlo 3-sigma coverage over 100 seeds") {
  const auto code = load("n9_r2_three_groups_global");
  const CosetLeaderTable table(code);
  const double exact = exact_leader_prob(code, 0.2);
  int covered = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto est = estimate_leader_prob(table, 0.2, 20000, seed);
    if (std::abs(est.estimate - exact) <= 3 * est.sigma) ++covered;
  }
  CHECK(covered >= 99);
}

TEST_CASE("BFS leader weights agree with exhaustive per-coset minima") {
  std::mt19937_64 rng(12345);
  std::vector<CodeDescription> cases;
  for (const auto& name : kRegression) {
    cases.push_back(load_code_file(std::string(LRC_TEST_DATA_DIR) + "/codes/" + name + ".code"));
  }
  for (int n = 1; n <= 14; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      CodeDescription d;
      d.n = n;
      d.r = 1;
      const int m = static_cast<int>(rng() % (n + 1));
      for (int i = 0; i < m; ++i) d.rows.push_back(static_cast<Word>(rng() & ((Word{1} << n) - 1)));
      cases.push_back(d);
    }
  }
  for (const auto& d : cases) {
    const auto code = canonicalize(d);
    const CosetLeaderTable table(code);
    const auto minima = oracle::exhaustive_coset_minima(d.rows, d.n);
    const oracle::CosetReducer red(d.rows);
    CHECK(minima.size() == table.num_cosets());
    bool all = true;
    for (Word v = 0; v < (Word{1} << d.n); ++v) {
      const int want = minima.at(red.reduce(v));
      if (table.leader_weight(code.syndrome(v)) != want) all = false;
      if (table.is_leader(v) != (std::popcount(v) == want)) all = false;
    }
    INFO("n=" << d.n << " rows=" << d.rows.size());
    CHECK(all);
  }
}

TEST_CASE("partition_coords") {
  const auto p = partition_coords({parse_word("1100"), parse_word("0110"), parse_word("0011")}, 4, 2);
  CHECK(p.part(2) == parse_word("1111"));
  CHECK(p.part(1) == 0u);
  REQUIRE(p.tuples.size() == 2);
  CHECK(p.tuples[0].coords == parse_word("1100"));
  CHECK(p.tuples[0].source_row == 0);
  CHECK(p.tuples[0].l == 1);
  CHECK(p.tuples[1].coords == parse_word("0011"));
  CHECK(p.tuples[1].source_row == 2);
  CHECK(p.pigeonhole_k.has_value());

  const auto single = partition_coords({parse_word("111")}, 3, 3);
  CHECK(single.part(3) == parse_word("111"));

  const auto groups = load("n12_r2_four_groups_global").repair_groups();
  const auto g = partition_coords(groups, 12, 3);
  CHECK(g.part(3) == parse_word("111111111111"));
  CHECK(g.tuples.size() == 4);

  CHECK_THROWS_AS(partition_coords({parse_word("1100"), parse_word("0010")}, 4, 2), InvalidParameter);
  CHECK_THROWS_AS(partition_coords({parse_word("1100")}, 4, 2), InvalidParameter);
}

TEST_CASE("partition structure on random row sets") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 12);
    const int w = 1 + static_cast<int>(rng() % 4);
    std::vector<Word> rows;
    Word covered = 0;
    const Word full = (Word{1} << n) - 1;
    while (covered != full) {
      std::vector<int> idx(n);
      for (int i = 0; i < n; ++i) idx[i] = i;
      std::shuffle(idx.begin(), idx.end(), rng);
      Word row = 0;
      for (int i = 0; i < w; ++i) row |= Word{1} << idx[i];
      rows.push_back(row);
      covered |= row;
    }
    const auto p = partition_coords(rows, n, w);
    Word all = 0;
    for (const auto& [j, part] : p.parts) {
      CHECK((all & part) == 0u);
      all |= part;
      Word tiled = 0;
      for (const auto& t : p.tuples) {
        if (t.j != j) continue;
        CHECK(std::popcount(t.coords) == j);
        CHECK((tiled & t.coords) == 0u);
        CHECK((t.coords & ~rows[t.source_row]) == 0u);
        tiled |= t.coords;
      }
      CHECK(tiled == part);
    }
    CHECK(all == full);
    REQUIRE(p.pigeonhole_k.has_value());
    CHECK(std::popcount(p.part(*p.pigeonhole_k)) * w >= n);
  }
}
