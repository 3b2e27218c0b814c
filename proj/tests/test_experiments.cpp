#include <catch2/catch_amalgamated.hpp>

#include <fstream>

#include "poincare/experiments.hpp"

using namespace poincare;

TEST_CASE("ex31: exact values at k = 8", "[experiments]") {
    Ex31Result r = ex31_sweep({8, 16, 32, 64},
                              {Exponent::finite(2.0), Exponent::inf()});
    CHECK(r.exact_ok);
    CHECK(r.sweep.rows.size() == 8);
    // p = inf rows: lhs = k/2, gradient sup 2, diam 3
    for (const auto& row : r.sweep.rows) {
        if (!row.p.is_inf()) continue;
        CHECK(row.lhs == row.param / 2.0);
        CHECK(row.denominator == 6.0); // 1 * diam * ||grad||_inf = 3 * 2
    }
}

TEST_CASE("ex31: slopes match 1 - 1/p over the sweep range", "[experiments][slow]") {
    Ex31Result r = ex31_sweep({8, 16, 32, 64, 128},
                              {Exponent::finite(1.5), Exponent::finite(2.0), Exponent::finite(4.0)});
    CHECK(r.exact_ok);
    for (const auto& v : r.sweep.verdicts) {
        CHECK(std::abs(v.slope - v.expected_slope) <= kSlopeTol);
        CHECK(v.r_squared >= kSlopeR2Min);
        CHECK(v.pass);
    }
}

TEST_CASE("ex31: odd k rejected", "[experiments]") {
    CHECK_THROWS_AS(ex31_sweep({7}, {Exponent::finite(2.0)}), input_error);
}

TEST_CASE("ex32: bounded compensated ratio and exact sums", "[experiments]") {
    std::vector<int> ks;
    for (int k = 64; k <= 4096; k *= 2) ks.push_back(k);
    Ex32Result r = ex32_sweep(ks, {Exponent::finite(1.0), Exponent::finite(2.0)});
    CHECK(r.sums_ok);
    for (const auto& v : r.sweep.verdicts) {
        CHECK(v.bounded_factor <= kBoundedRatioMax);
        CHECK(v.pass);
    }
    CHECK_THROWS_AS(ex32_sweep({64}, {Exponent::inf()}), input_error);
}

TEST_CASE("prop34: construction reaches r/(b+1) at p = inf and balances", "[experiments]") {
    for (int r : {4, 6}) {
        TreeBallWindow w = make_tree_ball(2, r + 2);
        RootedTree t(w.graph, w.top);
        Measure cnt = Measure::counting(w.graph.size());
        Prop34Construction c = prop34_construct(t, cnt, w.center, r, Exponent::inf());
        REQUIRE(!c.degenerate);
        CHECK(c.achieved_ratio >= r / 3.0 - 1e-12);
        CHECK(c.mean_abs <= 1e-9);
        // the counting-symmetric case achieves the bound exactly
        CHECK(c.achieved_ratio == Catch::Approx(r / 3.0).epsilon(1e-12));
    }
}

TEST_CASE("prop34: p = 1 ratio doubles with every extra level", "[experiments][slow]") {
    Prop34Result r = prop34_sweep(2, {4, 5, 6, 7, 8, 9}, Exponent::finite(1.0));
    CHECK(r.pass);
    REQUIRE(r.sweep.verdicts.size() == 1);
    CHECK(std::abs(r.sweep.verdicts[0].slope - 1.0) <= 0.1);
    CHECK(r.min_c >= 0.5 * r.median_c);
}

TEST_CASE("prop34: degenerate marker at r = 1", "[experiments]") {
    TreeBallWindow w = make_tree_ball(2, 3);
    RootedTree t(w.graph, w.top);
    Measure cnt = Measure::counting(w.graph.size());
    Prop34Construction c = prop34_construct(t, cnt, w.center, 1, Exponent::finite(1.0));
    CHECK(c.degenerate);
}

TEST_CASE("thm35: envelope above witness, both within constants of the target",
          "[experiments][slow]") {
    for (const auto& p : {Exponent::finite(1.0), Exponent::inf()}) {
        Thm35Result r = thm35_sweep(2, {4, 5, 6, 7}, p);
        CHECK(r.pass);
        CHECK(r.upper_factor <= kBoundedRatioMax);
        CHECK(r.lower_factor <= kBoundedRatioMax);
        CHECK(r.mass_homogeneous);
    }
    CHECK_THROWS_AS(thm35_sweep(2, {4, 5, 6, 7}, Exponent::finite(2.0)), input_error);
}

TEST_CASE("verification suites stay green on seeded instances", "[experiments][slow]") {
    CHECK(thm21_suite(120, 7).failures == 0);
    CHECK(cor23_suite(60, 7).failures == 0);
    CHECK(doubling_suite(40, 7).failures == 0);
    FlowSuiteResult fl = flow_suite(120, 7);
    CHECK(fl.suite.failures == 0);
    CHECK(fl.suite.chain_checks > 0);
    CHECK(fl.suite.chain_within_2r <= fl.suite.chain_checks);
    CHECK(fl.suite.flow_mass_checks == 2 * fl.suite.trials);
}

TEST_CASE("sweeps are reproducible: identical bytes on identical seeds", "[experiments]") {
    Ex31Result a = ex31_sweep({8, 16}, {Exponent::finite(2.0)});
    Ex31Result b = ex31_sweep({8, 16}, {Exponent::finite(2.0)});
    CHECK(a.sweep.to_csv() == b.sweep.to_csv());
    FlowSuiteResult f1 = flow_suite(40, 99);
    FlowSuiteResult f2 = flow_suite(40, 99);
    CHECK(f1.sweep.to_csv() == f2.sweep.to_csv());
    CHECK(f1.suite.to_json().dump() == f2.suite.to_json().dump());
}

TEST_CASE("golden csv fixtures stay stable", "[experiments]") {
    auto read = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        REQUIRE(in);
        return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    };
    const std::string dir = FIXTURES_DIR;
    Ex31Result e31 = ex31_sweep({8, 16, 32}, {Exponent::finite(2.0), Exponent::inf()});
    CHECK(e31.sweep.to_csv() == read(dir + "/ex31_small.csv"));
    Ex32Result e32 = ex32_sweep({64, 128, 256}, {Exponent::finite(1.0)});
    CHECK(e32.sweep.to_csv() == read(dir + "/ex32_small.csv"));
    FlowSuiteResult fl = flow_suite(25, 2024);
    CHECK(fl.sweep.to_csv() == read(dir + "/flow_small.csv"));
}
