#include <catch2/catch_amalgamated.hpp>

#include "poincare/experiments.hpp"
#include "poincare/generators.hpp"
#include "poincare/measure.hpp"

using namespace poincare;

TEST_CASE("counting measure is M_1^1 and counts", "[measure]") {
    auto line = make_line(10);
    Measure cnt = Measure::counting(line.graph.size());
    CHECK(cnt.alpha() == 1.0);
    CHECK(cnt.beta() == 1.0);
    Region b = ball(line.graph, line.id(0), 3);
    CHECK(region_mass(cnt, b) == 7.0);
    CHECK(cnt.kind() == "counting");
}

TEST_CASE("measure validation", "[measure]") {
    CHECK_THROWS_AS(Measure::from_weights({1.0, 0.0}, std::nullopt, std::nullopt), input_error);
    CHECK_THROWS_AS(Measure::from_weights({1.0, -2.0}, std::nullopt, std::nullopt), input_error);
    CHECK_THROWS_AS(Measure::from_weights({1.0, 2.0}, 1.5, 2.0), input_error); // alpha > min
    CHECK_THROWS_AS(Measure::from_weights({1.0, 2.0}, 0.5, 1.5), input_error); // beta < max
    Measure m = Measure::from_weights({1.0, 2.0}, 0.5, 4.0);
    CHECK(m.empirical_alpha() == 1.0);
    CHECK(m.empirical_beta() == 2.0);
}

TEST_CASE("line measure 1/|j|: mass matches harmonic closed form", "[measure]") {
    auto line = make_line(65);
    Measure mu = make_ex32_measure(line);
    CHECK(!mu.alpha().has_value()); // no positive lower bound exists
    for (int k : {4, 16, 64}) {
        std::vector<VertexId> members;
        for (int j = -k; j <= k; ++j) members.push_back(line.id(j));
        double mass = region_mass(mu, members);
        double h = 0.0;
        for (int j = 1; j <= k; ++j) h += 1.0 / j;
        CHECK(mass == Catch::Approx(1.0 + 2.0 * h).epsilon(1e-12));
    }
}

TEST_CASE("counting ball mass on the binary tree", "[measure]") {
    auto tb = make_tree_ball(2, 5);
    Measure cnt = Measure::counting(tb.graph.size());
    for (int r = 1; r <= 3; ++r)
        CHECK(region_mass(cnt, ball(tb.graph, tb.center, r)) == 3.0 * (1 << r) - 2.0);
}

TEST_CASE("doubling on the line: frozen enumeration values", "[measure]") {
    auto line = make_line(40);
    Measure cnt = Measure::counting(line.graph.size());
    DoublingReport d1 = doubling_constant(line.graph, cnt, 1, {line.id(0)});
    CHECK(d1.D_of_R == Catch::Approx(5.0 / 3.0).epsilon(1e-12)); // |B_2|/|B_1|
    DoublingReport d2 = doubling_constant(line.graph, cnt, 2, {line.id(0)});
    CHECK(d2.D_of_R == Catch::Approx(9.0 / 5.0).epsilon(1e-12)); // |B_4|/|B_2|
    CHECK(d2.max_ratio_by_r[0] == 1.0);                          // r = 0 ratio
    CHECK(d2.D_of_R >= d1.D_of_R);                               // nondecreasing in R
    CHECK(d1.D_of_R >= 1.0);
    CHECK_THROWS_AS(doubling_constant(line.graph, cnt, 25, {line.id(0)}), window_error);
}

TEST_CASE("doubling bound and monotonicity on random degree-bounded graphs",
          "[measure][property]") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        Rng rng(derive_seed(101, seed));
        int b = static_cast<int>(rng.uniform_int(2, 5));
        Graph g = make_random_graph(80, b, 20, seed);
        double alpha = rng.uniform(0.2, 1.0);
        double beta = alpha * rng.uniform(1.0, 6.0);
        std::vector<double> w(static_cast<std::size_t>(g.size()));
        for (double& x : w) x = rng.uniform(alpha, beta);
        Measure mu = Measure::from_weights(std::move(w), alpha, beta);
        double prev = 0.0;
        for (int R = 0; R <= 3; ++R) {
            DoublingReport rep = doubling_constant(g, mu, R, {0, 1, 2});
            REQUIRE(rep.theoretical_bound.has_value());
            CHECK(rep.within_bound);
            CHECK(rep.D_of_R >= prev);
            prev = rep.D_of_R;
        }
        // counting ball counts under the degree bound
        Measure cnt = Measure::counting(g.size());
        for (int r = 0; r <= 4; ++r) {
            Region br = ball(g, 0, r);
            CHECK(static_cast<double>(br.size()) <= 3.0 * std::pow(b, r) + 1e-9);
        }
    }
}

TEST_CASE("region mass is monotone under inclusion", "[measure][property]") {
    Rng rng(7);
    Graph g = make_random_graph(60, 3, 12, 3);
    std::vector<double> w(static_cast<std::size_t>(g.size()));
    for (double& x : w) x = rng.uniform(0.5, 3.0);
    Measure mu = Measure::from_weights(std::move(w));
    Region small = ball(g, 5, 1);
    Region big = ball(g, 5, 3);
    CHECK(region_mass(mu, small) <= region_mass(mu, big));
}

TEST_CASE("degree/mass consistency reports", "[measure]") {
    auto tree = make_homogeneous_tree(2, 4);
    Measure cnt = Measure::counting(tree.graph.size());
    DegreeDoublingReport rep = degree_doubling_relation(tree.graph, cnt);
    CHECK(rep.in_M_alpha);
    CHECK(rep.holds);
    CHECK(rep.max_degree_plus_1 == 4); // interior deg 3, plus the vertex itself
    CHECK(rep.worst_slack >= 0.0);

    auto line = make_line(20);
    DegreeDoublingReport lrep = degree_doubling_relation(line.graph, Measure::counting(line.graph.size()));
    CHECK(lrep.holds); // 3 <= 3 equality on the line

    DegreeDoublingReport xrep = degree_doubling_relation(line.graph, make_ex32_measure(line));
    CHECK(!xrep.in_M_alpha);
    CHECK(xrep.message == "not in M_alpha for any alpha > 0");
}
