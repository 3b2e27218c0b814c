#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "poincare/experiments.hpp"
#include "poincare/generators.hpp"
#include "poincare/io.hpp"

using namespace poincare;

TEST_CASE("number formatting round-trips and stays short", "[io]") {
    for (double v : {0.0, 1.0, -2.5, 1.0 / 3.0, 5.0 / 3.0, 1e-9, 123456.789}) {
        CHECK(std::stod(fmt(v)) == v);
    }
    CHECK(fmt(0.5) == "0.5");
    CHECK(fmt(2.0) == "2");
    CHECK(fmt(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("graph edge list round trip", "[io]") {
    Graph g = make_random_graph(25, 3, 8, 5);
    std::string text = graph_to_edge_list(g);
    CHECK(text.rfind("# family=random_graph", 0) == 0);
    std::istringstream in(text);
    Graph back = graph_from_edge_list(in);
    CHECK(back.size() == g.size());
    CHECK(back.edges() == g.edges());
    CHECK(back.window_note() == g.window_note());

    std::istringstream empty("# nothing\n");
    CHECK_THROWS_AS(graph_from_edge_list(empty), input_error);
}

TEST_CASE("region and measure JSON shapes", "[io]") {
    auto line = make_line(6);
    Region e = ball(line.graph, line.id(0), 2);
    Json rj = region_to_json(e);
    CHECK(rj["diam"] == 4);
    CHECK(rj["connected"] == true);
    CHECK(rj["quasiconvex"] == true);
    CHECK(rj["members"].size() == 5);

    Measure mu = make_ex32_measure(line);
    Json mj = measure_to_json(mu);
    CHECK(mj["kind"] == "custom");
    CHECK(!mj.contains("alpha"));
    CHECK(mj["beta"] == 1.0);
    CHECK(mj["weights"]["0"] == 1.0 / 6.0);

    Json cj = measure_to_json(Measure::counting(3));
    CHECK(cj["kind"] == "counting");
    CHECK(cj["alpha"] == 1.0);
}

TEST_CASE("rooted tree JSON carries top and frontier level", "[io]") {
    auto w = make_homogeneous_tree(2, 3);
    RootedTree t(w.graph, w.top);
    Json j = tree_to_json(t);
    CHECK(j["top"] == w.top);
    CHECK(j["frontier_level"] == 0);
    CHECK(j["edges"].size() == static_cast<std::size_t>(w.graph.size() - 1));
}

TEST_CASE("sweep csv dialect: header, commas, LF", "[io]") {
    Ex31Result r = ex31_sweep({8}, {Exponent::finite(2.0)});
    std::string csv = r.sweep.to_csv();
    CHECK(csv.rfind("k,p,lhs,denominator,normalized_ratio\n", 0) == 0);
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(csv.back() == '\n');
}

TEST_CASE("estimate JSON has lower, witness, seed", "[io]") {
    Graph edge(2, {{0, 1}});
    Region e = classify_region(edge, {0, 1});
    ConstantEstimate est =
        estimate_constant(edge, e, Measure::counting(2), Exponent::finite(2.0), 3, 4, 30);
    Json j = estimate_to_json(est);
    CHECK(j["lower"] == 0.5);
    CHECK(j["seed"] == 3);
    CHECK(j["witness"].is_object());
}
