#include <catch2/catch_amalgamated.hpp>

#include "poincare/engine.hpp"
#include "poincare/experiments.hpp"
#include "poincare/generators.hpp"

using namespace poincare;

TEST_CASE("quasiconvex bound: frozen values", "[engine]") {
    Graph edge(2, {{0, 1}});
    Region e = classify_region(edge, {0, 1});
    for (const auto& p :
         {Exponent::finite(1.0), Exponent::finite(1.5), Exponent::finite(2.0), Exponent::inf()})
        CHECK(quasiconvex_bound(e, 2.0, 1.0, p) == Catch::Approx(2.0).epsilon(1e-14));
    CHECK(quasiconvex_bound(e, 2.0, 1.0, Exponent::inf()) == 4.0 * e.half_diam_r);
    CHECK(quasiconvex_bound(e, 2.0, 0.5, Exponent::finite(1.0)) == 4.0); // mu(E)/alpha

    Region nonqc;
    nonqc.members = {0, 1};
    nonqc.quasiconvex = false;
    CHECK_THROWS_AS(quasiconvex_bound(nonqc, 2.0, 1.0, Exponent::finite(2.0)),
                    precondition_error);
}

TEST_CASE("degree-capped constant: frozen values", "[engine]") {
    CHECK(local_poincare_constant(4.0, 1.0, 1.0, 2, Exponent::inf()) == 4.0);
    CHECK(local_poincare_constant(7.0, 0.3, 2.0, 3, Exponent::inf()) == 4.0);
    CHECK(local_poincare_constant(4.0, 1.0, 1.0, 2, Exponent::finite(1.0)) ==
          Catch::Approx(48.0).epsilon(1e-14)); // 4 * (3*16/4)
    CHECK(local_poincare_constant(2.0, 1.0, 1.0, 2, Exponent::finite(2.0)) ==
          Catch::Approx(4.0 * std::sqrt(3.0)).epsilon(1e-14));
    CHECK_THROWS_AS(local_poincare_constant(2.0, 1.0, 1.0, 0, Exponent::finite(2.0)), input_error);
    CHECK(bounded_degree_bound(4.0, 2.0, 1.0, 1.0, 2, Exponent::finite(1.0)) == 96.0);
}

TEST_CASE("check_quasiconvex: trivial pass and hypothesis errors", "[engine]") {
    Graph g = make_random_graph(30, 3, 6, 1);
    Measure cnt = Measure::counting(g.size());
    Region e = ball(g, 0, 2);
    PoincareReport rep =
        check_quasiconvex(g, VertexFunction::constant(g.size(), 5.0), e, cnt, Exponent::finite(2.0));
    CHECK(rep.pass);
    CHECK(rep.lhs == 0.0);

    Ex31Data inst = make_ex31_instance(8);
    CHECK_THROWS_AS(check_quasiconvex(inst.window.graph, inst.f, inst.region, inst.counting,
                                      Exponent::finite(2.0)),
                    precondition_error);

    auto line = make_line(20);
    Measure mu = make_ex32_measure(line);
    Region le = ball(line.graph, line.id(0), 3);
    VertexFunction f(line.graph.size());
    for (VertexId v = 0; v < line.graph.size(); ++v) f.set(v, line.label_of(v));
    CHECK_THROWS_AS(check_quasiconvex(line.graph, f, le, mu, Exponent::finite(2.0)),
                    precondition_error); // no alpha
}

TEST_CASE("flow check: pass on random instances, frontier guard", "[engine]") {
    auto w = make_homogeneous_tree(2, 6);
    RootedTree t(w.graph, w.top);
    FlowMeasure flow = FlowMeasure::random(t, 3);
    VertexId z = t.top();
    for (int i = 0; i < 3; ++i) z = t.children_of(z)[0]; // clear of top and frontier
    Region e = ball(w.graph, z, 2);
    Rng rng(4);
    VertexFunction f(w.graph.size());
    for (VertexId x : e.halo) f.set(x, rng.symmetric());
    PoincareReport rep = check_flow_tree(t, f, e, flow, Exponent::finite(3.0));
    CHECK(rep.pass);
    CHECK(rep.bound == 2.0 * e.diam); // 4r with r = diam/2
    CHECK(rep.tag == TheoremTag::flow_tree);

    std::vector<VertexId> low{w.graph.size() - 1};
    Region bad;
    bad.members = low;
    bad.halo = low;
    bad.connected = true;
    CHECK_THROWS_AS(check_flow_tree(t, f, bad, flow, Exponent::inf()), window_error);
}

TEST_CASE("estimate: single edge reaches one half for every p", "[engine]") {
    Graph edge(2, {{0, 1}});
    Region e = classify_region(edge, {0, 1});
    Measure cnt = Measure::counting(2);
    for (const auto& p : {Exponent::finite(1.0), Exponent::finite(2.0), Exponent::inf()}) {
        ConstantEstimate est = estimate_constant(edge, e, cnt, p, 7, 5, 40);
        CHECK(est.lower == 0.5);
        CHECK(poincare_ratio(edge, est.witness, e, cnt, p) == est.lower);
    }
}

TEST_CASE("estimate: witness reproduces the lower bound exactly", "[engine][property]") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        Graph g = make_random_graph(24, 3, 6, seed);
        Measure cnt = Measure::counting(g.size());
        Region e = ball(g, static_cast<VertexId>(seed % 5), 2);
        for (const auto& p : {Exponent::finite(1.5), Exponent::finite(2.0), Exponent::inf()}) {
            ConstantEstimate est = estimate_constant(g, e, cnt, p, seed, 8, 60);
            CHECK(poincare_ratio(g, est.witness, e, cnt, p) == est.lower);
            // the theorem envelope dominates any attained ratio
            double envelope = quasiconvex_bound(e, region_mass(cnt, e), 1.0, p);
            CHECK(est.lower <= envelope * (1 + 1e-9));
        }
    }
}

TEST_CASE("estimate: monotone in restarts, invariant under measure scaling", "[engine]") {
    Graph g = make_random_graph(18, 3, 4, 11);
    Measure cnt = Measure::counting(g.size());
    Region e = ball(g, 2, 2);
    Exponent p = Exponent::finite(2.0);
    double prev = -1.0;
    for (int restarts : {2, 6, 12}) {
        ConstantEstimate est = estimate_constant(g, e, cnt, p, 5, restarts, 50);
        CHECK(est.lower >= prev);
        prev = est.lower;
    }
    for (const auto& q : {Exponent::finite(1.0), Exponent::finite(2.0), Exponent::inf()}) {
        ConstantEstimate a = estimate_constant(g, e, cnt, q, 5, 6, 50);
        ConstantEstimate b = estimate_constant(g, e, cnt.scaled(4.0), q, 5, 6, 50);
        for (VertexId x : e.halo) CHECK(a.witness.at(x) == b.witness.at(x));
        CHECK(a.lower == b.lower);
    }
}

TEST_CASE("certifier: single edge, paths, segments close exactly", "[engine]") {
    Graph edge(2, {{0, 1}});
    Region e2 = classify_region(edge, {0, 1});
    ConstantEstimate c2 = certify_constant_p2(edge, e2, Measure::counting(2));
    REQUIRE(c2.upper.has_value());
    CHECK(c2.lower == 0.5);
    CHECK(*c2.upper == Catch::Approx(0.5).epsilon(1e-12));
    CHECK(*c2.upper >= c2.lower);

    // hand-derived constant of the 3-path: sqrt(1/3)
    Graph path(3, {{0, 1}, {1, 2}});
    Region e3 = classify_region(path, {0, 1, 2});
    ConstantEstimate c3 = certify_constant_p2(path, e3, Measure::counting(3));
    REQUIRE(c3.upper.has_value());
    CHECK(c3.lower == Catch::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-9));
    CHECK(*c3.upper - c3.lower <= 1e-6 * *c3.upper);

    // a segment of a longer path: the single-neighbor halo prunes away
    std::vector<std::pair<VertexId, VertexId>> pe;
    for (int i = 0; i < 9; ++i) pe.emplace_back(i, i + 1);
    Graph longpath(10, pe);
    Region seg = classify_region(longpath, {3, 4, 5, 6});
    ConstantEstimate cseg = certify_constant_p2(longpath, seg, Measure::counting(10));
    CHECK(*cseg.upper - cseg.lower <= 1e-6 * *cseg.upper);
}

TEST_CASE("certifier: branched shapes keep a sound but open bracket", "[engine]") {
    // the relaxation has a genuine gap on the 3-star: every sign pattern
    // admits a cancellation direction, so the pencil bound stays at 1 while
    // the true constant is sqrt(3/8); the lower bound does reach it
    Graph star(4, {{0, 1}, {0, 2}, {0, 3}});
    Region es = classify_region(star, {0, 1, 2, 3});
    ConstantEstimate cs = certify_constant_p2(star, es, Measure::counting(4));
    REQUIRE(cs.upper.has_value());
    CHECK(cs.lower == Catch::Approx(std::sqrt(3.0 / 8.0)).epsilon(1e-9));
    CHECK(*cs.upper >= cs.lower);
    // the p = 2 envelope dominates everything certified
    CHECK(cs.lower <= quasiconvex_bound(es, 4.0, 1.0, Exponent::finite(2.0)) * (1 + 1e-9));
}

TEST_CASE("certifier: cycles", "[engine]") {
    // the 4-cycle closes exactly at 1/2
    Graph c4 = make_cycle(4);
    Region e = classify_region(c4, {0, 1, 2, 3});
    ConstantEstimate est = certify_constant_p2(c4, e, Measure::counting(4));
    REQUIRE(est.upper.has_value());
    CHECK(est.lower == Catch::Approx(0.5).epsilon(1e-12));
    CHECK(*est.upper == Catch::Approx(0.5).epsilon(1e-12));

    // odd cycles: sound bracket, brute-forced true constants as lower
    Graph c5 = make_cycle(5);
    Region e5 = classify_region(c5, {0, 1, 2, 3, 4});
    ConstantEstimate est5 = certify_constant_p2(c5, e5, Measure::counting(5));
    CHECK(est5.lower == Catch::Approx(0.5477225575051661).epsilon(1e-6));
    CHECK(*est5.upper >= est5.lower);
}

TEST_CASE("certifier: gradient-free disconnected regions have no upper bound", "[engine]") {
    // two vertices two steps apart: the halo can flatten every gradient
    // term while f stays nonconstant, so the constant is genuinely infinite
    std::vector<std::pair<VertexId, VertexId>> pe;
    for (int i = 0; i < 3; ++i) pe.emplace_back(i, i + 1);
    Graph path4(4, pe);
    Region far = classify_region(path4, {0, 3});
    ConstantEstimate est = certify_constant_p2(path4, far, Measure::counting(4));
    REQUIRE(est.upper.has_value());
    CHECK(std::isinf(*est.upper));
}

TEST_CASE("certifier: size cap", "[engine]") {
    auto w = make_homogeneous_tree(2, 5);
    std::vector<VertexId> all;
    for (VertexId x = 0; x < w.graph.size(); ++x)
        if (!w.graph.truncated(x)) all.push_back(x);
    Region e = classify_region(w.graph, all);
    CHECK_THROWS_AS(certify_constant_p2(w.graph, e, Measure::counting(w.graph.size())),
                    size_error);
}

TEST_CASE("estimate: degenerate singleton region", "[engine]") {
    Graph path(3, {{0, 1}, {1, 2}});
    Region single = classify_region(path, {1});
    ConstantEstimate est =
        estimate_constant(path, single, Measure::counting(3), Exponent::finite(2.0), 1);
    CHECK(est.lower == 0.0);
    ConstantEstimate cert = certify_constant_p2(path, single, Measure::counting(3));
    CHECK(cert.lower == 0.0);
    CHECK(*cert.upper == 0.0);
}

TEST_CASE("fit_slope: exact power laws and input checks", "[engine]") {
    std::vector<std::pair<double, double>> quad;
    for (double k : {2.0, 4.0, 8.0, 16.0, 32.0}) quad.emplace_back(k, k * k);
    SlopeFit f = fit_slope(quad);
    CHECK(f.slope == Catch::Approx(2.0).epsilon(1e-12));
    CHECK(f.r_squared == Catch::Approx(1.0).epsilon(1e-12));

    std::vector<std::pair<double, double>> flat;
    for (double k : {1.0, 2.0, 3.0, 4.0}) flat.emplace_back(k, 6.5);
    SlopeFit g = fit_slope(flat);
    CHECK(g.slope == 0.0);
    CHECK(g.r_squared == 1.0);

    CHECK_THROWS_AS(fit_slope({{1.0, 1.0}, {2.0, 2.0}, {3.0, 3.0}}), input_error);
    CHECK_THROWS_AS(fit_slope({{1.0, 1.0}, {2.0, 2.0}, {2.0, 3.0}, {4.0, 4.0}}), input_error);
    CHECK_THROWS_AS(fit_slope({{1.0, 1.0}, {2.0, -2.0}, {3.0, 3.0}, {4.0, 4.0}}), input_error);
}

TEST_CASE("report JSON schema fields", "[engine]") {
    Graph g = make_random_graph(20, 3, 4, 2);
    Measure cnt = Measure::counting(g.size());
    Region e = ball(g, 0, 1);
    Rng rng(2);
    VertexFunction f(g.size());
    for (VertexId x : e.halo) f.set(x, rng.symmetric());
    PoincareReport rep = check_quasiconvex(g, f, e, cnt, Exponent::finite(1.5));
    Json j = report_to_json(rep);
    for (const char* key :
         {"theorem_tag", "lhs", "rhs", "ratio", "bound", "verdict", "seed", "region", "p"})
        CHECK(j.contains(key));
    CHECK(j["theorem_tag"] == "thm21");
    CHECK(j["p"] == "1.5");
}
