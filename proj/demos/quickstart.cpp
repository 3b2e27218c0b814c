// Check the quasiconvex-region inequality by hand on a small random graph,
// then bracket the optimal p=2 constant of a path.

#include <iostream>

#include "poincare/engine.hpp"
#include "poincare/generators.hpp"
#include "poincare/io.hpp"

int main() {
    using namespace poincare;

    Graph g = make_random_graph(40, 3, 10, /*seed=*/7);
    Measure mu = Measure::counting(g.size());
    Region e = ball(g, 0, 2);

    VertexFunction f(g.size());
    Rng rng(1);
    for (VertexId x : e.halo) f.set(x, rng.symmetric());

    PoincareReport rep = check_quasiconvex(g, f, e, mu, Exponent::finite(2.0));
    std::cout << "ball of radius 2: lhs " << fmt(rep.lhs) << " <= rhs " << fmt(rep.rhs)
              << " (" << (rep.pass ? "pass" : "fail") << ")\n";

    // path on 4 vertices: lower == upper at the true constant
    Graph path(4, {{0, 1}, {1, 2}, {2, 3}});
    Region all = classify_region(path, {0, 1, 2, 3});
    ConstantEstimate est = certify_constant_p2(path, all, Measure::counting(4));
    std::cout << "path of 4, p=2 constant in [" << fmt(est.lower) << ", " << fmt(*est.upper)
              << "]\n";
    return 0;
}
