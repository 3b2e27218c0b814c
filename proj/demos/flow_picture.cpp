// Build a small random tree window, put a random flow on it, and print the
// per-level mass together with one global-inequality check.

#include <iostream>
#include <map>

#include "poincare/experiments.hpp"
#include "poincare/io.hpp"

int main() {
    using namespace poincare;

    TreeWindow w = make_random_tree(3, 5, /*seed=*/11);
    RootedTree t(w.graph, w.top);
    FlowMeasure flow = FlowMeasure::random(t, 11);

    std::map<int, double> level_mass;
    for (VertexId x = 0; x < w.graph.size(); ++x) level_mass[t.level(x)] += flow.at(x);
    std::cout << "window: " << w.graph.size() << " vertices, depth " << t.depth() << "\n";
    for (auto it = level_mass.rbegin(); it != level_mass.rend(); ++it)
        std::cout << "  level " << it->first << ": mass " << fmt(it->second) << "\n";
    std::cout << "conservation residual: " << fmt(flow.kirchhoff_residual(t)) << "\n";

    std::vector<char> allowed(static_cast<std::size_t>(w.graph.size()), 0);
    for (VertexId x = 0; x < w.graph.size(); ++x)
        if (x != t.top() && !t.frontier(x)) allowed[static_cast<std::size_t>(x)] = 1;
    Rng rng(3);
    Region e = classify_region(
        w.graph, poincare::detail::grow_connected(w.graph, allowed, t.children_of(t.top())[0], 8, rng));
    VertexFunction f(w.graph.size());
    for (VertexId x : e.halo) f.set(x, rng.symmetric());
    PoincareReport rep = check_flow_tree(t, f, e, flow, Exponent::inf());
    std::cout << "flow inequality on |E|=" << e.size() << ": lhs " << fmt(rep.lhs) << " <= rhs "
              << fmt(rep.rhs) << " (" << (rep.pass ? "pass" : "fail") << ")\n";
    return 0;
}
