#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "poincare/calculus.hpp"
#include "poincare/errors.hpp"
#include "poincare/graph.hpp"
#include "poincare/measure.hpp"
#include "poincare/rng.hpp"

namespace poincare {

inline constexpr double kKirchhoffRelTol = 1e-12;

/// A tree window oriented away from its top vertex: levels decrease with
/// depth, each non-top vertex has one parent, and the frontier marks the
/// vertices whose children are cut off by the window (flow conservation
/// cannot be asserted there).
class RootedTree {
public:
    RootedTree(Graph graph, VertexId top) : graph_(std::move(graph)), top_(top) {
        if (!graph_.contains(top_)) throw input_error("root_tree: top not in graph");
        if (graph_.edge_count() != static_cast<std::size_t>(graph_.size()) - 1)
            throw input_error("root_tree: graph is not a tree");
        const auto n = static_cast<std::size_t>(graph_.size());
        parent_.assign(n, kUnreached);
        children_.assign(n, {});
        std::vector<int> depth_from_top = distances(graph_, top_);
        depth_ = *std::max_element(depth_from_top.begin(), depth_from_top.end());
        level_.assign(n, 0);
        for (VertexId x = 0; x < graph_.size(); ++x)
            level_[static_cast<std::size_t>(x)] = depth_ - depth_from_top[static_cast<std::size_t>(x)];
        // orient edges: the parent is the neighbor one level up
        for (VertexId x = 0; x < graph_.size(); ++x) {
            if (x == top_) continue;
            for (VertexId y : graph_.neighbors(x))
                if (depth_from_top[static_cast<std::size_t>(y)] ==
                    depth_from_top[static_cast<std::size_t>(x)] - 1) {
                    parent_[static_cast<std::size_t>(x)] = y;
                    children_[static_cast<std::size_t>(y)].push_back(x);
                    break;
                }
        }
        for (auto& c : children_) std::sort(c.begin(), c.end());
        // frontier: the vertex's children are incomplete in the window, so
        // flow conservation cannot be asserted there. A truncated top is
        // assumed to be cut at its parent first; any further missing
        // neighbor must be a child.
        frontier_.assign(n, 0);
        for (VertexId x = 0; x < graph_.size(); ++x) {
            bool leaf = children_[static_cast<std::size_t>(x)].empty();
            bool children_cut =
                x == top_ ? graph_.missing_count(x) > 1 : graph_.missing_count(x) > 0;
            frontier_[static_cast<std::size_t>(x)] = (children_cut || leaf) ? 1 : 0;
        }
    }

    const Graph& graph() const { return graph_; }
    VertexId top() const { return top_; }
    int depth() const { return depth_; }
    int level(VertexId x) const { return level_[static_cast<std::size_t>(x)]; }
    VertexId parent(VertexId x) const { return parent_[static_cast<std::size_t>(x)]; }
    const std::vector<VertexId>& children_of(VertexId x) const {
        return children_[static_cast<std::size_t>(x)];
    }
    bool frontier(VertexId x) const { return frontier_[static_cast<std::size_t>(x)] != 0; }
    int frontier_level() const {
        int fl = 0;
        for (VertexId x = 0; x < graph_.size(); ++x)
            if (frontier(x)) fl = std::max(fl, level(x));
        return fl;
    }

    /// Partial order: above(z, x) iff z lies on the parent chain from x
    /// (inclusive), i.e. z >= x.
    bool above(VertexId z, VertexId x) const {
        VertexId cur = x;
        while (cur != kUnreached) {
            if (cur == z) return true;
            if (cur == top_) break;
            cur = parent(cur);
        }
        return false;
    }

    /// Vertices of the window listed bottom level first (children before
    /// parents), for leaf-up accumulation.
    std::vector<VertexId> bottom_up_order() const {
        std::vector<VertexId> order(static_cast<std::size_t>(graph_.size()));
        for (VertexId x = 0; x < graph_.size(); ++x) order[static_cast<std::size_t>(x)] = x;
        std::sort(order.begin(), order.end(), [this](VertexId a, VertexId b) {
            if (level(a) != level(b)) return level(a) < level(b);
            return a < b;
        });
        return order;
    }

private:
    Graph graph_;
    VertexId top_;
    int depth_ = 0;
    std::vector<int> level_;
    std::vector<VertexId> parent_;
    std::vector<std::vector<VertexId>> children_;
    std::vector<char> frontier_;
};

inline RootedTree root_tree(Graph g, VertexId top) { return RootedTree(std::move(g), top); }

/// Measure satisfying flow conservation mu(x) = sum over children of mu(y)
/// at every vertex strictly above the frontier.
class FlowMeasure : public Measure {
public:
    static FlowMeasure flow_from_leaves(const RootedTree& t, const VertexFunction& leaf_values) {
        const auto n = static_cast<std::size_t>(t.graph().size());
        std::vector<double> w(n, 0.0);
        for (VertexId x = 0; x < t.graph().size(); ++x) {
            if (!t.frontier(x)) continue;
            if (!leaf_values.defined(x))
                throw input_error("flow_from_leaves: frontier vertex " + std::to_string(x) +
                                  " has no value");
            double v = leaf_values.at(x);
            if (!(v > 0.0)) throw input_error("flow_from_leaves: leaf values must be positive");
            w[static_cast<std::size_t>(x)] = v;
        }
        for (VertexId x : t.bottom_up_order()) {
            if (t.frontier(x)) continue;
            double s = 0.0;
            for (VertexId c : t.children_of(x)) s += w[static_cast<std::size_t>(c)];
            if (!(s > 0.0))
                throw input_error("flow_from_leaves: vertex " + std::to_string(x) +
                                  " has no mass below it");
            w[static_cast<std::size_t>(x)] = s;
        }
        FlowMeasure m;
        m.weights_ = std::move(w);
        m.alpha_ = m.empirical_alpha();
        m.beta_ = m.empirical_beta();
        m.kind_ = "flow";
        return m;
    }

    /// Convenience top-down variant: draws positive leaf values from the
    /// seed, then accumulates leaf-up so conservation is exact.
    static FlowMeasure random(const RootedTree& t, std::uint64_t seed, double lo = 0.1,
                              double hi = 10.0) {
        Rng r(derive_seed(seed, 41));
        VertexFunction leaves(t.graph().size());
        for (VertexId x = 0; x < t.graph().size(); ++x)
            if (t.frontier(x)) leaves.set(x, r.uniform(lo, hi));
        return flow_from_leaves(t, leaves);
    }

    /// Largest relative conservation residual above the frontier.
    double kirchhoff_residual(const RootedTree& t) const {
        double worst = 0.0;
        for (VertexId x = 0; x < t.graph().size(); ++x) {
            if (t.frontier(x)) continue;
            double s = 0.0;
            for (VertexId c : t.children_of(x)) s += at(c);
            worst = std::max(worst, std::abs(at(x) - s) / at(x));
        }
        return worst;
    }

private:
    FlowMeasure() = default;
};

/// Truncated subtree on the root side of an oriented edge [root, coroot]:
/// the vertices x with d(x, root) = d(x, coroot) - 1 <= height.
struct Triangle {
    VertexId root = 0;
    VertexId coroot = 0;
    int height = 0;
    std::vector<VertexId> members; // sorted
    std::vector<VertexId> base;    // members at distance exactly `height` from root

    bool contains(VertexId x) const {
        return std::binary_search(members.begin(), members.end(), x);
    }
};

/// Triangle spanned from `root` away from its neighbor `coroot`.
inline Triangle triangle_at(const RootedTree& t, VertexId root, VertexId coroot, int height) {
    const Graph& g = t.graph();
    if (!g.contains(root) || !g.contains(coroot)) throw input_error("triangle: vertex not in graph");
    if (height < 0) throw input_error("triangle: negative height");
    const auto& nbrs = g.neighbors(root);
    if (!std::binary_search(nbrs.begin(), nbrs.end(), coroot))
        throw input_error("triangle: root edge is not an edge");
    Triangle tri;
    tri.root = root;
    tri.coroot = coroot;
    tri.height = height;
    // BFS from root without crossing the root edge
    std::vector<int> dist(static_cast<std::size_t>(g.size()), kUnreached);
    dist[static_cast<std::size_t>(root)] = 0;
    std::queue<VertexId> q;
    q.push(root);
    while (!q.empty()) {
        VertexId x = q.front();
        q.pop();
        int dx = dist[static_cast<std::size_t>(x)];
        if (dx < height && g.truncated(x))
            throw window_error("triangle: window underflow at vertex " + std::to_string(x));
        if (dx == height) continue;
        for (VertexId y : g.neighbors(x)) {
            if (x == root && y == coroot) continue;
            if (dist[static_cast<std::size_t>(y)] != kUnreached) continue;
            dist[static_cast<std::size_t>(y)] = dx + 1;
            q.push(y);
        }
    }
    for (VertexId x = 0; x < g.size(); ++x) {
        int d = dist[static_cast<std::size_t>(x)];
        if (d == kUnreached) continue;
        tri.members.push_back(x);
        if (d == height) tri.base.push_back(x);
    }
    return tri;
}

/// Downward triangle below x0, with root edge [x0, p(x0)].
inline Triangle triangle(const RootedTree& t, VertexId x0, int height) {
    if (x0 == t.top()) throw input_error("triangle: x0 is the top of the window");
    return triangle_at(t, x0, t.parent(x0), height);
}

/// Outcome of the triangle-splitting search.
struct BalancedSplit {
    bool degenerate = false;
    Triangle result;      // valid when not degenerate
    int steps = 0;        // n at which the stop rule fired
    double ratio = 0.0;   // mu(T_n) / mu(T_0 \ T_n)
};

/// Descend from t0, at each step taking the max-measure triangle one height
/// lower rooted at a child (ties to the smallest vertex id), until the first
/// T_n with mu(T_n) <= 2 mu(T_0 \ T_n). If no step within the height does,
/// the instance is degenerate (possible only for small heights).
inline BalancedSplit balanced_split(const RootedTree& t, const Measure& m, const Triangle& t0) {
    if (t0.height < 1) throw input_error("balanced_split: height must be >= 1");
    const double total = region_mass(m, t0.members);
    Triangle cur = t0;
    BalancedSplit out;
    for (int n = 1; n <= t0.height; ++n) {
        Triangle best;
        bool have = false;
        double best_mass = 0.0;
        // neighbors are sorted, so a strict comparison breaks measure ties
        // toward the smallest vertex id
        for (VertexId v : t.graph().neighbors(cur.root)) {
            if (v == cur.coroot) continue;
            Triangle cand = triangle_at(t, v, cur.root, t0.height - n);
            double mass = region_mass(m, cand.members);
            if (!have || mass > best_mass) {
                best = std::move(cand);
                best_mass = mass;
                have = true;
            }
        }
        if (!have) throw input_error("balanced_split: root has no onward neighbor (deg < 2?)");
        cur = std::move(best);
        double complement = total - best_mass;
        if (complement > 0.0 && best_mass <= 2.0 * complement) {
            out.result = std::move(cur);
            out.steps = n;
            out.ratio = best_mass / complement;
            return out;
        }
    }
    out.degenerate = true;
    return out;
}

/// |{z in E : z >= x}|: the ancestors of x (inclusive) lying in E.
inline int chain_count(const RootedTree& t, const Region& e, VertexId x) {
    if (!e.is_member(x)) throw input_error("chain_count: x not in E");
    int count = 0;
    VertexId cur = x;
    for (;;) {
        if (e.is_member(cur)) ++count;
        if (cur == t.top()) break;
        cur = t.parent(cur);
    }
    return count;
}

/// Both sides of the flow-mass display: sum of mu over E-members below z
/// (inclusive) against mu(z) * diam(E). The display holds with diam+1
/// unconditionally; whether it held with diam is recorded.
struct FlowMassCheck {
    double chain_mass = 0.0;
    double bound_with_diam = 0.0;
    double bound_with_diam_plus_1 = 0.0;
    bool holds_with_diam = false;
    bool holds_with_diam_plus_1 = false;
};

inline FlowMassCheck flow_mass_bound(const RootedTree& t, const FlowMeasure& m, const Region& e,
                                     VertexId z) {
    if (!e.is_member(z)) throw input_error("flow_mass_bound: z not in E");
    for (VertexId x : e.members)
        if (t.frontier(x))
            throw window_error("flow_mass_bound: E touches the frontier at vertex " +
                               std::to_string(x));
    // members below z: walk the subtree of z
    double s = 0.0;
    std::vector<VertexId> stack{z};
    while (!stack.empty()) {
        VertexId x = stack.back();
        stack.pop_back();
        if (e.is_member(x)) s += m.at(x);
        for (VertexId c : t.children_of(x)) stack.push_back(c);
    }
    FlowMassCheck chk;
    chk.chain_mass = s;
    chk.bound_with_diam = m.at(z) * e.diam;
    chk.bound_with_diam_plus_1 = m.at(z) * (e.diam + 1);
    chk.holds_with_diam = s <= chk.bound_with_diam * (1 + 1e-9);
    chk.holds_with_diam_plus_1 = s <= chk.bound_with_diam_plus_1 * (1 + 1e-9);
    return chk;
}

/// Tree difference operator df(x) = f(x) - f(p(x)) over a region.
/// Returned aligned with e.members.
inline std::vector<double> difference(const RootedTree& t, const VertexFunction& f,
                                      const Region& e) {
    std::vector<double> out;
    out.reserve(e.members.size());
    for (VertexId x : e.members) {
        if (x == t.top()) throw input_error("difference: E contains the top (no parent)");
        out.push_back(f.at(x) - f.at(t.parent(x)));
    }
    return out;
}

} // namespace poincare
