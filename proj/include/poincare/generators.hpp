#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "poincare/errors.hpp"
#include "poincare/graph.hpp"
#include "poincare/rng.hpp"

namespace poincare {

// Desk-scale guard for generated windows.
inline constexpr std::size_t kMaxWindowVertices = 2'000'000;
inline constexpr std::size_t kMaxWindowEdges = 20'000'000;

namespace detail {
inline void check_budget(std::size_t vertices, std::size_t edges) {
    if (vertices > kMaxWindowVertices)
        throw size_error("vertex budget exceeded: " + std::to_string(vertices) + " > " +
                         std::to_string(kMaxWindowVertices));
    if (edges > kMaxWindowEdges)
        throw size_error("edge budget exceeded: " + std::to_string(edges) + " > " +
                         std::to_string(kMaxWindowEdges));
}
} // namespace detail

/// Window of the quarter-plane grid with long horizontal chords: vertices
/// (j,k) in [0,max_j] x [0,max_k], grid edges |dj|+|dk| = 1, and extra edges
/// on odd rows k between columns j1,j2 <= k with |j1-j2| >= 4.
struct GridChordsWindow {
    Graph graph;
    int max_j, max_k;

    VertexId id(int j, int k) const {
        if (j < 0 || j > max_j || k < 0 || k > max_k)
            throw input_error("grid label out of window");
        return static_cast<VertexId>(k * (max_j + 1) + j);
    }
    std::pair<int, int> label_of(VertexId v) const {
        return {v % (max_j + 1), v / (max_j + 1)};
    }
};

inline GridChordsWindow make_grid_chords(int max_j, int max_k) {
    if (max_j < 1 || max_k < 1) throw input_error("grid_chords: window must be at least 2x2");
    const std::size_t n = static_cast<std::size_t>(max_j + 1) * static_cast<std::size_t>(max_k + 1);
    detail::check_budget(n, n); // vertex budget before any allocation
    auto id = [&](int j, int k) { return static_cast<VertexId>(k * (max_j + 1) + j); };

    std::vector<std::pair<VertexId, VertexId>> edges;
    for (int k = 0; k <= max_k; ++k) {
        for (int j = 0; j <= max_j; ++j) {
            if (j + 1 <= max_j) edges.emplace_back(id(j, k), id(j + 1, k));
            if (k + 1 <= max_k) edges.emplace_back(id(j, k), id(j, k + 1));
            if (k % 2 == 1 && j <= k) {
                for (int j2 = j + 4; j2 <= k && j2 <= max_j; ++j2)
                    edges.emplace_back(id(j, k), id(j2, k));
            }
        }
        detail::check_budget(n, edges.size()); // chord rows grow cubically
    }

    // degree each vertex has in the infinite graph, so the window knows
    // which vertices are truncated
    std::vector<int> full_degree(n, 0);
    std::vector<std::string> labels(n);
    for (int k = 0; k <= max_k; ++k)
        for (int j = 0; j <= max_j; ++j) {
            int grid = 4 - (j == 0 ? 1 : 0) - (k == 0 ? 1 : 0);
            int chords = 0;
            if (k % 2 == 1 && j <= k) {
                if (j >= 4) chords += j - 3;         // partners in [0, j-4]
                if (k - j >= 4) chords += k - j - 3; // partners in [j+4, k]
            }
            full_degree[static_cast<std::size_t>(id(j, k))] = grid + chords;
            labels[static_cast<std::size_t>(id(j, k))] =
                "(" + std::to_string(j) + "," + std::to_string(k) + ")";
        }

    GraphConfig cfg;
    cfg.window_note = "family=grid_chords(" + std::to_string(max_j) + "," +
                      std::to_string(max_k) + ") seed=0 margin=window-edge";
    cfg.full_degree = std::move(full_degree);
    cfg.labels = std::move(labels);
    return {Graph(static_cast<int>(n), edges, std::move(cfg)), max_j, max_k};
}

/// Window [-k_max, k_max] of the integer line.
struct LineWindow {
    Graph graph;
    int k_max;

    VertexId id(int j) const {
        if (j < -k_max || j > k_max) throw input_error("line label out of window");
        return static_cast<VertexId>(j + k_max);
    }
    int label_of(VertexId v) const { return static_cast<int>(v) - k_max; }
};

inline LineWindow make_line(int k_max) {
    if (k_max < 1) throw input_error("line: k_max must be >= 1");
    const std::size_t n = 2 * static_cast<std::size_t>(k_max) + 1;
    detail::check_budget(n, n - 1);
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (std::size_t i = 0; i + 1 < n; ++i)
        edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(i + 1));
    std::vector<int> full_degree(n, 2);
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i)
        labels[i] = std::to_string(static_cast<int>(i) - k_max);
    GraphConfig cfg;
    cfg.degree_bound = 1;
    cfg.window_note = "family=line(" + std::to_string(k_max) + ") seed=0 margin=window-edge";
    cfg.is_tree = true;
    cfg.full_degree = std::move(full_degree);
    cfg.labels = std::move(labels);
    return {Graph(static_cast<int>(n), edges, std::move(cfg)), k_max};
}

/// Tree window hanging from a single top vertex: the top's parent and the
/// children of depth-`depth` vertices are cut, so those vertices carry
/// truncated flags.
struct TreeWindow {
    Graph graph;
    VertexId top = 0;
    int depth = 0;
};

inline TreeWindow make_homogeneous_tree(int b, int depth) {
    if (b < 1) throw input_error("homogeneous_tree: b must be >= 1");
    if (depth < 1) throw input_error("homogeneous_tree: depth must be >= 1");
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<std::string> labels{"0"};
    std::deque<std::pair<VertexId, int>> queue{{0, 0}};
    VertexId next = 1;
    while (!queue.empty()) {
        auto [v, d] = queue.front();
        queue.pop_front();
        if (d == depth) continue;
        for (int c = 0; c < b; ++c) {
            VertexId child = next++;
            edges.emplace_back(v, child);
            labels.push_back(labels[static_cast<std::size_t>(v)] + "." + std::to_string(c));
            queue.emplace_back(child, d + 1);
            detail::check_budget(static_cast<std::size_t>(next), edges.size());
        }
    }
    GraphConfig cfg;
    cfg.degree_bound = b;
    cfg.window_note = "family=homogeneous_tree(" + std::to_string(b) + "," +
                      std::to_string(depth) + ") seed=0 margin=frontier";
    cfg.is_tree = true;
    cfg.full_degree.assign(static_cast<std::size_t>(next), b + 1);
    cfg.labels = std::move(labels);
    return {Graph(static_cast<int>(next), edges, std::move(cfg)), 0, depth};
}

/// Random tree window: every vertex gets between 1 and b children (the
/// infinite tree has 2 <= deg <= b+1), cut at `depth` or at the vertex
/// budget. Budget cuts are window cuts: the vertex is flagged truncated.
inline TreeWindow make_random_tree(int b, int depth, std::uint64_t seed,
                                   std::size_t max_vertices = 20'000) {
    if (b < 1) throw input_error("random_tree: b must be >= 1");
    if (depth < 1) throw input_error("random_tree: depth must be >= 1");
    Rng r(derive_seed(seed, 17));
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<int> child_count{0};
    std::vector<char> cut{0};
    std::vector<std::string> labels{"0"};
    std::deque<std::pair<VertexId, int>> queue{{0, 0}};
    VertexId next = 1;
    while (!queue.empty()) {
        auto [v, d] = queue.front();
        queue.pop_front();
        if (d == depth || static_cast<std::size_t>(next) + static_cast<std::size_t>(b) > max_vertices) {
            cut[static_cast<std::size_t>(v)] = 1; // depth or budget cut = window cut
            continue;
        }
        int children = static_cast<int>(r.uniform_int(1, b));
        for (int c = 0; c < children; ++c) {
            VertexId child = next++;
            edges.emplace_back(v, child);
            child_count.push_back(0);
            cut.push_back(0);
            ++child_count[static_cast<std::size_t>(v)];
            labels.push_back(labels[static_cast<std::size_t>(v)] + "." + std::to_string(c));
            queue.emplace_back(child, d + 1);
        }
    }
    if (next < 2) throw input_error("random_tree: degenerate window");
    // every vertex of the infinite tree has a parent; cut vertices have at
    // least one child beyond the window
    std::vector<int> full_degree(static_cast<std::size_t>(next));
    for (VertexId v = 0; v < next; ++v)
        full_degree[static_cast<std::size_t>(v)] =
            child_count[static_cast<std::size_t>(v)] + 1 + (cut[static_cast<std::size_t>(v)] ? 1 : 0);
    GraphConfig cfg;
    cfg.degree_bound = b;
    cfg.window_note = "family=random_tree(" + std::to_string(b) + "," + std::to_string(depth) +
                      ") seed=" + std::to_string(seed) + " margin=frontier";
    cfg.is_tree = true;
    cfg.full_degree = std::move(full_degree);
    cfg.labels = std::move(labels);
    return {Graph(static_cast<int>(next), edges, std::move(cfg)), 0, depth};
}

/// Ball-shaped window of the (b+1)-homogeneous tree: every vertex within
/// `radius` of a center. The top of the window is the ancestor `radius`
/// levels above the center. Keeps deep ball constructions at O(b^radius)
/// vertices instead of the O(b^(2 radius)) a full-depth window would need.
struct TreeBallWindow {
    Graph graph;
    VertexId top = 0;
    VertexId center = 0;
    int radius = 0;
};

inline TreeBallWindow make_tree_ball(int b, int radius) {
    if (b < 1) throw input_error("tree_ball: b must be >= 1");
    if (radius < 1) throw input_error("tree_ball: radius must be >= 1");
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<std::string> labels{"c"};
    // (vertex, distance from center, on the upward geodesic)
    std::deque<std::tuple<VertexId, int, bool>> queue{{0, 0, true}};
    VertexId next = 1;
    VertexId top = 0;
    while (!queue.empty()) {
        auto [v, d, on_chain] = queue.front();
        queue.pop_front();
        if (d == radius) continue; // neighbors beyond the ball are cut
        // the infinite tree gives every vertex b+1 neighbors, one of which
        // is the BFS predecessor (none for the center)
        int to_add = (d == 0) ? b + 1 : b;
        for (int c = 0; c < to_add; ++c) {
            VertexId nb = next++;
            edges.emplace_back(v, nb);
            bool up = on_chain && c == 0; // index 0 continues toward the top
            if (up) top = nb;
            labels.push_back(labels[static_cast<std::size_t>(v)] +
                             (up ? ".u" : "." + std::to_string(c)));
            queue.emplace_back(nb, d + 1, up);
            detail::check_budget(static_cast<std::size_t>(next), edges.size());
        }
    }
    GraphConfig cfg;
    cfg.degree_bound = b;
    cfg.window_note = "family=tree_ball(" + std::to_string(b) + "," + std::to_string(radius) +
                      ") seed=0 margin=ball";
    cfg.is_tree = true;
    cfg.full_degree.assign(static_cast<std::size_t>(next), b + 1);
    cfg.labels = std::move(labels);
    return {Graph(static_cast<int>(next), edges, std::move(cfg)), top, 0, radius};
}

/// Plain cycle; a finite graph, not a window (nothing is truncated).
inline Graph make_cycle(int n) {
    if (n < 3) throw input_error("cycle: n must be >= 3");
    detail::check_budget(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (int i = 0; i < n; ++i)
        edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % n));
    GraphConfig cfg;
    cfg.degree_bound = 1;
    cfg.window_note = "family=cycle(" + std::to_string(n) + ") seed=0 margin=none";
    return Graph(n, edges, std::move(cfg));
}

/// Random connected graph with degree <= b+1: a random attachment tree plus
/// extra random edges that respect the bound. Used by the verification
/// suites; not one of the named window families.
inline Graph make_random_graph(int n, int b, int extra_edges, std::uint64_t seed) {
    if (n < 2) throw input_error("random_graph: n must be >= 2");
    if (b < 1) throw input_error("random_graph: b must be >= 1");
    Rng r(derive_seed(seed, 23));
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    for (VertexId v = 1; v < n; ++v) {
        VertexId parent = kUnreached;
        for (int attempt = 0; attempt < 64 && parent == kUnreached; ++attempt) {
            VertexId cand = static_cast<VertexId>(r.uniform_int(0, v - 1));
            if (degree[static_cast<std::size_t>(cand)] < b) parent = cand;
        }
        if (parent == kUnreached)
            for (VertexId cand = 0; cand < v && parent == kUnreached; ++cand)
                if (degree[static_cast<std::size_t>(cand)] < b) parent = cand;
        if (parent == kUnreached) throw input_error("random_graph: bound too tight for n");
        edges.emplace_back(parent, v);
        ++degree[static_cast<std::size_t>(parent)];
        ++degree[static_cast<std::size_t>(v)];
    }
    auto has_edge = [&](VertexId u, VertexId v) {
        for (auto [a, c] : edges)
            if ((a == u && c == v) || (a == v && c == u)) return true;
        return false;
    };
    for (int e = 0; e < extra_edges; ++e) {
        for (int attempt = 0; attempt < 32; ++attempt) {
            VertexId u = static_cast<VertexId>(r.uniform_int(0, n - 1));
            VertexId v = static_cast<VertexId>(r.uniform_int(0, n - 1));
            if (u == v || has_edge(u, v)) continue;
            if (degree[static_cast<std::size_t>(u)] > b || degree[static_cast<std::size_t>(v)] > b)
                continue;
            edges.emplace_back(u, v);
            ++degree[static_cast<std::size_t>(u)];
            ++degree[static_cast<std::size_t>(v)];
            break;
        }
    }
    GraphConfig cfg;
    cfg.degree_bound = b;
    cfg.window_note = "family=random_graph(" + std::to_string(n) + "," + std::to_string(b) + "," +
                      std::to_string(extra_edges) + ") seed=" + std::to_string(seed) +
                      " margin=none";
    return Graph(n, edges, std::move(cfg));
}

/// Family dispatcher for the CLI: "grid_chords:J,K", "line:k",
/// "homogeneous_tree:b,depth", "random_tree:b,depth", "cycle:n".
inline Graph generate(const std::string& family, std::uint64_t seed) {
    auto colon = family.find(':');
    std::string name = family.substr(0, colon);
    std::vector<long> args;
    if (colon != std::string::npos) {
        std::string rest = family.substr(colon + 1);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            std::size_t comma = rest.find(',', pos);
            if (comma == std::string::npos) comma = rest.size();
            try {
                args.push_back(std::stol(rest.substr(pos, comma - pos)));
            } catch (const std::exception&) {
                throw input_error("generate: bad family argument in '" + family + "'");
            }
            pos = comma + 1;
        }
    }
    auto want = [&](std::size_t k) {
        if (args.size() != k)
            throw input_error("generate: family '" + name + "' expects " + std::to_string(k) +
                              " argument(s)");
    };
    if (name == "grid_chords") {
        want(2);
        return make_grid_chords(static_cast<int>(args[0]), static_cast<int>(args[1])).graph;
    }
    if (name == "line") {
        want(1);
        return make_line(static_cast<int>(args[0])).graph;
    }
    if (name == "homogeneous_tree") {
        want(2);
        return make_homogeneous_tree(static_cast<int>(args[0]), static_cast<int>(args[1])).graph;
    }
    if (name == "random_tree") {
        want(2);
        return make_random_tree(static_cast<int>(args[0]), static_cast<int>(args[1]), seed).graph;
    }
    if (name == "cycle") {
        want(1);
        return make_cycle(static_cast<int>(args[0]));
    }
    throw input_error("generate: unknown family '" + name + "'");
}

} // namespace poincare
