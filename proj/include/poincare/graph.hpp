#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "poincare/errors.hpp"

namespace poincare {

using VertexId = std::int32_t;

inline constexpr int kUnreached = -1;

struct GraphConfig {
    // deg(x) <= degree_bound + 1 for every vertex when set
    std::optional<int> degree_bound;
    // free text describing which infinite graph this window represents
    std::string window_note;
    bool is_tree = false;
    // degree of each vertex in the infinite graph; empty means the window is
    // the whole graph. A vertex with full_degree > window degree is
    // truncated: metric queries must stay clear of it.
    std::vector<int> full_degree;
    // optional structured labels, one per vertex (e.g. "(j,k)" or a tree path)
    std::vector<std::string> labels;
};

/// A finite window of an infinite, locally finite, connected, undirected
/// graph. Immutable after construction; all queries are pure.
class Graph {
public:
    Graph(int vertex_count, const std::vector<std::pair<VertexId, VertexId>>& edges,
          GraphConfig cfg = {})
        : adj_(static_cast<std::size_t>(check_count(vertex_count))),
          full_degree_(std::move(cfg.full_degree)),
          labels_(std::move(cfg.labels)),
          degree_bound_(cfg.degree_bound),
          window_note_(std::move(cfg.window_note)),
          is_tree_(cfg.is_tree) {
        if (!full_degree_.empty() && full_degree_.size() != adj_.size())
            throw input_error("full_degree does not match vertex count");
        if (!labels_.empty() && labels_.size() != adj_.size())
            throw input_error("labels do not match vertex count");
        for (auto [u, v] : edges) {
            require_vertex(u);
            require_vertex(v);
            if (u == v) throw input_error("self-loop rejected at vertex " + std::to_string(u));
            adj_[static_cast<std::size_t>(u)].push_back(v);
            adj_[static_cast<std::size_t>(v)].push_back(u);
        }
        for (VertexId x = 0; x < vertex_count; ++x) {
            auto& nbrs = adj_[static_cast<std::size_t>(x)];
            std::sort(nbrs.begin(), nbrs.end());
            if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end())
                throw input_error("duplicate edge at vertex " + std::to_string(x));
            if (nbrs.empty())
                throw input_error("isolated vertex " + std::to_string(x));
            int full = full_degree_.empty() ? static_cast<int>(nbrs.size())
                                            : full_degree_[static_cast<std::size_t>(x)];
            if (full < static_cast<int>(nbrs.size()))
                throw input_error("full_degree below window degree at vertex " + std::to_string(x));
            if (degree_bound_ && full > *degree_bound_ + 1)
                throw input_error("degree bound exceeded at vertex " + std::to_string(x));
        }
        edge_count_ = edges.size();
        check_connected();
        if (is_tree_ && edge_count_ != adj_.size() - 1)
            throw input_error("graph marked as tree has cycles");
    }

    int size() const { return static_cast<int>(adj_.size()); }
    std::size_t edge_count() const { return edge_count_; }
    bool contains(VertexId x) const { return x >= 0 && x < size(); }
    const std::vector<VertexId>& neighbors(VertexId x) const {
        return adj_[static_cast<std::size_t>(x)];
    }
    int degree(VertexId x) const { return static_cast<int>(neighbors(x).size()); }
    int full_degree(VertexId x) const {
        return full_degree_.empty() ? degree(x) : full_degree_[static_cast<std::size_t>(x)];
    }
    // neighbors of x missing from this window
    int missing_count(VertexId x) const { return full_degree(x) - degree(x); }
    bool truncated(VertexId x) const { return missing_count(x) > 0; }
    std::optional<int> degree_bound() const { return degree_bound_; }
    const std::string& window_note() const { return window_note_; }
    bool is_tree() const { return is_tree_; }
    const std::string& label(VertexId x) const {
        static const std::string empty;
        if (labels_.empty()) return empty;
        return labels_[static_cast<std::size_t>(x)];
    }
    bool has_labels() const { return !labels_.empty(); }

    // sorted "u v" pairs with u < v
    std::vector<std::pair<VertexId, VertexId>> edges() const {
        std::vector<std::pair<VertexId, VertexId>> out;
        out.reserve(edge_count_);
        for (VertexId u = 0; u < size(); ++u)
            for (VertexId v : neighbors(u))
                if (u < v) out.emplace_back(u, v);
        return out;
    }

private:
    static int check_count(int n) {
        if (n <= 0) throw input_error("graph needs at least one vertex");
        return n;
    }
    void require_vertex(VertexId x) const {
        if (!contains(x)) throw input_error("vertex " + std::to_string(x) + " not in graph");
    }
    void check_connected() const {
        std::vector<char> seen(adj_.size(), 0);
        std::vector<VertexId> stack{0};
        seen[0] = 1;
        std::size_t reached = 1;
        while (!stack.empty()) {
            VertexId x = stack.back();
            stack.pop_back();
            for (VertexId y : neighbors(x))
                if (!seen[static_cast<std::size_t>(y)]) {
                    seen[static_cast<std::size_t>(y)] = 1;
                    ++reached;
                    stack.push_back(y);
                }
        }
        if (reached != adj_.size()) throw input_error("window graph is not connected");
    }

    std::vector<std::vector<VertexId>> adj_;
    std::vector<int> full_degree_;
    std::vector<std::string> labels_;
    std::optional<int> degree_bound_;
    std::string window_note_;
    bool is_tree_ = false;
    std::size_t edge_count_ = 0;
};

/// BFS distances from source, exact within the window. Vertices beyond
/// cutoff (when cutoff >= 0) are left at kUnreached.
inline std::vector<int> distances(const Graph& g, VertexId source, int cutoff = -1) {
    if (!g.contains(source)) throw input_error("distances: source not in graph");
    std::vector<int> dist(static_cast<std::size_t>(g.size()), kUnreached);
    dist[static_cast<std::size_t>(source)] = 0;
    std::queue<VertexId> q;
    q.push(source);
    while (!q.empty()) {
        VertexId x = q.front();
        q.pop();
        int dx = dist[static_cast<std::size_t>(x)];
        if (cutoff >= 0 && dx >= cutoff) continue;
        for (VertexId y : g.neighbors(x))
            if (dist[static_cast<std::size_t>(y)] == kUnreached) {
                dist[static_cast<std::size_t>(y)] = dx + 1;
                q.push(y);
            }
    }
    return dist;
}

/// A finite vertex set together with its metric facts and its halo
/// (the members plus every ambient neighbor of a member).
struct Region {
    std::vector<VertexId> members;   // sorted
    std::vector<VertexId> halo;      // sorted, contains members
    int diam = 0;                    // ambient graph distance
    double half_diam_r = 0.0;        // diam / 2
    bool connected = false;
    bool quasiconvex = false;
    // pair violating the quasiconvexity defect, when quasiconvex is false
    std::optional<std::pair<VertexId, VertexId>> witness;

    bool is_member(VertexId x) const {
        return std::binary_search(members.begin(), members.end(), x);
    }
    bool in_halo(VertexId x) const {
        return std::binary_search(halo.begin(), halo.end(), x);
    }
    std::size_t size() const { return members.size(); }
};

struct ClassifyOptions {
    // skip the tree shortcuts (used by tests to cross-check them)
    bool force_generic = false;
};

namespace detail {

// BFS from src that stops as soon as all `pending` targets have been seen.
// Returns the max distance over targets. `member` marks targets.
inline int eccentricity_over(const Graph& g, VertexId src, const std::vector<char>& member,
                             std::size_t target_count, std::vector<int>& dist) {
    dist.assign(static_cast<std::size_t>(g.size()), kUnreached);
    dist[static_cast<std::size_t>(src)] = 0;
    std::queue<VertexId> q;
    q.push(src);
    std::size_t found = member[static_cast<std::size_t>(src)] ? 1 : 0;
    int ecc = 0;
    while (!q.empty() && found < target_count) {
        VertexId x = q.front();
        q.pop();
        int dx = dist[static_cast<std::size_t>(x)];
        for (VertexId y : g.neighbors(x)) {
            auto yi = static_cast<std::size_t>(y);
            if (dist[yi] != kUnreached) continue;
            dist[yi] = dx + 1;
            if (member[yi]) {
                ecc = dx + 1;
                if (++found == target_count) break;
            }
            q.push(y);
        }
    }
    if (found < target_count) throw input_error("window graph is not connected");
    return ecc;
}

// BFS restricted to the induced subgraph on `member`.
inline void induced_distances(const Graph& g, VertexId src, const std::vector<char>& member,
                              std::vector<int>& dist) {
    dist.assign(static_cast<std::size_t>(g.size()), kUnreached);
    dist[static_cast<std::size_t>(src)] = 0;
    std::queue<VertexId> q;
    q.push(src);
    while (!q.empty()) {
        VertexId x = q.front();
        q.pop();
        int dx = dist[static_cast<std::size_t>(x)];
        for (VertexId y : g.neighbors(x)) {
            auto yi = static_cast<std::size_t>(y);
            if (!member[yi] || dist[yi] != kUnreached) continue;
            dist[yi] = dx + 1;
            q.push(y);
        }
    }
}

// On a tree the farthest member from any member is an endpoint of a
// member-diametral pair, so two sweeps give the exact ambient diameter.
inline int tree_member_diameter(const Graph& g, const std::vector<VertexId>& members,
                                const std::vector<char>& member_mask) {
    std::vector<int> dist;
    VertexId far1 = members.front();
    int best = -1;
    eccentricity_over(g, members.front(), member_mask, members.size(), dist);
    for (VertexId m : members)
        if (dist[static_cast<std::size_t>(m)] > best) {
            best = dist[static_cast<std::size_t>(m)];
            far1 = m;
        }
    eccentricity_over(g, far1, member_mask, members.size(), dist);
    int diam = 0;
    for (VertexId m : members) diam = std::max(diam, dist[static_cast<std::size_t>(m)]);
    return diam;
}

} // namespace detail

/// Compute the metric facts of a vertex set: ambient diameter, connectivity
/// of the induced subgraph, and quasiconvexity (every pair joined inside E
/// by a path of length <= 2*diam). Requires the full halo in the window.
inline Region classify_region(const Graph& g, std::vector<VertexId> members,
                              ClassifyOptions opts = {}) {
    if (members.empty()) throw input_error("classify_region: empty vertex set");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (VertexId x : members) {
        if (!g.contains(x)) throw input_error("classify_region: vertex not in graph");
        if (g.truncated(x))
            throw window_error("halo incomplete: vertex " + std::to_string(x) +
                               " is truncated by the window");
    }

    Region r;
    r.members = std::move(members);
    std::vector<char> mask(static_cast<std::size_t>(g.size()), 0);
    for (VertexId x : r.members) mask[static_cast<std::size_t>(x)] = 1;

    // halo = E together with every ambient neighbor of E
    std::vector<char> halo_mask = mask;
    for (VertexId x : r.members)
        for (VertexId y : g.neighbors(x)) halo_mask[static_cast<std::size_t>(y)] = 1;
    for (VertexId x = 0; x < g.size(); ++x)
        if (halo_mask[static_cast<std::size_t>(x)]) r.halo.push_back(x);

    // connectivity of the induced subgraph
    std::vector<int> ind;
    detail::induced_distances(g, r.members.front(), mask, ind);
    r.connected = true;
    for (VertexId x : r.members)
        if (ind[static_cast<std::size_t>(x)] == kUnreached) {
            r.connected = false;
            r.witness = {r.members.front(), x};
            break;
        }

    // ambient diameter
    const bool tree_path = g.is_tree() && !opts.force_generic;
    std::vector<int> dist;
    if (tree_path) {
        r.diam = detail::tree_member_diameter(g, r.members, mask);
    } else {
        int diam = 0;
        for (VertexId x : r.members) {
            detail::eccentricity_over(g, x, mask, r.members.size(), dist);
            for (VertexId y : r.members) diam = std::max(diam, dist[static_cast<std::size_t>(y)]);
        }
        r.diam = diam;
    }
    r.half_diam_r = r.diam / 2.0;

    if (!r.connected) {
        r.quasiconvex = false; // witness pair already set
        return r;
    }

    if (tree_path) {
        // connected subsets of trees are geodesically convex
        r.quasiconvex = true;
        return r;
    }

    r.quasiconvex = true;
    for (VertexId x : r.members) {
        detail::induced_distances(g, x, mask, ind);
        for (VertexId y : r.members) {
            int d = ind[static_cast<std::size_t>(y)];
            if (d == kUnreached || d > 2 * r.diam) {
                r.quasiconvex = false;
                r.witness = {x, y};
                return r;
            }
        }
    }
    return r;
}

/// Closed ball of the given radius. The window must contain
/// B_{radius+1}(center): every vertex within the radius has to be
/// non-truncated, which also guarantees the distances are exact.
inline Region ball(const Graph& g, VertexId center, int radius) {
    if (!g.contains(center)) throw input_error("ball: center not in graph");
    if (radius < 0) throw input_error("ball: negative radius");
    std::vector<int> dist = distances(g, center, radius + 1);

    Region r;
    for (VertexId x = 0; x < g.size(); ++x) {
        int d = dist[static_cast<std::size_t>(x)];
        if (d == kUnreached) continue;
        if (d <= radius) {
            if (g.truncated(x))
                throw window_error("ball: window too small, vertex " + std::to_string(x) +
                                   " at distance " + std::to_string(d) + " is truncated");
            r.members.push_back(x);
        }
        if (d <= radius + 1) r.halo.push_back(x);
    }

    std::vector<char> mask(static_cast<std::size_t>(g.size()), 0);
    for (VertexId x : r.members) mask[static_cast<std::size_t>(x)] = 1;
    if (g.is_tree()) {
        r.diam = detail::tree_member_diameter(g, r.members, mask);
    } else {
        // pair distances inside a ball never exceed 2*radius
        int diam = 0;
        std::vector<int> d2;
        for (VertexId x : r.members) {
            detail::eccentricity_over(g, x, mask, r.members.size(), d2);
            for (VertexId y : r.members) diam = std::max(diam, d2[static_cast<std::size_t>(y)]);
        }
        r.diam = diam;
    }
    r.half_diam_r = r.diam / 2.0;
    r.connected = true;
    r.quasiconvex = true; // balls are quasiconvex on any graph
    return r;
}

} // namespace poincare
