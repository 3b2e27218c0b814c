#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "poincare/calculus.hpp"
#include "poincare/errors.hpp"
#include "poincare/graph.hpp"
#include "poincare/jacobi.hpp"
#include "poincare/measure.hpp"
#include "poincare/rng.hpp"
#include "poincare/tree.hpp"

namespace poincare {

// Relative tolerance for every inequality verdict.
inline constexpr double kVerdictRelTol = 1e-9;
// Relative tolerance for the certifier bracket lower <= upper.
inline constexpr double kBracketRelTol = 1e-7;
// Enumeration cap for the p = 2 certifier.
inline constexpr int kCertifyMaxEdges = 14;

/// Wire tags for the three proved inequalities (see the CLI/JSON schema).
enum class TheoremTag { quasiconvex, bounded_degree, flow_tree, custom };

inline const char* tag_name(TheoremTag t) {
    switch (t) {
        case TheoremTag::quasiconvex: return "thm21";
        case TheoremTag::bounded_degree: return "cor23";
        case TheoremTag::flow_tree: return "thm41";
        default: return "custom";
    }
}

/// One inequality check: left side, bound * gradient norm, and the verdict.
struct PoincareReport {
    TheoremTag tag = TheoremTag::custom;
    Exponent p = Exponent::finite(1.0);
    double lhs = 0.0;    // ||f - f_E||_p
    double rhs = 0.0;    // bound * ||grad f||_p
    double ratio = 0.0;  // ||f - f_E||_p / ||grad f||_p (0 when both vanish)
    double bound = 0.0;  // the theorem constant times r
    bool pass = false;
    std::string region_note;
    std::uint64_t seed = 0;
};

namespace detail {

inline std::pair<double, double> lhs_and_den(const Graph& g, const VertexFunction& f,
                                             const Region& e, const Measure& m, Exponent p) {
    double mean = weighted_mean(f, e, m);
    std::vector<double> centered, ws;
    centered.reserve(e.members.size());
    ws.reserve(e.members.size());
    for (VertexId x : e.members) {
        centered.push_back(f.at(x) - mean);
        ws.push_back(m.at(x));
    }
    double lhs = lp_norm_values(centered, ws, p);
    double den = lp_norm_values(gradient(g, f, e), ws, p);
    return {lhs, den};
}

inline PoincareReport make_report(TheoremTag tag, Exponent p, double lhs, double den, double bound,
                                  const Region& e) {
    PoincareReport rep;
    rep.tag = tag;
    rep.p = p;
    rep.lhs = lhs;
    rep.bound = bound;
    rep.rhs = bound * den;
    rep.ratio = den > 0.0 ? lhs / den : 0.0;
    rep.pass = lhs <= rep.rhs * (1 + kVerdictRelTol);
    rep.region_note = "|E|=" + std::to_string(e.members.size()) +
                      " diam=" + std::to_string(e.diam);
    return rep;
}

} // namespace detail

/// Bound (mu(E)/alpha)^{1/p} (4r)^{1-1/p} for quasiconvex regions under a
/// measure with lower bound alpha; r = diam/2. For p = inf this is 4r, for
/// p = 1 it is mu(E)/alpha.
inline double quasiconvex_bound(const Region& e, double mass, double alpha, Exponent p) {
    if (!e.quasiconvex) throw precondition_error("quasiconvex_bound: region is not quasiconvex");
    if (!(alpha > 0.0)) throw input_error("quasiconvex_bound: alpha must be positive");
    double r = e.half_diam_r;
    if (p.is_inf()) return 4.0 * r;
    double pp = p.value();
    return std::pow(mass / alpha, 1.0 / pp) * std::pow(4.0 * r, 1.0 - 1.0 / pp);
}

/// Scale-capped constant P_p(R) = 4 (3 beta b^R / (4 alpha))^{1/p} for
/// degree-bounded graphs with alpha <= mu <= beta.
inline double local_poincare_constant(double R, double alpha, double beta, int b, Exponent p) {
    if (b < 1) throw input_error("local_poincare_constant: b must be >= 1");
    if (!(alpha > 0.0) || !(beta >= alpha))
        throw input_error("local_poincare_constant: need 0 < alpha <= beta");
    if (p.is_inf()) return 4.0;
    double pp = p.value();
    return 4.0 * std::pow(3.0 * beta * std::pow(static_cast<double>(b), R) / (4.0 * alpha),
                          1.0 / pp);
}

/// P_p(R) * r. Radii r < 1 are allowed (the estimate is trivial there).
inline double bounded_degree_bound(double R, double r, double alpha, double beta, int b,
                                   Exponent p) {
    return local_poincare_constant(R, alpha, beta, b, p) * r;
}

/// Global flow-measure bound 4r on trees.
inline double flow_bound(double r) { return 4.0 * r; }

/// ||f - f_E||_p <= (mu(E)/alpha)^{1/p} (4r)^{1-1/p} ||grad f||_p on a
/// quasiconvex region with mu bounded below.
inline PoincareReport check_quasiconvex(const Graph& g, const VertexFunction& f, const Region& e,
                                        const Measure& m, Exponent p) {
    if (!e.quasiconvex)
        throw precondition_error("thm21 check: hypothesis violated: E is not quasiconvex");
    if (!m.alpha())
        throw precondition_error("thm21 check: hypothesis violated: mu has no lower bound alpha");
    auto [lhs, den] = detail::lhs_and_den(g, f, e, m, p);
    double bound = quasiconvex_bound(e, region_mass(m, e), *m.alpha(), p);
    return detail::make_report(TheoremTag::quasiconvex, p, lhs, den, bound, e);
}

/// ||f - f_E||_p <= P_p(R) r ||grad f||_p on degree-bounded graphs with
/// alpha <= mu <= beta. R defaults to diam(E).
inline PoincareReport check_bounded_degree(const Graph& g, const VertexFunction& f,
                                           const Region& e, const Measure& m, Exponent p,
                                           std::optional<double> R_cap = std::nullopt) {
    if (!g.degree_bound())
        throw precondition_error("cor23 check: hypothesis violated: graph has no degree bound");
    if (!m.alpha() || !m.beta())
        throw precondition_error("cor23 check: hypothesis violated: mu is not in M_alpha^beta");
    if (!e.quasiconvex)
        throw precondition_error("cor23 check: hypothesis violated: E is not quasiconvex");
    double R = R_cap.value_or(static_cast<double>(e.diam));
    if (R < e.diam)
        throw precondition_error("cor23 check: hypothesis violated: diam(E) exceeds the cap R");
    auto [lhs, den] = detail::lhs_and_den(g, f, e, m, p);
    double bound =
        bounded_degree_bound(R, e.half_diam_r, *m.alpha(), *m.beta(), *g.degree_bound(), p);
    return detail::make_report(TheoremTag::bounded_degree, p, lhs, den, bound, e);
}

/// ||f - f_E||_p <= 4r ||grad f||_p for flow measures on trees, connected E.
inline PoincareReport check_flow_tree(const RootedTree& t, const VertexFunction& f, const Region& e,
                                      const FlowMeasure& m, Exponent p) {
    if (!e.connected)
        throw precondition_error("thm41 check: hypothesis violated: E is not connected");
    for (VertexId x : e.members)
        if (t.frontier(x))
            throw window_error("thm41 check: E touches the Kirchhoff frontier at vertex " +
                               std::to_string(x));
    auto [lhs, den] = detail::lhs_and_den(t.graph(), f, e, m, p);
    return detail::make_report(TheoremTag::flow_tree, p, lhs, den, flow_bound(e.half_diam_r), e);
}

// ---------------------------------------------------------------------------
// Optimal-constant estimation
// ---------------------------------------------------------------------------

/// Lower (attained by the witness) and, for the p = 2 certifier, a relaxation
/// upper bound for the Poincare constant of (E, mu, p).
struct ConstantEstimate {
    double lower = 0.0;
    std::optional<double> upper;
    VertexFunction witness;
    int iterations = 0;
    int restarts = 0;
    std::uint64_t seed = 0;

    ConstantEstimate() : witness(1) {}
};

namespace detail {

// Variables of the reduced maximization: the members of E followed by the
// halo vertices with >= 2 members as neighbors. Halo vertices with a single
// member neighbor take that member's value at the optimum, which removes
// their edge from the gradient; they are reattached when building the
// witness.
struct ReducedProblem {
    const Graph* g = nullptr;
    const Region* e = nullptr;
    std::vector<VertexId> vars;
    int n_members = 0;
    std::vector<int> var_index;               // window vertex -> var position or -1
    std::vector<std::pair<int, int>> edges;   // var positions; first < n_members
    std::vector<double> mu;                   // normalized member weights (sum 1)
    std::vector<std::vector<int>> member_edges; // per member, incident edge ids
};

inline ReducedProblem reduce_problem(const Graph& g, const Region& e, const Measure& m) {
    ReducedProblem rp;
    rp.g = &g;
    rp.e = &e;
    rp.var_index.assign(static_cast<std::size_t>(g.size()), -1);
    for (VertexId x : e.members) {
        rp.var_index[static_cast<std::size_t>(x)] = static_cast<int>(rp.vars.size());
        rp.vars.push_back(x);
    }
    rp.n_members = static_cast<int>(rp.vars.size());
    for (VertexId h : e.halo) {
        if (e.is_member(h)) continue;
        int member_neighbors = 0;
        for (VertexId y : g.neighbors(h))
            if (e.is_member(y)) ++member_neighbors;
        if (member_neighbors >= 2) {
            rp.var_index[static_cast<std::size_t>(h)] = static_cast<int>(rp.vars.size());
            rp.vars.push_back(h);
        }
    }
    rp.member_edges.assign(static_cast<std::size_t>(rp.n_members), {});
    for (int i = 0; i < rp.n_members; ++i) {
        VertexId x = rp.vars[static_cast<std::size_t>(i)];
        for (VertexId y : g.neighbors(x)) {
            int j = rp.var_index[static_cast<std::size_t>(y)];
            if (j < 0) continue; // pruned halo vertex, contributes nothing
            if (j < rp.n_members && !(x < y)) continue; // member-member edge once
            int eid = static_cast<int>(rp.edges.size());
            rp.edges.emplace_back(i, j);
            rp.member_edges[static_cast<std::size_t>(i)].push_back(eid);
            if (j < rp.n_members) rp.member_edges[static_cast<std::size_t>(j)].push_back(eid);
        }
    }
    double mass = 0.0;
    for (VertexId x : e.members) mass += m.at(x);
    rp.mu.reserve(static_cast<std::size_t>(rp.n_members));
    for (VertexId x : e.members) rp.mu.push_back(m.at(x) / mass);
    return rp;
}

inline void member_gradients(const ReducedProblem& rp, const std::vector<double>& f,
                             std::vector<double>& grad) {
    grad.assign(static_cast<std::size_t>(rp.n_members), 0.0);
    for (std::size_t eid = 0; eid < rp.edges.size(); ++eid) {
        auto [u, v] = rp.edges[eid];
        double d = std::abs(f[static_cast<std::size_t>(u)] - f[static_cast<std::size_t>(v)]);
        grad[static_cast<std::size_t>(u)] += d;
        if (v < rp.n_members) grad[static_cast<std::size_t>(v)] += d;
    }
}

inline double norm_members(const ReducedProblem& rp, const std::vector<double>& vals, Exponent p) {
    if (p.is_inf()) {
        double mx = 0.0;
        for (double v : vals) mx = std::max(mx, std::abs(v));
        return mx;
    }
    double pp = p.value();
    double s = 0.0;
    if (pp == 1.0) {
        for (std::size_t i = 0; i < vals.size(); ++i) s += std::abs(vals[i]) * rp.mu[i];
        return s;
    }
    if (pp == 2.0) {
        for (std::size_t i = 0; i < vals.size(); ++i) s += vals[i] * vals[i] * rp.mu[i];
        return std::sqrt(s);
    }
    for (std::size_t i = 0; i < vals.size(); ++i) s += std::pow(std::abs(vals[i]), pp) * rp.mu[i];
    return std::pow(s, 1.0 / pp);
}

inline double eval_ratio(const ReducedProblem& rp, const std::vector<double>& f, Exponent p,
                         std::vector<double>& scratch) {
    double mean = 0.0;
    for (int i = 0; i < rp.n_members; ++i)
        mean += f[static_cast<std::size_t>(i)] * rp.mu[static_cast<std::size_t>(i)];
    std::vector<double> centered(static_cast<std::size_t>(rp.n_members));
    for (int i = 0; i < rp.n_members; ++i) centered[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(i)] - mean;
    double lhs = norm_members(rp, centered, p);
    member_gradients(rp, f, scratch);
    double den = norm_members(rp, scratch, p);
    if (den == 0.0) return lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return lhs / den;
}

// One-dimensional convex minimization of the gradient norm over a single
// halo variable; the optimum lies in the hull of the neighbor values.
inline void optimize_halo_vars(const ReducedProblem& rp, std::vector<double>& f, Exponent p) {
    if (static_cast<int>(rp.vars.size()) == rp.n_members) return;
    std::vector<double> grad;
    for (int h = rp.n_members; h < static_cast<int>(rp.vars.size()); ++h) {
        VertexId hv = rp.vars[static_cast<std::size_t>(h)];
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (VertexId y : rp.g->neighbors(hv)) {
            int j = rp.var_index[static_cast<std::size_t>(y)];
            if (j >= 0 && j < rp.n_members) {
                lo = std::min(lo, f[static_cast<std::size_t>(j)]);
                hi = std::max(hi, f[static_cast<std::size_t>(j)]);
            }
        }
        if (!(lo <= hi)) continue;
        auto den_at = [&](double z) {
            f[static_cast<std::size_t>(h)] = z;
            member_gradients(rp, f, grad);
            return norm_members(rp, grad, p);
        };
        double a = lo, b = hi;
        for (int it = 0; it < 48 && b - a > 1e-14 * (1 + std::abs(a) + std::abs(b)); ++it) {
            double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
            if (den_at(m1) <= den_at(m2))
                b = m2;
            else
                a = m1;
        }
        f[static_cast<std::size_t>(h)] = 0.5 * (a + b);
    }
}

// Re-center to zero mean and rescale to unit gradient norm. Returns false
// when the function is flat.
inline bool renormalize(const ReducedProblem& rp, std::vector<double>& f, Exponent p,
                        std::vector<double>& scratch) {
    double mean = 0.0;
    for (int i = 0; i < rp.n_members; ++i)
        mean += f[static_cast<std::size_t>(i)] * rp.mu[static_cast<std::size_t>(i)];
    for (double& v : f) v -= mean;
    member_gradients(rp, f, scratch);
    double den = norm_members(rp, scratch, p);
    if (!(den > 0.0) || !std::isfinite(den)) return false;
    for (double& v : f) v /= den;
    return true;
}

// Supergradient of ||f - f_E||_p at a mean-zero point; zero on halo vars.
// Sign 0 is chosen at kinks.
inline void lhs_subgradient(const ReducedProblem& rp, const std::vector<double>& f,
                            Exponent p, std::vector<double>& g) {
    g.assign(rp.vars.size(), 0.0);
    if (p.is_inf()) {
        int arg = 0;
        double best = -1.0;
        for (int i = 0; i < rp.n_members; ++i) {
            double a = std::abs(f[static_cast<std::size_t>(i)]);
            if (a > best) {
                best = a;
                arg = i;
            }
        }
        double s = f[static_cast<std::size_t>(arg)];
        g[static_cast<std::size_t>(arg)] = s > 0.0 ? 1.0 : (s < 0.0 ? -1.0 : 0.0);
        return;
    }
    double pp = p.value();
    for (int i = 0; i < rp.n_members; ++i) {
        double v = f[static_cast<std::size_t>(i)];
        double sgn = v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
        double mag = pp == 1.0 ? 1.0 : std::pow(std::abs(v), pp - 1.0);
        g[static_cast<std::size_t>(i)] = sgn * mag * rp.mu[static_cast<std::size_t>(i)];
    }
}

struct AscentResult {
    double ratio = 0.0;
    std::vector<double> f;
};

// Projected supergradient ascent of the centered norm on the unit-gradient
// manifold, keeping the best exact ratio seen along the way.
inline AscentResult ascend(const ReducedProblem& rp, std::vector<double> f, Exponent p,
                           int iters) {
    std::vector<double> scratch, g;
    AscentResult best;
    optimize_halo_vars(rp, f, p);
    if (!renormalize(rp, f, p, scratch)) return best;
    best.ratio = eval_ratio(rp, f, p, scratch);
    best.f = f;
    const double step0 = 0.5;
    for (int t = 1; t <= iters; ++t) {
        lhs_subgradient(rp, f, p, g);
        double gn = 0.0;
        for (double v : g) gn += v * v;
        gn = std::sqrt(gn);
        if (!(gn > 0.0)) break;
        double eta = step0 / std::sqrt(static_cast<double>(t));
        for (std::size_t i = 0; i < f.size(); ++i) f[i] += eta * g[i] / gn;
        optimize_halo_vars(rp, f, p);
        if (!renormalize(rp, f, p, scratch)) break;
        double ratio = eval_ratio(rp, f, p, scratch);
        if (ratio > best.ratio) {
            best.ratio = ratio;
            best.f = f;
        }
    }
    return best;
}

// --- p = 2 sign-pattern relaxation ----------------------------------------

// Quadratic form of ||f - f_E||^2_{L^2(E,mu)} over the reduced variables.
inline SymMatrix centered_form(const ReducedProblem& rp) {
    SymMatrix a(static_cast<int>(rp.vars.size()));
    for (int i = 0; i < rp.n_members; ++i) {
        for (int j = 0; j < rp.n_members; ++j) {
            double v = -rp.mu[static_cast<std::size_t>(i)] * rp.mu[static_cast<std::size_t>(j)];
            if (i == j) v += rp.mu[static_cast<std::size_t>(i)];
            a.at(i, j) = v;
        }
    }
    return a;
}

// Quadratic form of the sign-pattern gradient surrogate: rows are the
// per-member aggregates sum_e s_e (f_u - f_v).
inline SymMatrix sign_form(const ReducedProblem& rp, const std::vector<int>& signs) {
    const int n = static_cast<int>(rp.vars.size());
    SymMatrix q(n);
    std::vector<double> row(static_cast<std::size_t>(n));
    for (int i = 0; i < rp.n_members; ++i) {
        std::fill(row.begin(), row.end(), 0.0);
        for (int eid : rp.member_edges[static_cast<std::size_t>(i)]) {
            auto [u, v] = rp.edges[static_cast<std::size_t>(eid)];
            double s = static_cast<double>(signs[static_cast<std::size_t>(eid)]);
            row[static_cast<std::size_t>(u)] += s;
            row[static_cast<std::size_t>(v)] -= s;
        }
        double w = rp.mu[static_cast<std::size_t>(i)];
        for (int a = 0; a < n; ++a) {
            if (row[static_cast<std::size_t>(a)] == 0.0) continue;
            for (int b = 0; b < n; ++b)
                q.at(a, b) += w * row[static_cast<std::size_t>(a)] * row[static_cast<std::size_t>(b)];
        }
    }
    return q;
}

struct RelaxSweep {
    // every sign pattern upper-bounds the constant: ||grad f||^2 is the max
    // of the pattern forms, so the quotient against any single pattern
    // dominates the true ratio. The reported upper is the min over patterns.
    double upper = std::numeric_limits<double>::infinity();
    bool unbounded = true; // stays true when no pattern gives a finite bound
    std::vector<std::vector<double>> candidates; // witness seeds, one per pattern
};

// Enumerate sign patterns (up to global flip) and bound the Rayleigh
// quotient of the centered form against each pattern form.
inline RelaxSweep relax_sweep_p2(const ReducedProblem& rp) {
    RelaxSweep out;
    const int m = static_cast<int>(rp.edges.size());
    const int n = static_cast<int>(rp.vars.size());
    if (m == 0) return out; // no usable edges: nothing bounds the quotient
    SymMatrix a = centered_form(rp);
    double trace_a = 0.0;
    for (int i = 0; i < n; ++i) trace_a += a.at(i, i);
    std::vector<int> signs(static_cast<std::size_t>(m), 1);
    const std::uint64_t patterns = 1ULL << (m - 1); // global flip is a symmetry
    for (std::uint64_t mask = 0; mask < patterns; ++mask) {
        for (int eidx = 1; eidx < m; ++eidx)
            signs[static_cast<std::size_t>(eidx)] = (mask >> (eidx - 1)) & 1ULL ? -1 : 1;
        EigenDecomposition eig = jacobi_eigen(sign_form(rp, signs));
        double lam_max_q = eig.values.back();
        double ker_tol = std::max(lam_max_q, 1.0) * 1e-12;
        // kernel directions carrying centered mass make this pattern's
        // quotient unbounded; the pattern then contributes nothing
        bool degenerate = false;
        std::vector<int> pos;
        for (int k = 0; k < n && !degenerate; ++k) {
            if (eig.values[static_cast<std::size_t>(k)] > ker_tol) {
                pos.push_back(k);
                continue;
            }
            const auto& vec = eig.vecs[static_cast<std::size_t>(k)];
            double qa = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    qa += vec[static_cast<std::size_t>(i)] * a.at(i, j) * vec[static_cast<std::size_t>(j)];
            if (qa > std::max(trace_a, 1e-30) * 1e-9) degenerate = true;
        }
        if (degenerate || pos.empty()) continue;
        const int w = static_cast<int>(pos.size());
        SymMatrix reduced(w);
        for (int ia = 0; ia < w; ++ia) {
            const auto& va = eig.vecs[static_cast<std::size_t>(pos[static_cast<std::size_t>(ia)])];
            double la = eig.values[static_cast<std::size_t>(pos[static_cast<std::size_t>(ia)])];
            for (int ib = ia; ib < w; ++ib) {
                const auto& vb = eig.vecs[static_cast<std::size_t>(pos[static_cast<std::size_t>(ib)])];
                double lb = eig.values[static_cast<std::size_t>(pos[static_cast<std::size_t>(ib)])];
                double s = 0.0;
                for (int i = 0; i < n; ++i) {
                    double ai = 0.0;
                    for (int j = 0; j < n; ++j) ai += a.at(i, j) * vb[static_cast<std::size_t>(j)];
                    s += va[static_cast<std::size_t>(i)] * ai;
                }
                s /= std::sqrt(la * lb);
                reduced.at(ia, ib) = s;
                reduced.at(ib, ia) = s;
            }
        }
        EigenDecomposition red = jacobi_eigen(reduced);
        double lam = std::max(0.0, red.values.back());
        out.upper = std::min(out.upper, lam);
        out.unbounded = false;
        // candidate witness: pull the top reduced vector back
        const auto& u = red.vecs.back();
        std::vector<double> cand(static_cast<std::size_t>(n), 0.0);
        for (int ia = 0; ia < w; ++ia) {
            const auto& va = eig.vecs[static_cast<std::size_t>(pos[static_cast<std::size_t>(ia)])];
            double la = eig.values[static_cast<std::size_t>(pos[static_cast<std::size_t>(ia)])];
            double coeff = u[static_cast<std::size_t>(ia)] / std::sqrt(la);
            for (int i = 0; i < n; ++i) cand[static_cast<std::size_t>(i)] += coeff * va[static_cast<std::size_t>(i)];
        }
        out.candidates.push_back(std::move(cand));
    }
    if (!out.unbounded) out.upper = std::sqrt(out.upper);
    return out;
}

// Extend a reduced solution to a full vertex function: pruned halo vertices
// copy their unique member neighbor.
inline VertexFunction expand_witness(const ReducedProblem& rp, const std::vector<double>& f) {
    VertexFunction out(rp.g->size());
    for (std::size_t i = 0; i < rp.vars.size(); ++i) out.set(rp.vars[i], f[i]);
    for (VertexId h : rp.e->halo) {
        if (rp.var_index[static_cast<std::size_t>(h)] >= 0) continue;
        for (VertexId y : rp.g->neighbors(h))
            if (rp.e->is_member(y)) {
                out.set(h, out.at(y));
                break;
            }
    }
    return out;
}

// Deterministic structured restart shapes: indicator-style splits around
// members, and cone/indicator pairs on sibling branches when a rooted tree
// is available.
inline std::vector<std::vector<double>> structured_candidates(const ReducedProblem& rp,
                                                              const RootedTree* tree) {
    std::vector<std::vector<double>> cands;
    const Graph& g = *rp.g;
    const Region& e = *rp.e;
    std::vector<char> mask(static_cast<std::size_t>(g.size()), 0);
    for (VertexId x : e.members) mask[static_cast<std::size_t>(x)] = 1;
    std::vector<int> ind;
    const int probe_cap = 16;
    int probes = 0;
    for (VertexId v : e.members) {
        if (++probes > probe_cap) break;
        induced_distances(g, v, mask, ind);
        for (int rad : {1, std::max(1, e.diam / 2)}) {
            std::vector<double> f(rp.vars.size(), 0.0);
            for (int i = 0; i < rp.n_members; ++i) {
                int d = ind[static_cast<std::size_t>(rp.vars[static_cast<std::size_t>(i)])];
                f[static_cast<std::size_t>(i)] = (d != kUnreached && d <= rad) ? 1.0 : 0.0;
            }
            cands.push_back(std::move(f));
        }
    }
    // edge cuts: oppose the two sides of an internal edge (the two-triangle
    // split shape); exact on many tiny instances
    std::vector<int> du, dv;
    int edge_probes = 0;
    for (auto [ui, vi] : rp.edges) {
        if (vi >= rp.n_members) continue;
        if (++edge_probes > probe_cap) break;
        induced_distances(g, rp.vars[static_cast<std::size_t>(ui)], mask, du);
        induced_distances(g, rp.vars[static_cast<std::size_t>(vi)], mask, dv);
        std::vector<double> f(rp.vars.size(), 0.0);
        for (int i = 0; i < rp.n_members; ++i) {
            int a = du[static_cast<std::size_t>(rp.vars[static_cast<std::size_t>(i)])];
            int b = dv[static_cast<std::size_t>(rp.vars[static_cast<std::size_t>(i)])];
            if (a == kUnreached || b == kUnreached) continue;
            f[static_cast<std::size_t>(i)] = a < b ? 1.0 : (b < a ? -1.0 : 0.0);
        }
        cands.push_back(std::move(f));
    }
    if (tree != nullptr && e.size() >= 3) {
        // pick the highest member and oppose its two lowest-id branches
        VertexId apex = e.members.front();
        for (VertexId x : e.members)
            if (tree->level(x) > tree->level(apex)) apex = x;
        std::vector<VertexId> branches;
        for (VertexId c : tree->children_of(apex))
            if (e.is_member(c)) branches.push_back(c);
        if (branches.size() >= 2) {
            induced_distances(g, apex, mask, ind);
            auto branch_of = [&](VertexId x) -> VertexId {
                VertexId cur = x;
                while (cur != apex && tree->parent(cur) != apex) cur = tree->parent(cur);
                return cur == apex ? kUnreached : cur;
            };
            std::vector<double> cone(rp.vars.size(), 0.0);
            std::vector<double> flat(rp.vars.size(), 0.0);
            for (int i = 0; i < rp.n_members; ++i) {
                VertexId x = rp.vars[static_cast<std::size_t>(i)];
                if (x == apex) continue;
                VertexId br = branch_of(x);
                int d = ind[static_cast<std::size_t>(x)];
                if (br == branches[0]) {
                    cone[static_cast<std::size_t>(i)] = static_cast<double>(d);
                    flat[static_cast<std::size_t>(i)] = 1.0;
                } else if (br == branches[1]) {
                    cone[static_cast<std::size_t>(i)] = -static_cast<double>(d);
                    flat[static_cast<std::size_t>(i)] = -1.0;
                }
            }
            cands.push_back(std::move(cone));
            cands.push_back(std::move(flat));
        }
    }
    return cands;
}

} // namespace detail

/// Maximize the Poincare quotient over functions on E and its halo by
/// restarted projected supergradient ascent. The returned lower bound is
/// attained by the witness; rerunning poincare_ratio on it reproduces it.
inline ConstantEstimate estimate_constant(const Graph& g, const Region& e, const Measure& m,
                                          Exponent p, std::uint64_t seed, int restarts = 50,
                                          int iters = 200, const RootedTree* tree = nullptr) {
    detail::ReducedProblem rp = detail::reduce_problem(g, e, m);
    ConstantEstimate est;
    est.seed = seed;
    est.restarts = restarts;
    est.iterations = iters;
    if (rp.n_members < 2) {
        est.witness = VertexFunction::constant(g.size(), 0.0);
        est.lower = 0.0;
        return est;
    }

    std::vector<std::vector<double>> candidates = detail::structured_candidates(rp, tree);
    if (p == Exponent::finite(2.0) &&
        static_cast<int>(rp.edges.size()) <= kCertifyMaxEdges) {
        detail::RelaxSweep sweep = detail::relax_sweep_p2(rp);
        for (auto& c : sweep.candidates) candidates.push_back(std::move(c));
    }
    for (int rix = 0; rix < restarts; ++rix) {
        Rng rng(derive_seed(seed, 1000 + static_cast<std::uint64_t>(rix)));
        std::vector<double> f(rp.vars.size());
        for (double& v : f) v = rng.symmetric();
        candidates.push_back(std::move(f));
    }

    double best_ratio = -1.0;
    std::vector<double> best_f;
    for (auto& cand : candidates) {
        detail::AscentResult res = detail::ascend(rp, std::move(cand), p, iters);
        if (!res.f.empty() && res.ratio > best_ratio) {
            best_ratio = res.ratio;
            best_f = std::move(res.f);
        }
    }
    if (best_f.empty()) {
        est.witness = VertexFunction::constant(g.size(), 0.0);
        est.lower = 0.0;
        return est;
    }
    est.witness = detail::expand_witness(rp, best_f);
    est.lower = poincare_ratio(g, est.witness, e, m, p);
    return est;
}

/// Bracket the p = 2 constant: the lower bound from estimate_constant and an
/// upper bound from the edge-sign relaxation, solved exactly by enumeration.
/// Regions with more than kCertifyMaxEdges internal edges are rejected.
inline ConstantEstimate certify_constant_p2(const Graph& g, const Region& e, const Measure& m,
                                            std::uint64_t seed = 0, int restarts = 50,
                                            int iters = 200) {
    detail::ReducedProblem rp = detail::reduce_problem(g, e, m);
    if (static_cast<int>(rp.edges.size()) > kCertifyMaxEdges)
        throw size_error("certify_constant_p2: region has " + std::to_string(rp.edges.size()) +
                         " internal edges (cap " + std::to_string(kCertifyMaxEdges) +
                         "); use estimate_constant");
    ConstantEstimate est = estimate_constant(g, e, m, Exponent::finite(2.0), seed, restarts, iters);
    if (rp.n_members < 2) {
        est.upper = 0.0;
        return est;
    }
    detail::RelaxSweep sweep = detail::relax_sweep_p2(rp);
    est.upper = sweep.unbounded ? std::numeric_limits<double>::infinity() : sweep.upper;
    if (est.lower > *est.upper * (1 + kBracketRelTol))
        throw error("certify_constant_p2: bracket inverted (lower " + std::to_string(est.lower) +
                    " > upper " + std::to_string(*est.upper) + ")");
    return est;
}

/// Least-squares slope of log(value) against log(k).
struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
};

inline SlopeFit fit_slope(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 4) throw input_error("fit_slope: need at least 4 points");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i].first > 0.0)) throw input_error("fit_slope: k values must be positive");
        if (!(points[i].second > 0.0)) throw input_error("fit_slope: values must be positive");
        if (i > 0 && !(points[i].first > points[i - 1].first))
            throw input_error("fit_slope: k values must be strictly increasing");
    }
    const double n = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0;
    for (auto [k, v] : points) {
        sx += std::log(k);
        sy += std::log(v);
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (auto [k, v] : points) {
        double dx = std::log(k) - mx, dy = std::log(v) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (syy > 0.0) {
        double ss_res = syy - sxy * sxy / sxx;
        fit.r_squared = 1.0 - ss_res / syy;
    } else {
        fit.slope = 0.0;
        fit.r_squared = 1.0; // constant data: a flat line fits exactly
    }
    return fit;
}

} // namespace poincare
