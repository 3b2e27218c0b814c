#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "poincare/calculus.hpp"
#include "poincare/engine.hpp"
#include "poincare/errors.hpp"
#include "poincare/generators.hpp"
#include "poincare/graph.hpp"
#include "poincare/io.hpp"
#include "poincare/measure.hpp"
#include "poincare/rng.hpp"
#include "poincare/tree.hpp"

namespace poincare {

// Tolerances for asymptotic verdicts: power laws by log-log slope, the
// log-corrected rate by a bounded-ratio test.
inline constexpr double kSlopeTol = 0.15;
inline constexpr double kSlopeR2Min = 0.98;
inline constexpr double kBoundedRatioMax = 4.0;

struct SweepRow {
    double param = 0.0; // k or r
    Exponent p = Exponent::finite(1.0);
    double lhs = 0.0;
    double denominator = 0.0;
    double normalized = 0.0;
};

struct PVerdict {
    Exponent p = Exponent::finite(1.0);
    double slope = 0.0;
    double r_squared = 0.0;
    double expected_slope = 0.0;
    bool slope_pass = true;
    double bounded_factor = 1.0; // max/min of the compensated quantity
    bool bounded_pass = true;
    bool pass = true;
};

struct SweepResult {
    std::string family;
    std::vector<SweepRow> rows;
    std::vector<PVerdict> verdicts;
    bool pass = true;
    std::vector<std::string> notes;

    std::string to_csv() const {
        CsvWriter csv({"k", "p", "lhs", "denominator", "normalized_ratio"});
        for (const auto& r : rows)
            csv.row({fmt(r.param), r.p.str(), fmt(r.lhs), fmt(r.denominator), fmt(r.normalized)});
        return csv.str();
    }

    Json verdict_json() const {
        Json j;
        j["family"] = family;
        j["pass"] = pass;
        Json vs = Json::array();
        for (const auto& v : verdicts) {
            Json jv;
            jv["p"] = v.p.str();
            jv["slope"] = v.slope;
            jv["r_squared"] = v.r_squared;
            jv["expected_slope"] = v.expected_slope;
            jv["slope_pass"] = v.slope_pass;
            jv["bounded_factor"] = v.bounded_factor;
            jv["bounded_pass"] = v.bounded_pass;
            jv["pass"] = v.pass;
            vs.push_back(std::move(jv));
        }
        j["p_verdicts"] = std::move(vs);
        j["notes"] = notes;
        return j;
    }
};

// ---------------------------------------------------------------------------
// Grid-with-chords family (connected but not quasiconvex rows)
// ---------------------------------------------------------------------------

struct Ex31Data {
    GridChordsWindow window;
    Region region;         // E_k: row k, columns 0..k
    VertexFunction f;      // f(j,k) = j on the whole window
    Measure counting;
    int k;
};

/// Build E_k inside its margin window (rows 0..k+2, columns 0..k+5) and
/// verify the ambient diameter is stable under a margin+2 re-run.
inline Ex31Data make_ex31_instance(int k, bool stability_check = true) {
    if (k < 4 || k % 2 != 0) throw input_error("ex31: k must be even and >= 4");
    GridChordsWindow w = make_grid_chords(k + 5, k + 2);
    std::vector<VertexId> members;
    for (int j = 0; j <= k; ++j) members.push_back(w.id(j, k));
    Region e = classify_region(w.graph, members);
    if (stability_check) {
        GridChordsWindow w2 = make_grid_chords(k + 7, k + 4);
        std::vector<VertexId> members2;
        for (int j = 0; j <= k; ++j) members2.push_back(w2.id(j, k));
        Region e2 = classify_region(w2.graph, members2);
        if (e2.diam != e.diam)
            throw window_error("ex31: diameter not stable under margin growth at k=" +
                               std::to_string(k));
    }
    VertexFunction f(w.graph.size());
    for (VertexId v = 0; v < w.graph.size(); ++v)
        f.set(v, static_cast<double>(w.label_of(v).first));
    Measure cnt = Measure::counting(w.graph.size());
    return {std::move(w), std::move(e), std::move(f), std::move(cnt), k};
}

struct Ex31Result {
    SweepResult sweep;
    bool exact_ok = true;            // closed-form checks below
    std::vector<std::string> exact_notes;
};

/// Sweep the non-quasiconvex rows: normalized ratio
/// ||f - f_E|| / (|E|^{1/p} diam^{1-1/p} ||grad f||), expected slope 1-1/p.
inline Ex31Result ex31_sweep(const std::vector<int>& k_values,
                             const std::vector<Exponent>& p_values) {
    Ex31Result out;
    out.sweep.family = "ex31";
    struct Cached {
        int k;
        double mean, linf_ratio;
        std::vector<double> lhs_by_p, grad_norm_by_p;
        double diam, size;
        bool quasiconvex;
    };
    std::vector<Cached> cache;
    for (int k : k_values) {
        Ex31Data inst = make_ex31_instance(k);
        Cached c;
        c.k = k;
        c.diam = inst.region.diam;
        c.size = static_cast<double>(inst.region.size());
        c.quasiconvex = inst.region.quasiconvex;
        c.mean = weighted_mean(inst.f, inst.region, inst.counting);
        std::vector<double> grad = gradient(inst.window.graph, inst.f, inst.region);

        // exact values: mean k/2, gradient 2 except 1 at j=0, p=inf ratio k/4
        if (c.mean != k / 2.0) {
            out.exact_ok = false;
            out.exact_notes.push_back("k=" + std::to_string(k) + ": mean != k/2");
        }
        for (std::size_t i = 0; i < grad.size(); ++i) {
            int j = inst.window.label_of(inst.region.members[i]).first;
            double expect = (j == 0) ? 1.0 : 2.0;
            if (grad[i] != expect) {
                out.exact_ok = false;
                out.exact_notes.push_back("k=" + std::to_string(k) + ": gradient mismatch at j=" +
                                          std::to_string(j));
                break;
            }
        }
        double rinf =
            poincare_ratio(inst.window.graph, inst.f, inst.region, inst.counting, Exponent::inf());
        c.linf_ratio = rinf;
        if (rinf != k / 4.0) {
            out.exact_ok = false;
            out.exact_notes.push_back("k=" + std::to_string(k) + ": p=inf ratio != k/4");
        }
        if (k >= 8 && inst.region.quasiconvex) {
            out.exact_ok = false;
            out.exact_notes.push_back("k=" + std::to_string(k) + ": expected non-quasiconvex");
        }

        for (const Exponent& p : p_values) {
            VertexFunction centered(inst.window.graph.size());
            for (VertexId x : inst.region.members) centered.set(x, inst.f.at(x) - c.mean);
            c.lhs_by_p.push_back(lp_norm(centered, inst.region, inst.counting, p));
            c.grad_norm_by_p.push_back(lp_norm(grad, inst.region, inst.counting, p));
        }
        cache.push_back(std::move(c));
    }
    for (std::size_t pi = 0; pi < p_values.size(); ++pi) {
        const Exponent& p = p_values[pi];
        std::vector<std::pair<double, double>> pts;
        for (const Cached& c : cache) {
            double size_pow = p.is_inf() ? 1.0 : std::pow(c.size, 1.0 / p.value());
            double diam_pow = p.is_inf() ? c.diam : std::pow(c.diam, 1.0 - 1.0 / p.value());
            double den = size_pow * diam_pow * c.grad_norm_by_p[pi];
            double normalized = c.lhs_by_p[pi] / den;
            out.sweep.rows.push_back({static_cast<double>(c.k), p, c.lhs_by_p[pi], den, normalized});
            pts.emplace_back(static_cast<double>(c.k), normalized);
        }
        PVerdict v;
        v.p = p;
        v.expected_slope = p.is_inf() ? 1.0 : 1.0 - 1.0 / p.value();
        if (pts.size() >= 4) {
            SlopeFit fit = fit_slope(pts);
            v.slope = fit.slope;
            v.r_squared = fit.r_squared;
            v.slope_pass = std::abs(fit.slope - v.expected_slope) <= kSlopeTol &&
                           fit.r_squared >= kSlopeR2Min;
        }
        v.pass = v.slope_pass;
        out.sweep.verdicts.push_back(v);
        out.sweep.pass = out.sweep.pass && v.pass;
    }
    out.sweep.pass = out.sweep.pass && out.exact_ok;
    for (const auto& n : out.exact_notes) out.sweep.notes.push_back(n);
    return out;
}

// ---------------------------------------------------------------------------
// Line with mu(j) = 1/|j| (not bounded below)
// ---------------------------------------------------------------------------

struct Ex32Result {
    SweepResult sweep;
    bool sums_ok = true; // direct sums against closed forms
    std::vector<std::string> sum_notes;
};

inline Measure make_ex32_measure(const LineWindow& w) {
    std::vector<double> weights(static_cast<std::size_t>(w.graph.size()));
    for (VertexId v = 0; v < w.graph.size(); ++v) {
        int j = w.label_of(v);
        weights[static_cast<std::size_t>(v)] = j == 0 ? 1.0 : 1.0 / std::abs(j);
    }
    // the infinite measure has inf 0: no alpha exists
    return Measure::from_weights(std::move(weights), std::nullopt, 1.0, "custom");
}

/// Sweep of the failure rate on the line: the normalized quantity behaves
/// like k^{1/p} / (log k)^{2/p}, checked by a bounded-ratio test.
inline Ex32Result ex32_sweep(const std::vector<int>& k_values,
                             const std::vector<Exponent>& p_values) {
    Ex32Result out;
    out.sweep.family = "ex32";
    for (const Exponent& p : p_values)
        if (p.is_inf()) throw input_error("ex32: p = inf is out of the example's scope");
    for (int k : k_values)
        if (k < 2) throw input_error("ex32: k must be >= 2");
    int k_max = *std::max_element(k_values.begin(), k_values.end());
    LineWindow w = make_line(k_max + 1);
    Measure mu = make_ex32_measure(w);
    VertexFunction f(w.graph.size());
    for (VertexId v = 0; v < w.graph.size(); ++v) f.set(v, static_cast<double>(w.label_of(v)));

    struct Cached {
        int k;
        Region region;
        double mass;
    };
    std::vector<Cached> cache;
    for (int k : k_values) {
        std::vector<VertexId> members;
        for (int j = -k; j <= k; ++j) members.push_back(w.id(j));
        Region e = classify_region(w.graph, members);
        double mass = region_mass(mu, e);
        // direct sums against closed forms: mu(E_k) = 1 + 2 H_k
        double harmonic = 0.0;
        for (int j = 1; j <= k; ++j) harmonic += 1.0 / j;
        if (std::abs(mass - (1.0 + 2.0 * harmonic)) > 1e-12 * mass) {
            out.sums_ok = false;
            out.sum_notes.push_back("k=" + std::to_string(k) + ": mass vs harmonic closed form");
        }
        double mean = weighted_mean(f, e, mu);
        if (mean != 0.0) {
            out.sums_ok = false;
            out.sum_notes.push_back("k=" + std::to_string(k) + ": mean not exactly 0");
        }
        cache.push_back({k, std::move(e), mass});
    }
    for (const Exponent& p : p_values) {
        double pp = p.value();
        std::vector<std::pair<double, double>> compensated;
        for (const Cached& c : cache) {
            double lhs = lp_norm(f, c.region, mu, p); // f_E = 0
            // the norm power sum is sum |j|^{p-1} with the 0^0 = 1 convention
            // at p = 1 (where the true norm drops the j = 0 term)
            double direct = 0.0;
            for (int j = -c.k; j <= c.k; ++j) direct += std::pow(std::abs(j), pp - 1.0);
            double closed;
            if (pp == 1.0)
                closed = 2.0 * c.k + 1.0;
            else {
                closed = 0.0;
                for (int j = 1; j <= c.k; ++j) closed += 2.0 * std::pow(j, pp - 1.0);
            }
            if (std::abs(direct - closed) > 1e-12 * std::max(1.0, closed)) {
                out.sums_ok = false;
                out.sum_notes.push_back("k=" + std::to_string(c.k) + " p=" + p.str() +
                                        ": power sum vs closed form");
            }
            std::vector<double> grad = gradient(w.graph, f, c.region);
            double grad_norm = lp_norm(grad, c.region, mu, p);
            double den = std::pow(c.mass, 1.0 / pp) *
                         std::pow(static_cast<double>(c.region.diam), 1.0 - 1.0 / pp) * grad_norm;
            double normalized = lhs / den;
            out.sweep.rows.push_back({static_cast<double>(c.k), p, lhs, den, normalized});
            double target = std::pow(static_cast<double>(c.k), 1.0 / pp) /
                            std::pow(std::log(static_cast<double>(c.k)), 2.0 / pp);
            compensated.emplace_back(static_cast<double>(c.k), normalized / target);
        }
        PVerdict v;
        v.p = p;
        v.expected_slope = 0.0; // after compensation
        double lo = compensated.front().second, hi = lo;
        for (auto [k, q] : compensated) {
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        }
        v.bounded_factor = hi / lo;
        v.bounded_pass = v.bounded_factor <= kBoundedRatioMax;
        if (compensated.size() >= 4) {
            SlopeFit fit = fit_slope(compensated);
            v.slope = fit.slope;
            v.r_squared = fit.r_squared;
        }
        v.pass = v.bounded_pass;
        out.sweep.verdicts.push_back(v);
        out.sweep.pass = out.sweep.pass && v.pass;
    }
    out.sweep.pass = out.sweep.pass && out.sums_ok;
    for (const auto& n : out.sum_notes) out.sweep.notes.push_back(n);
    return out;
}

// ---------------------------------------------------------------------------
// Extremal functions on tree balls
// ---------------------------------------------------------------------------

struct Prop34Construction {
    bool degenerate = false;
    VertexFunction f;
    double achieved_ratio = 0.0;
    double mean_abs = 0.0; // |f_B| after balancing
    double mass_B = 0.0;

    Prop34Construction() : f(1) {}
};

/// Build the extremal function of the optimality construction on B_r(center):
/// opposed cones on two sibling triangles for p = inf, a balanced two-level
/// indicator from the triangle split for finite p. The function is extended
/// one halo layer by copying along edges.
inline Prop34Construction prop34_construct(const RootedTree& t, const Measure& m, VertexId center,
                                           int r, Exponent p) {
    const Graph& g = t.graph();
    if (r < 1) throw input_error("prop34: r must be >= 1");
    if (!g.degree_bound()) throw precondition_error("prop34: graph needs a degree bound");
    const int b = *g.degree_bound();
    Region B = ball(g, center, r);
    Prop34Construction out;
    out.mass_B = region_mass(m, B);
    std::vector<int> dist_c = distances(g, center, r + 1);

    VertexFunction f(g.size());
    if (p.is_inf()) {
        const auto& nbrs = g.neighbors(center);
        if (nbrs.size() < 2) throw precondition_error("prop34: center needs degree >= 2");
        Triangle t1 = triangle_at(t, nbrs[0], center, r - 1);
        Triangle t2 = triangle_at(t, nbrs[1], center, r - 1);
        double s1 = 0.0, s2 = 0.0;
        for (VertexId x : t1.members) s1 += dist_c[static_cast<std::size_t>(x)] * m.at(x);
        for (VertexId x : t2.members) s2 += dist_c[static_cast<std::size_t>(x)] * m.at(x);
        double C = s1 / s2;
        for (VertexId x : B.members) f.set(x, 0.0);
        for (VertexId x : t1.members) f.set(x, static_cast<double>(dist_c[static_cast<std::size_t>(x)]));
        for (VertexId x : t2.members) f.set(x, -C * dist_c[static_cast<std::size_t>(x)]);
    } else {
        // triangles rooted at the neighbors of the center cover B minus the
        // center; take the heaviest and split it
        Triangle heaviest;
        double heaviest_mass = -1.0;
        for (VertexId v : g.neighbors(center)) {
            Triangle cand = triangle_at(t, v, center, r - 1);
            double mass = region_mass(m, cand.members);
            if (mass > heaviest_mass) {
                heaviest = std::move(cand);
                heaviest_mass = mass;
            }
        }
        if (heaviest.height < 1) {
            out.degenerate = true; // r = 1: nothing to split
            return out;
        }
        BalancedSplit split = balanced_split(t, m, heaviest);
        if (split.degenerate) {
            out.degenerate = true;
            return out;
        }
        double inner = region_mass(m, split.result.members);
        double q = inner / (heaviest_mass - inner);
        for (VertexId x : B.members) f.set(x, 0.0);
        for (VertexId x : heaviest.members) f.set(x, -q);
        for (VertexId x : split.result.members) f.set(x, 1.0);
    }
    // extension: each halo vertex copies its unique tree neighbor inside B
    for (VertexId h : B.halo) {
        if (B.is_member(h)) continue;
        for (VertexId y : g.neighbors(h))
            if (B.is_member(y)) {
                f.set(h, f.at(y));
                break;
            }
    }
    out.f = f;
    out.achieved_ratio = poincare_ratio(g, f, B, m, p);
    double mean = weighted_mean(f, B, m);
    double scale = lp_norm(f, B, m, Exponent::inf());
    out.mean_abs = std::abs(mean);
    if (out.mean_abs > 1e-9 * std::max(1.0, scale))
        throw error("prop34: balancing failed, |f_B| = " + std::to_string(out.mean_abs));
    if (p.is_inf()) {
        double target = static_cast<double>(r) / (b + 1);
        if (out.achieved_ratio < target * (1 - 1e-12))
            throw error("prop34: p=inf ratio below r/(b+1)");
    }
    return out;
}

struct Prop34Result {
    SweepResult sweep; // param r, lhs = achieved ratio, denominator = target
    double min_c = 0.0;    // inf over the sweep of ratio / mu(B)^{1/p}
    double median_c = 0.0;
    bool pass = true;
};

/// Sweep r over tree balls of the (b+1)-homogeneous tree with the counting
/// measure. For p = inf the target is r/(b+1), exactly achieved bounds; for
/// finite p the target is mu(B)^{1/p} with the empirical constant reported.
inline Prop34Result prop34_sweep(int b, const std::vector<int>& r_values, Exponent p) {
    Prop34Result out;
    out.sweep.family = "prop34";
    std::vector<double> cs;
    std::vector<std::pair<double, double>> pts;
    for (int r : r_values) {
        TreeBallWindow w = make_tree_ball(b, r + 2);
        RootedTree t(w.graph, w.top);
        Measure cnt = Measure::counting(w.graph.size());
        Prop34Construction c = prop34_construct(t, cnt, w.center, r, p);
        if (c.degenerate) {
            out.sweep.notes.push_back("r=" + std::to_string(r) + ": degenerate (r too small)");
            continue;
        }
        double target = p.is_inf() ? static_cast<double>(r) / (b + 1)
                                   : std::pow(c.mass_B, 1.0 / p.value());
        out.sweep.rows.push_back({static_cast<double>(r), p, c.achieved_ratio, target,
                                  c.achieved_ratio / target});
        cs.push_back(c.achieved_ratio / target);
        pts.emplace_back(std::pow(2.0, static_cast<double>(r)), c.achieved_ratio);
    }
    if (cs.empty()) {
        out.pass = false;
        out.sweep.pass = false;
        return out;
    }
    std::vector<double> sorted_cs = cs;
    std::sort(sorted_cs.begin(), sorted_cs.end());
    out.min_c = sorted_cs.front();
    out.median_c = sorted_cs[sorted_cs.size() / 2];
    PVerdict v;
    v.p = p;
    if (p.is_inf()) {
        // both sides grow linearly in r; the achieved/target ratio must stay
        // bounded away from 0 (it is >= 1 by construction on these trees)
        v.expected_slope = 1.0;
        v.pass = out.min_c >= 1.0 - 1e-12;
    } else {
        // exponential growth: the points are (2^r, ratio), so the log-log
        // slope is the slope of log2(ratio) per unit r
        if (pts.size() >= 4) {
            SlopeFit fit = fit_slope(pts);
            v.slope = fit.slope;
            v.r_squared = fit.r_squared;
        }
        v.expected_slope = 1.0; // when b = 2: mu(B) grows like 2^r
        v.slope_pass = std::abs(v.slope - 1.0) <= 0.1;
        v.pass = v.slope_pass && out.min_c >= 0.5 * out.median_c;
    }
    out.sweep.verdicts.push_back(v);
    out.sweep.pass = v.pass;
    out.pass = v.pass;
    return out;
}

struct Thm35Result {
    SweepResult sweep; // lhs = lower witness ratio, denominator = h^{1/p} R^{1-1/p}
    bool pass = true;
    double upper_factor = 1.0;
    double lower_factor = 1.0;
    bool mass_homogeneous = true;
};

/// Match the two-sided optimal growth on homogeneous trees: the envelope
/// bound from above, the extremal construction from below, both within
/// constant factors of h(R)^{1/p} R^{1-1/p} where h(R) is the ball mass.
inline Thm35Result thm35_sweep(int b, const std::vector<int>& r_values, Exponent p) {
    if (!p.is_inf() && p.value() != 1.0)
        throw input_error("thm35: optimality is claimed for p in {1, inf} only");
    Thm35Result out;
    out.sweep.family = "thm35";
    std::vector<double> upper_over_target, lower_over_target;
    for (int r : r_values) {
        TreeBallWindow w = make_tree_ball(b, r + 2);
        RootedTree t(w.graph, w.top);
        Measure cnt = Measure::counting(w.graph.size());
        Region B = ball(w.graph, w.center, r);
        double mass = region_mass(cnt, B);
        // mu(B_r(x)) may not depend on the center beyond constants (h must
        // exist): the center's neighbors also have complete r-balls here
        double lo_mass = mass, hi_mass = mass;
        for (VertexId nb : w.graph.neighbors(w.center)) {
            double mn = region_mass(cnt, ball(w.graph, nb, r));
            lo_mass = std::min(lo_mass, mn);
            hi_mass = std::max(hi_mass, mn);
        }
        out.mass_homogeneous = out.mass_homogeneous && (hi_mass / lo_mass <= kBoundedRatioMax);
        double upper = quasiconvex_bound(B, mass, 1.0, p);
        Prop34Construction c = prop34_construct(t, cnt, w.center, r, p);
        if (c.degenerate) {
            out.sweep.notes.push_back("r=" + std::to_string(r) + ": degenerate");
            continue;
        }
        double R = static_cast<double>(B.diam);
        double target = p.is_inf() ? R : std::pow(mass, 1.0 / p.value()) *
                                             std::pow(R, 1.0 - 1.0 / p.value());
        out.sweep.rows.push_back({static_cast<double>(r), p, c.achieved_ratio, target,
                                  c.achieved_ratio / target});
        if (c.achieved_ratio > upper * (1 + kVerdictRelTol)) {
            out.pass = false;
            out.sweep.notes.push_back("r=" + std::to_string(r) + ": lower exceeds upper envelope");
        }
        upper_over_target.push_back(upper / target);
        lower_over_target.push_back(c.achieved_ratio / target);
    }
    auto factor = [](const std::vector<double>& v) {
        if (v.empty()) return 1.0;
        auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        return *hi / *lo;
    };
    out.upper_factor = factor(upper_over_target);
    out.lower_factor = factor(lower_over_target);
    out.pass = out.pass && out.upper_factor <= kBoundedRatioMax &&
               out.lower_factor <= kBoundedRatioMax && out.mass_homogeneous;
    out.sweep.pass = out.pass;
    PVerdict v;
    v.p = p;
    v.bounded_factor = std::max(out.upper_factor, out.lower_factor);
    v.bounded_pass = v.bounded_factor <= kBoundedRatioMax;
    v.pass = out.pass;
    out.sweep.verdicts.push_back(v);
    return out;
}

// ---------------------------------------------------------------------------
// Randomized verification suites
// ---------------------------------------------------------------------------

struct SuiteResult {
    std::string suite;
    std::uint64_t seed = 0;
    int trials = 0;
    int failures = 0;
    int skipped = 0;
    std::vector<std::string> failure_notes;
    // flow-suite side-condition diagnostics
    long chain_checks = 0;
    long chain_within_2r = 0;
    long flow_mass_checks = 0;
    long flow_mass_with_diam = 0;

    bool pass() const { return failures == 0; }

    Json to_json() const {
        Json j;
        j["suite"] = suite;
        j["trials"] = trials;
        j["failures"] = failures;
        j["skipped"] = skipped;
        j["seed"] = seed;
        if (chain_checks > 0) {
            j["chain_checks"] = chain_checks;
            j["chain_within_2r"] = chain_within_2r;
            j["flow_mass_checks"] = flow_mass_checks;
            j["flow_mass_with_diam"] = flow_mass_with_diam;
        }
        if (!failure_notes.empty()) j["failure_notes"] = failure_notes;
        return j;
    }
};

namespace detail {

inline const std::vector<Exponent>& suite_exponents() {
    static const std::vector<Exponent> ps = {Exponent::finite(1.0), Exponent::finite(1.5),
                                             Exponent::finite(2.0), Exponent::finite(3.0),
                                             Exponent::inf()};
    return ps;
}

inline std::vector<VertexId> grow_connected(const Graph& g, const std::vector<char>& allowed,
                                            VertexId start, int target, Rng& rng) {
    std::vector<VertexId> chosen{start};
    std::vector<char> in(static_cast<std::size_t>(g.size()), 0);
    in[static_cast<std::size_t>(start)] = 1;
    std::vector<VertexId> frontier;
    auto push_neighbors = [&](VertexId x) {
        for (VertexId y : g.neighbors(x))
            if (!in[static_cast<std::size_t>(y)] && allowed[static_cast<std::size_t>(y)])
                frontier.push_back(y);
    };
    push_neighbors(start);
    while (static_cast<int>(chosen.size()) < target && !frontier.empty()) {
        std::size_t pick = static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<long long>(frontier.size()) - 1));
        VertexId v = frontier[pick];
        frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(pick));
        if (in[static_cast<std::size_t>(v)]) continue;
        in[static_cast<std::size_t>(v)] = 1;
        chosen.push_back(v);
        push_neighbors(v);
    }
    return chosen;
}

inline VertexFunction random_function_on(const Graph& g, const Region& e, Rng& rng) {
    VertexFunction f(g.size());
    for (VertexId x : e.halo) f.set(x, rng.symmetric());
    return f;
}

} // namespace detail

/// Seeded random instances of the quasiconvex-region inequality; a failed
/// verdict is a build-blocking defect, not a property of the instance.
inline SuiteResult thm21_suite(int trials, std::uint64_t seed) {
    SuiteResult out;
    out.suite = "thm21";
    out.seed = seed;
    const auto& ps = detail::suite_exponents();
    for (int i = 0; i < trials; ++i) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        int n = static_cast<int>(rng.uniform_int(20, 400));
        int b = static_cast<int>(rng.uniform_int(2, 6));
        int extra = static_cast<int>(rng.uniform_int(0, n / 4));
        Graph g = make_random_graph(n, b, extra, rng.next_u64());
        double alpha = rng.uniform(0.1, 2.0);
        std::vector<double> w(static_cast<std::size_t>(n));
        for (double& x : w) x = rng.uniform(alpha, 10.0 * alpha);
        Measure mu = Measure::from_weights(std::move(w), alpha, 10.0 * alpha);
        std::vector<char> allowed(static_cast<std::size_t>(n), 1);
        Region e = [&] {
            if (i % 2 == 0)
                return ball(g, static_cast<VertexId>(rng.uniform_int(0, n - 1)),
                            static_cast<int>(rng.uniform_int(0, 3)));
            for (int attempt = 0; attempt < 5; ++attempt) {
                VertexId start = static_cast<VertexId>(rng.uniform_int(0, n - 1));
                int target = static_cast<int>(rng.uniform_int(2, 40));
                Region cand =
                    classify_region(g, detail::grow_connected(g, allowed, start, target, rng));
                if (cand.quasiconvex) return cand;
            }
            return ball(g, static_cast<VertexId>(rng.uniform_int(0, n - 1)), 1);
        }();
        VertexFunction f = detail::random_function_on(g, e, rng);
        PoincareReport rep = check_quasiconvex(g, f, e, mu, ps[static_cast<std::size_t>(i) % ps.size()]);
        ++out.trials;
        if (!rep.pass) {
            ++out.failures;
            if (out.failure_notes.size() < 8)
                out.failure_notes.push_back("trial " + std::to_string(i) + ": lhs " +
                                            std::to_string(rep.lhs) + " rhs " +
                                            std::to_string(rep.rhs));
        }
    }
    return out;
}

/// Seeded random instances of the degree-bounded inequality, plus the ball
/// count |B_r| <= 3 b^r and the doubling bound D(R) <= 3 (beta/alpha) b^{2R}.
/// Degree bounds are sampled with b >= 2 (the ball-count chain needs it).
inline SuiteResult cor23_suite(int trials, std::uint64_t seed) {
    SuiteResult out;
    out.suite = "cor23";
    out.seed = seed;
    const auto& ps = detail::suite_exponents();
    for (int i = 0; i < trials; ++i) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        int n = static_cast<int>(rng.uniform_int(20, 300));
        int b = static_cast<int>(rng.uniform_int(2, 5));
        int extra = static_cast<int>(rng.uniform_int(0, n / 4));
        Graph g = make_random_graph(n, b, extra, rng.next_u64());
        double alpha = rng.uniform(0.1, 2.0);
        double beta = alpha * rng.uniform(1.0, 8.0);
        std::vector<double> w(static_cast<std::size_t>(n));
        for (double& x : w) x = rng.uniform(alpha, beta);
        Measure mu = Measure::from_weights(std::move(w), alpha, beta);
        std::vector<char> allowed(static_cast<std::size_t>(n), 1);
        Region e = [&] {
            if (i % 2 == 0)
                return ball(g, static_cast<VertexId>(rng.uniform_int(0, n - 1)),
                            static_cast<int>(rng.uniform_int(0, 3)));
            for (int attempt = 0; attempt < 5; ++attempt) {
                VertexId start = static_cast<VertexId>(rng.uniform_int(0, n - 1));
                int target = static_cast<int>(rng.uniform_int(2, 30));
                Region cand =
                    classify_region(g, detail::grow_connected(g, allowed, start, target, rng));
                if (cand.quasiconvex) return cand;
            }
            return ball(g, static_cast<VertexId>(rng.uniform_int(0, n - 1)), 1);
        }();
        VertexFunction f = detail::random_function_on(g, e, rng);
        PoincareReport rep =
            check_bounded_degree(g, f, e, mu, ps[static_cast<std::size_t>(i) % ps.size()]);
        ++out.trials;
        bool ok = rep.pass;
        // sampled ball counts and doubling against the degree-driven bounds
        VertexId c = static_cast<VertexId>(rng.uniform_int(0, n - 1));
        for (int r = 0; r <= 3; ++r) {
            Region br = ball(g, c, r);
            if (static_cast<double>(br.size()) >
                3.0 * std::pow(static_cast<double>(b), r) * (1 + 1e-12)) {
                ok = false;
                if (out.failure_notes.size() < 8)
                    out.failure_notes.push_back("trial " + std::to_string(i) + ": |B_" +
                                                std::to_string(r) + "| > 3 b^r");
            }
        }
        DoublingReport dr = doubling_constant(g, mu, 2, {c});
        if (!dr.within_bound) {
            ok = false;
            if (out.failure_notes.size() < 8)
                out.failure_notes.push_back("trial " + std::to_string(i) + ": doubling bound");
        }
        if (!ok) ++out.failures;
    }
    return out;
}

/// Doubling-focused suite: empirical D(R) against the degree bound, its
/// monotonicity in R, and the degree/mass consistency check.
inline SuiteResult doubling_suite(int trials, std::uint64_t seed) {
    SuiteResult out;
    out.suite = "doubling";
    out.seed = seed;
    for (int i = 0; i < trials; ++i) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        int n = static_cast<int>(rng.uniform_int(20, 300));
        int b = static_cast<int>(rng.uniform_int(2, 5));
        Graph g = make_random_graph(n, b, static_cast<int>(rng.uniform_int(0, n / 4)),
                                    rng.next_u64());
        double alpha = rng.uniform(0.1, 2.0);
        double beta = alpha * rng.uniform(1.0, 8.0);
        std::vector<double> w(static_cast<std::size_t>(n));
        for (double& x : w) x = rng.uniform(alpha, beta);
        Measure mu = Measure::from_weights(std::move(w), alpha, beta);
        std::vector<VertexId> centers;
        for (int c = 0; c < 4; ++c)
            centers.push_back(static_cast<VertexId>(rng.uniform_int(0, n - 1)));
        std::sort(centers.begin(), centers.end());
        centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
        ++out.trials;
        bool ok = true;
        double prev = 0.0;
        for (int R = 0; R <= 3; ++R) {
            DoublingReport rep = doubling_constant(g, mu, R, centers);
            if (!rep.within_bound) ok = false;
            if (rep.D_of_R + 1e-12 < prev) ok = false; // nondecreasing in R
            prev = rep.D_of_R;
        }
        DegreeDoublingReport deg = degree_doubling_relation(g, mu);
        if (!deg.in_M_alpha || !deg.holds) ok = false;
        if (!ok) {
            ++out.failures;
            if (out.failure_notes.size() < 8)
                out.failure_notes.push_back("trial " + std::to_string(i));
        }
    }
    return out;
}

struct FlowSuiteResult {
    SuiteResult suite;
    SweepResult sweep; // one row per checked trial
};

/// Randomized global-inequality trials on trees with leaf-up random flows:
/// random windows, random connected regions above the frontier, random f,
/// exponents cycling through {1, 1.5, 2, 3, inf}. Side conditions (chain
/// counts and the flow-mass display) are verified per trial.
inline FlowSuiteResult flow_suite(int trials, std::uint64_t seed) {
    FlowSuiteResult out;
    out.suite.suite = "thm41";
    out.suite.seed = seed;
    out.sweep.family = "flow";
    const auto& ps = detail::suite_exponents();
    for (int i = 0; i < trials; ++i) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        int b = static_cast<int>(rng.uniform_int(1, 4));
        int depth = static_cast<int>(rng.uniform_int(3, 14));
        TreeWindow w = make_random_tree(b, depth, rng.next_u64(), 3000);
        RootedTree t(w.graph, w.top);
        FlowMeasure flow = FlowMeasure::random(t, rng.next_u64());
        std::vector<char> allowed(static_cast<std::size_t>(w.graph.size()), 0);
        int n_allowed = 0;
        for (VertexId x = 0; x < w.graph.size(); ++x)
            if (x != t.top() && !t.frontier(x)) {
                allowed[static_cast<std::size_t>(x)] = 1;
                ++n_allowed;
            }
        if (n_allowed == 0) {
            ++out.suite.skipped; // window too shallow to stay above the frontier
            continue;
        }
        VertexId start = 0;
        int pick = static_cast<int>(rng.uniform_int(0, n_allowed - 1));
        for (VertexId x = 0; x < w.graph.size(); ++x)
            if (allowed[static_cast<std::size_t>(x)] && pick-- == 0) {
                start = x;
                break;
            }
        int target = static_cast<int>(rng.uniform_int(1, std::min(40, n_allowed)));
        Region e = classify_region(w.graph,
                                   detail::grow_connected(w.graph, allowed, start, target, rng));
        VertexFunction f = detail::random_function_on(w.graph, e, rng);
        Exponent p = ps[static_cast<std::size_t>(i) % ps.size()];
        PoincareReport rep = check_flow_tree(t, f, e, flow, p);
        ++out.suite.trials;
        bool ok = rep.pass;
        // chain counts: always <= 2r+1, the <= 2r rate is recorded
        for (VertexId x : e.members) {
            int cc = chain_count(t, e, x);
            ++out.suite.chain_checks;
            if (cc <= e.diam) ++out.suite.chain_within_2r;
            if (cc > e.diam + 1) {
                ok = false;
                if (out.suite.failure_notes.size() < 8)
                    out.suite.failure_notes.push_back("trial " + std::to_string(i) +
                                                      ": chain count " + std::to_string(cc) +
                                                      " > diam+1");
            }
        }
        // flow-mass display at the apex and at a sampled member
        VertexId apex = e.members.front();
        for (VertexId x : e.members)
            if (t.level(x) > t.level(apex)) apex = x;
        std::vector<VertexId> zs{apex,
                                 e.members[static_cast<std::size_t>(rng.uniform_int(
                                     0, static_cast<long long>(e.members.size()) - 1))]};
        for (VertexId z : zs) {
            FlowMassCheck chk = flow_mass_bound(t, flow, e, z);
            ++out.suite.flow_mass_checks;
            if (chk.holds_with_diam) ++out.suite.flow_mass_with_diam;
            if (!chk.holds_with_diam_plus_1) {
                ok = false;
                if (out.suite.failure_notes.size() < 8)
                    out.suite.failure_notes.push_back("trial " + std::to_string(i) +
                                                      ": flow mass display");
            }
        }
        if (!ok) ++out.suite.failures;
        double grad_norm = rep.bound > 0.0 ? rep.rhs / rep.bound : 0.0;
        double normalized = rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
        out.sweep.rows.push_back({static_cast<double>(i), p, rep.lhs, grad_norm, normalized});
    }
    out.sweep.pass = out.suite.pass();
    return out;
}

/// Seeded triangle-split postconditions: mu(T') <= 2 mu(T0 \ T') and
/// mu(T0 \ T') <= (3/2)(b + beta/alpha) mu(T') on random trees and weights.
inline SuiteResult balanced_split_suite(int trials, std::uint64_t seed) {
    SuiteResult out;
    out.suite = "balanced_split";
    out.seed = seed;
    for (int i = 0; i < trials; ++i) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        int b = static_cast<int>(rng.uniform_int(1, 4));
        int depth = static_cast<int>(rng.uniform_int(3, 10));
        TreeWindow w = make_random_tree(b, depth, rng.next_u64(), 3000);
        RootedTree t(w.graph, w.top);
        double alpha = rng.uniform(0.2, 1.0);
        double beta = alpha * rng.uniform(1.0, 5.0);
        std::vector<double> weights(static_cast<std::size_t>(w.graph.size()));
        for (double& x : weights) x = rng.uniform(alpha, beta);
        Measure mu = Measure::from_weights(std::move(weights), alpha, beta);
        // a triangle below a random non-top vertex with room for its height
        std::vector<VertexId> roots;
        for (VertexId x = 0; x < w.graph.size(); ++x)
            if (x != t.top() && t.level(x) >= 2 && !t.frontier(x)) roots.push_back(x);
        if (roots.empty()) {
            ++out.skipped;
            continue;
        }
        VertexId x0 = roots[static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<long long>(roots.size()) - 1))];
        int height = static_cast<int>(rng.uniform_int(1, std::min(t.level(x0), 6)));
        Triangle t0;
        try {
            t0 = triangle(t, x0, height);
        } catch (const window_error&) {
            ++out.skipped;
            continue;
        }
        BalancedSplit split = balanced_split(t, mu, t0);
        ++out.trials;
        if (split.degenerate) continue; // allowed for small heights
        double total = region_mass(mu, t0.members);
        double inner = region_mass(mu, split.result.members);
        double complement = total - inner;
        double cap = 1.5 * (b + beta / alpha) * inner;
        bool ok = inner <= 2.0 * complement * (1 + 1e-12) && complement <= cap * (1 + 1e-12);
        // the split base must sit inside the original base
        for (VertexId v : split.result.base)
            if (!std::binary_search(t0.base.begin(), t0.base.end(), v)) ok = false;
        if (!ok) {
            ++out.failures;
            if (out.failure_notes.size() < 8)
                out.failure_notes.push_back("trial " + std::to_string(i));
        }
    }
    return out;
}

} // namespace poincare
