#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "poincare/errors.hpp"
#include "poincare/graph.hpp"

namespace poincare {

/// Strictly positive vertex weights on a window, optionally with declared
/// lower/upper bounds alpha/beta. The declared bounds are analytic facts
/// about the infinite measure when a generator knows them; otherwise they
/// default to the window inf/sup.
class Measure {
public:
    static Measure counting(int vertex_count) {
        Measure m;
        m.weights_.assign(static_cast<std::size_t>(vertex_count), 1.0);
        m.alpha_ = 1.0;
        m.beta_ = 1.0;
        m.kind_ = "counting";
        return m;
    }

    static Measure from_weights(std::vector<double> weights, std::optional<double> alpha,
                                std::optional<double> beta, std::string kind = "custom") {
        Measure m;
        if (weights.empty()) throw input_error("measure: no weights");
        for (double w : weights)
            if (!(w > 0.0) || !std::isfinite(w))
                throw input_error("measure: weights must be strictly positive and finite");
        m.weights_ = std::move(weights);
        if (alpha) {
            if (!(*alpha > 0.0)) throw input_error("measure: alpha must be positive");
            if (*alpha > m.empirical_alpha() * (1 + 1e-12))
                throw input_error("measure: declared alpha exceeds a window weight");
        }
        if (beta) {
            if (*beta < m.empirical_beta() * (1 - 1e-12))
                throw input_error("measure: declared beta is below a window weight");
        }
        if (alpha && beta && *alpha > *beta) throw input_error("measure: alpha > beta");
        m.alpha_ = alpha;
        m.beta_ = beta;
        m.kind_ = std::move(kind);
        return m;
    }

    // window-empirical bounds by default
    static Measure from_weights(std::vector<double> weights, std::string kind = "custom") {
        auto [lo, hi] = std::minmax_element(weights.begin(), weights.end());
        double a = *lo, b = *hi;
        return from_weights(std::move(weights), a, b, std::move(kind));
    }

    int size() const { return static_cast<int>(weights_.size()); }
    double at(VertexId x) const {
        if (x < 0 || static_cast<std::size_t>(x) >= weights_.size())
            throw input_error("measure: missing weight for vertex " + std::to_string(x));
        return weights_[static_cast<std::size_t>(x)];
    }
    const std::vector<double>& weights() const { return weights_; }

    std::optional<double> alpha() const { return alpha_; }
    std::optional<double> beta() const { return beta_; }
    double empirical_alpha() const {
        return *std::min_element(weights_.begin(), weights_.end());
    }
    double empirical_beta() const {
        return *std::max_element(weights_.begin(), weights_.end());
    }
    const std::string& kind() const { return kind_; }

    Measure scaled(double c) const {
        if (!(c > 0.0)) throw input_error("measure: scale must be positive");
        Measure m(*this);
        for (double& w : m.weights_) w *= c;
        if (m.alpha_) *m.alpha_ *= c;
        if (m.beta_) *m.beta_ *= c;
        return m;
    }

protected:
    Measure() = default;
    std::vector<double> weights_;
    std::optional<double> alpha_, beta_;
    std::string kind_ = "custom";
};

/// mu(E), summed in member order.
inline double region_mass(const Measure& m, const Region& e) {
    double s = 0.0;
    for (VertexId x : e.members) s += m.at(x);
    return s;
}

inline double region_mass(const Measure& m, const std::vector<VertexId>& members) {
    double s = 0.0;
    for (VertexId x : members) s += m.at(x);
    return s;
}

/// Empirical local doubling data at scale cap R: the worst ratio
/// mu(B_2r)/mu(B_r) over the sampled centers and all 0 <= r <= R.
struct DoublingReport {
    int R = 0;
    double D_of_R = 1.0;
    int centers_used = 0;
    // max ratio per radius, index r in [0, R]
    std::vector<double> max_ratio_by_r;
    // (beta/alpha) * 3 b^{2R}, when the measure has declared bounds and the
    // graph a degree bound; meaningful for b >= 2
    std::optional<double> theoretical_bound;
    bool within_bound = true;
};

inline DoublingReport doubling_constant(const Graph& g, const Measure& m, int R,
                                        const std::vector<VertexId>& centers) {
    if (R < 0) throw input_error("doubling_constant: R must be >= 0");
    if (centers.empty()) throw input_error("doubling_constant: no centers");
    if (m.size() != g.size()) throw input_error("doubling_constant: measure/graph size mismatch");
    DoublingReport rep;
    rep.R = R;
    rep.max_ratio_by_r.assign(static_cast<std::size_t>(R) + 1, 1.0);
    for (VertexId c : centers) {
        if (!g.contains(c)) throw input_error("doubling_constant: center not in graph");
        std::vector<int> dist = distances(g, c, 2 * R);
        // exactness within 2R needs every vertex closer than 2R intact
        std::vector<double> mass_by_dist(static_cast<std::size_t>(2 * R) + 1, 0.0);
        for (VertexId x = 0; x < g.size(); ++x) {
            int d = dist[static_cast<std::size_t>(x)];
            if (d == kUnreached) continue;
            if (d < 2 * R && g.truncated(x))
                throw window_error("doubling_constant: window misses B_" + std::to_string(2 * R) +
                                   "(" + std::to_string(c) + ")");
            mass_by_dist[static_cast<std::size_t>(d)] += m.at(x);
        }
        std::vector<double> ball_mass(mass_by_dist.size());
        double acc = 0.0;
        for (std::size_t d = 0; d < mass_by_dist.size(); ++d) {
            acc += mass_by_dist[d];
            ball_mass[d] = acc;
        }
        for (int r = 0; r <= R; ++r) {
            double ratio = ball_mass[static_cast<std::size_t>(2 * r)] /
                           ball_mass[static_cast<std::size_t>(r)];
            rep.max_ratio_by_r[static_cast<std::size_t>(r)] =
                std::max(rep.max_ratio_by_r[static_cast<std::size_t>(r)], ratio);
        }
        ++rep.centers_used;
    }
    for (double v : rep.max_ratio_by_r) rep.D_of_R = std::max(rep.D_of_R, v);
    if (m.alpha() && m.beta() && g.degree_bound()) {
        double b = static_cast<double>(*g.degree_bound());
        rep.theoretical_bound = (*m.beta() / *m.alpha()) * 3.0 * std::pow(b, 2.0 * R);
        rep.within_bound = rep.D_of_R <= *rep.theoretical_bound * (1 + 1e-9);
    }
    return rep;
}

/// Consistency data tying degree to one-step mass: deg(x)+1 = |B_1(x)| and
/// |B_1(x)| <= mu(B_1(x)) / alpha whenever mu has lower bound alpha. For
/// measures with no positive lower bound there is no alpha to check against.
struct DegreeDoublingReport {
    bool in_M_alpha = false;
    bool holds = true;
    int max_degree_plus_1 = 0;
    double worst_slack = std::numeric_limits<double>::infinity();
    std::string message;
};

inline DegreeDoublingReport degree_doubling_relation(const Graph& g, const Measure& m) {
    DegreeDoublingReport rep;
    if (m.size() != g.size())
        throw input_error("degree_doubling_relation: measure/graph size mismatch");
    if (!m.alpha() || !(*m.alpha() > 0.0)) {
        rep.in_M_alpha = false;
        rep.holds = false;
        rep.message = "not in M_alpha for any alpha > 0";
        return rep;
    }
    rep.in_M_alpha = true;
    double alpha = *m.alpha();
    for (VertexId x = 0; x < g.size(); ++x) {
        if (g.truncated(x)) continue; // B_1(x) incomplete in the window
        double b1 = m.at(x);
        for (VertexId y : g.neighbors(x)) b1 += m.at(y);
        int card = g.degree(x) + 1;
        rep.max_degree_plus_1 = std::max(rep.max_degree_plus_1, card);
        double slack = b1 / alpha - card;
        rep.worst_slack = std::min(rep.worst_slack, slack);
        if (card > b1 / alpha * (1 + 1e-9)) rep.holds = false;
    }
    rep.message = rep.holds ? "deg(x)+1 <= mu(B_1(x))/alpha on the window"
                            : "degree/mass consistency violated";
    return rep;
}

} // namespace poincare
