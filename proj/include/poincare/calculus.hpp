#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "poincare/errors.hpp"
#include "poincare/graph.hpp"
#include "poincare/measure.hpp"

namespace poincare {

/// Lebesgue exponent p in [1, inf], with its Hoelder conjugate.
class Exponent {
public:
    static Exponent finite(double p) {
        if (!(p >= 1.0) || !std::isfinite(p)) throw input_error("exponent: p must be in [1, inf)");
        return Exponent(p);
    }
    static Exponent inf() { return Exponent(std::numeric_limits<double>::infinity()); }
    static Exponent parse(const std::string& s) {
        if (s == "inf" || s == "Inf" || s == "infinity") return inf();
        try {
            return finite(std::stod(s));
        } catch (const input_error&) {
            throw;
        } catch (const std::exception&) {
            throw input_error("exponent: cannot parse '" + s + "'");
        }
    }

    bool is_inf() const { return std::isinf(p_); }
    double value() const { return p_; }

    Exponent conjugate() const {
        if (is_inf()) return Exponent(1.0);
        if (p_ == 1.0) return inf();
        return Exponent(p_ / (p_ - 1.0));
    }

    std::string str() const;

    friend bool operator==(const Exponent& a, const Exponent& b) { return a.p_ == b.p_; }

private:
    explicit Exponent(double p) : p_(p) {}
    double p_;
};

/// Real values on a subset of the window's vertices.
class VertexFunction {
public:
    explicit VertexFunction(int vertex_count)
        : values_(static_cast<std::size_t>(vertex_count), 0.0),
          defined_(static_cast<std::size_t>(vertex_count), 0) {}

    static VertexFunction constant(int vertex_count, double c) {
        VertexFunction f(vertex_count);
        for (std::size_t i = 0; i < f.values_.size(); ++i) {
            f.values_[i] = c;
            f.defined_[i] = 1;
        }
        return f;
    }

    int size() const { return static_cast<int>(values_.size()); }

    void set(VertexId x, double v) {
        check(x);
        if (!std::isfinite(v)) throw input_error("vertex function: value must be finite");
        values_[static_cast<std::size_t>(x)] = v;
        defined_[static_cast<std::size_t>(x)] = 1;
    }
    bool defined(VertexId x) const {
        return x >= 0 && static_cast<std::size_t>(x) < defined_.size() &&
               defined_[static_cast<std::size_t>(x)] != 0;
    }
    double at(VertexId x) const {
        check(x);
        if (!defined_[static_cast<std::size_t>(x)])
            throw halo_error("vertex function undefined at vertex " + std::to_string(x));
        return values_[static_cast<std::size_t>(x)];
    }

private:
    void check(VertexId x) const {
        if (x < 0 || static_cast<std::size_t>(x) >= values_.size())
            throw input_error("vertex function: vertex out of range");
    }
    std::vector<double> values_;
    std::vector<char> defined_;
};

inline std::string Exponent::str() const {
    if (is_inf()) return "inf";
    double p = p_;
    if (p == static_cast<long long>(p)) return std::to_string(static_cast<long long>(p));
    // shortest decimal that round-trips is produced by the io helpers; this
    // plain form is enough for the handful of p values in use
    std::string s = std::to_string(p);
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    return s;
}

/// Gradient length over a region: for each member x, the sum of
/// |f(x) - f(y)| over all ambient neighbors y, including halo vertices.
/// Returned aligned with e.members.
inline std::vector<double> gradient(const Graph& g, const VertexFunction& f, const Region& e) {
    std::vector<double> grad;
    grad.reserve(e.members.size());
    for (VertexId x : e.members) {
        if (!f.defined(x)) throw halo_error("gradient: f undefined at member " + std::to_string(x));
        double fx = f.at(x);
        double s = 0.0;
        for (VertexId y : g.neighbors(x)) {
            if (!f.defined(y))
                throw halo_error("gradient: f undefined at halo vertex " + std::to_string(y));
            s += std::abs(fx - f.at(y));
        }
        grad.push_back(s);
    }
    return grad;
}

/// Weighted mean f_E. Functions constant on E shortcut the sum, so f - f_E
/// is an exact zero there (diam = 0 bounds and the 0-ratio convention rely
/// on it).
inline double weighted_mean(const VertexFunction& f, const Region& e, const Measure& m) {
    double first = f.at(e.members.front());
    bool constant = true;
    for (VertexId x : e.members)
        if (f.at(x) != first) {
            constant = false;
            break;
        }
    if (constant) return first;
    double num = 0.0, den = 0.0;
    for (VertexId x : e.members) {
        num += f.at(x) * m.at(x);
        den += m.at(x);
    }
    return num / den;
}

namespace detail {

inline double lp_norm_values(const std::vector<double>& vals, const std::vector<double>& weights,
                             Exponent p) {
    if (p.is_inf()) {
        double mx = 0.0;
        for (double v : vals) mx = std::max(mx, std::abs(v));
        return mx; // measure-free sup
    }
    double pp = p.value();
    double s = 0.0;
    if (pp == 1.0) {
        for (std::size_t i = 0; i < vals.size(); ++i) s += std::abs(vals[i]) * weights[i];
        return s;
    }
    if (pp == 2.0) {
        for (std::size_t i = 0; i < vals.size(); ++i) s += vals[i] * vals[i] * weights[i];
        return std::sqrt(s);
    }
    for (std::size_t i = 0; i < vals.size(); ++i) s += std::pow(std::abs(vals[i]), pp) * weights[i];
    return std::pow(s, 1.0 / pp);
}

} // namespace detail

/// L^p norm of f over a region. The p = inf norm is the plain sup of |f|.
inline double lp_norm(const VertexFunction& f, const Region& e, const Measure& m, Exponent p) {
    std::vector<double> vals, ws;
    vals.reserve(e.members.size());
    ws.reserve(e.members.size());
    for (VertexId x : e.members) {
        vals.push_back(f.at(x));
        ws.push_back(m.at(x));
    }
    return detail::lp_norm_values(vals, ws, p);
}

/// L^p norm of values already aligned with e.members (e.g. a gradient).
inline double lp_norm(const std::vector<double>& vals, const Region& e, const Measure& m,
                      Exponent p) {
    if (vals.size() != e.members.size()) throw input_error("lp_norm: values/region mismatch");
    std::vector<double> ws;
    ws.reserve(e.members.size());
    for (VertexId x : e.members) ws.push_back(m.at(x));
    return detail::lp_norm_values(vals, ws, p);
}

/// ||f - f_E||_p / ||grad f||_p over the region. Constant functions give 0;
/// a vanishing gradient with nonconstant f gives +inf (impossible when E is
/// connected).
inline double poincare_ratio(const Graph& g, const VertexFunction& f, const Region& e,
                             const Measure& m, Exponent p) {
    double mean = weighted_mean(f, e, m);
    std::vector<double> centered;
    centered.reserve(e.members.size());
    for (VertexId x : e.members) centered.push_back(f.at(x) - mean);
    std::vector<double> ws;
    ws.reserve(e.members.size());
    for (VertexId x : e.members) ws.push_back(m.at(x));
    double lhs = detail::lp_norm_values(centered, ws, p);
    double den = detail::lp_norm_values(gradient(g, f, e), ws, p);
    if (den == 0.0) {
        if (lhs == 0.0) return 0.0;
        return std::numeric_limits<double>::infinity();
    }
    return lhs / den;
}

} // namespace poincare
