#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "poincare/errors.hpp"

namespace poincare {

/// Dense symmetric matrix in row-major storage.
struct SymMatrix {
    int n = 0;
    std::vector<double> a;

    explicit SymMatrix(int size) : n(size), a(static_cast<std::size_t>(size) * size, 0.0) {}
    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

struct EigenDecomposition {
    std::vector<double> values;            // ascending
    std::vector<std::vector<double>> vecs; // vecs[k] is the eigenvector of values[k]
};

/// Cyclic Jacobi for symmetric matrices. Small dense problems only; the
/// iteration stops when the off-diagonal mass is at machine level.
inline EigenDecomposition jacobi_eigen(SymMatrix m, int max_sweeps = 64) {
    const int n = m.n;
    if (n == 0) return {};
    std::vector<std::vector<double>> v(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;

    double norm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) norm += m.at(i, j) * m.at(i, j);
    norm = std::sqrt(norm);
    const double tol = (norm == 0.0 ? 1.0 : norm) * 1e-15;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += m.at(i, j) * m.at(i, j);
        if (std::sqrt(2.0 * off) <= tol) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = m.at(p, q);
                if (std::abs(apq) <= tol * 1e-2) continue;
                double app = m.at(p, p), aqq = m.at(q, q);
                double theta = (aqq - app) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = m.at(k, p), akq = m.at(k, q);
                    m.at(k, p) = c * akp - s * akq;
                    m.at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = m.at(p, k), aqk = m.at(q, k);
                    m.at(p, k) = c * apk - s * aqk;
                    m.at(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = v[static_cast<std::size_t>(k)][static_cast<std::size_t>(p)];
                    double vkq = v[static_cast<std::size_t>(k)][static_cast<std::size_t>(q)];
                    v[static_cast<std::size_t>(k)][static_cast<std::size_t>(p)] = c * vkp - s * vkq;
                    v[static_cast<std::size_t>(k)][static_cast<std::size_t>(q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int i, int j) { return m.at(i, i) < m.at(j, j); });

    EigenDecomposition out;
    out.values.reserve(static_cast<std::size_t>(n));
    out.vecs.reserve(static_cast<std::size_t>(n));
    for (int idx : order) {
        out.values.push_back(m.at(idx, idx));
        std::vector<double> col(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k)
            col[static_cast<std::size_t>(k)] = v[static_cast<std::size_t>(k)][static_cast<std::size_t>(idx)];
        out.vecs.push_back(std::move(col));
    }
    return out;
}

} // namespace poincare
