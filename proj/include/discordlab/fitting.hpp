#pragma once

// Ordinary least squares of y on (x^2, x, 1), solved with a Householder QR
// of the design matrix. RMSE uses the plain 1/n convention.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "discordlab/errors.hpp"

namespace discordlab {

struct FitPoint {
    double x = 0.0;  // average distortion
    double y = 0.0;  // average discord
};

struct QuadraticFit {
    double t1 = 0.0;  // x^2 coefficient
    double t2 = 0.0;  // x coefficient
    double t3 = 0.0;  // constant
    double rmse = 0.0;
    int n_points = 0;

    double operator()(double x) const { return (t1 * x + t2) * x + t3; }
};

namespace detail {

// In-place Householder QR on a column-major n x 3 design; returns false if
// the triangular factor is numerically rank deficient.
inline bool qr_solve_3(std::vector<double> cols[3], std::vector<double>& rhs, double out[3]) {
    const size_t n = rhs.size();
    for (int k = 0; k < 3; ++k) {
        double norm = 0.0;
        for (size_t i = static_cast<size_t>(k); i < n; ++i) norm += cols[k][i] * cols[k][i];
        norm = std::sqrt(norm);
        if (norm <= 1e-13) return false;
        double head = cols[k][static_cast<size_t>(k)];
        const double alpha = head >= 0.0 ? -norm : norm;
        // Householder vector v = x - alpha e_k, applied to remaining columns and rhs.
        cols[k][static_cast<size_t>(k)] -= alpha;
        double vtv = 0.0;
        for (size_t i = static_cast<size_t>(k); i < n; ++i) vtv += cols[k][i] * cols[k][i];
        if (vtv == 0.0) return false;
        auto reflect = [&](std::vector<double>& target) {
            double vt = 0.0;
            for (size_t i = static_cast<size_t>(k); i < n; ++i) vt += cols[k][i] * target[i];
            const double scale = 2.0 * vt / vtv;
            for (size_t i = static_cast<size_t>(k); i < n; ++i) target[i] -= scale * cols[k][i];
        };
        for (int j = k + 1; j < 3; ++j) reflect(cols[j]);
        reflect(rhs);
        cols[k][static_cast<size_t>(k)] = alpha;  // R diagonal; the rest of the column is v
    }
    // Back substitution on the 3x3 upper triangle (R[k][j] lives in cols[j][k]).
    for (int k = 2; k >= 0; --k) {
        double acc = rhs[static_cast<size_t>(k)];
        for (int j = k + 1; j < 3; ++j) acc -= cols[j][static_cast<size_t>(k)] * out[j];
        const double diag = cols[k][static_cast<size_t>(k)];
        if (std::abs(diag) <= 1e-13) return false;
        out[k] = acc / diag;
    }
    return true;
}

}  // namespace detail

inline double rmse(const std::vector<FitPoint>& points, const QuadraticFit& fit) {
    if (points.empty()) throw ContractError("rmse: empty point list");
    double acc = 0.0;
    for (const FitPoint& p : points) {
        const double r = p.y - fit(p.x);
        acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(points.size()));
}

inline QuadraticFit fit_quadratic(const std::vector<FitPoint>& points) {
    const size_t n = points.size();
    if (n < 3) throw DegenerateFitError("fit_quadratic: need at least 3 points");
    bool all_x_equal = true;
    for (const FitPoint& p : points)
        if (p.x != points.front().x) {
            all_x_equal = false;
            break;
        }
    if (all_x_equal) throw DegenerateFitError("fit_quadratic: all x values equal");

    std::vector<double> cols[3];
    std::vector<double> rhs(n);
    for (auto& c : cols) c.resize(n);
    for (size_t i = 0; i < n; ++i) {
        cols[0][i] = points[i].x * points[i].x;
        cols[1][i] = points[i].x;
        cols[2][i] = 1.0;
        rhs[i] = points[i].y;
    }
    double coeff[3];
    if (!detail::qr_solve_3(cols, rhs, coeff))
        throw DegenerateFitError("fit_quadratic: rank-deficient design");
    QuadraticFit fit;
    fit.t1 = coeff[0];
    fit.t2 = coeff[1];
    fit.t3 = coeff[2];
    fit.n_points = static_cast<int>(n);
    fit.rmse = rmse(points, fit);
    return fit;
}

// Spearman rank correlation with average ranks on ties.
inline double spearman_rank_correlation(const std::vector<double>& xs,
                                        const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw DimensionError("spearman: size mismatch");
    if (xs.size() < 2) throw ContractError("spearman: need at least 2 points");
    auto ranks = [](const std::vector<double>& v) {
        const size_t n = v.size();
        std::vector<size_t> order(n);
        std::iota(order.begin(), order.end(), size_t{0});
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return v[a] < v[b]; });
        std::vector<double> r(n);
        size_t i = 0;
        while (i < n) {
            size_t j = i;
            while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
            const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
            for (size_t k = i; k <= j; ++k) r[order[k]] = avg;
            i = j + 1;
        }
        return r;
    };
    const std::vector<double> rx = ranks(xs), ry = ranks(ys);
    double mean = 0.5 * static_cast<double>(xs.size() + 1);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        const double dx = rx[i] - mean, dy = ry[i] - mean;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw ContractError("spearman: constant input");
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace discordlab
