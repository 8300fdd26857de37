#pragma once

// Closed-form results for the two-bit case: state (p00, p01, p10, p11),
// channel E(mu) = (1 - mu) I + mu X with X the bit flip. Everything is in
// base-2 logarithms to match the estimator modules.

#include <cmath>
#include <string>
#include <vector>

#include "discordlab/channels.hpp"
#include "discordlab/info.hpp"
#include "discordlab/rng.hpp"

namespace discordlab {

struct TwoBitState {
    double p00 = 0.0, p01 = 0.0, p10 = 0.0, p11 = 0.0;

    TwoBitState(double a, double b, double c, double d) : p00(a), p01(b), p10(c), p11(d) {
        const double entries[] = {p00, p01, p10, p11};
        detail::check_distribution(entries, 4, "TwoBitState");
    }

    JointState joint_state() const {
        return JointState(Matrix::from_rows({{p00, p01}, {p10, p11}}));
    }
};

struct TwoBitChannel {
    double mu = 0.0;

    explicit TwoBitChannel(double mu_) : mu(mu_) {
        if (!(mu >= 0.0 && mu <= 1.0)) throw ContractError("TwoBitChannel: mu must be in [0, 1]");
    }

    double alpha() const { return 2.0 * mu - 1.0; }

    // Weight vector over the reverse-lex table for M = 2: swap first, then identity.
    Channel channel(const PermutationTable& table) const {
        return assemble_channel(WeightVector(Vec{mu, 1.0 - mu}), table);
    }
};

// H(mu) = -(1 - mu) log2(1 - mu) - mu log2 mu: entropy of the weight vector
// (mu, 1 - mu) describing the channel.
inline double twobit_channel_entropy(double mu) {
    if (!(mu >= 0.0 && mu <= 1.0)) throw ContractError("twobit_channel_entropy: mu out of [0, 1]");
    return -detail::xlog2x(1.0 - mu) - detail::xlog2x(mu);
}

// State discord Delta_E(p) for the two-bit channel, written out explicitly:
// the B-marginal and joint entropies of the channel output minus those of
// the input. Equals state_discord with the assembled channel within 1e-12.
inline double twobit_discord(const TwoBitState& s, double mu) {
    if (!(mu >= 0.0 && mu <= 1.0)) throw ContractError("twobit_discord: mu out of [0, 1]");
    const double nu = 1.0 - mu;
    const double q00 = nu * s.p00 + mu * s.p01;
    const double q01 = mu * s.p00 + nu * s.p01;
    const double q10 = nu * s.p10 + mu * s.p11;
    const double q11 = mu * s.p10 + nu * s.p11;
    using detail::xlog2x;
    return xlog2x(q00 + q10) + xlog2x(q01 + q11)                      // -H_B(pE)
           - xlog2x(q00) - xlog2x(q01) - xlog2x(q10) - xlog2x(q11)    // +H_AB(pE)
           - xlog2x(s.p00 + s.p10) - xlog2x(s.p01 + s.p11)            // +H_B(p)
           + xlog2x(s.p00) + xlog2x(s.p01) + xlog2x(s.p10) + xlog2x(s.p11);  // -H_AB(p)
}

namespace detail {

// f_alpha(x) = x log2((1 + alpha x) / (1 - alpha x)); even in x, zero at
// x = 0 (covers the 0/0 limits arising from zero state entries).
inline double f_alpha(double alpha, double x) {
    if (x == 0.0) return 0.0;
    return x * std::log2((1.0 + alpha * x) / (1.0 - alpha * x));
}

}  // namespace detail

// dDelta/dalpha at alpha = 2 mu - 1, with
//   gamma_0 = (p00 - p01)/(p00 + p01), gamma_1 = (p10 - p11)/(p10 + p11),
//   w_0 = p00 + p01, w_1 = p10 + p11:
//   dDelta/dalpha = (1/2) [ f_a(w0 g0 + w1 g1) - w0 f_a(g0) - w1 f_a(g1) ].
// The 1/2 is the chain-rule factor dmu/dalpha. Satisfies
// sgn(dDelta/dalpha) = -sgn(alpha); zero when gamma_0 = gamma_1.
inline double ddelta_dalpha(const TwoBitState& s, double alpha) {
    if (!(alpha > -1.0 && alpha < 1.0))
        throw DomainError("ddelta_dalpha: alpha must be in (-1, 1)");
    const double w0 = s.p00 + s.p01;
    const double w1 = s.p10 + s.p11;
    const double g0 = w0 > 0.0 ? (s.p00 - s.p01) / w0 : 0.0;
    const double g1 = w1 > 0.0 ? (s.p10 - s.p11) / w1 : 0.0;
    using detail::f_alpha;
    return 0.5 * (f_alpha(alpha, w0 * g0 + w1 * g1) - w0 * f_alpha(alpha, g0) -
                  w1 * f_alpha(alpha, g1));
}

// dDelta/dH via the chain rule: dDelta/dmu divided by
// dH/dmu = log2(1 - mu) - log2(mu). Singular at mu = 1/2 (the entropy
// maximum), rejected rather than patched.
inline double ddelta_dh(const TwoBitState& s, double mu) {
    if (!(mu > 0.0 && mu < 1.0)) throw DomainError("ddelta_dh: mu must be in (0, 1)");
    if (mu == 0.5) throw SingularPointError("ddelta_dh: mu = 1/2 is the entropy maximum");
    const double ddelta_dmu = 2.0 * ddelta_dalpha(s, 2.0 * mu - 1.0);
    return ddelta_dmu / (std::log2(1.0 - mu) - std::log2(mu));
}

// g(y) = y artanh(y): even, convex on (-1, 1).
inline double g_function(double y) {
    if (!(y > -1.0 && y < 1.0)) throw DomainError("g_function: |y| must be < 1");
    return y == 0.0 ? 0.0 : y * std::atanh(y);
}

// True iff g has positive second differences at every interior grid point.
inline bool convexity_check(const std::vector<double>& grid) {
    if (grid.size() < 3) throw ContractError("convexity_check: need at least 3 grid points");
    for (size_t i = 1; i + 1 < grid.size(); ++i) {
        const double d2 = g_function(grid[i - 1]) - 2.0 * g_function(grid[i]) + g_function(grid[i + 1]);
        if (!(d2 > 0.0)) return false;
    }
    return true;
}

struct ScanViolation {
    TwoBitState state;
    double mu;
    std::string kind;  // "monotonicity" or "sign-law"
    double value;
};

struct ScanReport {
    int states_checked = 0;
    int grid_size = 0;
    std::vector<ScanViolation> violations;

    bool passed() const { return violations.empty(); }
};

// Grid of n interior mu values that never contains 1/2: j / d for
// j = 1..n with d the smallest odd integer >= n + 2.
inline std::vector<double> default_mu_grid(int n) {
    if (n < 3) throw ContractError("default_mu_grid: need at least 3 points");
    int d = n + 2;
    if (d % 2 == 0) ++d;
    std::vector<double> grid(static_cast<size_t>(n));
    for (int j = 1; j <= n; ++j) grid[static_cast<size_t>(j - 1)] = static_cast<double>(j) / d;
    return grid;
}

// Verifies, for every state, that Delta(mu) is nondecreasing below 1/2 and
// nonincreasing above, and that alpha * dDelta/dalpha <= 0 at every grid
// point (sign law; zero allowed, e.g. product states).
inline ScanReport monotonicity_scan(const std::vector<TwoBitState>& states,
                                    const std::vector<double>& mu_grid,
                                    double tolerance = 1e-12, bool flip_sign_law = false) {
    for (double mu : mu_grid) {
        if (!(mu > 0.0 && mu < 1.0)) throw DomainError("monotonicity_scan: mu must be in (0, 1)");
        if (mu == 0.5) throw SingularPointError("monotonicity_scan: grid must avoid mu = 1/2");
    }
    ScanReport report;
    report.states_checked = static_cast<int>(states.size());
    report.grid_size = static_cast<int>(mu_grid.size());
    for (const TwoBitState& s : states) {
        double prev_mu = -1.0, prev_delta = 0.0;
        for (double mu : mu_grid) {
            const double delta = twobit_discord(s, mu);
            if (prev_mu >= 0.0 && prev_mu < mu) {
                if (mu < 0.5 && delta < prev_delta - tolerance)
                    report.violations.push_back({s, mu, "monotonicity", delta - prev_delta});
                if (prev_mu > 0.5 && delta > prev_delta + tolerance)
                    report.violations.push_back({s, mu, "monotonicity", delta - prev_delta});
            }
            const double alpha = 2.0 * mu - 1.0;
            double signed_product = alpha * ddelta_dalpha(s, alpha);
            if (flip_sign_law) signed_product = -signed_product;
            if (signed_product > tolerance)
                report.violations.push_back({s, mu, "sign-law", signed_product});
            prev_mu = mu;
            prev_delta = delta;
        }
    }
    return report;
}

template <class Urbg>
inline TwoBitState random_twobit_state(Urbg& rng) {
    double p[4];
    double sum = 0.0;
    for (double& x : p) {
        x = uniform01(rng);
        sum += x;
    }
    if (sum == 0.0) return TwoBitState(0.25, 0.25, 0.25, 0.25);
    return TwoBitState(p[0] / sum, p[1] / sum, p[2] / sum, p[3] / sum);
}

}  // namespace discordlab
