#pragma once

// Generation of random joint states: the two priors (fully random and
// conditionally pure) and the identity-interpolation family that spreads a
// batch over low, medium and high entropy.

#include <cmath>
#include <vector>

#include "discordlab/info.hpp"
#include "discordlab/permutations.hpp"
#include "discordlab/rng.hpp"

namespace discordlab {

enum class PriorKind {
    random_joint,       // every entry U[0,1), normalized
    conditionally_pure  // diagonal with U[0,1) entries, normalized
};

struct StatePrior {
    PriorKind kind = PriorKind::random_joint;
    double interp_cap = 99.0;  // B in b = (1 - a) B
    int grid_size = 100;
};

template <class Urbg>
inline JointState sample_random_joint(int m, Urbg& rng) {
    check_message_size(m, "sample_random_joint");
    Matrix p(m, m);
    double sum = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            p(i, j) = uniform01(rng);
            sum += p(i, j);
        }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) p(i, j) /= sum;
    return JointState(std::move(p));
}

template <class Urbg>
inline JointState sample_conditionally_pure(int m, Urbg& rng) {
    check_message_size(m, "sample_conditionally_pure");
    Matrix p(m, m);
    double sum = 0.0;
    for (int i = 0; i < m; ++i) {
        p(i, i) = uniform01(rng);
        sum += p(i, i);
    }
    if (sum == 0.0) {  // all-zero diagonal draw; fall back to the uniform diagonal
        for (int i = 0; i < m; ++i) p(i, i) = 1.0;
        sum = static_cast<double>(m);
    }
    for (int i = 0; i < m; ++i) p(i, i) /= sum;
    return JointState(std::move(p));
}

// (a p + b I) / ||a p + b I||_1 with I the identity matrix.
inline JointState interpolate_with_identity(const JointState& p, double a, double b) {
    if (!(a >= 0.0 && a <= 1.0)) throw ContractError("interpolate_with_identity: a must be in [0, 1]");
    if (!(b >= 0.0)) throw ContractError("interpolate_with_identity: b must be nonnegative");
    if (a == 0.0 && b == 0.0)
        throw ContractError("interpolate_with_identity: a = b = 0 is degenerate");
    const int m = p.size();
    Matrix r(m, m);
    double sum = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            r(i, j) = a * p(i, j) + (i == j ? b : 0.0);
            sum += r(i, j);
        }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) r(i, j) /= sum;
    return JointState(std::move(r));
}

// Interpolation grid with quadratically growing steps: a_1 = 0 and
// a_n = 0.9999^2. For the 100-point grid this is a = ((i-1) 0.0101)^2.
inline std::vector<double> interpolation_grid(int n) {
    if (n < 1) throw ContractError("interpolation_grid: size must be >= 1");
    std::vector<double> grid(static_cast<size_t>(n));
    if (n == 1) {
        grid[0] = 0.0;
        return grid;
    }
    const double step = 0.9999 / static_cast<double>(n - 1);
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * step;
        grid[static_cast<size_t>(i)] = t * t;
    }
    return grid;
}

// One fresh draw from the prior per grid point, each pushed through the
// identity interpolation with b = (1 - a) B.
template <class Urbg>
inline std::vector<JointState> state_batch(const StatePrior& prior, int m, Urbg& rng) {
    check_message_size(m, "state_batch");
    if (prior.interp_cap < 1.0) throw ContractError("state_batch: interpolation cap must be >= 1");
    const std::vector<double> grid = interpolation_grid(prior.grid_size);
    std::vector<JointState> batch;
    batch.reserve(grid.size());
    for (double a : grid) {
        JointState p = prior.kind == PriorKind::random_joint ? sample_random_joint(m, rng)
                                                             : sample_conditionally_pure(m, rng);
        const double b = (1.0 - a) * prior.interp_cap;
        batch.push_back(interpolate_with_identity(p, a, b));
    }
    return batch;
}

}  // namespace discordlab
