#pragma once

// Doubly stochastic channels through their Birkhoff representation: a
// channel is the convex combination E = sum_sigma w_sigma Pi_sigma, where
// the weight index follows the reverse-lex permutation table and the
// channel entropy is the Shannon entropy of the weight vector.

#include <cmath>
#include <utility>
#include <vector>

#include "discordlab/info.hpp"
#include "discordlab/permutations.hpp"
#include "discordlab/rng.hpp"

namespace discordlab {

// Probability vector over reverse-lex permutation indices; length M!.
class WeightVector {
   public:
    explicit WeightVector(Vec weights) : w_(std::move(weights)) {
        detail::check_distribution(w_.data(), w_.size(), "WeightVector");
    }

    int size() const { return static_cast<int>(w_.size()); }
    double operator[](int i) const { return w_[static_cast<size_t>(i)]; }
    const Vec& weights() const { return w_; }

    double entropy_bits() const { return detail::entropy_buffer(w_.data(), w_.size()); }

    bool operator==(const WeightVector& o) const { return w_ == o.w_; }

   private:
    Vec w_;
};

class Channel {
   public:
    Channel(Matrix matrix, WeightVector weights)
        : m_(std::move(matrix)), w_(std::move(weights)), entropy_(w_.entropy_bits()) {
        if (m_.rows() != m_.cols()) throw ContractError("Channel: matrix must be square");
        for (int i = 0; i < m_.rows(); ++i) {
            double row_sum = 0.0, col_sum = 0.0;
            for (int j = 0; j < m_.cols(); ++j) {
                if (m_(i, j) < 0.0) throw ContractError("Channel: negative entry");
                row_sum += m_(i, j);
                col_sum += m_(j, i);
            }
            if (std::abs(row_sum - 1.0) > kNormTolerance || std::abs(col_sum - 1.0) > kNormTolerance)
                throw ContractError("Channel: matrix is not doubly stochastic");
        }
    }

    int order() const { return m_.rows(); }
    const Matrix& matrix() const { return m_; }
    const WeightVector& weights() const { return w_; }
    double entropy_bits() const { return entropy_; }

   private:
    Matrix m_;
    WeightVector w_;
    double entropy_;
};

// Maximum-entropy prior: every permutation equally weighted, H = log2 M!.
inline WeightVector uniform_weights(int m) {
    check_message_size(m, "uniform_weights");
    const auto n = static_cast<size_t>(factorial(m));
    return WeightVector(Vec(n, 1.0 / static_cast<double>(n)));
}

// Low-entropy prior. The first element is drawn from U[0,1) and shrunk by
// 1/M!; each following element is drawn from U[1 - sum_so_far, 1) while that
// interval is nonempty, i.e. while the cumulative mass is still below 1.
// The draw chosen from that interval always tops the mass up past 1, so all
// later elements are zero and the normalized vector has a single dominant
// weight (entropy near zero, far below log2 M!).
template <class Urbg>
inline WeightVector low_entropy_weights(int m, Urbg& rng) {
    check_message_size(m, "low_entropy_weights");
    const auto n = static_cast<size_t>(factorial(m));
    if (n == 1) return WeightVector(Vec{1.0});
    Vec w(n, 0.0);
    w[0] = uniform01(rng) / static_cast<double>(n);
    double mass = w[0];
    for (size_t l = 1; l < n && mass < 1.0; ++l) {
        const double lo = 1.0 - mass;
        w[l] = lo + (1.0 - lo) * uniform01(rng);
        mass += w[l];
    }
    for (double& x : w) x /= mass;
    return WeightVector(std::move(w));
}

// (a w_down + (1-a) w_up) / ||.||_1; endpoints returned exactly.
inline WeightVector interpolate_weights(const WeightVector& w_down, const WeightVector& w_up,
                                        double a) {
    if (w_down.size() != w_up.size())
        throw DimensionError("interpolate_weights: length mismatch");
    if (!(a >= 0.0 && a <= 1.0)) throw ContractError("interpolate_weights: a must be in [0, 1]");
    if (a == 0.0) return w_up;
    if (a == 1.0) return w_down;
    Vec w(static_cast<size_t>(w_down.size()));
    double sum = 0.0;
    for (int i = 0; i < w_down.size(); ++i) {
        w[static_cast<size_t>(i)] = a * w_down[i] + (1.0 - a) * w_up[i];
        sum += w[static_cast<size_t>(i)];
    }
    for (double& x : w) x /= sum;
    return WeightVector(std::move(w));
}

// E = sum_sigma w_sigma Pi_sigma, scattered directly into the matrix.
inline Channel assemble_channel(const WeightVector& w, const PermutationTable& table) {
    if (w.size() != table.size())
        throw DimensionError("assemble_channel: weight count != permutation count");
    const int m = table.order();
    Matrix e(m, m);
    for (int s = 0; s < table.size(); ++s) {
        const double ws = w[s];
        if (ws == 0.0) continue;
        const Permutation& sigma = table[s];
        for (int i = 0; i < m; ++i) e(i, sigma(i)) += ws;
    }
    return Channel(std::move(e), w);
}

// The noiseless channel: all weight on the identity permutation.
inline Channel identity_channel(const PermutationTable& table) {
    Vec w(static_cast<size_t>(table.size()), 0.0);
    w[static_cast<size_t>(table.identity_index())] = 1.0;
    return assemble_channel(WeightVector(std::move(w)), table);
}

// p -> p E: the noise acts on the second party's message index only, the
// first party's side is ideal. Row sums (the first marginal) are preserved.
inline JointState apply_channel(const JointState& p, const Channel& e) {
    if (p.size() != e.order()) throw DimensionError("apply_channel: dimension mismatch");
    return JointState(multiply(p.matrix(), e.matrix()));
}

}  // namespace discordlab
