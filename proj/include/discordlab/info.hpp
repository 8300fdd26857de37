#pragma once

// Probability types and the Shannon measures built on Hadamard arithmetic.
// All entropies are in bits. Normalization uses the one-norm: a distribution
// sums to 1 within kNormTolerance.

#include <cmath>
#include <utility>
#include <vector>

#include "discordlab/tensor.hpp"

namespace discordlab {

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kPurityEntropyThreshold = 1e-10;

namespace detail {

inline double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// Shannon entropy of a raw buffer, no validation. Shared by the public
// operations and the estimator hot path so both compute identical bits.
inline double entropy_buffer(const double* p, size_t n) {
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) acc -= xlog2x(p[i]);
    return acc;
}

inline void check_distribution(const double* p, size_t n, const char* what) {
    double sum = 0.0;
    for (size_t i = 0; i < n; ++i) {
        if (p[i] < 0.0) throw ContractError(std::string(what) + ": negative entry");
        sum += p[i];
    }
    if (std::abs(sum - 1.0) > kNormTolerance)
        throw ContractError(std::string(what) + ": entries must sum to 1");
}

// I = H(A) + H(B) - H(AB) on a row-major rows x cols buffer.
inline double mutual_information_buffer(const double* p, int rows, int cols) {
    double h_joint = 0.0;
    double h_a = 0.0;
    for (int i = 0; i < rows; ++i) {
        double row_sum = 0.0;
        const double* row = p + static_cast<size_t>(i) * cols;
        for (int j = 0; j < cols; ++j) {
            row_sum += row[j];
            h_joint -= xlog2x(row[j]);
        }
        h_a -= xlog2x(row_sum);
    }
    double h_b = 0.0;
    for (int j = 0; j < cols; ++j) {
        double col_sum = 0.0;
        for (int i = 0; i < rows; ++i) col_sum += p[static_cast<size_t>(i) * cols + j];
        h_b -= xlog2x(col_sum);
    }
    return h_a + h_b - h_joint;
}

inline double tv_buffer(const double* p, const double* q, size_t n) {
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) acc += std::abs(p[i] - q[i]);
    return 0.5 * acc;
}

}  // namespace detail

class ProbVector {
   public:
    explicit ProbVector(Vec entries) : entries_(std::move(entries)) {
        detail::check_distribution(entries_.data(), entries_.size(), "ProbVector");
    }

    int size() const { return static_cast<int>(entries_.size()); }
    double operator[](int i) const { return entries_[static_cast<size_t>(i)]; }
    const Vec& entries() const { return entries_; }

   private:
    Vec entries_;
};

// A definite message: single unit entry at `index` (0-based) of `length`.
struct Versor {
    int length;
    int index;

    ProbVector prob_vector() const {
        Vec v(static_cast<size_t>(length), 0.0);
        v[static_cast<size_t>(index)] = 1.0;
        return ProbVector(std::move(v));
    }
};

// Joint message distribution shared by the two parties. Square by contract
// (equal message sizes) and normalized to total mass 1.
class JointState {
   public:
    explicit JointState(Matrix m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols())
            throw ContractError("JointState: message sizes must be equal (square matrix)");
        detail::check_distribution(m_.data(), m_.size(), "JointState");
    }

    static JointState from_rows(std::initializer_list<std::initializer_list<double>> rows) {
        return JointState(Matrix::from_rows(rows));
    }

    int size() const { return m_.rows(); }
    double operator()(int i, int j) const { return m_(i, j); }
    const Matrix& matrix() const { return m_; }
    const double* data() const { return m_.data(); }

    bool operator==(const JointState& o) const { return m_ == o.m_; }

   private:
    Matrix m_;
};

inline double entropy(const ProbVector& p) {
    return detail::entropy_buffer(p.entries().data(), p.entries().size());
}

inline double entropy(const JointState& p) {
    return detail::entropy_buffer(p.data(), p.matrix().size());
}

inline ProbVector marginal_a(const JointState& p) {
    Vec v(static_cast<size_t>(p.size()), 0.0);
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < p.size(); ++j) v[static_cast<size_t>(i)] += p(i, j);
    return ProbVector(std::move(v));
}

inline ProbVector marginal_b(const JointState& p) {
    Vec v(static_cast<size_t>(p.size()), 0.0);
    for (int j = 0; j < p.size(); ++j)
        for (int i = 0; i < p.size(); ++i) v[static_cast<size_t>(j)] += p(i, j);
    return ProbVector(std::move(v));
}

// H(A|B) = H(AB) - H(B) = -sum_{mm'} p_{mm'} log2(p_{mm'} / p^B_{m'}).
// Defined this way (not as the entropy of the conditional matrix) so that
// J = H(A) - H(A|B) equals the mutual information identically.
inline double conditional_entropy_a_given_b(const JointState& p) {
    const ProbVector pb = marginal_b(p);
    double acc = 0.0;
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < p.size(); ++j) {
            const double x = p(i, j);
            if (x > 0.0) acc -= x * std::log2(x / pb[j]);
        }
    return acc;
}

inline double conditional_entropy_b_given_a(const JointState& p) {
    const ProbVector pa = marginal_a(p);
    double acc = 0.0;
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < p.size(); ++j) {
            const double x = p(i, j);
            if (x > 0.0) acc -= x * std::log2(x / pa[i]);
        }
    return acc;
}

// I = H(A) + H(B) - H(AB).
inline double mutual_information(const JointState& p) {
    return detail::mutual_information_buffer(p.data(), p.size(), p.size());
}

// J = H(A) - H(A|B), evaluated through the conditioning route. Agrees with
// mutual_information within 1e-12; kept as an independent cross-check path.
inline double mutual_information_via_conditioning(const JointState& p) {
    return entropy(marginal_a(p)) - conditional_entropy_a_given_b(p);
}

inline double tv_distance(const JointState& p, const JointState& q) {
    if (p.size() != q.size()) throw DimensionError("tv_distance: shape mismatch");
    return detail::tv_buffer(p.data(), q.data(), p.matrix().size());
}

inline double tv_distance(const ProbVector& p, const ProbVector& q) {
    if (p.size() != q.size()) throw DimensionError("tv_distance: size mismatch");
    return detail::tv_buffer(p.entries().data(), q.entries().data(), p.entries().size());
}

// True iff every row and every column has at most one entry above the
// tolerance, i.e. the state is a permutation of a diagonal matrix. This is
// equivalent to both conditional entropies vanishing.
inline bool is_conditionally_pure(const JointState& p, double tolerance = kNormTolerance) {
    const int n = p.size();
    for (int i = 0; i < n; ++i) {
        int nonzero = 0;
        for (int j = 0; j < n; ++j)
            if (p(i, j) > tolerance) ++nonzero;
        if (nonzero > 1) return false;
    }
    for (int j = 0; j < n; ++j) {
        int nonzero = 0;
        for (int i = 0; i < n; ++i)
            if (p(i, j) > tolerance) ++nonzero;
        if (nonzero > 1) return false;
    }
    return true;
}

}  // namespace discordlab
