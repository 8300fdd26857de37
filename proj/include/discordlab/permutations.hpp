#pragma once

// Enumeration of S_M in reverse lexicographic order and permutation actions
// on states and channels.
//
// Conventions (fixed so that seeded runs are bit-reproducible):
//   * image[i] = sigma(i), 0-based;
//   * the matrix of sigma has its row-i one in column sigma(i);
//   * permute_columns(p, sigma) realizes right multiplication by that
//     matrix: input column j becomes output column sigma(j);
//   * the table lists image tuples in descending lexicographic order, so
//     row 0 is (M-1, ..., 1, 0) and the last row is the identity.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <vector>

#include "discordlab/info.hpp"
#include "discordlab/tensor.hpp"

namespace discordlab {

inline constexpr int kMaxMessageSize = 8;  // 8! = 40320 permutations

inline std::int64_t factorial(int n) {
    std::int64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline void check_message_size(int m, const char* what) {
    if (m < 1 || m > kMaxMessageSize)
        throw CapacityError(std::string(what) + ": message size must be in [1, 8] (8! = 40320 permutations)");
}

class Permutation {
   public:
    explicit Permutation(std::vector<int> image) : image_(std::move(image)) {
        const int n = static_cast<int>(image_.size());
        std::vector<bool> seen(static_cast<size_t>(n), false);
        for (int x : image_) {
            if (x < 0 || x >= n || seen[static_cast<size_t>(x)])
                throw ContractError("Permutation: image is not a bijection");
            seen[static_cast<size_t>(x)] = true;
        }
    }

    static Permutation identity(int n) {
        std::vector<int> img(static_cast<size_t>(n));
        std::iota(img.begin(), img.end(), 0);
        return Permutation(std::move(img));
    }

    int order() const { return static_cast<int>(image_.size()); }
    int operator()(int i) const { return image_[static_cast<size_t>(i)]; }
    const std::vector<int>& image() const { return image_; }

    Permutation inverse() const {
        std::vector<int> inv(image_.size());
        for (int i = 0; i < order(); ++i) inv[static_cast<size_t>(image_[static_cast<size_t>(i)])] = i;
        return Permutation(std::move(inv));
    }

    // (sigma . tau)(i) = sigma(tau(i)): apply tau first, then sigma.
    Permutation compose_after(const Permutation& tau) const {
        if (order() != tau.order()) throw DimensionError("compose_after: order mismatch");
        std::vector<int> img(image_.size());
        for (int i = 0; i < order(); ++i) img[static_cast<size_t>(i)] = (*this)(tau(i));
        return Permutation(std::move(img));
    }

    bool operator==(const Permutation& o) const { return image_ == o.image_; }

   private:
    std::vector<int> image_;
};

class PermutationTable {
   public:
    PermutationTable(int order, std::vector<Permutation> rows)
        : order_(order), rows_(std::move(rows)) {}

    int order() const { return order_; }
    int size() const { return static_cast<int>(rows_.size()); }
    const Permutation& operator[](int i) const { return rows_[static_cast<size_t>(i)]; }
    const std::vector<Permutation>& rows() const { return rows_; }

    int identity_index() const { return size() - 1; }  // last row in reverse-lex order

   private:
    int order_;
    std::vector<Permutation> rows_;
};

// All M! permutations of [M], image tuples sorted in descending
// lexicographic order.
inline PermutationTable enumerate_reverse_lex(int m) {
    check_message_size(m, "enumerate_reverse_lex");
    std::vector<int> img(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) img[static_cast<size_t>(i)] = m - 1 - i;
    std::vector<Permutation> rows;
    rows.reserve(static_cast<size_t>(factorial(m)));
    while (true) {
        rows.emplace_back(img);
        if (!std::prev_permutation(img.begin(), img.end())) break;
    }
    return PermutationTable(m, std::move(rows));
}

// 0/1 matrix of sigma: row i has its one in column sigma(i).
inline Matrix permutation_matrix(const Permutation& sigma) {
    Matrix m(sigma.order(), sigma.order());
    for (int i = 0; i < sigma.order(); ++i) m(i, sigma(i)) = 1.0;
    return m;
}

// Right multiplication by the matrix of sigma as a column relabeling:
// output column sigma(j) = input column j. Never materializes the matrix.
inline Matrix permute_columns(const Matrix& p, const Permutation& sigma) {
    if (p.cols() != sigma.order()) throw DimensionError("permute_columns: column count != order");
    Matrix r(p.rows(), p.cols());
    for (int j = 0; j < p.cols(); ++j)
        for (int i = 0; i < p.rows(); ++i) r(i, sigma(j)) = p(i, j);
    return r;
}

inline JointState permute_columns(const JointState& p, const Permutation& sigma) {
    return JointState(permute_columns(p.matrix(), sigma));
}

}  // namespace discordlab
