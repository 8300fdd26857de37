#pragma once

// Element-wise (Hadamard) arithmetic on dense vectors and matrices.
// Conventions used throughout the library:
//   * 0 * log 0 == 0, realized by mapping zero entries to a flagged zero
//     (stored as 0.0) in hadamard_log;
//   * 0 / 0 == flagged zero; x / 0 with x != 0 is an error.

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "discordlab/errors.hpp"

namespace discordlab {

using Vec = std::vector<double>;

class Matrix {
   public:
    Matrix() = default;
    Matrix(int rows, int cols, double value = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, value) {
        if (rows < 0 || cols < 0) throw DimensionError("Matrix: negative dimension");
    }

    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
        Matrix m(static_cast<int>(rows.size()),
                 rows.size() ? static_cast<int>(rows.begin()->size()) : 0);
        int i = 0;
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != m.cols_)
                throw DimensionError("Matrix::from_rows: ragged rows");
            int j = 0;
            for (double x : row) m(i, j++) = x;
            ++i;
        }
        return m;
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    size_t size() const { return data_.size(); }

    double& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    bool same_shape(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

   private:
    int rows_ = 0;
    int cols_ = 0;
    Vec data_;
};

// Plain dense product, used for oracles and channel application.
inline Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("multiply: inner dimensions differ");
    Matrix r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) {
            double acc = 0.0;
            for (int k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            r(i, j) = acc;
        }
    return r;
}

inline void check_same_size(const Vec& a, const Vec& b, const char* op) {
    if (a.size() != b.size()) throw DimensionError(std::string(op) + ": size mismatch");
}

inline void check_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (!a.same_shape(b)) throw DimensionError(std::string(op) + ": shape mismatch");
}

inline Vec hadamard_product(const Vec& a, const Vec& b) {
    check_same_size(a, b, "hadamard_product");
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * b[i];
    return r;
}

inline Matrix hadamard_product(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b, "hadamard_product");
    Matrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) * b(i, j);
    return r;
}

inline double hadamard_sum(const Vec& a, const Vec& b) {
    check_same_size(a, b, "hadamard_sum");
    double acc = 0.0;
    for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline double hadamard_sum(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b, "hadamard_sum");
    double acc = 0.0;
    for (size_t i = 0; i < a.size(); ++i) acc += a.data()[i] * b.data()[i];
    return acc;
}

namespace detail {

inline double log2_or_flagged_zero(double x, const char* op) {
    if (x < 0.0) throw DomainError(std::string(op) + ": negative entry");
    return x == 0.0 ? 0.0 : std::log2(x);
}

inline double divide_entry(double num, double den, const char* op) {
    if (den == 0.0) {
        if (num == 0.0) return 0.0;  // flagged zero
        throw DivisionError(std::string(op) + ": nonzero entry divided by zero");
    }
    return num / den;
}

}  // namespace detail

// Base-2 element-wise logarithm; zero entries become flagged zeros so that
// downstream Hadamard products realize the 0 log 0 = 0 convention.
inline Vec hadamard_log(const Vec& a) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = detail::log2_or_flagged_zero(a[i], "hadamard_log");
    return r;
}

inline Matrix hadamard_log(const Matrix& a) {
    Matrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            r(i, j) = detail::log2_or_flagged_zero(a(i, j), "hadamard_log");
    return r;
}

inline Vec hadamard_divide(const Vec& a, const Vec& b) {
    check_same_size(a, b, "hadamard_divide");
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = detail::divide_entry(a[i], b[i], "hadamard_divide");
    return r;
}

inline Matrix hadamard_divide(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b, "hadamard_divide");
    Matrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            r(i, j) = detail::divide_entry(a(i, j), b(i, j), "hadamard_divide");
    return r;
}

// Divide column j of a by b[j].
inline Matrix hadamard_divide_columns(const Matrix& a, const Vec& b) {
    if (static_cast<int>(b.size()) != a.cols())
        throw DimensionError("hadamard_divide_columns: vector length != column count");
    Matrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            r(i, j) = detail::divide_entry(a(i, j), b[j], "hadamard_divide_columns");
    return r;
}

// Divide row i of a by b[i].
inline Matrix hadamard_divide_rows(const Matrix& a, const Vec& b) {
    if (static_cast<int>(b.size()) != a.rows())
        throw DimensionError("hadamard_divide_rows: vector length != row count");
    Matrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            r(i, j) = detail::divide_entry(a(i, j), b[i], "hadamard_divide_rows");
    return r;
}

inline double one_norm(const Vec& a) {
    double acc = 0.0;
    for (double x : a) acc += std::abs(x);
    return acc;
}

inline double one_norm(const Matrix& a) {
    double acc = 0.0;
    for (size_t i = 0; i < a.size(); ++i) acc += std::abs(a.data()[i]);
    return acc;
}

inline double two_norm(const Vec& a) { return std::sqrt(hadamard_sum(a, a)); }
inline double two_norm(const Matrix& a) { return std::sqrt(hadamard_sum(a, a)); }

}  // namespace discordlab
