#pragma once

#include <cstddef>
#include <vector>

#include "scalar.hpp"
#include "errors.hpp"

namespace fdolb {

/// Dense row-major matrix over an arbitrary entry type. Entry algebra is left
/// to the caller; this is storage plus shape checks.
template <class T>
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

/// Exact rank by Gaussian elimination over Q(i).
inline std::size_t rank(Matrix<Scalar> m) {
    std::size_t rk = 0;
    for (std::size_t col = 0; col < m.cols() && rk < m.rows(); ++col) {
        std::size_t pivot = rk;
        while (pivot < m.rows() && m.at(pivot, col).is_zero()) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != rk)
            for (std::size_t j = col; j < m.cols(); ++j) std::swap(m.at(pivot, j), m.at(rk, j));
        Scalar inv = m.at(rk, col).inv();
        for (std::size_t j = col; j < m.cols(); ++j) m.at(rk, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == rk || m.at(i, col).is_zero()) continue;
            Scalar f = m.at(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(rk, j);
        }
        ++rk;
    }
    return rk;
}

/// Basis of the null space, one column vector per basis element.
inline std::vector<std::vector<Scalar>> kernel_basis(Matrix<Scalar> m) {
    std::vector<std::ptrdiff_t> pivot_of_col(m.cols(), -1);
    std::size_t rk = 0;
    for (std::size_t col = 0; col < m.cols() && rk < m.rows(); ++col) {
        std::size_t pivot = rk;
        while (pivot < m.rows() && m.at(pivot, col).is_zero()) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != rk)
            for (std::size_t j = col; j < m.cols(); ++j) std::swap(m.at(pivot, j), m.at(rk, j));
        Scalar inv = m.at(rk, col).inv();
        for (std::size_t j = col; j < m.cols(); ++j) m.at(rk, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == rk || m.at(i, col).is_zero()) continue;
            Scalar f = m.at(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(rk, j);
        }
        pivot_of_col[col] = std::ptrdiff_t(rk);
        ++rk;
    }
    std::vector<std::vector<Scalar>> basis;
    for (std::size_t col = 0; col < m.cols(); ++col) {
        if (pivot_of_col[col] >= 0) continue;
        std::vector<Scalar> v(m.cols(), Scalar());
        v[col] = Scalar(1);
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (pivot_of_col[c] >= 0) v[c] = -m.at(std::size_t(pivot_of_col[c]), col);
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace fdolb
