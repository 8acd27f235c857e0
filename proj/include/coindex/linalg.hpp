#pragma once

#include <optional>
#include <vector>

#include "coindex/scalar.hpp"

namespace coindex {

template <class F>
using Mat = std::vector<std::vector<F>>;

/// One solution of A x = b by Gauss elimination with free unknowns set to zero.
/// Returns nullopt when the system is inconsistent. Exact over a field scalar.
template <class F>
std::optional<std::vector<F>> solve_linear(Mat<F> a, std::vector<F> b) {
    using T = scalar_traits<F>;
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : 0;
    std::vector<int> pivot_col_of_row(rows, -1);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && T::is_zero(a[piv][c])) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        std::swap(b[piv], b[r]);
        F inv = T::one() / a[r][c];
        for (size_t j = c; j < cols; ++j) a[r][j] = a[r][j] * inv;
        b[r] = b[r] * inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || T::is_zero(a[i][c])) continue;
            F f = a[i][c];
            for (size_t j = c; j < cols; ++j) a[i][j] = a[i][j] - f * a[r][j];
            b[i] = b[i] - f * b[r];
        }
        pivot_col_of_row[r] = int(c);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (!T::is_zero(b[i])) return std::nullopt;
    std::vector<F> x(cols, T::zero());
    for (size_t i = 0; i < r; ++i) x[size_t(pivot_col_of_row[i])] = b[i];
    return x;
}

template <class F>
std::optional<Mat<F>> invert_matrix(const Mat<F>& m) {
    using T = scalar_traits<F>;
    const size_t n = m.size();
    Mat<F> a = m;
    Mat<F> inv(n, std::vector<F>(n, T::zero()));
    for (size_t i = 0; i < n; ++i) inv[i][i] = T::one();
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && T::is_zero(a[piv][c])) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[c]);
        std::swap(inv[piv], inv[c]);
        F s = T::one() / a[c][c];
        for (size_t j = 0; j < n; ++j) {
            a[c][j] = a[c][j] * s;
            inv[c][j] = inv[c][j] * s;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == c || T::is_zero(a[i][c])) continue;
            F f = a[i][c];
            for (size_t j = 0; j < n; ++j) {
                a[i][j] = a[i][j] - f * a[c][j];
                inv[i][j] = inv[i][j] - f * inv[c][j];
            }
        }
    }
    return inv;
}

template <class F>
F det_matrix(Mat<F> a) {
    using T = scalar_traits<F>;
    const size_t n = a.size();
    F det = T::one();
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && T::is_zero(a[piv][c])) ++piv;
        if (piv == n) return T::zero();
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = T::zero() - det;
        }
        det = det * a[c][c];
        F s = T::one() / a[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (T::is_zero(a[i][c])) continue;
            F f = a[i][c] * s;
            for (size_t j = c; j < n; ++j) a[i][j] = a[i][j] - f * a[c][j];
        }
    }
    return det;
}

}  // namespace coindex
