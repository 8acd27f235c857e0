#pragma once

#include "coindex/series.hpp"

namespace coindex {

/// Determinant of a small matrix of series by Laplace expansion.
template <class F>
MultiSeries<F> det_series(const Mat<MultiSeries<F>>& m) {
    const size_t n = m.size();
    if (n == 0) throw computation_error("det_series: empty matrix");
    if (n == 1) return m[0][0];
    const int nv = m[0][0].nvars();
    Order ord;
    for (const auto& row : m)
        for (const auto& e : row) ord = min_order(ord, e.order());
    MultiSeries<F> acc(nv, ord);
    for (size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        Mat<MultiSeries<F>> minor;
        for (size_t r = 1; r < n; ++r) {
            std::vector<MultiSeries<F>> row;
            for (size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        MultiSeries<F> term = m[0][j] * det_series(minor);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

/// Inverse of a series matrix whose constant part is invertible (adjugate route).
template <class F>
Mat<MultiSeries<F>> invert_series_matrix(const Mat<MultiSeries<F>>& m) {
    const size_t n = m.size();
    MultiSeries<F> det = det_series(m);
    if (scalar_traits<F>::is_zero(det.constant_term()))
        throw computation_error("invert_series_matrix: singular constant part");
    MultiSeries<F> det_inv = det.unit_inverse();
    Mat<MultiSeries<F>> inv(n);
    for (size_t i = 0; i < n; ++i) inv[i].resize(n, MultiSeries<F>(m[0][0].nvars(), det.order()));
    if (n == 1) {
        inv[0][0] = det_inv;
        return inv;
    }
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            Mat<MultiSeries<F>> minor;
            for (size_t r = 0; r < n; ++r) {
                if (r == j) continue;  // adjugate: cofactor of (j, i)
                std::vector<MultiSeries<F>> row;
                for (size_t c = 0; c < n; ++c)
                    if (c != i) row.push_back(m[r][c]);
                minor.push_back(std::move(row));
            }
            MultiSeries<F> cof = det_series(minor) * det_inv;
            inv[i][j] = ((i + j) % 2 == 0) ? cof : -cof;
        }
    }
    return inv;
}

/// Elementary symmetric functions of the eigenvalues: sums of principal minors.
template <class F>
std::vector<MultiSeries<F>> elementary_symmetric_series(const Mat<MultiSeries<F>>& m) {
    const size_t n = m.size();
    const int nv = m[0][0].nvars();
    Order ord;
    for (const auto& row : m)
        for (const auto& e : row) ord = min_order(ord, e.order());
    std::vector<MultiSeries<F>> out(n + 1, MultiSeries<F>(nv, ord));
    out[0] = MultiSeries<F>::constant(nv, scalar_traits<F>::one(), ord);
    auto next_subset = [n](std::vector<size_t>& idx) -> bool {
        const size_t k = idx.size();
        for (size_t i = k; i-- > 0;) {
            if (idx[i] < n - (k - i)) {
                ++idx[i];
                for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                return true;
            }
        }
        return false;
    };
    for (size_t k = 1; k <= n; ++k) {
        std::vector<size_t> idx(k);
        for (size_t i = 0; i < k; ++i) idx[i] = i;
        MultiSeries<F> acc(nv, ord);
        do {
            Mat<MultiSeries<F>> sub(k);
            for (size_t r = 0; r < k; ++r)
                for (size_t c = 0; c < k; ++c) sub[r].push_back(m[idx[r]][idx[c]]);
            acc = acc + det_series(sub);
        } while (next_subset(idx));
        out[k] = acc;
    }
    return out;
}

}  // namespace coindex
