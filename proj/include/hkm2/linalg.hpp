#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hkm2 {

/// Small dense matrix over an exact field scalar (Rational or QuadScalar).
template <typename K>
struct DenseMatrix {
    size_t rows = 0, cols = 0;
    std::vector<K> a;

    DenseMatrix() = default;
    DenseMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c, K(0)) {}

    K& at(size_t r, size_t c) { return a[r * cols + c]; }
    const K& at(size_t r, size_t c) const { return a[r * cols + c]; }
};

/// In-place reduced row echelon form; returns pivot columns (rank = count).
template <typename K>
std::vector<size_t> rref(DenseMatrix<K>& m) {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < m.cols && row < m.rows; ++col) {
        size_t piv = row;
        while (piv < m.rows && m.at(piv, col) == K(0)) ++piv;
        if (piv == m.rows) continue;
        for (size_t c = 0; c < m.cols; ++c) std::swap(m.at(row, c), m.at(piv, c));
        K inv = K(1) / m.at(row, col);
        for (size_t c = col; c < m.cols; ++c) m.at(row, c) = m.at(row, c) * inv;
        for (size_t r = 0; r < m.rows; ++r) {
            if (r == row || m.at(r, col) == K(0)) continue;
            K f = m.at(r, col);
            for (size_t c = col; c < m.cols; ++c)
                m.at(r, c) = m.at(r, c) - f * m.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

/// Basis of the right kernel {v : M v = 0}.
template <typename K>
std::vector<std::vector<K>> kernel_basis(DenseMatrix<K> m) {
    std::vector<size_t> pivots = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (size_t p : pivots) is_pivot[p] = true;
    std::vector<std::vector<K>> basis;
    for (size_t free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<K> v(m.cols, K(0));
        v[free] = K(1);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

struct Inertia {
    size_t pos = 0, neg = 0, zero = 0;
    friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Sylvester inertia of a symmetric matrix by exact congruence elimination.
/// K must expose an exact sign() (Rational and QuadScalar both do).
template <typename K>
Inertia inertia_of_symmetric(DenseMatrix<K> g) {
    if (g.rows != g.cols) throw std::invalid_argument("inertia needs a square matrix");
    const size_t n = g.rows;
    Inertia out;
    for (size_t k = 0; k < n; ++k) {
        if (g.at(k, k) == K(0)) {
            size_t d = k;
            for (size_t j = k + 1; j < n && d == k; ++j)
                if (g.at(j, j) != K(0)) d = j;
            if (d != k) {
                for (size_t c = 0; c < n; ++c) std::swap(g.at(k, c), g.at(d, c));
                for (size_t r = 0; r < n; ++r) std::swap(g.at(r, k), g.at(r, d));
            } else {
                // All remaining diagonal entries vanish; pull in an off-diagonal
                // one (row/col addition keeps the matrix symmetric).
                size_t j = k;
                for (size_t c = k + 1; c < n && j == k; ++c)
                    if (g.at(k, c) != K(0)) j = c;
                if (j == k) {
                    ++out.zero;
                    continue;
                }
                for (size_t c = 0; c < n; ++c) g.at(k, c) = g.at(k, c) + g.at(j, c);
                for (size_t r = 0; r < n; ++r) g.at(r, k) = g.at(r, k) + g.at(r, j);
            }
        }
        K piv = g.at(k, k);
        if (piv.sign() > 0)
            ++out.pos;
        else
            ++out.neg;
        for (size_t i = k + 1; i < n; ++i) {
            if (g.at(i, k) == K(0)) continue;
            K f = g.at(i, k) / piv;
            for (size_t c = k; c < n; ++c) g.at(i, c) = g.at(i, c) - f * g.at(k, c);
            for (size_t r = k; r < n; ++r) g.at(r, i) = g.at(i, r);
        }
    }
    return out;
}

} // namespace hkm2
