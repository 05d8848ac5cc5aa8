#pragma once

// Small exact linear algebra: Laplace determinants over any commutative
// ring, Cramer solves over the rational-function field, and exact rank
// over the rationals. Matrix sizes here are tiny (k <= 4).

#include "logjet/ratfunc.hpp"

#include <vector>

namespace logjet {

template <class T>
using Matrix = std::vector<std::vector<T>>;

template <class T>
T ring_det(const Matrix<T>& m, const T& zero) {
    std::size_t n = m.size();
    if (n == 0) throw std::logic_error("ring_det: empty matrix");
    for (auto& row : m)
        if (row.size() != n) throw std::logic_error("ring_det: not square");
    if (n == 1) return m[0][0];
    T acc = zero;
    for (std::size_t j = 0; j < n; ++j) {
        Matrix<T> minor;
        minor.reserve(n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<T> row;
            row.reserve(n - 1);
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        T term = m[0][j] * ring_det(minor, zero);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

// Solve G x = v by Cramer's rule; caller guarantees det != 0.
inline std::vector<RatFunc> cramer_solve(const Matrix<RatFunc>& g, const std::vector<RatFunc>& v,
                                         const RatFunc& det_g) {
    std::size_t n = g.size();
    if (det_g.is_zero()) throw std::domain_error("cramer_solve: singular matrix");
    std::vector<RatFunc> x;
    x.reserve(n);
    RatFunc zero(det_g.vars(), Rat(0));
    for (std::size_t p = 0; p < n; ++p) {
        Matrix<RatFunc> gp = g;
        for (std::size_t r = 0; r < n; ++r) gp[r][p] = v[r];
        x.push_back(ring_det(gp, zero) / det_g);
    }
    return x;
}

// Exact rank by Gaussian elimination over Q.
inline std::size_t rank_exact(Matrix<Rat> m) {
    if (m.empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][c].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pivot], m[rank]);
        Rat inv = m[rank][c].inverse();
        for (std::size_t j = c; j < cols; ++j) m[rank][j] *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][c].is_zero()) continue;
            Rat f = m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

// Solve a square exact rational system A x = b (A invertible).
inline std::vector<Rat> solve_exact(Matrix<Rat> a, std::vector<Rat> b) {
    std::size_t n = a.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && a[pivot][c].is_zero()) ++pivot;
        if (pivot == n) throw std::domain_error("solve_exact: singular matrix");
        std::swap(a[pivot], a[c]);
        std::swap(b[pivot], b[c]);
        Rat inv = a[c][c].inverse();
        for (std::size_t j = c; j < n; ++j) a[c][j] *= inv;
        b[c] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c].is_zero()) continue;
            Rat f = a[r][c];
            for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
            b[r] -= f * b[c];
        }
    }
    return b;
}

}  // namespace logjet
