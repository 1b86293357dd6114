#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "xortho/errors.hpp"
#include "xortho/multipoly.hpp"
#include "xortho/rational.hpp"

namespace xortho {

// Square matrix of polynomials stored row-major.
using PolyMatrix = std::vector<std::vector<MultiPoly>>;

namespace detail {

inline void check_square(const PolyMatrix& m) {
    const std::size_t n = m.size();
    for (const auto& row : m) {
        if (row.size() != n) throw Error("determinant of non-square matrix");
    }
}

}  // namespace detail

// Fraction-free (Bareiss) determinant. Every internal division is exact;
// a failed division means the elimination invariant broke, which is an
// internal error rather than a data condition.
inline MultiPoly det_poly(PolyMatrix m) {
    detail::check_square(m);
    const std::size_t n = m.size();
    if (n == 0) return MultiPoly::one();
    int sign = 1;
    MultiPoly prev = MultiPoly::one();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t pivot = k;
            for (std::size_t i = k + 1; i < n; ++i) {
                if (!m[i][k].is_zero()) {
                    pivot = i;
                    break;
                }
            }
            if (pivot == k) return MultiPoly::zero();
            std::swap(m[k], m[pivot]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                MultiPoly numerator = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                try {
                    m[i][j] = exact_div(numerator, prev);
                } catch (const NotDivisible&) {
                    throw Error("fraction-free elimination produced a non-exact division");
                }
            }
            m[i][k] = MultiPoly::zero();
        }
        prev = m[k][k];
    }
    MultiPoly out = m[n - 1][n - 1];
    if (sign < 0) out = -out;
    return out;
}

// Cofactor expansion along the first row. Exponential cost; kept as an
// independent oracle for cross-checking det_poly on small matrices.
inline MultiPoly det_cofactor(const PolyMatrix& m) {
    detail::check_square(m);
    const std::size_t n = m.size();
    if (n == 0) return MultiPoly::one();
    if (n == 1) return m[0][0];
    MultiPoly acc;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        PolyMatrix minor(n - 1, std::vector<MultiPoly>(n - 1));
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor[i - 1][cc++] = m[i][c];
            }
        }
        MultiPoly term = m[0][j] * det_cofactor(minor);
        if (j % 2 == 1) term = -term;
        acc += term;
    }
    return acc;
}

// Exact linear solve for square or overdetermined-consistent systems.
// Throws Singular when a square system is rank-deficient, Underdetermined
// when fewer independent equations than unknowns exist, and Inconsistent
// (with the offending original row index) when a residual row is nonzero.
inline std::vector<Rat> solve_linear(const std::vector<std::vector<Rat>>& A,
                                     const std::vector<Rat>& b) {
    const std::size_t rows = A.size();
    if (b.size() != rows) throw Error("solve_linear: rhs size mismatch");
    const std::size_t cols = rows == 0 ? 0 : A[0].size();
    for (const auto& row : A) {
        if (row.size() != cols) throw Error("solve_linear: ragged matrix");
    }
    if (rows < cols) throw Underdetermined("fewer equations than unknowns");

    std::vector<std::vector<Rat>> M(rows, std::vector<Rat>(cols + 1));
    std::vector<std::size_t> origin(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        origin[i] = i;
        for (std::size_t j = 0; j < cols; ++j) M[i][j] = A[i][j];
        M[i][cols] = b[i];
    }

    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && M[pivot][col] == 0) ++pivot;
        if (pivot == rows) break;
        std::swap(M[rank], M[pivot]);
        std::swap(origin[rank], origin[pivot]);
        const Rat inv = Rat(1) / M[rank][col];
        for (std::size_t j = col; j <= cols; ++j) M[rank][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || M[i][col] == 0) continue;
            const Rat f = M[i][col];
            for (std::size_t j = col; j <= cols; ++j) M[i][j] -= f * M[rank][j];
        }
        ++rank;
    }

    if (rank < cols) {
        for (std::size_t i = rank; i < rows; ++i) {
            if (M[i][cols] != 0) throw Inconsistent("zero row with nonzero rhs", origin[i]);
        }
        if (rows == cols) throw Singular("rank-deficient square system");
        throw Underdetermined("rank below unknown count");
    }
    for (std::size_t i = rank; i < rows; ++i) {
        if (M[i][cols] != 0) throw Inconsistent("zero row with nonzero rhs", origin[i]);
    }

    std::vector<Rat> x(cols);
    for (std::size_t j = 0; j < cols; ++j) x[j] = M[j][cols];

    for (std::size_t i = 0; i < rows; ++i) {
        Rat acc(0);
        for (std::size_t j = 0; j < cols; ++j) acc += A[i][j] * x[j];
        if (acc != b[i]) throw Inconsistent("residual row nonzero", i);
    }
    return x;
}

}  // namespace xortho
