#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lborel/rational.hpp"

namespace lborel {

// Small dense matrices over Q. Everything here is exact Gaussian
// elimination; sizes stay in the tens for every catalogued model.
using RatMatrix = std::vector<std::vector<Rational>>;
using RatVector = std::vector<Rational>;

inline RatMatrix identity_matrix(std::size_t n) {
    RatMatrix m(n, RatVector(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = Rational(1);
    return m;
}

inline RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b) {
    std::size_t r = a.size(), inner = b.size(), c = b.empty() ? 0 : b[0].size();
    RatMatrix out(r, RatVector(c, Rational(0)));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k].is_zero())
                continue;
            for (std::size_t j = 0; j < c; ++j)
                out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

inline std::size_t mat_rank(RatMatrix m) {
    std::size_t rows = m.size();
    std::size_t cols = rows ? m[0].size() : 0;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][col].is_zero())
            ++pivot;
        if (pivot == rows)
            continue;
        std::swap(m[pivot], m[rank]);
        Rational inv = m[rank][col].inverse();
        for (std::size_t j = col; j < cols; ++j)
            m[rank][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || m[i][col].is_zero())
                continue;
            Rational f = m[i][col];
            for (std::size_t j = col; j < cols; ++j)
                m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

inline Rational mat_det(RatMatrix m) {
    std::size_t n = m.size();
    Rational det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col].is_zero())
            ++pivot;
        if (pivot == n)
            return Rational(0);
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        Rational inv = m[col][col].inverse();
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m[i][col].is_zero())
                continue;
            Rational f = m[i][col] * inv;
            for (std::size_t j = col; j < n; ++j)
                m[i][j] -= f * m[col][j];
        }
    }
    return det;
}

inline std::optional<RatMatrix> mat_inverse(RatMatrix m) {
    std::size_t n = m.size();
    RatMatrix inv = identity_matrix(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col].is_zero())
            ++pivot;
        if (pivot == n)
            return std::nullopt;
        std::swap(m[pivot], m[col]);
        std::swap(inv[pivot], inv[col]);
        Rational f = m[col][col].inverse();
        for (std::size_t j = 0; j < n; ++j) {
            m[col][j] *= f;
            inv[col][j] *= f;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || m[i][col].is_zero())
                continue;
            Rational g = m[i][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[i][j] -= g * m[col][j];
                inv[i][j] -= g * inv[col][j];
            }
        }
    }
    return inv;
}

// Solves A x = b exactly; empty optional when inconsistent. When the
// solution is underdetermined, free variables are set to zero.
inline std::optional<RatVector> mat_solve(RatMatrix a, RatVector b) {
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;
    std::vector<std::optional<std::size_t>> pivot_of_col(cols);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot][col].is_zero())
            ++pivot;
        if (pivot == rows)
            continue;
        std::swap(a[pivot], a[rank]);
        std::swap(b[pivot], b[rank]);
        Rational f = a[rank][col].inverse();
        for (std::size_t j = col; j < cols; ++j)
            a[rank][j] *= f;
        b[rank] *= f;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || a[i][col].is_zero())
                continue;
            Rational g = a[i][col];
            for (std::size_t j = col; j < cols; ++j)
                a[i][j] -= g * a[rank][j];
            b[i] -= g * b[rank];
        }
        pivot_of_col[col] = rank;
        ++rank;
    }
    for (std::size_t i = rank; i < rows; ++i)
        if (!b[i].is_zero())
            return std::nullopt;
    RatVector x(cols, Rational(0));
    for (std::size_t col = 0; col < cols; ++col)
        if (pivot_of_col[col])
            x[col] = b[*pivot_of_col[col]];
    return x;
}

// Signature of a symmetric matrix via congruence diagonalization.
// Returns (#positive, #negative) diagonal entries.
inline std::pair<int, int> symmetric_signature(RatMatrix m) {
    std::size_t n = m.size();
    int pos = 0, neg = 0;
    for (std::size_t col = 0; col < n; ++col) {
        if (m[col][col].is_zero()) {
            // find a row below with nonzero entry in this column and mix it in
            std::size_t other = col + 1;
            while (other < n && m[other][col].is_zero())
                ++other;
            if (other == n)
                continue; // column already cleared; zero eigenvalue direction
            for (std::size_t j = 0; j < n; ++j)
                m[col][j] += m[other][j];
            for (std::size_t i = 0; i < n; ++i)
                m[i][col] += m[i][other];
        }
        Rational d = m[col][col];
        if (d.sign() > 0)
            ++pos;
        else if (d.sign() < 0)
            ++neg;
        Rational inv = d.inverse();
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m[i][col].is_zero())
                continue;
            Rational f = m[i][col] * inv;
            for (std::size_t j = 0; j < n; ++j)
                m[i][j] -= f * m[col][j];
            for (std::size_t j = 0; j < n; ++j)
                m[j][i] -= f * m[j][col];
        }
    }
    return {pos, neg};
}

} // namespace lborel
