#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "tvar/rational.hpp"

namespace tvar::linalg {

using RowQ = std::vector<Rat>;
using MatQ = std::vector<RowQ>;

struct Echelon {
    MatQ rows;                       // reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots; // pivot column of each row
};

inline Echelon rref(MatQ rows, std::size_t ncols)
{
    Echelon out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0)
            ++p;
        if (p == rows.size())
            continue;
        std::swap(rows[r], rows[p]);
        Rat inv = 1 / rows[r][c];
        for (auto &x : rows[r])
            x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0)
                continue;
            Rat f = rows[i][c];
            for (std::size_t j = c; j < ncols; ++j)
                rows[i][j] -= f * rows[r][j];
        }
        out.pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    out.rows = std::move(rows);
    return out;
}

inline std::size_t rank_of(const MatQ &rows, std::size_t ncols) { return rref(rows, ncols).pivots.size(); }

/// Basis of {x : rows * x = 0}; one vector per free column, in column order.
inline MatQ nullspace(const MatQ &rows, std::size_t ncols)
{
    Echelon e = rref(rows, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (auto p : e.pivots)
        is_pivot[p] = true;
    MatQ basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f])
            continue;
        RowQ v(ncols, Rat(0));
        v[f] = 1;
        for (std::size_t i = 0; i < e.rows.size(); ++i)
            v[e.pivots[i]] = -e.rows[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Canonical basis of span(rows): the reduced echelon rows scaled to primitive integers.
inline std::vector<std::vector<Int>> canonical_span_basis(const MatQ &rows, std::size_t ncols)
{
    Echelon e = rref(rows, ncols);
    std::vector<std::vector<Int>> out;
    out.reserve(e.rows.size());
    for (const auto &r : e.rows)
        out.push_back(primitive_scaling(r));
    return out;
}

inline Rat dot(const RowQ &a, const RowQ &b)
{
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

/// Solves A x = b for square nonsingular A (Gauss-Jordan on the augmented matrix).
inline RowQ solve(MatQ a, RowQ b)
{
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
        a[i].push_back(b[i]);
    Echelon e = rref(std::move(a), n + 1);
    if (e.pivots.size() != n || e.pivots.back() != n - 1)
        throw Error(ErrorKind::Validation, "singular linear system");
    RowQ x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = e.rows[i][n];
    return x;
}

/// Orthogonal projection of v onto span(basis) with respect to the standard dot product.
inline RowQ project_onto_span(const RowQ &v, const MatQ &basis)
{
    if (basis.empty())
        return RowQ(v.size(), Rat(0));
    const std::size_t k = basis.size();
    MatQ gram(k, RowQ(k));
    RowQ rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j)
            gram[i][j] = dot(basis[i], basis[j]);
        rhs[i] = dot(basis[i], v);
    }
    RowQ c = solve(gram, rhs);
    RowQ out(v.size(), Rat(0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            out[j] += c[i] * basis[i][j];
    return out;
}

} // namespace tvar::linalg
