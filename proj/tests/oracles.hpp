#pragma once
// Brute-force reference computations, deliberately independent of the library's algorithms.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "tvar/tvar.hpp"

namespace oracle {

using namespace tvar;

/// Facet normals of a full-dimensional cone by active sets: every (n-1)-subset of
/// generators of rank n-1 spans a candidate hyperplane, kept when one side holds all generators.
inline std::vector<LatticeVector> facets_by_active_sets(std::size_t n, Space space, const std::vector<LatticeVector> &gens)
{
    std::set<LatticeVector> out;
    std::vector<std::size_t> idx(n - 1);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == n - 1) {
            linalg::MatQ rows;
            for (std::size_t i : idx) {
                linalg::RowQ r;
                for (const auto &c : gens[i].coords())
                    r.push_back(Rat(c));
                rows.push_back(r);
            }
            linalg::MatQ ns = linalg::nullspace(rows, n);
            if (ns.size() != 1)
                return;
            LatticeVector a(dual_space(space), primitive_scaling(ns[0]));
            for (int sign : {1, -1}) {
                LatticeVector s = sign == 1 ? a : -a;
                bool ok = std::all_of(gens.begin(), gens.end(), [&](const LatticeVector &g) { return pairing(s, g) >= 0; });
                if (ok)
                    out.insert(s);
            }
            return;
        }
        for (std::size_t i = start; i < gens.size(); ++i) {
            idx[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    if (n == 1) {
        // a ray or a line in rank 1
        bool pos = false, neg = false;
        for (const auto &g : gens) {
            pos = pos || g[0] > 0;
            neg = neg || g[0] < 0;
        }
        if (pos && !neg)
            out.insert(LatticeVector(dual_space(space), {Int(1)}));
        if (neg && !pos)
            out.insert(LatticeVector(dual_space(space), {Int(-1)}));
        return {out.begin(), out.end()};
    }
    rec(0, 0);
    return {out.begin(), out.end()};
}

/// Coefficients of x in terms of the rays of a simplicial full-dimensional cone.
inline std::vector<Rat> simplicial_coordinates(const std::vector<LatticeVector> &rays, const LatticeVector &x)
{
    const std::size_t n = x.rank();
    linalg::MatQ a(n, linalg::RowQ(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a[i][j] = Rat(rays[j][i]);
    linalg::RowQ b;
    for (const auto &c : x.coords())
        b.push_back(Rat(c));
    return linalg::solve(a, b);
}

/// Irreducible lattice points of norm <= bound in a simplicial full-dimensional cone: x is
/// reducible iff some y != 0, x in the parallelepiped spanned below x, has x - y in the cone too.
inline std::vector<LatticeVector> irreducibles_simplicial(const Cone &c, long bound)
{
    std::vector<LatticeVector> rs = rays(c);
    const std::size_t n = c.rank();
    std::vector<LatticeVector> out;
    for (const auto &x : lattice_points(c, bound)) {
        if (x.is_zero())
            continue;
        std::vector<Rat> coef = simplicial_coordinates(rs, x);
        std::vector<Int> lo(n, Int(0)), hi(n, Int(0));
        for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
            std::vector<Rat> v(n, Rat(0));
            for (std::size_t j = 0; j < n; ++j)
                if (mask & (std::size_t(1) << j))
                    for (std::size_t i = 0; i < n; ++i)
                        v[i] += coef[j] * Rat(rs[j][i]);
            for (std::size_t i = 0; i < n; ++i) {
                lo[i] = std::min(lo[i], floor_of(v[i]));
                hi[i] = std::max(hi[i], ceil_of(v[i]));
            }
        }
        bool reducible = false;
        detail::for_each_box_point(lo, hi, c.space(), [&](const LatticeVector &y) {
            if (reducible || y.is_zero() || y == x)
                return;
            if (c.contains(y) && c.contains(x - y))
                reducible = true;
        });
        if (!reducible)
            out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Whether x is a nonnegative integer combination of `basis`, by recursion on a positive grading.
inline bool representable(const Cone &c, const std::vector<LatticeVector> &basis, const LatticeVector &x,
                          std::map<LatticeVector, bool> &memo)
{
    if (x.is_zero())
        return true;
    auto it = memo.find(x);
    if (it != memo.end())
        return it->second;
    bool ok = false;
    for (const auto &h : basis) {
        LatticeVector rest = x - h;
        if (c.contains(rest) && representable(c, basis, rest, memo)) {
            ok = true;
            break;
        }
    }
    memo[x] = ok;
    return ok;
}

/// d/dx of x^a y^b as (coefficient, exponents); coefficient 0 means the zero polynomial.
struct Monomial {
    long coeff;
    long a;
    long b;
};

inline Monomial partial(const Monomial &m, int var)
{
    if (var == 0)
        return m.a == 0 ? Monomial{0, 0, 0} : Monomial{m.coeff * m.a, m.a - 1, m.b};
    return m.b == 0 ? Monomial{0, 0, 0} : Monomial{m.coeff * m.b, m.a, m.b - 1};
}

/// D_e straight from the definition: max over lattice m in sigma^dual minus tau, with
/// m + e in sigma^dual, of h(m) - h(m + e), scanned over a box.
inline QDivisor d_e_by_definition(const PolyhedralDivisor &dd, const RayContext &ctx, const LatticeVector &e, long box)
{
    QDivisor out(dd.base());
    Cone weights = dd.weight_cone();
    for (const auto &[p, delta] : dd.coeffs()) {
        std::optional<Rat> best;
        for (const auto &m : lattice_points(weights, box)) {
            if (ctx.tau().contains(m))
                continue;
            LatticeVector me = m + e;
            if (!weights.contains(me))
                continue;
            Rat v = support_eval(delta, m) - support_eval(delta, me);
            if (!best || v > *best)
                best = v;
        }
        if (best)
            out.add(p, *best);
    }
    return out;
}

/// Search for e in S_rho with Phi_e != 0, growing the bound up to `max_bound`.
inline std::optional<LatticeVector> brute_force_witness(const PolyhedralDivisor &dd, const RayContext &ctx, long max_bound)
{
    long searched = -1;
    for (long b = 2; b <= max_bound; b = std::min(max_bound, b * 2)) {
        for (const auto &e : s_rho_enumerate(ctx, b)) {
            if (max_norm(e) <= searched)
                continue;
            QDivisor minus = Rat(-1) * d_e(dd, ctx, e, DeMode::Slow);
            if (h0(dd.base(), minus).positive())
                return e;
        }
        searched = b;
        if (b == max_bound)
            break;
    }
    return std::nullopt;
}

} // namespace oracle
