#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "tvar/error.hpp"
#include "tvar/linalg.hpp"
#include "tvar/rational.hpp"

namespace tvar {

/// Which of the two dual lattices a vector lives in.
enum class Space { M, N };

inline Space dual_space(Space s) { return s == Space::M ? Space::N : Space::M; }

inline const char *space_name(Space s) { return s == Space::M ? "M" : "N"; }

/// A coordinate tuple tagged with its lattice. `Scalar` is `Int` or `Rat`.
template <class Scalar>
class Vector
{
public:
    using value_type = Scalar;

    Vector() = default;
    Vector(Space space, std::vector<Scalar> coords) : space_(space), coords_(std::move(coords))
    {
        if constexpr (std::is_same_v<Scalar, Rat>)
            for (auto &c : coords_)
                c.canonicalize();
    }

    static Vector zero(Space space, std::size_t rank) { return Vector(space, std::vector<Scalar>(rank, Scalar(0))); }

    Space space() const { return space_; }
    std::size_t rank() const { return coords_.size(); }
    const std::vector<Scalar> &coords() const { return coords_; }
    const Scalar &operator[](std::size_t i) const { return coords_[i]; }

    bool is_zero() const
    {
        return std::all_of(coords_.begin(), coords_.end(), [](const Scalar &c) { return c == 0; });
    }

    Vector operator-() const
    {
        Vector out = *this;
        for (auto &c : out.coords_)
            c = -c;
        return out;
    }

    friend Vector operator+(const Vector &a, const Vector &b)
    {
        check_compatible(a, b);
        Vector out = a;
        for (std::size_t i = 0; i < out.coords_.size(); ++i)
            out.coords_[i] += b.coords_[i];
        return out;
    }

    friend Vector operator-(const Vector &a, const Vector &b) { return a + (-b); }

    friend Vector operator*(const Scalar &s, const Vector &v)
    {
        Vector out = v;
        for (auto &c : out.coords_)
            c *= s;
        return out;
    }

    friend bool operator==(const Vector &a, const Vector &b)
    {
        return a.space_ == b.space_ && a.coords_ == b.coords_;
    }

    friend bool operator<(const Vector &a, const Vector &b)
    {
        if (a.space_ != b.space_)
            return a.space_ < b.space_;
        return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(), b.coords_.end());
    }

    friend std::ostream &operator<<(std::ostream &os, const Vector &v)
    {
        os << '(';
        for (std::size_t i = 0; i < v.coords_.size(); ++i) {
            if (i)
                os << ',';
            os << to_string(v.coords_[i]);
        }
        return os << ')';
    }

private:
    static void check_compatible(const Vector &a, const Vector &b)
    {
        if (a.space_ != b.space_)
            throw Error(ErrorKind::SpaceMismatch, "vectors live in different lattices");
        if (a.rank() != b.rank())
            throw Error(ErrorKind::RankMismatch, "vectors of different rank");
    }

    Space space_ = Space::M;
    std::vector<Scalar> coords_;
};

using LatticeVector = Vector<Int>;
using RationalVector = Vector<Rat>;

template <class S>
std::string to_string(const Vector<S> &v)
{
    std::ostringstream os;
    os << v;
    return os.str();
}

inline RationalVector to_rational(const LatticeVector &v)
{
    std::vector<Rat> c(v.coords().begin(), v.coords().end());
    return RationalVector(v.space(), std::move(c));
}

inline RationalVector to_rational(const RationalVector &v) { return v; }

inline LatticeVector to_lattice(const RationalVector &v)
{
    std::vector<Int> c;
    c.reserve(v.rank());
    for (const auto &x : v.coords()) {
        if (!is_integer(x))
            throw Error(ErrorKind::Validation, "vector " + to_string(v) + " is not integral");
        c.push_back(x.get_num());
    }
    return LatticeVector(v.space(), std::move(c));
}

inline LatticeVector make_lattice(Space s, std::initializer_list<long> coords)
{
    std::vector<Int> c;
    for (long x : coords)
        c.emplace_back(x);
    return LatticeVector(s, std::move(c));
}

/// The duality pairing; defined only between one M-vector and one N-vector.
template <class A, class B>
auto pairing(const Vector<A> &a, const Vector<B> &b)
{
    using R = std::conditional_t<std::is_same_v<A, Int> && std::is_same_v<B, Int>, Int, Rat>;
    if (a.space() == b.space())
        throw Error(ErrorKind::SpaceMismatch, "pairing needs one M-vector and one N-vector");
    if (a.rank() != b.rank())
        throw Error(ErrorKind::RankMismatch, "pairing of vectors of different rank");
    R s = 0;
    for (std::size_t i = 0; i < a.rank(); ++i)
        s += a[i] * b[i];
    return s;
}

inline LatticeVector primitive(const LatticeVector &v)
{
    Int g = gcd_of(v.coords());
    if (g <= 1)
        return v;
    std::vector<Int> c = v.coords();
    for (auto &x : c)
        x /= g;
    return LatticeVector(v.space(), std::move(c));
}

inline LatticeVector primitive_on_ray(const RationalVector &v)
{
    return LatticeVector(v.space(), primitive_scaling(v.coords()));
}

inline Int max_norm(const LatticeVector &v)
{
    Int m = 0;
    for (const auto &x : v.coords())
        if (abs(x) > m)
            m = abs(x);
    return m;
}

namespace detail {

using IntRow = std::vector<Int>;

inline linalg::RowQ to_q(const IntRow &r) { return linalg::RowQ(r.begin(), r.end()); }

inline linalg::MatQ to_q(const std::vector<IntRow> &rows)
{
    linalg::MatQ out;
    out.reserve(rows.size());
    for (const auto &r : rows)
        out.push_back(to_q(r));
    return out;
}

inline Int dot(const IntRow &a, const IntRow &b)
{
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

/// Halfspace description of cone(generators): the annihilator of its span (canonical basis)
/// and its facet normals, each projected onto the span and made primitive.
struct FacetData {
    std::vector<IntRow> equations;
    std::vector<IntRow> facets;
};

/// Fourier-Motzkin projection of {(x, l) : x = G l, l >= 0} onto x, with Chernikov pruning.
/// Returns the raw inequality rows in x; redundant rows may remain.
inline std::vector<IntRow> fourier_motzkin_inequalities(std::size_t n, const std::vector<IntRow> &gens)
{
    const std::size_t k = gens.size();
    const std::size_t width = k + n;
    struct Ineq {
        linalg::RowQ row;
        std::set<std::size_t> history;
    };
    std::vector<linalg::RowQ> eqs;
    for (std::size_t i = 0; i < n; ++i) {
        linalg::RowQ r(width, Rat(0));
        r[k + i] = 1;
        for (std::size_t j = 0; j < k; ++j)
            r[j] = -Rat(gens[j][i]);
        eqs.push_back(std::move(r));
    }
    std::vector<Ineq> ineqs;
    for (std::size_t j = 0; j < k; ++j) {
        linalg::RowQ r(width, Rat(0));
        r[j] = 1;
        ineqs.push_back({std::move(r), {j}});
    }

    auto normalize = [&](linalg::RowQ &row) {
        IntRow p = primitive_scaling(row);
        for (std::size_t i = 0; i < width; ++i)
            row[i] = p[i];
    };

    std::size_t fm_steps = 0;
    for (std::size_t j = 0; j < k; ++j) {
        auto pivot = std::find_if(eqs.begin(), eqs.end(), [&](const linalg::RowQ &r) { return r[j] != 0; });
        if (pivot != eqs.end()) {
            linalg::RowQ p = *pivot;
            eqs.erase(pivot);
            auto eliminate = [&](linalg::RowQ &r) {
                if (r[j] == 0)
                    return;
                Rat f = r[j] / p[j];
                for (std::size_t c = 0; c < width; ++c)
                    r[c] -= f * p[c];
            };
            for (auto &e : eqs)
                eliminate(e);
            for (auto &in : ineqs) {
                eliminate(in.row);
                normalize(in.row);
            }
            continue;
        }
        ++fm_steps;
        std::vector<Ineq> pos, neg, next;
        for (auto &in : ineqs) {
            if (in.row[j] > 0)
                pos.push_back(std::move(in));
            else if (in.row[j] < 0)
                neg.push_back(std::move(in));
            else
                next.push_back(std::move(in));
        }
        for (const auto &a : pos) {
            for (const auto &b : neg) {
                std::set<std::size_t> hist = a.history;
                hist.insert(b.history.begin(), b.history.end());
                if (hist.size() > fm_steps + 1)
                    continue;
                linalg::RowQ r(width);
                Rat ca = -b.row[j];
                Rat cb = a.row[j];
                for (std::size_t c = 0; c < width; ++c)
                    r[c] = ca * a.row[c] + cb * b.row[c];
                normalize(r);
                next.push_back({std::move(r), std::move(hist)});
            }
        }
        // deduplicate, keeping the shortest history
        std::map<IntRow, std::size_t> seen;
        std::vector<Ineq> uniq;
        for (auto &in : next) {
            IntRow key = primitive_scaling(in.row);
            if (std::all_of(key.begin(), key.end(), [](const Int &x) { return x == 0; }))
                continue;
            auto it = seen.find(key);
            if (it == seen.end()) {
                seen.emplace(std::move(key), uniq.size());
                uniq.push_back(std::move(in));
            } else if (in.history.size() < uniq[it->second].history.size()) {
                uniq[it->second] = std::move(in);
            }
        }
        ineqs = std::move(uniq);
    }

    std::vector<IntRow> out;
    for (const auto &in : ineqs) {
        linalg::RowQ x(in.row.begin() + static_cast<std::ptrdiff_t>(k), in.row.end());
        IntRow p = primitive_scaling(x);
        if (std::any_of(p.begin(), p.end(), [](const Int &v) { return v != 0; }))
            out.push_back(std::move(p));
    }
    return out;
}

inline FacetData facets_of(std::size_t n, std::vector<IntRow> gens)
{
    gens.erase(std::remove_if(gens.begin(), gens.end(),
                              [](const IntRow &g) {
                                  return std::all_of(g.begin(), g.end(), [](const Int &x) { return x == 0; });
                              }),
               gens.end());
    FacetData out;
    linalg::MatQ gq = to_q(gens);
    out.equations = linalg::canonical_span_basis(linalg::nullspace(gq, n), n);
    if (gens.empty())
        return out;

    linalg::Echelon span = linalg::rref(gq, n);
    const std::size_t d = span.pivots.size();

    std::set<IntRow> facets;
    for (const auto &cand : fourier_motzkin_inequalities(n, gens)) {
        linalg::MatQ tight;
        bool nonzero = false;
        for (const auto &g : gens) {
            Int v = dot(cand, g);
            if (v < 0)
                throw Error(ErrorKind::Validation, "internal: elimination produced an invalid inequality");
            if (v == 0)
                tight.push_back(to_q(g));
            else
                nonzero = true;
        }
        if (!nonzero || linalg::rank_of(tight, n) + 1 != d)
            continue;
        facets.insert(primitive_scaling(linalg::project_onto_span(to_q(cand), span.rows)));
    }
    out.facets.assign(facets.begin(), facets.end());
    return out;
}

} // namespace detail

/// A rational polyhedral cone stored in both representations.
///
/// Rays are taken modulo the lineality space and projected onto its orthogonal
/// complement; facet normals are projected onto the span of the cone. Both lists are
/// primitive and sorted, and the two subspace bases are reduced echelon forms, so two
/// cones describe the same set exactly when their data compare equal.
class Cone
{
public:
    Cone() = default;

    static Cone from_generators(std::size_t rank, Space space, const std::vector<LatticeVector> &gens)
    {
        std::vector<detail::IntRow> rows;
        for (const auto &g : gens)
            rows.push_back(checked_row(g, rank, space));
        detail::FacetData h = detail::facets_of(rank, rows);
        return from_halfspaces(rank, space, std::move(h));
    }

    static Cone from_inequalities(std::size_t rank, Space space, const std::vector<LatticeVector> &ineqs,
                                  const std::vector<LatticeVector> &equations = {})
    {
        std::vector<detail::IntRow> rows;
        for (const auto &a : ineqs)
            rows.push_back(checked_row(a, rank, dual_space(space)));
        for (const auto &e : equations) {
            rows.push_back(checked_row(e, rank, dual_space(space)));
            rows.push_back(checked_row(-e, rank, dual_space(space)));
        }
        detail::FacetData dual = detail::facets_of(rank, rows);
        Cone c;
        c.rank_ = rank;
        c.space_ = space;
        c.lineality_ = wrap(dual.equations, space);
        c.rays_ = wrap(dual.facets, space);
        c.fill_halfspaces();
        return c;
    }

    static Cone zero(std::size_t rank, Space space) { return from_generators(rank, space, {}); }

    static Cone full(std::size_t rank, Space space) { return from_inequalities(rank, space, {}); }

    std::size_t rank() const { return rank_; }
    Space space() const { return space_; }

    /// Extreme rays modulo the lineality space; see rays() for the checked accessor.
    const std::vector<LatticeVector> &ray_generators() const { return rays_; }
    const std::vector<LatticeVector> &lineality() const { return lineality_; }
    /// Facet normals in the dual lattice.
    const std::vector<LatticeVector> &facets() const { return facets_; }
    /// Basis of the annihilator of the span, in the dual lattice.
    const std::vector<LatticeVector> &equations() const { return equations_; }

    /// Rays plus both signs of each lineality basis vector.
    std::vector<LatticeVector> generators() const
    {
        std::vector<LatticeVector> out = rays_;
        for (const auto &l : lineality_) {
            out.push_back(l);
            out.push_back(-l);
        }
        return out;
    }

    /// Facet normals plus both signs of each equation.
    std::vector<LatticeVector> inequalities() const
    {
        std::vector<LatticeVector> out = facets_;
        for (const auto &e : equations_) {
            out.push_back(e);
            out.push_back(-e);
        }
        return out;
    }

    std::size_t dim() const { return rank_ - equations_.size(); }
    bool is_pointed() const { return lineality_.empty(); }
    bool is_full_dimensional() const { return equations_.empty(); }
    bool is_zero() const { return dim() == 0; }

    template <class S>
    bool contains(const Vector<S> &v) const
    {
        check_member(v);
        for (const auto &e : equations_)
            if (pairing(e, v) != 0)
                return false;
        for (const auto &f : facets_)
            if (pairing(f, v) < 0)
                return false;
        return true;
    }

    /// Relative interior, taken inside the linear span of the cone.
    template <class S>
    bool in_relint(const Vector<S> &v) const
    {
        check_member(v);
        for (const auto &e : equations_)
            if (pairing(e, v) != 0)
                return false;
        for (const auto &f : facets_)
            if (pairing(f, v) <= 0)
                return false;
        return true;
    }

    /// A lattice point of the relative interior (sum of the rays).
    LatticeVector relint_point() const
    {
        LatticeVector s = LatticeVector::zero(space_, rank_);
        for (const auto &r : rays_)
            s = s + r;
        return s;
    }

    friend bool operator==(const Cone &a, const Cone &b)
    {
        return a.rank_ == b.rank_ && a.space_ == b.space_ && a.rays_ == b.rays_ && a.lineality_ == b.lineality_;
    }
    friend bool operator!=(const Cone &a, const Cone &b) { return !(a == b); }

    friend std::ostream &operator<<(std::ostream &os, const Cone &c)
    {
        os << "cone[" << space_name(c.space_) << "](";
        bool first = true;
        for (const auto &g : c.generators()) {
            if (!first)
                os << ',';
            os << g;
            first = false;
        }
        return os << ')';
    }

private:
    friend Cone dual_cone(const Cone &c);

    static detail::IntRow checked_row(const LatticeVector &v, std::size_t rank, Space space)
    {
        if (v.rank() != rank)
            throw Error(ErrorKind::RankMismatch, "vector " + to_string(v) + " has rank " + std::to_string(v.rank()) +
                                                     ", expected " + std::to_string(rank));
        if (v.space() != space)
            throw Error(ErrorKind::SpaceMismatch, "vector " + to_string(v) + " is in the wrong lattice");
        return v.coords();
    }

    static std::vector<LatticeVector> wrap(const std::vector<detail::IntRow> &rows, Space space)
    {
        std::vector<LatticeVector> out;
        out.reserve(rows.size());
        for (const auto &r : rows)
            out.emplace_back(space, r);
        return out;
    }

    static Cone from_halfspaces(std::size_t rank, Space space, detail::FacetData h)
    {
        Cone c;
        c.rank_ = rank;
        c.space_ = space;
        c.equations_ = wrap(h.equations, dual_space(space));
        c.facets_ = wrap(h.facets, dual_space(space));
        std::vector<detail::IntRow> dual_gens;
        for (const auto &f : h.facets)
            dual_gens.push_back(f);
        for (const auto &e : h.equations) {
            dual_gens.push_back(e);
            detail::IntRow neg = e;
            for (auto &x : neg)
                x = -x;
            dual_gens.push_back(std::move(neg));
        }
        detail::FacetData v = detail::facets_of(rank, dual_gens);
        c.lineality_ = wrap(v.equations, space);
        c.rays_ = wrap(v.facets, space);
        return c;
    }

    void fill_halfspaces()
    {
        std::vector<detail::IntRow> gens;
        for (const auto &g : generators())
            gens.push_back(g.coords());
        detail::FacetData h = detail::facets_of(rank_, gens);
        equations_ = wrap(h.equations, dual_space(space_));
        facets_ = wrap(h.facets, dual_space(space_));
    }

    template <class S>
    void check_member(const Vector<S> &v) const
    {
        if (v.rank() != rank_)
            throw Error(ErrorKind::RankMismatch, "vector " + to_string(v) + " does not match cone rank " +
                                                     std::to_string(rank_));
        if (v.space() != space_)
            throw Error(ErrorKind::SpaceMismatch, "vector " + to_string(v) + " is in the wrong lattice");
    }

    std::size_t rank_ = 0;
    Space space_ = Space::N;
    std::vector<LatticeVector> rays_;
    std::vector<LatticeVector> lineality_;
    std::vector<LatticeVector> facets_;
    std::vector<LatticeVector> equations_;
};

/// {u : <u, v> >= 0 for all v in c}. Both representations swap roles, so this is exact.
inline Cone dual_cone(const Cone &c)
{
    Cone d;
    d.rank_ = c.rank_;
    d.space_ = dual_space(c.space_);
    d.rays_ = c.facets_;
    d.lineality_ = c.equations_;
    d.facets_ = c.rays_;
    d.equations_ = c.lineality_;
    return d;
}

inline Cone intersect(const Cone &a, const Cone &b)
{
    if (a.rank() != b.rank())
        throw Error(ErrorKind::RankMismatch, "intersection of cones of different rank");
    if (a.space() != b.space())
        throw Error(ErrorKind::SpaceMismatch, "intersection of cones in different lattices");
    std::vector<LatticeVector> ineqs = a.facets();
    ineqs.insert(ineqs.end(), b.facets().begin(), b.facets().end());
    std::vector<LatticeVector> eqs = a.equations();
    eqs.insert(eqs.end(), b.equations().begin(), b.equations().end());
    return Cone::from_inequalities(a.rank(), a.space(), ineqs, eqs);
}

/// Primitive generators of the one-dimensional faces, in lexicographic order.
inline std::vector<LatticeVector> rays(const Cone &c)
{
    if (!c.is_pointed())
        throw Error(ErrorKind::NotPointed, "cone has a nonzero lineality space");
    return c.ray_generators();
}

/// tau = sigma^dual intersected with rho^perp.
inline Cone face_dual_to_ray(const Cone &sigma, const LatticeVector &rho)
{
    const auto &rs = rays(sigma);
    if (std::find(rs.begin(), rs.end(), rho) == rs.end())
        throw Error(ErrorKind::NotARay, to_string(rho) + " is not a ray of the cone");
    return Cone::from_inequalities(sigma.rank(), dual_space(sigma.space()), sigma.generators(), {rho});
}

template <class S>
bool contains(const Cone &c, const Vector<S> &v)
{
    return c.contains(v);
}

template <class S>
bool in_relint(const Cone &c, const Vector<S> &v)
{
    return c.in_relint(v);
}

namespace detail {

/// Calls f on every integer point of the box prod [lo_i, hi_i], in lexicographic order.
template <class F>
void for_each_box_point(const std::vector<Int> &lo, const std::vector<Int> &hi, Space space, F &&f)
{
    const std::size_t n = lo.size();
    for (std::size_t i = 0; i < n; ++i)
        if (lo[i] > hi[i])
            return;
    std::vector<Int> cur = lo;
    while (true) {
        f(LatticeVector(space, cur));
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (cur[i] < hi[i]) {
                ++cur[i];
                for (std::size_t j = i + 1; j < n; ++j)
                    cur[j] = lo[j];
                break;
            }
            if (i == 0)
                return;
        }
        if (n == 0)
            return;
    }
}

} // namespace detail

/// All lattice vectors v in (c + shift) with max-norm(v) <= bound, in lexicographic order.
inline std::vector<LatticeVector> lattice_points(const Cone &c, const RationalVector &shift, const Int &bound)
{
    if (bound < 0)
        throw Error(ErrorKind::Validation, "bound must be nonnegative");
    if (shift.rank() != c.rank())
        throw Error(ErrorKind::RankMismatch, "shift rank does not match cone");
    std::vector<Int> lo(c.rank(), Int(-bound)), hi(c.rank(), bound);
    std::vector<LatticeVector> out;
    detail::for_each_box_point(lo, hi, c.space(), [&](const LatticeVector &v) {
        if (c.contains(to_rational(v) - shift))
            out.push_back(v);
    });
    return out;
}

inline std::vector<LatticeVector> lattice_points(const Cone &c, const Int &bound)
{
    return lattice_points(c, RationalVector::zero(c.space(), c.rank()), bound);
}

/// Minimal generating set of the monoid c intersected with the lattice.
///
/// Every Hilbert basis element lies in the zonotope spanned by the rays, so candidates are
/// the cone points of its bounding box; a candidate is kept when no smaller basis element
/// can be subtracted from it without leaving the cone.
inline std::vector<LatticeVector> hilbert_basis(const Cone &c)
{
    const auto &rs = rays(c);
    if (rs.empty())
        return {};
    const std::size_t n = c.rank();
    std::vector<Int> lo(n, Int(0)), hi(n, Int(0));
    for (const auto &r : rs)
        for (std::size_t i = 0; i < n; ++i) {
            if (r[i] < 0)
                lo[i] += r[i];
            else
                hi[i] += r[i];
        }
    LatticeVector grading = LatticeVector::zero(dual_space(c.space()), n);
    for (const auto &f : c.facets())
        grading = grading + f;

    std::vector<std::pair<Int, LatticeVector>> cands;
    detail::for_each_box_point(lo, hi, c.space(), [&](const LatticeVector &v) {
        if (!v.is_zero() && c.contains(v))
            cands.emplace_back(pairing(grading, v), v);
    });
    std::sort(cands.begin(), cands.end(), [](const auto &a, const auto &b) {
        if (a.first != b.first)
            return a.first < b.first;
        return a.second < b.second;
    });

    std::vector<LatticeVector> basis;
    for (const auto &[deg, v] : cands) {
        bool reducible = std::any_of(basis.begin(), basis.end(), [&](const LatticeVector &h) {
            return c.contains(v - h);
        });
        if (!reducible)
            basis.push_back(v);
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

} // namespace tvar
