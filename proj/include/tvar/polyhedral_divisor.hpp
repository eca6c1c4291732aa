#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tvar/base_curve.hpp"
#include "tvar/lattice.hpp"
#include "tvar/linalg.hpp"
#include "tvar/polyhedra.hpp"

namespace tvar {

/// sum over H of Delta_H * H on a point or curve base, all coefficients sharing the tail cone.
class PolyhedralDivisor
{
public:
    using CoeffMap = std::map<PrimeDivisor, TailedPolyhedron>;

    PolyhedralDivisor() = default;

    PolyhedralDivisor(Base base, Cone tail, CoeffMap coeffs)
        : base_(base), tail_(std::move(tail)), trivial_(TailedPolyhedron::tail_only(tail_))
    {
        if (tail_.space() != Space::N)
            throw Error(ErrorKind::SpaceMismatch, "tail cone must live in N");
        if (tail_.rank() == 0)
            throw Error(ErrorKind::Validation, "lattice rank must be positive");
        for (auto &[p, delta] : coeffs) {
            check_divisor_on(base_, p);
            if (delta.tail() != tail_)
                throw Error(ErrorKind::TailMismatch, "coefficient at " + p.str() + " has a different tail");
            if (!delta.is_tail_only())
                coeffs_.emplace(p, std::move(delta));
        }
    }

    const Base &base() const { return base_; }
    const Cone &tail() const { return tail_; }
    std::size_t rank() const { return tail_.rank(); }
    const CoeffMap &coeffs() const { return coeffs_; }

    /// The tail-only polyhedron for divisors outside the support.
    const TailedPolyhedron &coefficient(const PrimeDivisor &p) const
    {
        auto it = coeffs_.find(p);
        return it == coeffs_.end() ? trivial_ : it->second;
    }

    /// sigma^dual, the weight cone of the graded ring.
    Cone weight_cone() const { return dual_cone(tail_); }

    friend bool operator==(const PolyhedralDivisor &a, const PolyhedralDivisor &b)
    {
        return a.base_ == b.base_ && a.tail_ == b.tail_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const PolyhedralDivisor &a, const PolyhedralDivisor &b) { return !(a == b); }

private:
    Base base_;
    Cone tail_;
    TailedPolyhedron trivial_;
    CoeffMap coeffs_;
};

namespace detail {

template <class S>
void check_degree(const PolyhedralDivisor &dd, const Vector<S> &m)
{
    if (m.space() != Space::M)
        throw Error(ErrorKind::SpaceMismatch, "degrees live in M");
    if (m.rank() != dd.rank())
        throw Error(ErrorKind::RankMismatch, "degree " + to_string(m) + " does not match rank " +
                                                 std::to_string(dd.rank()));
    for (const auto &r : dd.tail().generators())
        if (pairing(m, r) < 0)
            throw Error(ErrorKind::OutsideDualCone, to_string(m) + " is outside the weight cone");
}

} // namespace detail

/// D(m) = sum over H of h_H(m) * H.
template <class S>
QDivisor evaluate(const PolyhedralDivisor &dd, const Vector<S> &m)
{
    detail::check_degree(dd, m);
    QDivisor out(dd.base());
    for (const auto &[p, delta] : dd.coeffs())
        out.add(p, support_eval(delta, m));
    return out;
}

/// A cone on which every support function of the divisor is linear.
struct LinearCell {
    Cone cone;
    std::map<PrimeDivisor, RationalVector> vertex; // h_H = <., vertex[H]> on the cell

    template <class S>
    QDivisor divisor_at(const Base &base, const Vector<S> &m) const
    {
        QDivisor out(base);
        for (const auto &[p, v] : vertex)
            out.add(p, Rat(pairing(m, v)));
        return out;
    }

    /// <m, degree_vertex()> is deg D(m) on the cell.
    RationalVector degree_vertex(std::size_t rank) const
    {
        RationalVector s = RationalVector::zero(Space::N, rank);
        for (const auto &[p, v] : vertex)
            s = s + v;
        return s;
    }
};

/// Common refinement of the linear pieces of all coefficients, restricted to `region`
/// (a subcone of the weight cone); only cells of full dimension within span(region) are kept.
inline std::vector<LinearCell> common_refinement(const PolyhedralDivisor &dd, const Cone &region)
{
    std::vector<LinearCell> cells{{region, {}}};
    for (const auto &[p, delta] : dd.coeffs()) {
        std::vector<LinearPiece> pieces = linear_pieces(delta);
        std::vector<LinearCell> next;
        for (const auto &cell : cells)
            for (const auto &piece : pieces) {
                Cone c = intersect(cell.cone, piece.cone);
                if (c.dim() != region.dim())
                    continue;
                LinearCell refined{std::move(c), cell.vertex};
                refined.vertex.emplace(p, piece.vertex);
                next.push_back(std::move(refined));
            }
        cells = std::move(next);
    }
    return cells;
}

struct Witness {
    std::string condition;
    LatticeVector degree;
    std::string detail;

    friend bool operator==(const Witness &a, const Witness &b)
    {
        return a.condition == b.condition && a.degree == b.degree && a.detail == b.detail;
    }
};

struct BigReport {
    bool big = true;
    std::optional<Witness> witness;
};

/// Whether D(m) is big for every m in the relative interior of `region`.
///
/// deg D(m) is linear on each refinement cell. It must be nonnegative on every cell, and
/// the face where it vanishes must avoid relint(region); the relint point of that face is
/// tested, which catches walls that sampling would miss.
inline BigReport big_on_relint(const PolyhedralDivisor &dd, const Cone &region)
{
    if (dd.base().is_affine())
        return {};
    for (const auto &cell : common_refinement(dd, region)) {
        RationalVector dv = cell.degree_vertex(dd.rank());
        LatticeVector zero_face_point = LatticeVector::zero(Space::M, dd.rank());
        for (const auto &g : cell.cone.generators()) {
            Rat d = pairing(g, dv);
            if (d < 0)
                return {false, Witness{"big", g, "deg D(m) = " + to_string(d) + " < 0"}};
            if (d == 0)
                zero_face_point = zero_face_point + g;
        }
        if (region.in_relint(zero_face_point))
            return {false, Witness{"big", zero_face_point, "deg D(m) = 0 in the relative interior"}};
    }
    return {};
}

struct ProperReport {
    Tri proper = Tri::True;
    Tri semiample = Tri::True;
    Tri big = Tri::True;
    bool q_cartier = true; // smooth base
    std::vector<Witness> witnesses;

    friend bool operator==(const ProperReport &a, const ProperReport &b)
    {
        return a.proper == b.proper && a.semiample == b.semiample && a.big == b.big &&
               a.q_cartier == b.q_cartier && a.witnesses == b.witnesses;
    }
};

/// Semiampleness on all of the weight cone and bigness on its relative interior.
inline ProperReport is_proper(const PolyhedralDivisor &dd)
{
    ProperReport r;
    if (dd.base().is_affine())
        return r;
    const Cone weights = dd.weight_cone();
    const bool torsion_unknown = dd.base().kind == BaseKind::AbstractCurve && dd.base().genus > 0;
    for (const auto &cell : common_refinement(dd, weights)) {
        RationalVector dv = cell.degree_vertex(dd.rank());
        std::vector<LatticeVector> zero_face;
        for (const auto &g : cell.cone.generators()) {
            Rat d = pairing(g, dv);
            if (d < 0 && r.semiample != Tri::False) {
                r.semiample = Tri::False;
                r.witnesses.push_back({"semiample", g, "deg D(m) = " + to_string(d) + " < 0"});
            }
            if (d == 0)
                zero_face.push_back(g);
        }
        if (!torsion_unknown || r.semiample != Tri::True)
            continue;
        for (const auto &g : zero_face) {
            QDivisor dm = cell.divisor_at(dd.base(), g);
            if (!dm.is_zero()) {
                r.semiample = Tri::Unknown;
                r.witnesses.push_back({"semiample", g, "nonzero degree-0 divisor " + dm.str()});
                break;
            }
        }
    }
    BigReport b = big_on_relint(dd, weights);
    r.big = tri_of(b.big);
    if (b.witness)
        r.witnesses.push_back(*b.witness);
    r.proper = tri_and(r.semiample, r.big);
    return r;
}

struct GradedPiece {
    LatticeVector degree;
    H0Report dimension;
    std::optional<std::vector<RationalSection>> basis;

    friend bool operator==(const GradedPiece &a, const GradedPiece &b)
    {
        return a.degree == b.degree && a.dimension == b.dimension && a.basis == b.basis;
    }
};

/// A_m = H^0(Y, O(D(m))).
inline GradedPiece graded_piece(const PolyhedralDivisor &dd, const LatticeVector &m)
{
    QDivisor d = evaluate(dd, m);
    GradedPiece out{m, h0(dd.base(), d), std::nullopt};
    if (dd.base().has_sections())
        out.basis = section_basis(dd.base(), d);
    return out;
}

/// f * chi^m; the zero element carries an explicit flag and the zero degree.
struct HomogeneousElement {
    RationalSection section;
    LatticeVector degree;
    bool zero = false;

    static HomogeneousElement zero_element(const Base &base, std::size_t rank)
    {
        return {RationalSection::zero(base), LatticeVector::zero(Space::M, rank), true};
    }

    friend bool operator==(const HomogeneousElement &a, const HomogeneousElement &b)
    {
        if (a.zero || b.zero)
            return a.zero == b.zero;
        return a.section == b.section && a.degree == b.degree;
    }
    friend bool operator!=(const HomogeneousElement &a, const HomogeneousElement &b) { return !(a == b); }

    std::string str() const
    {
        if (zero)
            return "0";
        return "(" + section.str() + ")*chi^" + to_string(degree);
    }
};

inline bool is_member(const PolyhedralDivisor &dd, const RationalSection &f, const LatticeVector &m)
{
    return section_in(f, evaluate(dd, m));
}

/// Builds f * chi^m after checking f in A_m.
inline HomogeneousElement make_element(const PolyhedralDivisor &dd, const RationalSection &f, const LatticeVector &m)
{
    if (f.base() != dd.base())
        throw Error(ErrorKind::ContextMismatch, "section lives on a different base");
    if (f.is_zero())
        return HomogeneousElement::zero_element(dd.base(), dd.rank());
    if (!is_member(dd, f, m))
        throw Error(ErrorKind::MembershipViolation, f.str() + " is not in A_" + to_string(m));
    return {f, m, false};
}

inline HomogeneousElement multiply(const PolyhedralDivisor &dd, const HomogeneousElement &a,
                                   const HomogeneousElement &b)
{
    if (a.zero || b.zero)
        return HomogeneousElement::zero_element(dd.base(), dd.rank());
    RationalSection f = a.section * b.section;
    LatticeVector m = a.degree + b.degree;
    if (!is_member(dd, f, m))
        throw Error(ErrorKind::MembershipViolation, "product " + f.str() + " escapes A_" + to_string(m));
    return {std::move(f), std::move(m), false};
}

/// A finite sum of homogeneous elements, keyed by degree.
class GradedElement
{
public:
    GradedElement() = default;
    explicit GradedElement(Base base) : base_(base) {}

    static GradedElement from(const Base &base, const HomogeneousElement &e)
    {
        GradedElement out(base);
        out.add(e);
        return out;
    }

    void add(const HomogeneousElement &e)
    {
        if (e.zero)
            return;
        add_term(e.degree, e.section);
    }

    void add_term(const LatticeVector &m, const RationalSection &f)
    {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!f.is_zero())
                terms_.emplace(m, f);
            return;
        }
        it->second = it->second + f;
        if (it->second.is_zero())
            terms_.erase(it);
    }

    const std::map<LatticeVector, RationalSection> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    friend GradedElement operator+(GradedElement a, const GradedElement &b)
    {
        for (const auto &[m, f] : b.terms_)
            a.add_term(m, f);
        return a;
    }

    friend GradedElement operator*(const GradedElement &a, const GradedElement &b)
    {
        GradedElement out(a.base_);
        for (const auto &[m1, f1] : a.terms_)
            for (const auto &[m2, f2] : b.terms_)
                out.add_term(m1 + m2, f1 * f2);
        return out;
    }

    friend bool operator==(const GradedElement &a, const GradedElement &b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const GradedElement &a, const GradedElement &b) { return !(a == b); }

private:
    Base base_;
    std::map<LatticeVector, RationalSection> terms_;
};

/// rank M + dim Y.
inline std::size_t dimension(const PolyhedralDivisor &dd)
{
    return dd.rank() + static_cast<std::size_t>(dd.base().dim());
}

struct GeneratorReport {
    std::vector<HomogeneousElement> generators;
    Int bound;
    LatticeVector grading;  // N-vector positive on the weight cone minus the origin
    Int grading_limit;      // complete for every degree m with <m, grading> <= grading_limit

    friend bool operator==(const GeneratorReport &a, const GeneratorReport &b)
    {
        return a.generators == b.generators && a.bound == b.bound && a.grading == b.grading &&
               a.grading_limit == b.grading_limit;
    }
};

namespace detail {

/// Coordinates of f in A_m relative to the normal-form basis t^j * base_fn.
inline linalg::RowQ section_coordinates(const RationalSection &f, const RationalFunction &base_fn, std::size_t dim)
{
    RationalFunction q = f.value() / base_fn;
    if (q.den().degree() != 0 || q.num().degree() >= static_cast<long>(dim))
        throw Error(ErrorKind::MembershipViolation, "section " + f.str() + " is outside the graded piece");
    linalg::RowQ row(dim, Rat(0));
    Rat scale = 1 / q.den().leading();
    for (std::size_t j = 0; j < dim; ++j)
        row[j] = q.num().coeff(j) * scale;
    return row;
}

} // namespace detail

/// Homogeneous algebra generators found degree by degree up to a bound.
///
/// Degrees are processed in order of a positive grading; every degree whose grading does
/// not exceed that of the bounded box (and of the Hilbert basis of the weight cone) is
/// examined, so the result is complete for that downward-closed set of degrees.
inline GeneratorReport generator_candidates(const PolyhedralDivisor &dd, const Int &bound)
{
    const Base &y = dd.base();
    if (!y.has_sections())
        throw Error(ErrorKind::Unsupported, "generator search needs explicit sections");
    if (!dd.tail().is_full_dimensional())
        throw Error(ErrorKind::Unsupported, "generator search needs a full-dimensional tail cone");
    if (bound < 1)
        throw Error(ErrorKind::Validation, "bound must be at least 1");

    const std::size_t n = dd.rank();
    const Cone weights = dd.weight_cone();
    LatticeVector grading = LatticeVector::zero(Space::N, n);
    for (const auto &r : rays(dd.tail()))
        grading = grading + r;

    Int limit = 0;
    for (const auto &m : lattice_points(weights, bound))
        limit = std::max(limit, Int(pairing(m, grading)));
    for (const auto &m : hilbert_basis(weights))
        limit = std::max(limit, Int(pairing(m, grading)));

    // every lattice point of {m in weights : <m, grading> <= limit}
    std::vector<Int> lo(n, Int(0)), hi(n, Int(0));
    for (const auto &r : rays(weights)) {
        Int gr = pairing(r, grading);
        for (std::size_t i = 0; i < n; ++i) {
            Rat c = Rat(r[i] * limit) / Rat(gr);
            if (c < 0)
                lo[i] = std::min(lo[i], floor_of(c));
            else
                hi[i] = std::max(hi[i], ceil_of(c));
        }
    }
    std::vector<std::pair<Int, LatticeVector>> degrees;
    detail::for_each_box_point(lo, hi, Space::M, [&](const LatticeVector &m) {
        if (!weights.contains(m))
            return;
        Int g = pairing(m, grading);
        if (g <= limit)
            degrees.emplace_back(g, m);
    });
    std::sort(degrees.begin(), degrees.end(), [](const auto &a, const auto &b) {
        return a.first != b.first ? a.first < b.first : a.second < b.second;
    });

    GeneratorReport report{{}, bound, grading, limit};
    auto push = [&](const RationalSection &f, const LatticeVector &m) { report.generators.push_back({f, m, false}); };

    if (y.kind == BaseKind::AffineLine) {
        // A_m = k[t] * g_m; a degree needs a new generator when the cofactors of all
        // products landing there have a nonconstant gcd.
        std::map<LatticeVector, RationalFunction> gen_fn;
        for (const auto &[g, m] : degrees)
            gen_fn.emplace(m, section_basis(y, evaluate(dd, m)).front().value());
        for (const auto &[g, m] : degrees) {
            if (m.is_zero()) {
                push(RationalSection(y, RationalFunction::t() * gen_fn.at(m)), m);
                continue;
            }
            Polynomial common;
            for (const auto &h : report.generators) {
                if (h.degree.is_zero())
                    continue;
                LatticeVector rest = m - h.degree;
                if (rest.is_zero() || !weights.contains(rest))
                    continue;
                RationalFunction cof = h.section.value() * gen_fn.at(rest) / gen_fn.at(m);
                common = Polynomial::gcd(common, cof.num());
            }
            if (common.is_zero() || common.degree() > 0)
                push(RationalSection(y, gen_fn.at(m)), m);
        }
        return report;
    }

    std::map<LatticeVector, std::vector<RationalSection>> basis;
    for (const auto &[g, m] : degrees)
        basis.emplace(m, section_basis(y, evaluate(dd, m)));

    for (const auto &[g, m] : degrees) {
        if (m.is_zero())
            continue; // A_0 is the ground field over P^1 and the point
        const auto &bm = basis.at(m);
        if (bm.empty())
            continue;
        const std::size_t dim = bm.size();
        RationalFunction base_fn = bm.front().value();
        linalg::MatQ span;
        std::size_t rank = 0;
        for (const auto &h : report.generators) {
            LatticeVector rest = h.degree;
            rest = m - rest;
            if (rest.is_zero() || !weights.contains(rest))
                continue;
            for (const auto &b : basis.at(rest)) {
                span.push_back(detail::section_coordinates(h.section * b, base_fn, dim));
                if (span.size() >= 2 * dim) {
                    span = linalg::rref(std::move(span), dim).rows;
                }
            }
            rank = linalg::rank_of(span, dim);
            if (rank == dim)
                break;
        }
        if (rank == dim)
            continue;
        for (const auto &b : bm) {
            span.push_back(detail::section_coordinates(b, base_fn, dim));
            std::size_t r = linalg::rank_of(span, dim);
            if (r > rank) {
                rank = r;
                push(b, m);
            } else {
                span.pop_back();
            }
            if (rank == dim)
                break;
        }
    }
    return report;
}

} // namespace tvar
