#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "tvar/lattice.hpp"

namespace tvar {

/// conv(vertices) + tail, with a pointed tail cone in N and an irredundant vertex list.
class TailedPolyhedron
{
public:
    TailedPolyhedron() = default;

    TailedPolyhedron(Cone tail, std::vector<RationalVector> vertices) : tail_(std::move(tail))
    {
        if (tail_.space() != Space::N)
            throw Error(ErrorKind::SpaceMismatch, "tail cone must live in N");
        if (!tail_.is_pointed())
            throw Error(ErrorKind::NotPointed, "tail cone must be pointed");
        if (vertices.empty())
            throw Error(ErrorKind::Validation, "a tailed polyhedron needs at least one vertex");
        for (const auto &v : vertices) {
            if (v.space() != Space::N)
                throw Error(ErrorKind::SpaceMismatch, "vertex " + to_string(v) + " must live in N");
            if (v.rank() != tail_.rank())
                throw Error(ErrorKind::RankMismatch, "vertex " + to_string(v) + " does not match the tail rank");
        }
        std::sort(vertices.begin(), vertices.end());
        vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
        vertices_ = prune(tail_, std::move(vertices));
    }

    static TailedPolyhedron tail_only(const Cone &tail)
    {
        return TailedPolyhedron(tail, {RationalVector::zero(Space::N, tail.rank())});
    }

    const Cone &tail() const { return tail_; }
    const std::vector<RationalVector> &vertices() const { return vertices_; }
    std::size_t rank() const { return tail_.rank(); }

    bool is_tail_only() const { return vertices_.size() == 1 && vertices_.front().is_zero(); }

    friend bool operator==(const TailedPolyhedron &a, const TailedPolyhedron &b)
    {
        return a.tail_ == b.tail_ && a.vertices_ == b.vertices_;
    }
    friend bool operator!=(const TailedPolyhedron &a, const TailedPolyhedron &b) { return !(a == b); }

private:
    // v is redundant when (v, 1) lies in the cone over (conv(others), 1) + (tail, 0).
    static bool is_redundant(const Cone &tail, const RationalVector &v, const std::vector<RationalVector> &others)
    {
        if (others.empty())
            return false;
        const std::size_t n = tail.rank();
        auto lift = [](const RationalVector &w, const Rat &last) {
            std::vector<Rat> c(w.coords());
            c.push_back(last);
            return RationalVector(Space::N, std::move(c));
        };
        std::vector<LatticeVector> gens;
        for (const auto &w : others)
            gens.push_back(primitive_on_ray(lift(w, 1)));
        for (const auto &r : tail.generators())
            gens.push_back(primitive_on_ray(lift(to_rational(r), 0)));
        Cone hom = Cone::from_generators(n + 1, Space::N, gens);
        return hom.contains(lift(v, 1));
    }

    static std::vector<RationalVector> prune(const Cone &tail, std::vector<RationalVector> vs)
    {
        if (vs.size() == 1 && tail.is_zero())
            return vs;
        std::size_t i = 0;
        while (i < vs.size() && vs.size() > 1) {
            std::vector<RationalVector> others;
            for (std::size_t j = 0; j < vs.size(); ++j)
                if (j != i)
                    others.push_back(vs[j]);
            if (is_redundant(tail, vs[i], others))
                vs.erase(vs.begin() + static_cast<std::ptrdiff_t>(i));
            else
                ++i;
        }
        return vs;
    }

    Cone tail_;
    std::vector<RationalVector> vertices_;
};

/// A maximal cone of the normal quasifan restricted to the dual of the tail, together
/// with the vertex whose functional computes the support function there.
struct LinearPiece {
    Cone cone;
    RationalVector vertex;

    template <class S>
    Rat functional(const Vector<S> &m) const
    {
        return Rat(pairing(m, vertex));
    }

    friend bool operator==(const LinearPiece &a, const LinearPiece &b)
    {
        return a.cone == b.cone && a.vertex == b.vertex;
    }
};

template <class S>
bool in_dual_of_tail(const TailedPolyhedron &delta, const Vector<S> &m)
{
    if (m.space() != Space::M)
        throw Error(ErrorKind::SpaceMismatch, "support functions are evaluated on M");
    if (m.rank() != delta.rank())
        throw Error(ErrorKind::RankMismatch, "degree " + to_string(m) + " does not match polyhedron rank");
    for (const auto &r : delta.tail().generators())
        if (pairing(m, r) < 0)
            return false;
    return true;
}

/// h(m) = min <m, delta>, finite exactly on the dual of the tail.
template <class S>
Rat support_eval(const TailedPolyhedron &delta, const Vector<S> &m)
{
    if (!in_dual_of_tail(delta, m))
        throw Error(ErrorKind::OutsideDualCone, to_string(m) + " is outside the dual of the tail cone");
    const auto &vs = delta.vertices();
    Rat best = pairing(m, vs.front());
    for (std::size_t i = 1; i < vs.size(); ++i) {
        Rat v = pairing(m, vs[i]);
        if (v < best)
            best = v;
    }
    return best;
}

/// One piece per vertex: the region of the tail's dual on which that vertex minimizes.
inline std::vector<LinearPiece> linear_pieces(const TailedPolyhedron &delta)
{
    const Cone &tail = delta.tail();
    const auto &vs = delta.vertices();
    std::vector<LinearPiece> out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        std::vector<LatticeVector> ineqs = tail.generators();
        for (std::size_t j = 0; j < vs.size(); ++j)
            if (j != i)
                ineqs.push_back(primitive_on_ray(vs[j] - vs[i]));
        Cone cell = Cone::from_inequalities(delta.rank(), Space::M, ineqs);
        if (cell.is_full_dimensional())
            out.push_back({std::move(cell), vs[i]});
    }
    return out;
}

namespace detail {

inline void check_codim_one_face(const TailedPolyhedron &delta, const Cone &tau)
{
    if (tau.space() != Space::M)
        throw Error(ErrorKind::SpaceMismatch, "face must live in M");
    if (tau.rank() != delta.rank())
        throw Error(ErrorKind::RankMismatch, "face rank does not match polyhedron rank");
    if (tau.dim() + 1 != delta.rank())
        throw Error(ErrorKind::Validation, "face is not of codimension one");
    for (const auto &g : tau.generators())
        if (!in_dual_of_tail(delta, g))
            throw Error(ErrorKind::Validation, "face is not contained in the dual of the tail");
}

} // namespace detail

/// The unique piece containing the whole codimension-one face tau of the tail's dual.
inline LinearPiece piece_containing_face(const TailedPolyhedron &delta, const Cone &tau)
{
    detail::check_codim_one_face(delta, tau);
    const auto gens = tau.generators();
    for (auto &piece : linear_pieces(delta)) {
        bool all = std::all_of(gens.begin(), gens.end(), [&](const LatticeVector &g) { return piece.cone.contains(g); });
        if (all)
            return std::move(piece);
    }
    throw Error(ErrorKind::FaceNotCovered, "no single linear piece contains the face");
}

/// Pieces whose cone meets tau in a set of full dimension within span(tau).
inline std::vector<LinearPiece> pieces_meeting_face(const TailedPolyhedron &delta, const Cone &tau)
{
    detail::check_codim_one_face(delta, tau);
    std::vector<LinearPiece> out;
    for (auto &piece : linear_pieces(delta))
        if (intersect(piece.cone, tau).dim() == tau.dim())
            out.push_back(std::move(piece));
    return out;
}

inline TailedPolyhedron minkowski_sum(const TailedPolyhedron &a, const TailedPolyhedron &b)
{
    if (a.tail() != b.tail())
        throw Error(ErrorKind::TailMismatch, "Minkowski sum needs equal tail cones");
    std::vector<RationalVector> sums;
    for (const auto &u : a.vertices())
        for (const auto &v : b.vertices())
            sums.push_back(u + v);
    return TailedPolyhedron(a.tail(), std::move(sums));
}

} // namespace tvar
