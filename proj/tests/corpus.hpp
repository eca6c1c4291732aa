#pragma once
// Seeded random polyhedral divisors shared by the property tests and the acceptance run.

#include <random>
#include <string>
#include <vector>

#include "tvar/tvar.hpp"

namespace corpus {

using namespace tvar;

inline constexpr unsigned kSeed = 20240601u;

class Generator
{
public:
    explicit Generator(unsigned seed = kSeed) : rng_(seed) {}

    long uniform(long lo, long hi) { return lo + static_cast<long>(rng_() % static_cast<unsigned long>(hi - lo + 1)); }

    /// Pointed full-dimensional rank-2 cone spanned by two primitive vectors with |entries| <= 3.
    Cone cone2()
    {
        for (;;) {
            LatticeVector u = vec(Space::N, 2, 3), v = vec(Space::N, 2, 3);
            Int det = u[0] * v[1] - u[1] * v[0];
            if (det != 0)
                return Cone::from_generators(2, Space::N, {primitive(u), primitive(v)});
        }
    }

    /// Nonzero lattice vector with |entries| <= r.
    LatticeVector vec(Space s, std::size_t n, long r)
    {
        for (;;) {
            std::vector<Int> c;
            for (std::size_t i = 0; i < n; ++i)
                c.emplace_back(uniform(-r, r));
            LatticeVector v(s, std::move(c));
            if (!v.is_zero())
                return v;
        }
    }

    /// Entries p/q with q in {1, 2} and |p/q| <= 3.
    RationalVector vertex(std::size_t n)
    {
        std::vector<Rat> c;
        for (std::size_t i = 0; i < n; ++i) {
            long q = uniform(1, 2);
            c.push_back(make_rat(Int(uniform(-3 * q, 3 * q)), Int(q)));
        }
        return RationalVector(Space::N, std::move(c));
    }

    TailedPolyhedron polyhedron(const Cone &sigma)
    {
        std::vector<RationalVector> vs;
        long k = uniform(1, 3);
        for (long i = 0; i < k; ++i)
            vs.push_back(vertex(sigma.rank()));
        return TailedPolyhedron(sigma, vs);
    }

    /// Up to three marked points on the projective line.
    PolyhedralDivisor projline2()
    {
        static const std::vector<std::string> pool{"0", "1", "-1", "2", "1/2", "inf"};
        Cone sigma = cone2();
        PolyhedralDivisor::CoeffMap coeffs;
        long k = uniform(1, 3);
        while (static_cast<long>(coeffs.size()) < k) {
            PrimeDivisor p = PrimeDivisor::parse(pool[uniform(0, static_cast<long>(pool.size()) - 1)]);
            if (!coeffs.count(p))
                coeffs.emplace(p, polyhedron(sigma));
        }
        return PolyhedralDivisor(Base::proj_line(), sigma, std::move(coeffs));
    }

    PolyhedralDivisor affine2()
    {
        static const std::vector<std::string> pool{"0", "1", "-1", "1/2"};
        Cone sigma = cone2();
        PolyhedralDivisor::CoeffMap coeffs;
        long k = uniform(0, 2);
        while (static_cast<long>(coeffs.size()) < k) {
            PrimeDivisor p = PrimeDivisor::parse(pool[uniform(0, static_cast<long>(pool.size()) - 1)]);
            if (!coeffs.count(p))
                coeffs.emplace(p, polyhedron(sigma));
        }
        return PolyhedralDivisor(Base::affine_line(), sigma, std::move(coeffs));
    }

    PolyhedralDivisor toric2() { return PolyhedralDivisor(Base::point(), cone2(), {}); }

private:
    std::mt19937 rng_;
};

/// ProjLine divisors of rank 2: the first half proper (rejection sampled), the rest unfiltered.
inline std::vector<PolyhedralDivisor> projline_corpus(std::size_t count, unsigned seed = kSeed)
{
    Generator g(seed);
    std::vector<PolyhedralDivisor> out;
    while (out.size() < count / 2) {
        PolyhedralDivisor dd = g.projline2();
        if (is_proper(dd).proper == Tri::True)
            out.push_back(std::move(dd));
    }
    while (out.size() < count)
        out.push_back(g.projline2());
    return out;
}

/// Proper ProjLine divisors (rejection sampling), plus affine-line and toric ones.
inline std::vector<PolyhedralDivisor> law_corpus(std::size_t per_kind, unsigned seed = kSeed + 1)
{
    Generator g(seed);
    std::vector<PolyhedralDivisor> out;
    std::size_t proper = 0;
    while (proper < per_kind) {
        PolyhedralDivisor dd = g.projline2();
        if (is_proper(dd).proper == Tri::True) {
            out.push_back(dd);
            ++proper;
        }
    }
    for (std::size_t i = 0; i < per_kind; ++i)
        out.push_back(g.affine2());
    for (std::size_t i = 0; i < per_kind; ++i)
        out.push_back(g.toric2());
    return out;
}

/// D = (p + sigma) * H with the standard quadrant and H = [inf].
inline PolyhedralDivisor quadrant_example(std::size_t n = 2)
{
    std::vector<LatticeVector> basis;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Int> c(n, Int(0));
        c[i] = 1;
        basis.emplace_back(Space::N, std::move(c));
    }
    Cone sigma = Cone::from_generators(n, Space::N, basis);
    QDivisor h(Base::proj_line());
    h.add(PrimeDivisor::infinity(), 1);
    return build_trivial_ml_example(Base::proj_line(), h, sigma, LatticeVector(Space::N, std::vector<Int>(n, Int(1))));
}

/// The graded k[x, y] with deg y = 1 over the affine line.
inline PolyhedralDivisor affine_plane_example()
{
    return PolyhedralDivisor(Base::affine_line(), Cone::from_generators(1, Space::N, {LatticeVector(Space::N, {Int(1)})}), {});
}

inline PolyhedralDivisor toric_quadrant()
{
    return PolyhedralDivisor(Base::point(),
                             Cone::from_generators(2, Space::N, {LatticeVector(Space::N, {Int(1), Int(0)}),
                                                                 LatticeVector(Space::N, {Int(0), Int(1)})}),
                             {});
}

/// Degree-0 family on P^1: v at one point and -v at another, so deg D(m) = 0 for all m.
inline std::vector<PolyhedralDivisor> degree_zero_family(std::size_t count, unsigned seed = kSeed + 2)
{
    Generator g(seed);
    std::vector<PolyhedralDivisor> out;
    out.push_back(PolyhedralDivisor(Base::proj_line(), g.cone2(), {}));
    while (out.size() < count) {
        Cone sigma = g.cone2();
        RationalVector v = g.vertex(2);
        PolyhedralDivisor::CoeffMap coeffs;
        coeffs.emplace(PrimeDivisor::finite(0), TailedPolyhedron(sigma, {v}));
        coeffs.emplace(PrimeDivisor::infinity(), TailedPolyhedron(sigma, {Rat(-1) * v}));
        out.push_back(PolyhedralDivisor(Base::proj_line(), sigma, std::move(coeffs)));
    }
    return out;
}

/// One derivation per ray that has a witness within `bound`.
inline std::vector<FiberLND> witness_derivations(const PolyhedralDivisor &dd, long bound = 6)
{
    std::vector<FiberLND> out;
    for (const auto &c : list_equivalence_classes(dd, bound))
        if (c.witness && c.witness->phi)
            out.push_back(make_lnd(dd, c.ray, c.witness->e, *c.witness->phi));
    return out;
}

/// Basis elements of A_m for all m in the weight cone with max-norm <= norm.
inline std::vector<HomogeneousElement> sample_elements(const PolyhedralDivisor &dd, long norm)
{
    std::vector<HomogeneousElement> out;
    for (const auto &m : lattice_points(dd.weight_cone(), norm)) {
        GradedPiece p = graded_piece(dd, m);
        if (p.basis)
            for (const auto &f : *p.basis)
                out.push_back(make_element(dd, f, m));
    }
    return out;
}

} // namespace corpus
