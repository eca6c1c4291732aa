#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tvar/lnd.hpp"

namespace tvar {

inline constexpr const char *kNotComputable =
    "not computable by this artifact (requires horizontal-type LNDs)";
inline constexpr const char *kInclusionChain = "ML <= ML_h <= ML_fib";

/// A_0 = H^0(Y, O_Y), since D(0) = 0.
inline std::string degree_zero_description(const Base &y)
{
    return y.kind == BaseKind::AffineLine ? "k[t]" : "k";
}

/// The function field K_Y.
inline std::string function_field_description(const Base &y)
{
    switch (y.kind) {
    case BaseKind::Point:
        return "k";
    case BaseKind::AffineLine:
    case BaseKind::ProjLine:
        return "k(t)";
    case BaseKind::AbstractCurve:
        return "K(C)";
    }
    return "k";
}

struct MLReport {
    std::vector<LatticeVector> qualifying_rays;
    std::vector<LatticeVector> unknown_rays;
    Cone weight_monoid;                                      // omega
    std::optional<std::vector<LatticeVector>> monoid_generators; // Hilbert basis when omega is pointed
    std::string degree_zero_part;
    Tri trivial = Tri::Unknown;
    std::optional<GeneratorReport> generators; // restricted to degrees in omega
    std::string ml_h = kNotComputable;
    std::string ml = kNotComputable;
    std::string inclusions = kInclusionChain;

    friend bool operator==(const MLReport &a, const MLReport &b)
    {
        return a.qualifying_rays == b.qualifying_rays && a.unknown_rays == b.unknown_rays &&
               a.weight_monoid == b.weight_monoid && a.monoid_generators == b.monoid_generators &&
               a.degree_zero_part == b.degree_zero_part && a.trivial == b.trivial &&
               a.generators == b.generators && a.ml_h == b.ml_h && a.ml == b.ml && a.inclusions == b.inclusions;
    }
};

struct FMLReport {
    bool contains_ky = true;
    std::string function_field;
    std::string reason = "every fiber-type derivation vanishes on K_Y, so K_Y lies in each kernel's fraction field";
    Cone lower_bound_monoid;
    bool lower_bound_only = true;

    friend bool operator==(const FMLReport &a, const FMLReport &b)
    {
        return a.contains_ky == b.contains_ky && a.function_field == b.function_field && a.reason == b.reason &&
               a.lower_bound_monoid == b.lower_bound_monoid && a.lower_bound_only == b.lower_bound_only;
    }
};

namespace detail {

struct Omega {
    Cone cone;
    std::vector<LatticeVector> qualifying;
    std::vector<LatticeVector> unknown;
};

inline Omega omega(const PolyhedralDivisor &dd)
{
    Omega out{dd.weight_cone(), {}, {}};
    for (const auto &r : rays(dd.tail())) {
        RayContext ctx(dd.tail(), r);
        Tri t = exists_fiber_lnd(dd, ctx);
        if (t == Tri::True) {
            out.qualifying.push_back(r);
            out.cone = intersect(out.cone, ctx.tau());
        } else if (t == Tri::Unknown) {
            out.unknown.push_back(r);
        }
    }
    return out;
}

} // namespace detail

/// ML_fib as the graded subring with weight monoid omega = sigma^dual cap tau_i over qualifying rays.
inline MLReport ml_fib(const PolyhedralDivisor &dd, std::optional<Int> generator_bound = std::nullopt)
{
    detail::Omega om = detail::omega(dd);
    MLReport r;
    r.qualifying_rays = om.qualifying;
    r.unknown_rays = om.unknown;
    r.weight_monoid = om.cone;
    if (om.cone.is_pointed())
        r.monoid_generators = hilbert_basis(om.cone);
    r.degree_zero_part = degree_zero_description(dd.base());
    if (!om.unknown.empty())
        r.trivial = Tri::Unknown;
    else
        r.trivial = tri_of(om.cone.is_zero() && r.degree_zero_part == "k");
    if (generator_bound) {
        GeneratorReport g = generator_candidates(dd, *generator_bound);
        std::vector<HomogeneousElement> kept;
        for (auto &h : g.generators)
            if (om.cone.contains(h.degree))
                kept.push_back(std::move(h));
        g.generators = std::move(kept);
        r.generators = std::move(g);
    }
    return r;
}

/// K_Y together with chi^omega; a lower bound for FML_fib, never claimed equal to it.
inline FMLReport fml_fib_lower_bound(const PolyhedralDivisor &dd)
{
    FMLReport r;
    r.function_field = function_field_description(dd.base());
    r.lower_bound_monoid = detail::omega(dd).cone;
    return r;
}

/// D = sum over P of (a_P p + sigma) * P for an integral divisor H = sum a_P P.
inline PolyhedralDivisor build_trivial_ml_example(const Base &base, const QDivisor &h, const Cone &sigma,
                                                  const LatticeVector &p)
{
    if (!base.is_projective())
        throw Error(ErrorKind::NotProjective, "the example needs a projective base");
    if (h.base() != base)
        throw Error(ErrorKind::ContextMismatch, "divisor H lives on a different base");
    if (sigma.space() != Space::N || !sigma.is_pointed() || !sigma.is_full_dimensional())
        throw Error(ErrorKind::Validation, "sigma must be a pointed full-dimensional cone in N");
    if (p.space() != Space::N || p.rank() != sigma.rank())
        throw Error(ErrorKind::RankMismatch, "p must be a lattice point of N");
    if (!sigma.in_relint(p))
        throw Error(ErrorKind::NotInteriorPoint, to_string(p) + " is not in the relative interior of sigma");
    PolyhedralDivisor::CoeffMap coeffs;
    for (const auto &[pt, a] : h.coeffs()) {
        if (!is_integer(a))
            throw Error(ErrorKind::Validation, "H must be an integral divisor");
        coeffs.emplace(pt, TailedPolyhedron(sigma, {a * to_rational(p)}));
    }
    if (!is_big(base, h))
        throw Error(ErrorKind::NotBigDivisor, "H = " + h.str() + " is not big");
    PolyhedralDivisor dd(base, sigma, std::move(coeffs));
    if (is_proper(dd).proper != Tri::True)
        throw Error(ErrorKind::VerificationFailed, "constructed divisor is not proper");
    if (ml_fib(dd).trivial != Tri::True)
        throw Error(ErrorKind::VerificationFailed, "constructed divisor has nontrivial ML_fib");
    return dd;
}

/// The derivations chi^(mu_j) d_(nu_i), i != j, for D = (p + orthant) * H with p = sum nu_i.
inline std::vector<FiberLND> standard_example_derivations(const PolyhedralDivisor &dd)
{
    const std::size_t n = dd.rank();
    std::vector<LatticeVector> basis;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Int> c(n, Int(0));
        c[i] = 1;
        basis.emplace_back(Space::N, std::move(c));
    }
    if (dd.tail() != Cone::from_generators(n, Space::N, basis))
        throw Error(ErrorKind::NotStandardForm, "tail cone is not the standard orthant");
    if (dd.coeffs().empty())
        throw Error(ErrorKind::NotStandardForm, "divisor has no coefficients");
    for (const auto &[pt, delta] : dd.coeffs()) {
        const auto &vs = delta.vertices();
        bool ok = vs.size() == 1 && is_integer(vs.front()[0]);
        for (std::size_t i = 1; ok && i < n; ++i)
            ok = vs.front()[i] == vs.front()[0];
        if (!ok)
            throw Error(ErrorKind::NotStandardForm, "coefficient at " + pt.str() + " is not a multiple of p + sigma");
    }
    std::vector<FiberLND> out;
    const RationalSection one = RationalSection::one(dd.base());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j)
                continue;
            std::vector<Int> e(n, Int(0));
            e[i] = -1;
            e[j] = 1;
            out.push_back(make_lnd(dd, basis[i], LatticeVector(Space::M, std::move(e)), one));
        }
    return out;
}

} // namespace tvar
