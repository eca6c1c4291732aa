#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tvar/polyhedral_divisor.hpp"

namespace tvar {

/// The data attached to a ray rho of sigma: a primitive generator, a vector mu with
/// <mu, rho> = 1, the dual face tau and the dual of the cone over the remaining rays.
class RayContext
{
public:
    RayContext() = default;

    RayContext(const Cone &sigma, const LatticeVector &ray) : sigma_(sigma)
    {
        if (ray.space() != Space::N)
            throw Error(ErrorKind::SpaceMismatch, "rays live in N");
        if (ray.is_zero())
            throw Error(ErrorKind::NotARay, "zero vector is not a ray");
        rho_ = primitive(ray);
        tau_ = face_dual_to_ray(sigma_, rho_);
        std::vector<LatticeVector> others;
        for (const auto &r : rays(sigma_))
            if (r != rho_)
                others.push_back(r);
        sigma1_dual_ = dual_cone(Cone::from_generators(sigma_.rank(), Space::N, others));
        mu_ = pick_mu(rho_);
    }

    const Cone &sigma() const { return sigma_; }
    const LatticeVector &rho() const { return rho_; }
    const LatticeVector &mu() const { return mu_; }
    const Cone &tau() const { return tau_; }
    const Cone &sigma1_dual() const { return sigma1_dual_; }

    friend bool operator==(const RayContext &a, const RayContext &b)
    {
        return a.sigma_ == b.sigma_ && a.rho_ == b.rho_;
    }

private:
    // smallest L1 norm, ties broken lexicographically
    static LatticeVector pick_mu(const LatticeVector &rho)
    {
        const std::size_t n = rho.rank();
        for (long radius = 1;; ++radius) {
            std::optional<std::pair<Int, LatticeVector>> best;
            std::vector<Int> lo(n, Int(-radius)), hi(n, Int(radius));
            detail::for_each_box_point(lo, hi, Space::M, [&](const LatticeVector &m) {
                if (pairing(m, rho) != 1)
                    return;
                Int l1 = 0;
                for (std::size_t i = 0; i < n; ++i)
                    l1 += abs(m[i]);
                if (l1 > radius)
                    return;
                if (!best || l1 < best->first || (l1 == best->first && m < best->second))
                    best = std::make_pair(l1, m);
            });
            if (best)
                return best->second;
        }
    }

    Cone sigma_;
    LatticeVector rho_;
    LatticeVector mu_;
    Cone tau_;
    Cone sigma1_dual_;
};

inline RayContext make_context(const PolyhedralDivisor &dd, const LatticeVector &ray)
{
    return RayContext(dd.tail(), ray);
}

/// <e, rho> = -1 and e in the dual of the remaining rays.
inline bool s_rho_contains(const RayContext &ctx, const LatticeVector &e)
{
    if (e.space() != Space::M || e.rank() != ctx.sigma().rank())
        return false;
    return pairing(e, ctx.rho()) == -1 && ctx.sigma1_dual().contains(e);
}

/// Elements of S_rho with max-norm at most `bound`, ordered by max-norm then lexicographically.
inline std::vector<LatticeVector> s_rho_enumerate(const RayContext &ctx, const Int &bound)
{
    if (bound < 0)
        throw Error(ErrorKind::Validation, "bound must be nonnegative");
    const std::size_t n = ctx.sigma().rank();
    std::vector<LatticeVector> out;
    std::vector<Int> lo(n, Int(-bound)), hi(n, bound);
    detail::for_each_box_point(lo, hi, Space::M, [&](const LatticeVector &e) {
        if (s_rho_contains(ctx, e))
            out.push_back(e);
    });
    std::stable_sort(out.begin(), out.end(), [](const LatticeVector &a, const LatticeVector &b) {
        Int na = max_norm(a), nb = max_norm(b);
        return na != nb ? na < nb : a < b;
    });
    return out;
}

enum class DeMode { Fast, Slow };

namespace detail {

inline void require_s_rho(const RayContext &ctx, const LatticeVector &e)
{
    if (!s_rho_contains(ctx, e))
        throw Error(ErrorKind::NotInSRho, to_string(e) + " is not in S_rho for ray " + to_string(ctx.rho()));
}

inline void require_context(const PolyhedralDivisor &dd, const RayContext &ctx)
{
    if (dd.tail() != ctx.sigma())
        throw Error(ErrorKind::ContextMismatch, "ray context belongs to a different tail cone");
}

// g_1 is the functional of the piece containing tau; when a wall crosses tau (rank >= 3)
// the smallest functional among pieces meeting tau is used.
inline Rat g_one(const TailedPolyhedron &delta, const Cone &tau, const LatticeVector &e)
{
    try {
        return piece_containing_face(delta, tau).functional(e);
    } catch (const Error &err) {
        if (err.kind() != ErrorKind::FaceNotCovered)
            throw;
    }
    std::optional<Rat> best;
    for (const auto &piece : pieces_meeting_face(delta, tau)) {
        Rat v = piece.functional(e);
        if (!best || v < *best)
            best = v;
    }
    return *best;
}

inline Rat g_min(const TailedPolyhedron &delta, const LatticeVector &e)
{
    std::optional<Rat> best;
    for (const auto &piece : linear_pieces(delta)) {
        Rat v = piece.functional(e);
        if (!best || v < *best)
            best = v;
    }
    return *best;
}

} // namespace detail

/// D_e = -sum over H of g_{1,H}(e) * H; the slow mode takes the max over all pieces.
inline QDivisor d_e(const PolyhedralDivisor &dd, const RayContext &ctx, const LatticeVector &e,
                    DeMode mode = DeMode::Fast)
{
    detail::require_context(dd, ctx);
    detail::require_s_rho(ctx, e);
    QDivisor out(dd.base());
    for (const auto &[p, delta] : dd.coeffs()) {
        Rat g = mode == DeMode::Fast ? detail::g_one(delta, ctx.tau(), e) : detail::g_min(delta, e);
        out.add(p, -g);
    }
    return out;
}

/// Phi_e = H^0(Y, O(-D_e)).
inline GradedPiece phi_e(const PolyhedralDivisor &dd, const RayContext &ctx, const LatticeVector &e)
{
    QDivisor minus = Rat(-1) * d_e(dd, ctx, e);
    GradedPiece out{e, h0(dd.base(), minus), std::nullopt};
    if (dd.base().has_sections())
        out.basis = section_basis(dd.base(), minus);
    return out;
}

/// A fiber-type LND exists for the ray iff D(m) is big for all m in relint(tau).
inline Tri exists_fiber_lnd(const PolyhedralDivisor &dd, const RayContext &ctx)
{
    detail::require_context(dd, ctx);
    if (dd.base().is_affine())
        return Tri::True;
    return tri_of(big_on_relint(dd, ctx.tau()).big);
}

/// The homogeneous derivation f chi^m -> <m, rho> phi f chi^(m+e).
class FiberLND
{
public:
    FiberLND(PolyhedralDivisor dd, RayContext ctx, LatticeVector e, RationalSection phi)
        : dd_(std::move(dd)), ctx_(std::move(ctx)), e_(std::move(e)), phi_(std::move(phi))
    {
    }

    const PolyhedralDivisor &divisor() const { return dd_; }
    const RayContext &context() const { return ctx_; }
    const LatticeVector &ray() const { return ctx_.rho(); }
    const LatticeVector &degree() const { return e_; }
    const RationalSection &phi() const { return phi_; }

    friend bool operator==(const FiberLND &a, const FiberLND &b)
    {
        return a.dd_ == b.dd_ && a.ctx_ == b.ctx_ && a.e_ == b.e_ && a.phi_ == b.phi_;
    }

private:
    PolyhedralDivisor dd_;
    RayContext ctx_;
    LatticeVector e_;
    RationalSection phi_;
};

inline FiberLND make_lnd(const PolyhedralDivisor &dd, const RayContext &ctx, const LatticeVector &e,
                         const RationalSection &phi)
{
    detail::require_context(dd, ctx);
    if (!dd.base().has_sections())
        throw Error(ErrorKind::Unsupported, "derivations need section arithmetic on the base");
    detail::require_s_rho(ctx, e);
    if (phi.base() != dd.base())
        throw Error(ErrorKind::ContextMismatch, "phi lives on a different base");
    if (phi.is_zero())
        throw Error(ErrorKind::ZeroPhi, "phi must be nonzero");
    QDivisor minus = Rat(-1) * d_e(dd, ctx, e);
    if (!section_in(phi, minus))
        throw Error(ErrorKind::PhiNotInPhiE, phi.str() + " is not in Phi_" + to_string(e));
    return FiberLND(dd, ctx, e, phi);
}

inline FiberLND make_lnd(const PolyhedralDivisor &dd, const LatticeVector &ray, const LatticeVector &e,
                         const RationalSection &phi)
{
    return make_lnd(dd, make_context(dd, ray), e, phi);
}

inline HomogeneousElement apply(const FiberLND &d, const HomogeneousElement &elt)
{
    const PolyhedralDivisor &dd = d.divisor();
    if (elt.zero)
        return HomogeneousElement::zero_element(dd.base(), dd.rank());
    if (elt.section.base() != dd.base() || elt.degree.rank() != dd.rank())
        throw Error(ErrorKind::ContextMismatch, "element does not belong to this ring");
    Int m0 = pairing(elt.degree, d.ray());
    if (m0 == 0)
        return HomogeneousElement::zero_element(dd.base(), dd.rank());
    return {Rat(m0) * (d.phi() * elt.section), elt.degree + d.degree(), false};
}

inline GradedElement apply(const FiberLND &d, const GradedElement &x)
{
    GradedElement out(d.divisor().base());
    for (const auto &[m, f] : x.terms())
        out.add(apply(d, HomogeneousElement{f, m, false}));
    return out;
}

/// Smallest n with d^n(elt) = 0.
inline unsigned long nilpotency_order(const FiberLND &d, const HomogeneousElement &elt)
{
    unsigned long n = 0;
    HomogeneousElement cur = elt;
    while (!cur.zero) {
        cur = apply(d, cur);
        ++n;
    }
    return n;
}

/// exp(t d) applied to x; finite because d is locally nilpotent.
inline GradedElement exp_action(const FiberLND &d, const Rat &t, const GradedElement &x)
{
    GradedElement out(d.divisor().base());
    GradedElement term = x;
    Rat coeff = 1;
    for (unsigned long k = 0; !term.is_zero(); ++k) {
        if (k > 0)
            coeff = coeff * t / Rat(static_cast<long>(k));
        if (coeff != 0)
            for (const auto &[m, f] : term.terms())
                out.add_term(m, coeff * f);
        term = apply(d, term);
    }
    return out;
}

inline GradedElement exp_action(const FiberLND &d, const Rat &t, const HomogeneousElement &elt)
{
    return exp_action(d, t, GradedElement::from(d.divisor().base(), elt));
}

struct KernelReport {
    Cone weight_monoid; // tau
    bool generators_available = false;
    std::vector<HomogeneousElement> generators;
    Int bound;

    friend bool operator==(const KernelReport &a, const KernelReport &b)
    {
        return a.weight_monoid == b.weight_monoid && a.generators_available == b.generators_available &&
               a.generators == b.generators && a.bound == b.bound;
    }
};

/// Weight monoid tau_M and generators of ker d found up to `bound`.
inline KernelReport kernel_description(const FiberLND &d, const Int &bound = 6)
{
    const PolyhedralDivisor &dd = d.divisor();
    KernelReport out{d.context().tau(), false, {}, bound};
    if (!dd.base().has_sections() || !dd.tail().is_full_dimensional())
        return out;
    out.generators_available = true;
    for (auto &g : generator_candidates(dd, bound).generators)
        if (out.weight_monoid.contains(g.degree))
            out.generators.push_back(std::move(g));
    return out;
}

/// Kernels agree exactly when the rays agree.
inline bool equivalent(const FiberLND &a, const FiberLND &b)
{
    if (a.divisor() != b.divisor())
        throw Error(ErrorKind::ContextMismatch, "derivations on different rings");
    return a.ray() == b.ray();
}

struct LndWitness {
    LatticeVector e;
    std::optional<RationalSection> phi; // absent on bases without section arithmetic

    friend bool operator==(const LndWitness &a, const LndWitness &b) { return a.e == b.e && a.phi == b.phi; }
};

struct EquivalenceClass {
    LatticeVector ray;
    Tri exists = Tri::Unknown;
    std::optional<LndWitness> witness;

    friend bool operator==(const EquivalenceClass &a, const EquivalenceClass &b)
    {
        return a.ray == b.ray && a.exists == b.exists && a.witness == b.witness;
    }
};

/// First e in S_rho (up to the bound) with Phi_e nonzero.
inline std::optional<LndWitness> find_witness(const PolyhedralDivisor &dd, const RayContext &ctx, const Int &bound)
{
    for (const auto &e : s_rho_enumerate(ctx, bound)) {
        GradedPiece phi = phi_e(dd, ctx, e);
        if (!phi.dimension.positive())
            continue;
        LndWitness w{e, std::nullopt};
        if (phi.basis && !phi.basis->empty())
            w.phi = phi.basis->front();
        return w;
    }
    return std::nullopt;
}

/// One entry per ray of sigma.
inline std::vector<EquivalenceClass> list_equivalence_classes(const PolyhedralDivisor &dd, const Int &bound = 6)
{
    std::vector<EquivalenceClass> out;
    for (const auto &r : rays(dd.tail())) {
        RayContext ctx(dd.tail(), r);
        EquivalenceClass c{r, exists_fiber_lnd(dd, ctx), std::nullopt};
        if (c.exists != Tri::False)
            c.witness = find_witness(dd, ctx, bound);
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace tvar
