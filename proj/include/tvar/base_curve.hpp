#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "tvar/error.hpp"
#include "tvar/polynomial.hpp"
#include "tvar/rational.hpp"

namespace tvar {

enum class BaseKind { Point, AffineLine, ProjLine, AbstractCurve };

inline const char *base_kind_name(BaseKind k)
{
    switch (k) {
    case BaseKind::Point: return "point";
    case BaseKind::AffineLine: return "affine_line";
    case BaseKind::ProjLine: return "proj_line";
    case BaseKind::AbstractCurve: return "abstract_curve";
    }
    return "point";
}

/// The base variety Y of a polyhedral divisor. Only points and curves are supported.
struct Base {
    BaseKind kind = BaseKind::Point;
    unsigned long genus = 0; // AbstractCurve only

    static Base point() { return {BaseKind::Point, 0}; }
    static Base affine_line() { return {BaseKind::AffineLine, 0}; }
    static Base proj_line() { return {BaseKind::ProjLine, 0}; }
    static Base abstract_curve(unsigned long g) { return {BaseKind::AbstractCurve, g}; }

    bool is_projective() const { return kind == BaseKind::ProjLine || kind == BaseKind::AbstractCurve; }
    bool is_affine() const { return kind == BaseKind::Point || kind == BaseKind::AffineLine; }
    /// Explicit section arithmetic is available over P^1, A^1 and the point.
    bool has_sections() const { return kind != BaseKind::AbstractCurve; }
    int dim() const { return kind == BaseKind::Point ? 0 : 1; }

    friend bool operator==(const Base &a, const Base &b) { return a.kind == b.kind && a.genus == b.genus; }
    friend bool operator!=(const Base &a, const Base &b) { return !(a == b); }
};

/// A prime divisor on a curve: a rational point, the point at infinity, or an opaque label.
class PrimeDivisor
{
public:
    enum class Kind { Finite, Infinity, Label };

    static PrimeDivisor finite(const Rat &x) { return PrimeDivisor(Kind::Finite, x, {}); }
    static PrimeDivisor infinity() { return PrimeDivisor(Kind::Infinity, Rat(0), {}); }
    static PrimeDivisor labeled(std::string name)
    {
        if (name.empty())
            throw Error(ErrorKind::Validation, "empty divisor label");
        return PrimeDivisor(Kind::Label, Rat(0), std::move(name));
    }

    /// "p/q" or integer, "inf", or "label:<name>".
    static PrimeDivisor parse(const std::string &s)
    {
        if (s == "inf")
            return infinity();
        if (s.rfind("label:", 0) == 0)
            return labeled(s.substr(6));
        return finite(parse_rational(s));
    }

    Kind kind() const { return kind_; }
    const Rat &value() const { return value_; }
    const std::string &label() const { return label_; }

    std::string str() const
    {
        switch (kind_) {
        case Kind::Finite: return to_string(value_);
        case Kind::Infinity: return "inf";
        case Kind::Label: return "label:" + label_;
        }
        return "";
    }

    friend bool operator<(const PrimeDivisor &a, const PrimeDivisor &b)
    {
        if (a.kind_ != b.kind_)
            return a.kind_ < b.kind_;
        if (a.kind_ == Kind::Finite)
            return a.value_ < b.value_;
        return a.label_ < b.label_;
    }
    friend bool operator==(const PrimeDivisor &a, const PrimeDivisor &b) { return !(a < b) && !(b < a); }
    friend bool operator!=(const PrimeDivisor &a, const PrimeDivisor &b) { return !(a == b); }

private:
    PrimeDivisor(Kind k, Rat v, std::string l) : kind_(k), value_(std::move(v)), label_(std::move(l)) {}

    Kind kind_;
    Rat value_;
    std::string label_;
};

inline void check_divisor_on(const Base &y, const PrimeDivisor &p)
{
    bool ok = false;
    switch (y.kind) {
    case BaseKind::Point: ok = false; break;
    case BaseKind::AffineLine: ok = p.kind() == PrimeDivisor::Kind::Finite; break;
    case BaseKind::ProjLine: ok = p.kind() != PrimeDivisor::Kind::Label; break;
    case BaseKind::AbstractCurve: ok = p.kind() == PrimeDivisor::Kind::Label; break;
    }
    if (!ok)
        throw Error(ErrorKind::Validation,
                    "'" + p.str() + "' is not a prime divisor on a base of kind " + base_kind_name(y.kind));
}

/// A Q-divisor; zero coefficients are never stored.
class QDivisor
{
public:
    using Map = std::map<PrimeDivisor, Rat>;

    QDivisor() = default;
    explicit QDivisor(Base base) : base_(base) {}
    QDivisor(Base base, const Map &coeffs) : base_(base)
    {
        for (const auto &[p, c] : coeffs)
            add(p, c);
    }

    const Base &base() const { return base_; }
    const Map &coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    Rat coeff(const PrimeDivisor &p) const
    {
        auto it = coeffs_.find(p);
        return it == coeffs_.end() ? Rat(0) : it->second;
    }

    void add(const PrimeDivisor &p, const Rat &c)
    {
        check_divisor_on(base_, p);
        Rat v = coeff(p) + c;
        if (v == 0)
            coeffs_.erase(p);
        else
            coeffs_[p] = v;
    }

    friend QDivisor operator+(QDivisor a, const QDivisor &b)
    {
        check_same_base(a, b);
        for (const auto &[p, c] : b.coeffs_)
            a.add(p, c);
        return a;
    }

    QDivisor operator-() const
    {
        QDivisor out = *this;
        for (auto &[p, c] : out.coeffs_)
            c = -c;
        return out;
    }

    friend QDivisor operator-(const QDivisor &a, const QDivisor &b) { return a + (-b); }

    friend QDivisor operator*(const Rat &s, const QDivisor &d)
    {
        QDivisor out(d.base_);
        for (const auto &[p, c] : d.coeffs_)
            out.add(p, s * c);
        return out;
    }

    /// Coefficientwise a >= b.
    friend bool dominates(const QDivisor &a, const QDivisor &b)
    {
        QDivisor diff = a - b;
        return std::all_of(diff.coeffs_.begin(), diff.coeffs_.end(), [](const auto &kv) { return kv.second > 0; });
    }

    bool is_effective() const
    {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto &kv) { return kv.second > 0; });
    }

    friend bool operator==(const QDivisor &a, const QDivisor &b)
    {
        return a.base_ == b.base_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const QDivisor &a, const QDivisor &b) { return !(a == b); }

    std::string str() const
    {
        if (coeffs_.empty())
            return "0";
        std::string out;
        for (const auto &[p, c] : coeffs_) {
            if (!out.empty())
                out += " + ";
            out += to_string(c) + "*[" + p.str() + "]";
        }
        return out;
    }

private:
    static void check_same_base(const QDivisor &a, const QDivisor &b)
    {
        if (a.base_ != b.base_)
            throw Error(ErrorKind::ContextMismatch, "divisors on different bases");
    }

    Base base_;
    Map coeffs_;
};

/// A rational function on the base: a function of t on the lines, a constant on the point.
class RationalSection
{
public:
    RationalSection() = default;
    RationalSection(Base base, RationalFunction value) : base_(base), value_(std::move(value))
    {
        if (!base_.has_sections())
            throw Error(ErrorKind::Unsupported, "no section arithmetic on an abstract curve");
        if (base_.kind == BaseKind::Point && !value_.is_constant())
            throw Error(ErrorKind::Validation, "sections on a point are constants");
    }

    static RationalSection one(Base base) { return RationalSection(base, RationalFunction(1)); }
    static RationalSection zero(Base base) { return RationalSection(base, RationalFunction(0)); }

    const Base &base() const { return base_; }
    const RationalFunction &value() const { return value_; }
    bool is_zero() const { return value_.is_zero(); }

    friend RationalSection operator*(const RationalSection &a, const RationalSection &b)
    {
        check(a, b);
        return RationalSection(a.base_, a.value_ * b.value_);
    }
    friend RationalSection operator+(const RationalSection &a, const RationalSection &b)
    {
        check(a, b);
        return RationalSection(a.base_, a.value_ + b.value_);
    }
    friend RationalSection operator-(const RationalSection &a, const RationalSection &b)
    {
        check(a, b);
        return RationalSection(a.base_, a.value_ - b.value_);
    }
    friend RationalSection operator*(const Rat &s, const RationalSection &a)
    {
        return RationalSection(a.base_, RationalFunction(s) * a.value_);
    }

    friend bool operator==(const RationalSection &a, const RationalSection &b)
    {
        return a.base_ == b.base_ && a.value_ == b.value_;
    }
    friend bool operator!=(const RationalSection &a, const RationalSection &b) { return !(a == b); }

    std::string str() const { return value_.str(); }

private:
    static void check(const RationalSection &a, const RationalSection &b)
    {
        if (a.base_ != b.base_)
            throw Error(ErrorKind::ContextMismatch, "sections on different bases");
    }

    Base base_;
    RationalFunction value_;
};

inline Rat degree(const QDivisor &d)
{
    if (!d.base().is_projective())
        throw Error(ErrorKind::NotProjective, std::string("degree is undefined on a base of kind ") +
                                                  base_kind_name(d.base().kind));
    Rat s = 0;
    for (const auto &[p, c] : d.coeffs())
        s += c;
    return s;
}

inline QDivisor round_down(const QDivisor &d)
{
    QDivisor out(d.base());
    for (const auto &[p, c] : d.coeffs())
        out.add(p, Rat(floor_of(c)));
    return out;
}

struct H0Report {
    enum class Kind { Finite, InfiniteRank1, Unknown };
    Kind kind = Kind::Unknown;
    Int dim = 0;                              // Finite only
    std::optional<RationalSection> generator; // InfiniteRank1: module generator over k[t]

    bool positive() const { return kind == Kind::InfiniteRank1 || (kind == Kind::Finite && dim > 0); }

    friend bool operator==(const H0Report &a, const H0Report &b)
    {
        return a.kind == b.kind && a.dim == b.dim && a.generator == b.generator;
    }
};

namespace detail {

inline void check_on(const Base &y, const QDivisor &d)
{
    if (d.base() != y)
        throw Error(ErrorKind::ContextMismatch, "divisor does not live on this base");
}

/// prod over finite points of (t - a)^(-c_a): the function with exactly those orders there.
inline RationalFunction finite_part_function(const QDivisor &integral)
{
    Polynomial num(1), den(1);
    for (const auto &[p, c] : integral.coeffs()) {
        if (p.kind() != PrimeDivisor::Kind::Finite)
            continue;
        const Int &e = c.get_num();
        if (e > 0)
            den = den * Polynomial::linear(p.value()).pow(e.get_ui());
        else if (e < 0)
            num = num * Polynomial::linear(p.value()).pow(Int(-e).get_ui());
    }
    return RationalFunction(num, den);
}

} // namespace detail

inline H0Report h0(const Base &y, const QDivisor &d)
{
    detail::check_on(y, d);
    QDivisor fl = round_down(d);
    H0Report r;
    switch (y.kind) {
    case BaseKind::Point:
        r.kind = H0Report::Kind::Finite;
        r.dim = 1;
        return r;
    case BaseKind::AffineLine:
        r.kind = H0Report::Kind::InfiniteRank1;
        r.generator = RationalSection(y, detail::finite_part_function(fl));
        return r;
    case BaseKind::ProjLine: {
        Rat deg = degree(fl);
        r.kind = H0Report::Kind::Finite;
        r.dim = deg < 0 ? Int(0) : Int(deg.get_num() + 1);
        return r;
    }
    case BaseKind::AbstractCurve: {
        Int deg = degree(fl).get_num();
        Int g = y.genus;
        if (deg < 0) {
            r.kind = H0Report::Kind::Finite;
            r.dim = 0;
        } else if (deg > 2 * g - 2) {
            r.kind = H0Report::Kind::Finite;
            r.dim = deg + 1 - g;
        } else if (fl.is_zero()) {
            r.kind = H0Report::Kind::Finite;
            r.dim = 1;
        } else {
            r.kind = H0Report::Kind::Unknown;
        }
        return r;
    }
    }
    return r;
}

/// Normal-form basis of H^0(Y, O(D)) over P^1, the module generator over A^1, {1} on a point.
inline std::vector<RationalSection> section_basis(const Base &y, const QDivisor &d)
{
    detail::check_on(y, d);
    if (!y.has_sections())
        throw Error(ErrorKind::Unsupported, "no section arithmetic on an abstract curve");
    if (y.kind == BaseKind::Point)
        return {RationalSection::one(y)};
    QDivisor fl = round_down(d);
    RationalFunction base_fn = detail::finite_part_function(fl);
    if (y.kind == BaseKind::AffineLine)
        return {RationalSection(y, base_fn)};
    Rat deg = degree(fl);
    std::vector<RationalSection> out;
    if (deg < 0)
        return out;
    const unsigned long top = deg.get_num().get_ui();
    for (unsigned long j = 0; j <= top; ++j)
        out.emplace_back(y, RationalFunction(Polynomial::monomial(1, j)) * base_fn);
    return out;
}

/// Principal divisor of a nonzero function on A^1 or P^1 (orders at rational points only).
inline QDivisor principal_divisor(const RationalSection &f)
{
    const Base &y = f.base();
    if (f.is_zero())
        throw Error(ErrorKind::Validation, "the zero function has no divisor");
    QDivisor out(y);
    if (y.kind == BaseKind::Point)
        return out;
    auto accumulate = [&](const Polynomial &p, int sign) {
        long removed = 0;
        for (const Rat &root : p.rational_roots()) {
            unsigned long k = p.multiplicity(root);
            removed += static_cast<long>(k);
            out.add(PrimeDivisor::finite(root), Rat(sign * static_cast<long>(k)));
        }
        if (removed != p.degree())
            throw Error(ErrorKind::IrreducibleFactorOutsideGroundField,
                        "'" + p.str() + "' does not split into rational linear factors");
    };
    accumulate(f.value().num(), 1);
    accumulate(f.value().den(), -1);
    if (y.kind == BaseKind::ProjLine) {
        long ord_inf = f.value().den().degree() - f.value().num().degree();
        out.add(PrimeDivisor::infinity(), Rat(ord_inf));
    }
    return out;
}

/// f lies in H^0(Y, O(D)), i.e. div(f) + floor(D) >= 0.
inline bool section_in(const RationalSection &f, const QDivisor &d)
{
    if (f.base() != d.base())
        throw Error(ErrorKind::ContextMismatch, "section and divisor live on different bases");
    if (f.is_zero() || f.base().kind == BaseKind::Point)
        return true;
    return (principal_divisor(f) + round_down(d)).is_effective();
}

inline bool is_big(const Base &y, const QDivisor &d)
{
    detail::check_on(y, d);
    if (y.is_affine())
        return true;
    return degree(d) > 0;
}

inline Tri is_semiample(const Base &y, const QDivisor &d)
{
    detail::check_on(y, d);
    if (y.is_affine())
        return Tri::True;
    Rat deg = degree(d);
    if (deg > 0)
        return Tri::True;
    if (deg < 0)
        return Tri::False;
    if (d.is_zero() || y.kind == BaseKind::ProjLine || y.genus == 0)
        return Tri::True;
    return Tri::Unknown;
}

} // namespace tvar
