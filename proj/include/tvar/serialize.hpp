#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tvar/invariants.hpp"

namespace tvar::io {

using json = nlohmann::json; // object keys are kept sorted, which makes dumps canonical

inline constexpr int kSchemaVersion = 1;

/// JSON pointer-like location used in parse errors.
class At
{
public:
    At() = default;
    explicit At(std::string p) : path_(std::move(p)) {}
    At operator/(const std::string &key) const { return At(path_ + "/" + key); }
    At operator/(std::size_t i) const { return At(path_ + "/" + std::to_string(i)); }
    const std::string &str() const { return path_.empty() ? root_ : path_; }

    [[noreturn]] void fail(const std::string &msg, ErrorKind kind = ErrorKind::Validation) const
    {
        throw Error(kind, "at " + str() + ": " + msg);
    }

    /// Re-raises library errors with the location prefixed, keeping the kind.
    template <class F>
    auto guard(F &&f) const -> decltype(f())
    {
        try {
            return f();
        } catch (const Error &e) {
            throw Error(e.kind(), "at " + str() + ": " + e.detail());
        }
    }

private:
    std::string path_;
    inline static const std::string root_ = "/";
};

inline const json &member(const json &j, const std::string &key, const At &at)
{
    if (!j.is_object())
        at.fail("expected an object");
    auto it = j.find(key);
    if (it == j.end())
        at.fail("missing key '" + key + "'");
    return *it;
}

inline const json &array_of(const json &j, const At &at)
{
    if (!j.is_array())
        at.fail("expected an array");
    return j;
}

inline std::string string_of(const json &j, const At &at)
{
    if (!j.is_string())
        at.fail("expected a string");
    return j.get<std::string>();
}

inline bool bool_of(const json &j, const At &at)
{
    if (!j.is_boolean())
        at.fail("expected a boolean");
    return j.get<bool>();
}

inline json to_json(const Int &z);
inline json to_json(const Rat &q);
inline json to_json(Tri t);
template <class S>
inline json to_json(const Vector<S> &v);
inline json to_json(const Cone &c);
inline json to_json(const Base &y);
inline json to_json(const QDivisor &d);
inline json to_json(const RationalSection &f);
inline json to_json(const H0Report &h);
inline json to_json(const PolyhedralDivisor &dd);
inline json to_json(const GradedPiece &g);
inline json to_json(const HomogeneousElement &e);
inline json to_json(const GradedElement &x);
inline json to_json(const Witness &w);
inline json to_json(const ProperReport &r);
inline json to_json(const GeneratorReport &g);
inline json to_json(const RayContext &c);
inline json to_json(const FiberLND &d);
inline json to_json(const KernelReport &k);
inline json to_json(const EquivalenceClass &c);
inline json to_json(const MLReport &r);
inline json to_json(const FMLReport &r);

// ---- scalars and vectors ----

inline json to_json(const Int &z)
{
    if (z.fits_slong_p())
        return json(z.get_si());
    return json(z.get_str());
}

inline Int parse_int(const json &j, const At &at)
{
    if (j.is_number_integer())
        return Int(std::to_string(j.get<long long>()), 10);
    if (j.is_number_unsigned())
        return Int(std::to_string(j.get<unsigned long long>()), 10);
    if (j.is_string()) {
        Rat q = at.guard([&] { return parse_rational(j.get<std::string>()); });
        if (!is_integer(q))
            at.fail("expected an integer");
        return q.get_num();
    }
    at.fail("expected an integer");
}

inline json to_json(const Rat &q) { return json(to_string(q)); }

inline Rat parse_rat(const json &j, const At &at)
{
    if (j.is_number_integer() || j.is_number_unsigned())
        return Rat(parse_int(j, at));
    if (j.is_string())
        return at.guard([&] { return parse_rational(j.get<std::string>()); });
    at.fail("expected a rational as an integer or a \"p/q\" string");
}

inline json to_json(Tri t) { return json(tri_name(t)); }

inline Tri parse_tri(const json &j, const At &at)
{
    std::string s = string_of(j, at);
    if (s == "true")
        return Tri::True;
    if (s == "false")
        return Tri::False;
    if (s == "unknown")
        return Tri::Unknown;
    at.fail("expected true, false or unknown");
}

template <class S>
json to_json(const Vector<S> &v)
{
    json a = json::array();
    for (const auto &c : v.coords())
        a.push_back(to_json(c));
    return a;
}

inline LatticeVector parse_lattice(const json &j, Space space, std::optional<std::size_t> rank, const At &at)
{
    std::vector<Int> c;
    const json &a = array_of(j, at);
    for (std::size_t i = 0; i < a.size(); ++i)
        c.push_back(parse_int(a[i], at / i));
    if (rank && c.size() != *rank)
        at.fail("expected " + std::to_string(*rank) + " coordinates, got " + std::to_string(c.size()));
    return LatticeVector(space, std::move(c));
}

inline RationalVector parse_rational_vector(const json &j, Space space, std::optional<std::size_t> rank, const At &at)
{
    std::vector<Rat> c;
    const json &a = array_of(j, at);
    for (std::size_t i = 0; i < a.size(); ++i)
        c.push_back(parse_rat(a[i], at / i));
    if (rank && c.size() != *rank)
        at.fail("expected " + std::to_string(*rank) + " coordinates, got " + std::to_string(c.size()));
    return RationalVector(space, std::move(c));
}

template <class T>
json list_json(const std::vector<T> &xs)
{
    json a = json::array();
    for (const auto &x : xs)
        a.push_back(to_json(x));
    return a;
}

inline std::vector<LatticeVector> parse_lattice_list(const json &j, Space space, std::optional<std::size_t> rank,
                                                     const At &at)
{
    std::vector<LatticeVector> out;
    const json &a = array_of(j, at);
    for (std::size_t i = 0; i < a.size(); ++i)
        out.push_back(parse_lattice(a[i], space, rank, at / i));
    return out;
}

inline Space parse_space(const json &j, const At &at)
{
    std::string s = string_of(j, at);
    if (s == "M")
        return Space::M;
    if (s == "N")
        return Space::N;
    at.fail("expected M or N");
}

// ---- cones ----

inline json to_json(const Cone &c)
{
    return json{{"space", space_name(c.space())},
                {"rank", c.rank()},
                {"rays", list_json(c.ray_generators())},
                {"lineality", list_json(c.lineality())},
                {"facets", list_json(c.facets())},
                {"equations", list_json(c.equations())}};
}

/// Rebuilds from rays and lineality; facet data, when present, must match.
inline Cone parse_cone(const json &j, const At &at)
{
    Space space = parse_space(member(j, "space", at), at / "space");
    Int r = parse_int(member(j, "rank", at), at / "rank");
    if (r < 0 || !r.fits_slong_p())
        at.fail("bad rank");
    std::size_t rank = r.get_ui();
    std::vector<LatticeVector> gens = parse_lattice_list(member(j, "rays", at), space, rank, at / "rays");
    if (j.contains("lineality"))
        for (const auto &l : parse_lattice_list(j.at("lineality"), space, rank, at / "lineality")) {
            gens.push_back(l);
            gens.push_back(-l);
        }
    Cone c = at.guard([&] { return Cone::from_generators(rank, space, gens); });
    Space dual = dual_space(space);
    if (j.contains("facets") && parse_lattice_list(j.at("facets"), dual, rank, at / "facets") != c.facets())
        at.fail("facets do not match the generators");
    if (j.contains("equations") && parse_lattice_list(j.at("equations"), dual, rank, at / "equations") != c.equations())
        at.fail("equations do not match the generators");
    return c;
}

// ---- base curve objects ----

inline json to_json(const Base &y) { return json{{"kind", base_kind_name(y.kind)}, {"genus", y.genus}}; }

inline Base parse_base(const json &j, const At &at)
{
    std::string kind = string_of(member(j, "kind", at), at / "kind");
    unsigned long genus = 0;
    if (j.contains("genus")) {
        Int g = parse_int(j.at("genus"), at / "genus");
        if (g < 0 || !g.fits_ulong_p())
            (at / "genus").fail("genus must be a nonnegative integer");
        genus = g.get_ui();
    }
    if (kind == "point")
        return Base::point();
    if (kind == "affine_line")
        return Base::affine_line();
    if (kind == "proj_line")
        return Base::proj_line();
    if (kind == "abstract_curve")
        return Base::abstract_curve(genus);
    (at / "kind").fail("unknown base kind '" + kind + "'");
}

inline PrimeDivisor parse_prime(const json &j, const At &at)
{
    std::string s = string_of(j, at);
    return at.guard([&] { return PrimeDivisor::parse(s); });
}

inline json to_json(const QDivisor &d)
{
    json coeffs = json::object();
    for (const auto &[p, c] : d.coeffs())
        coeffs[p.str()] = to_json(c);
    return json{{"base", to_json(d.base())}, {"coeffs", coeffs}};
}

inline QDivisor parse_qdivisor(const json &j, const At &at)
{
    Base y = parse_base(member(j, "base", at), at / "base");
    QDivisor d(y);
    const json &coeffs = member(j, "coeffs", at);
    if (!coeffs.is_object())
        (at / "coeffs").fail("expected an object");
    for (auto it = coeffs.begin(); it != coeffs.end(); ++it) {
        At here = at / "coeffs" / it.key();
        PrimeDivisor p = here.guard([&] { return PrimeDivisor::parse(it.key()); });
        (here / "at").guard([&] { check_divisor_on(y, p); return 0; });
        d.add(p, parse_rat(it.value(), here));
    }
    return d;
}

inline json to_json(const RationalSection &f) { return json(f.str()); }

inline RationalSection parse_section(const json &j, const Base &y, const At &at)
{
    std::string s = string_of(j, at);
    return at.guard([&] { return RationalSection(y, parse_function(s)); });
}

inline const char *h0_kind_name(H0Report::Kind k)
{
    switch (k) {
    case H0Report::Kind::Finite: return "finite";
    case H0Report::Kind::InfiniteRank1: return "infinite_rank1";
    case H0Report::Kind::Unknown: return "unknown";
    }
    return "unknown";
}

inline json to_json(const H0Report &h)
{
    json j{{"kind", h0_kind_name(h.kind)}};
    j["dim"] = h.kind == H0Report::Kind::Finite ? to_json(h.dim) : json(nullptr);
    j["generator"] = h.generator ? to_json(*h.generator) : json(nullptr);
    return j;
}

inline H0Report parse_h0(const json &j, const Base &y, const At &at)
{
    H0Report h;
    std::string kind = string_of(member(j, "kind", at), at / "kind");
    if (kind == "finite")
        h.kind = H0Report::Kind::Finite;
    else if (kind == "infinite_rank1")
        h.kind = H0Report::Kind::InfiniteRank1;
    else if (kind == "unknown")
        h.kind = H0Report::Kind::Unknown;
    else
        (at / "kind").fail("unknown dimension kind");
    const json &dim = member(j, "dim", at);
    if (!dim.is_null())
        h.dim = parse_int(dim, at / "dim");
    const json &gen = member(j, "generator", at);
    if (!gen.is_null())
        h.generator = parse_section(gen, y, at / "generator");
    return h;
}

// ---- polyhedral divisors ----

/// {"rank", "tail": {"rays"}, "base", "coeffs": [{"at", "vertices"}]}
inline json to_json(const PolyhedralDivisor &dd)
{
    json coeffs = json::array();
    for (const auto &[p, delta] : dd.coeffs())
        coeffs.push_back(json{{"at", p.str()}, {"vertices", list_json(delta.vertices())}});
    return json{{"rank", dd.rank()},
                {"tail", json{{"rays", list_json(dd.tail().ray_generators())}}},
                {"base", to_json(dd.base())},
                {"coeffs", coeffs}};
}

inline PolyhedralDivisor parse_divisor(const json &j, const At &at = At())
{
    Int r = parse_int(member(j, "rank", at), at / "rank");
    if (r < 1 || !r.fits_slong_p())
        (at / "rank").fail("rank must be a positive integer");
    const std::size_t rank = r.get_ui();
    const json &tail = member(j, "tail", at);
    std::vector<LatticeVector> gens = parse_lattice_list(member(tail, "rays", at / "tail"), Space::N, rank, at / "tail" / "rays");
    Cone sigma = (at / "tail").guard([&] { return Cone::from_generators(rank, Space::N, gens); });
    if (!sigma.is_pointed())
        (at / "tail").fail("tail cone is not pointed", ErrorKind::NotPointed);
    Base y = parse_base(member(j, "base", at), at / "base");
    PolyhedralDivisor::CoeffMap coeffs;
    const json &list = j.contains("coeffs") ? j.at("coeffs") : json::array();
    array_of(list, at / "coeffs");
    for (std::size_t i = 0; i < list.size(); ++i) {
        At here = at / "coeffs" / i;
        PrimeDivisor p = parse_prime(member(list[i], "at", here), here / "at");
        (here / "at").guard([&] { check_divisor_on(y, p); return 0; });
        const json &vs = member(list[i], "vertices", here);
        std::vector<RationalVector> verts;
        array_of(vs, here / "vertices");
        for (std::size_t k = 0; k < vs.size(); ++k)
            verts.push_back(parse_rational_vector(vs[k], Space::N, rank, here / "vertices" / k));
        if (coeffs.count(p))
            (here / "at").fail("duplicate prime divisor '" + p.str() + "'");
        coeffs.emplace(p, here.guard([&] { return TailedPolyhedron(sigma, verts); }));
    }
    return at.guard([&] { return PolyhedralDivisor(y, sigma, std::move(coeffs)); });
}

// ---- ring elements ----

inline json to_json(const GradedPiece &g)
{
    json basis = nullptr;
    if (g.basis)
        basis = list_json(*g.basis);
    return json{{"degree", to_json(g.degree)}, {"dimension", to_json(g.dimension)}, {"basis", basis}};
}

inline GradedPiece parse_piece(const json &j, const Base &y, std::size_t rank, const At &at)
{
    GradedPiece g{parse_lattice(member(j, "degree", at), Space::M, rank, at / "degree"),
                  parse_h0(member(j, "dimension", at), y, at / "dimension"), std::nullopt};
    const json &b = member(j, "basis", at);
    if (!b.is_null()) {
        std::vector<RationalSection> basis;
        array_of(b, at / "basis");
        for (std::size_t i = 0; i < b.size(); ++i)
            basis.push_back(parse_section(b[i], y, at / "basis" / i));
        g.basis = std::move(basis);
    }
    return g;
}

inline json to_json(const HomogeneousElement &e)
{
    if (e.zero)
        return json{{"zero", true}};
    return json{{"zero", false}, {"section", to_json(e.section)}, {"degree", to_json(e.degree)}};
}

inline HomogeneousElement parse_element(const json &j, const Base &y, std::size_t rank, const At &at)
{
    if (bool_of(member(j, "zero", at), at / "zero"))
        return HomogeneousElement::zero_element(y, rank);
    return {parse_section(member(j, "section", at), y, at / "section"),
            parse_lattice(member(j, "degree", at), Space::M, rank, at / "degree"), false};
}

inline json to_json(const GradedElement &x)
{
    json terms = json::array();
    for (const auto &[m, f] : x.terms())
        terms.push_back(json{{"degree", to_json(m)}, {"section", to_json(f)}});
    return json{{"terms", terms}};
}

inline GradedElement parse_graded(const json &j, const Base &y, std::size_t rank, const At &at)
{
    GradedElement x(y);
    const json &terms = array_of(member(j, "terms", at), at / "terms");
    for (std::size_t i = 0; i < terms.size(); ++i) {
        At here = at / "terms" / i;
        x.add_term(parse_lattice(member(terms[i], "degree", here), Space::M, rank, here / "degree"),
                   parse_section(member(terms[i], "section", here), y, here / "section"));
    }
    return x;
}

// ---- reports ----

inline json to_json(const Witness &w)
{
    return json{{"condition", w.condition}, {"degree", to_json(w.degree)}, {"detail", w.detail}};
}

inline Witness parse_witness(const json &j, std::size_t rank, const At &at)
{
    return {string_of(member(j, "condition", at), at / "condition"),
            parse_lattice(member(j, "degree", at), Space::M, rank, at / "degree"),
            string_of(member(j, "detail", at), at / "detail")};
}

inline json to_json(const ProperReport &r)
{
    return json{{"proper", to_json(r.proper)},
                {"semiample", to_json(r.semiample)},
                {"big", to_json(r.big)},
                {"q_cartier", r.q_cartier},
                {"witnesses", list_json(r.witnesses)}};
}

inline ProperReport parse_proper(const json &j, std::size_t rank, const At &at)
{
    ProperReport r;
    r.proper = parse_tri(member(j, "proper", at), at / "proper");
    r.semiample = parse_tri(member(j, "semiample", at), at / "semiample");
    r.big = parse_tri(member(j, "big", at), at / "big");
    r.q_cartier = bool_of(member(j, "q_cartier", at), at / "q_cartier");
    const json &ws = array_of(member(j, "witnesses", at), at / "witnesses");
    for (std::size_t i = 0; i < ws.size(); ++i)
        r.witnesses.push_back(parse_witness(ws[i], rank, at / "witnesses" / i));
    return r;
}

inline json to_json(const GeneratorReport &g)
{
    return json{{"generators", list_json(g.generators)},
                {"bound", to_json(g.bound)},
                {"grading", to_json(g.grading)},
                {"grading_limit", to_json(g.grading_limit)}};
}

inline GeneratorReport parse_generators(const json &j, const Base &y, std::size_t rank, const At &at)
{
    GeneratorReport g;
    const json &gs = array_of(member(j, "generators", at), at / "generators");
    for (std::size_t i = 0; i < gs.size(); ++i)
        g.generators.push_back(parse_element(gs[i], y, rank, at / "generators" / i));
    g.bound = parse_int(member(j, "bound", at), at / "bound");
    g.grading = parse_lattice(member(j, "grading", at), Space::N, rank, at / "grading");
    g.grading_limit = parse_int(member(j, "grading_limit", at), at / "grading_limit");
    return g;
}

inline json to_json(const RayContext &c)
{
    return json{{"ray", to_json(c.rho())},
                {"mu", to_json(c.mu())},
                {"tau", to_json(c.tau())},
                {"sigma1_dual", to_json(c.sigma1_dual())}};
}

/// Derivations as {"ray", "e", "phi"}.
inline json to_json(const FiberLND &d)
{
    return json{{"ray", to_json(d.ray())}, {"e", to_json(d.degree())}, {"phi", to_json(d.phi())}};
}

/// Parses and validates a derivation on the given ring.
inline FiberLND parse_lnd(const json &j, const PolyhedralDivisor &dd, const At &at = At())
{
    LatticeVector ray = parse_lattice(member(j, "ray", at), Space::N, dd.rank(), at / "ray");
    LatticeVector e = parse_lattice(member(j, "e", at), Space::M, dd.rank(), at / "e");
    RationalSection phi = parse_section(member(j, "phi", at), dd.base(), at / "phi");
    return at.guard([&] { return make_lnd(dd, ray, e, phi); });
}

inline json to_json(const KernelReport &k)
{
    return json{{"weight_monoid", to_json(k.weight_monoid)},
                {"generators_available", k.generators_available},
                {"generators", list_json(k.generators)},
                {"bound", to_json(k.bound)}};
}

inline KernelReport parse_kernel(const json &j, const Base &y, std::size_t rank, const At &at)
{
    KernelReport k;
    k.weight_monoid = parse_cone(member(j, "weight_monoid", at), at / "weight_monoid");
    k.generators_available = bool_of(member(j, "generators_available", at), at / "generators_available");
    const json &gs = array_of(member(j, "generators", at), at / "generators");
    for (std::size_t i = 0; i < gs.size(); ++i)
        k.generators.push_back(parse_element(gs[i], y, rank, at / "generators" / i));
    k.bound = parse_int(member(j, "bound", at), at / "bound");
    return k;
}

inline json to_json(const EquivalenceClass &c)
{
    json w = nullptr;
    if (c.witness)
        w = json{{"e", to_json(c.witness->e)}, {"phi", c.witness->phi ? to_json(*c.witness->phi) : json(nullptr)}};
    return json{{"ray", to_json(c.ray)}, {"exists", to_json(c.exists)}, {"witness", w}};
}

inline EquivalenceClass parse_class(const json &j, const Base &y, std::size_t rank, const At &at)
{
    EquivalenceClass c;
    c.ray = parse_lattice(member(j, "ray", at), Space::N, rank, at / "ray");
    c.exists = parse_tri(member(j, "exists", at), at / "exists");
    const json &w = member(j, "witness", at);
    if (!w.is_null()) {
        LndWitness lw{parse_lattice(member(w, "e", at / "witness"), Space::M, rank, at / "witness" / "e"), std::nullopt};
        const json &phi = member(w, "phi", at / "witness");
        if (!phi.is_null())
            lw.phi = parse_section(phi, y, at / "witness" / "phi");
        c.witness = std::move(lw);
    }
    return c;
}

inline json to_json(const MLReport &r)
{
    json gens = nullptr;
    if (r.monoid_generators)
        gens = list_json(*r.monoid_generators);
    return json{{"qualifying_rays", list_json(r.qualifying_rays)},
                {"unknown_rays", list_json(r.unknown_rays)},
                {"weight_monoid", to_json(r.weight_monoid)},
                {"monoid_generators", gens},
                {"degree_zero_part", r.degree_zero_part},
                {"trivial", to_json(r.trivial)},
                {"generators", r.generators ? to_json(*r.generators) : json(nullptr)},
                {"ml_h", r.ml_h},
                {"ml", r.ml},
                {"inclusions", r.inclusions}};
}

inline MLReport parse_ml(const json &j, const Base &y, std::size_t rank, const At &at)
{
    MLReport r;
    r.qualifying_rays = parse_lattice_list(member(j, "qualifying_rays", at), Space::N, rank, at / "qualifying_rays");
    r.unknown_rays = parse_lattice_list(member(j, "unknown_rays", at), Space::N, rank, at / "unknown_rays");
    r.weight_monoid = parse_cone(member(j, "weight_monoid", at), at / "weight_monoid");
    const json &mg = member(j, "monoid_generators", at);
    if (!mg.is_null())
        r.monoid_generators = parse_lattice_list(mg, Space::M, rank, at / "monoid_generators");
    r.degree_zero_part = string_of(member(j, "degree_zero_part", at), at / "degree_zero_part");
    r.trivial = parse_tri(member(j, "trivial", at), at / "trivial");
    const json &g = member(j, "generators", at);
    if (!g.is_null())
        r.generators = parse_generators(g, y, rank, at / "generators");
    r.ml_h = string_of(member(j, "ml_h", at), at / "ml_h");
    r.ml = string_of(member(j, "ml", at), at / "ml");
    r.inclusions = string_of(member(j, "inclusions", at), at / "inclusions");
    return r;
}

inline json to_json(const FMLReport &r)
{
    return json{{"contains_KY", r.contains_ky},
                {"function_field", r.function_field},
                {"reason", r.reason},
                {"lower_bound_monoid", to_json(r.lower_bound_monoid)},
                {"lower_bound_only", r.lower_bound_only}};
}

inline FMLReport parse_fml(const json &j, const At &at)
{
    FMLReport r;
    r.contains_ky = bool_of(member(j, "contains_KY", at), at / "contains_KY");
    r.function_field = string_of(member(j, "function_field", at), at / "function_field");
    r.reason = string_of(member(j, "reason", at), at / "reason");
    r.lower_bound_monoid = parse_cone(member(j, "lower_bound_monoid", at), at / "lower_bound_monoid");
    r.lower_bound_only = bool_of(member(j, "lower_bound_only", at), at / "lower_bound_only");
    return r;
}

/// {"schema": 1, "command": ..., "result": ...}
inline json envelope(const std::string &command, json result)
{
    return json{{"schema", kSchemaVersion}, {"command", command}, {"result", std::move(result)}};
}

inline std::string dump(const json &j) { return j.dump(2) + "\n"; }

} // namespace tvar::io
