// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "corpus.hpp"
#include "oracles.hpp"
#include "tvar/cli.hpp"

using namespace tvar;

namespace {

constexpr double kFastLimitSeconds = 1.0;
constexpr double kLawLimitSeconds = 60.0;
constexpr std::size_t kCrossCorpusSize = 60;
constexpr long kBruteForceBound = 12;
constexpr std::size_t kMinLawSamples = 500;
constexpr std::size_t kMinGeometrySamples = 1000;
constexpr int kToricSamples = 200;

struct Outcome {
    bool pass = true;
    std::string detail;
};

/// Collects failures; the first few messages go into the report line.
class Check
{
public:
    void expect(bool ok, const std::string &what)
    {
        if (ok)
            return;
        ++failures_;
        if (failures_ <= 3)
            notes_ += (notes_.empty() ? "" : "; ") + what;
    }
    std::size_t failures() const { return failures_; }
    Outcome outcome(std::string detail) const
    {
        if (failures_ == 0)
            return {true, std::move(detail)};
        return {false, std::to_string(failures_) + " failure(s): " + notes_ + " [" + detail + "]"};
    }

private:
    std::size_t failures_ = 0;
    std::string notes_;
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", s);
    return buf;
}

LatticeVector m2(long a, long b) { return make_lattice(Space::M, {a, b}); }
LatticeVector n2(long a, long b) { return make_lattice(Space::N, {a, b}); }

int cli(const std::vector<std::string> &args, std::string *out = nullptr)
{
    std::ostringstream o, e;
    int code = cli::cli_main(args, o, e);
    if (out)
        *out = o.str();
    return code;
}

std::string data(const std::string &name) { return std::string(TVAR_DATA_DIR) + "/" + name; }

Outcome criterion1()
{
    auto t0 = std::chrono::steady_clock::now();
    Check c;
    PolyhedralDivisor dd = corpus::quadrant_example();
    auto classes = list_equivalence_classes(dd);
    c.expect(classes.size() == 2, "expected 2 classes");
    std::set<LatticeVector> es;
    for (const auto &k : classes) {
        c.expect(k.exists == Tri::True, "class without existence");
        if (!k.witness || !k.witness->phi) {
            c.expect(false, "missing witness");
            continue;
        }
        es.insert(k.witness->e);
        c.expect(*k.witness->phi == RationalSection::one(dd.base()), "phi != 1");
        RayContext ctx(dd.tail(), k.ray);
        c.expect(d_e(dd, ctx, k.witness->e).is_zero(), "D_e != 0");
        c.expect(phi_e(dd, ctx, k.witness->e).dimension.dim == 1, "dim Phi_e != 1");
    }
    c.expect(es == std::set<LatticeVector>{m2(-1, 1), m2(1, -1)}, "witness degrees differ");
    MLReport ml = ml_fib(dd);
    c.expect(ml.trivial == Tri::True, "ML_fib not trivial");
    c.expect(ml.weight_monoid.is_zero(), "omega != {0}");
    c.expect(ml.degree_zero_part == "k", "A_0 != k");
    std::string out;
    c.expect(cli({"classes", "--in", data("s4.json")}, &out) == 0, "CLI classes failed");
    double s = seconds_since(t0);
    c.expect(s < kFastLimitSeconds, "slower than 1 s");
    return c.outcome("2 classes, witnesses (-1,1),(1,-1), phi=1, D_e=0, ML_fib trivial, " + fmt_seconds(s));
}

Outcome criterion2()
{
    auto t0 = std::chrono::steady_clock::now();
    Check c;
    PolyhedralDivisor dd = corpus::affine_plane_example();
    auto classes = list_equivalence_classes(dd);
    c.expect(classes.size() == 1, "expected 1 class");
    if (classes.size() == 1 && classes[0].witness && classes[0].witness->phi) {
        FiberLND d = make_lnd(dd, classes[0].ray, classes[0].witness->e, *classes[0].witness->phi);
        KernelReport k = kernel_description(d);
        c.expect(k.weight_monoid.is_zero(), "kernel monoid != {0}");
        c.expect(k.generators.size() == 1 && k.generators[0].str() == "(t)*chi^(0)", "kernel generator != x");
    } else {
        c.expect(false, "no witness");
    }
    MLReport ml = ml_fib(dd);
    c.expect(ml.weight_monoid.is_zero(), "omega != {0}");
    c.expect(ml.degree_zero_part == "k[t]", "A_0 != k[x]");
    c.expect(ml.trivial == Tri::False, "ML_fib reported trivial");
    double s = seconds_since(t0);
    c.expect(s < kFastLimitSeconds, "slower than 1 s");
    return c.outcome("1 class, kernel monoid {0}, ML_fib = A_0 = k[x] (base coordinate t), " + fmt_seconds(s));
}

Outcome criterion3()
{
    Check c;
    PolyhedralDivisor toric = corpus::toric_quadrant();
    const Base pt = toric.base();
    FiberLND dx = make_lnd(toric, n2(1, 0), m2(-1, 0), RationalSection::one(pt));
    FiberLND dy = make_lnd(toric, n2(0, 1), m2(0, -1), RationalSection::one(pt));
    corpus::Generator g(corpus::kSeed + 3);
    int mismatches = 0;
    for (int i = 0; i < kToricSamples; ++i) {
        oracle::Monomial mono{1, g.uniform(0, 8), g.uniform(0, 8)};
        HomogeneousElement h = make_element(toric, RationalSection::one(pt), m2(mono.a, mono.b));
        for (int var : {0, 1}) {
            oracle::Monomial want = oracle::partial(mono, var);
            HomogeneousElement got = apply(var == 0 ? dx : dy, h);
            bool ok = want.coeff == 0
                          ? got.zero
                          : got == HomogeneousElement{RationalSection(pt, RationalFunction(Rat(want.coeff))),
                                                      m2(want.a, want.b), false};
            if (!ok)
                ++mismatches;
            c.expect(ok, "mismatch on x^" + std::to_string(mono.a) + " y^" + std::to_string(mono.b));
        }
    }
    return c.outcome(std::to_string(kToricSamples) + " monomials, " + std::to_string(mismatches) + " mismatches");
}

Outcome criterion4()
{
    Check c;
    auto divisors = corpus::projline_corpus(kCrossCorpusSize);
    std::size_t pairs = 0, proper_pairs = 0, bad_proper = 0, bad_other = 0, proper_count = 0;
    for (const auto &dd : divisors) {
        bool proper = is_proper(dd).proper == Tri::True;
        proper_count += proper ? 1 : 0;
        for (const auto &r : rays(dd.tail())) {
            RayContext ctx(dd.tail(), r);
            Tri criterion = exists_fiber_lnd(dd, ctx);
            bool found = oracle::brute_force_witness(dd, ctx, kBruteForceBound).has_value();
            ++pairs;
            proper_pairs += proper ? 1 : 0;
            if (criterion != tri_of(found)) {
                (proper ? bad_proper : bad_other) += 1;
                c.expect(false, std::string(proper ? "proper" : "non-proper") + " divisor, ray " + to_string(r) +
                                    ": criterion " + tri_name(criterion) + ", search " + (found ? "found" : "none"));
            }
        }
    }
    return c.outcome(std::to_string(divisors.size()) + " divisors (" + std::to_string(proper_count) + " proper), " +
                     std::to_string(pairs) + " (divisor, ray) pairs; disagreements: " + std::to_string(bad_proper) +
                     " of " + std::to_string(proper_pairs) + " on proper, " + std::to_string(bad_other) + " of " +
                     std::to_string(pairs - proper_pairs) + " on non-proper");
}

Outcome criterion5()
{
    auto t0 = std::chrono::steady_clock::now();
    Check c;
    std::size_t leibniz = 0, degree_law = 0, nilpotency = 0, kernel = 0, inclusion = 0;
    for (const auto &dd : corpus::law_corpus(10)) {
        const Base &y = dd.base();
        auto elts = corpus::sample_elements(dd, 2);
        for (const auto &d : corpus::witness_derivations(dd)) {
            for (std::size_t i = 0; i < elts.size(); ++i) {
                const auto &a = elts[i];
                HomogeneousElement da = apply(d, a);
                bool in_tau = d.context().tau().contains(a.degree);
                c.expect(da.zero == in_tau, "kernel exactness at " + to_string(a.degree));
                ++kernel;
                if (!da.zero) {
                    c.expect(da.degree - a.degree == d.degree(), "degree law at " + to_string(a.degree));
                    ++degree_law;
                }
                c.expect(Int(nilpotency_order(d, a)) == pairing(a.degree, d.ray()) + 1, "nilpotency order");
                ++nilpotency;
                for (std::size_t j = i; j < elts.size(); j += 2) {
                    const auto &b = elts[j];
                    GradedElement lhs = GradedElement::from(y, apply(d, multiply(dd, a, b)));
                    GradedElement rhs = GradedElement::from(y, multiply(dd, a, apply(d, b))) +
                                        GradedElement::from(y, multiply(dd, b, da));
                    c.expect(lhs == rhs, "Leibniz");
                    ++leibniz;
                }
            }
        }
        for (const auto &r : rays(dd.tail())) {
            RayContext ctx(dd.tail(), r);
            for (const auto &e : s_rho_enumerate(ctx, 2)) {
                GradedPiece phis = phi_e(dd, ctx, e);
                for (const auto &m : lattice_points(dd.weight_cone(), 4)) {
                    if (ctx.tau().contains(m))
                        continue;
                    GradedPiece piece = graded_piece(dd, m);
                    for (const auto &phi : *phis.basis)
                        for (const auto &f : *piece.basis) {
                            c.expect(is_member(dd, phi * f, m + e), "phi A_m not in A_(m+e)");
                            ++inclusion;
                        }
                }
            }
        }
    }
    double s = seconds_since(t0);
    for (std::size_t n : {leibniz, degree_law, nilpotency, kernel, inclusion})
        c.expect(n >= kMinLawSamples, "fewer than 500 samples for a law");
    c.expect(s < kLawLimitSeconds, "slower than 60 s");
    return c.outcome("samples: Leibniz " + std::to_string(leibniz) + ", degree " + std::to_string(degree_law) +
                     ", nilpotency " + std::to_string(nilpotency) + ", kernel " + std::to_string(kernel) +
                     ", phi inclusion " + std::to_string(inclusion) + "; " + fmt_seconds(s));
}

Outcome criterion6()
{
    Check c;
    corpus::Generator g(corpus::kSeed + 4);
    std::size_t cones = 0, faces = 0, hilbert = 0, support = 0, de_pairs = 0;
    for (int i = 0; i < 60; ++i) {
        std::size_t n = 2 + static_cast<std::size_t>(i % 2);
        std::vector<LatticeVector> gens;
        for (long j = 0; j < g.uniform(1, 4); ++j)
            gens.push_back(g.vec(Space::N, n, 3));
        Cone cone = Cone::from_generators(n, Space::N, gens);
        c.expect(dual_cone(dual_cone(cone)) == cone, "dual involution");
        ++cones;
        if (cone.is_pointed() && cone.is_full_dimensional()) {
            std::set<LatticeVector> seen;
            auto rs = rays(cone);
            for (const auto &r : rs) {
                Cone tau = face_dual_to_ray(cone, r);
                c.expect(tau.dim() + 1 == n, "face not codim 1");
                seen.insert(tau.equations().front());
            }
            c.expect(seen.size() == rs.size() && rs.size() == dual_cone(cone).facets().size(), "ray/face bijection");
            ++faces;
        }
    }
    for (int i = 0; i < 20; ++i) {
        Cone w = dual_cone(g.cone2());
        auto hb = hilbert_basis(w);
        std::vector<LatticeVector> small;
        for (const auto &h : hb)
            if (max_norm(h) <= 6)
                small.push_back(h);
        c.expect(small == oracle::irreducibles_simplicial(w, 6), "Hilbert basis irreducibles");
        std::map<LatticeVector, bool> memo;
        for (const auto &x : lattice_points(w, 6))
            c.expect(oracle::representable(w, hb, x, memo), "Hilbert basis spans");
        ++hilbert;
    }
    while (support < kMinGeometrySamples) {
        Cone sigma = g.cone2();
        TailedPolyhedron d = g.polyhedron(sigma);
        auto pts = lattice_points(dual_cone(sigma), 3);
        for (std::size_t a = 0; a < pts.size(); a += 3) {
            const auto &u = pts[a];
            const auto &v = pts[(a * 7 + 1) % pts.size()];
            c.expect(support_eval(d, u + v) >= support_eval(d, u) + support_eval(d, v), "concavity");
            Rat lambda = make_rat(Int(g.uniform(0, 6)), Int(g.uniform(1, 3)));
            c.expect(support_eval(d, lambda * to_rational(u)) == lambda * support_eval(d, u), "homogeneity");
            ++support;
        }
    }
    std::vector<PolyhedralDivisor> all = corpus::projline_corpus(kCrossCorpusSize);
    for (auto &dd : corpus::law_corpus(10))
        all.push_back(dd);
    for (const auto &dd : all)
        for (const auto &r : rays(dd.tail())) {
            RayContext ctx(dd.tail(), r);
            for (const auto &e : s_rho_enumerate(ctx, 4)) {
                c.expect(d_e(dd, ctx, e, DeMode::Fast) == d_e(dd, ctx, e, DeMode::Slow), "D_e fast != slow");
                ++de_pairs;
            }
        }
    return c.outcome(std::to_string(cones) + " cones dualized, " + std::to_string(faces) + " face bijections, " +
                     std::to_string(hilbert) + " Hilbert bases to norm 6, " + std::to_string(support) +
                     " support samples, " + std::to_string(de_pairs) + " (rho, e) pairs fast == slow");
}

Outcome criterion7()
{
    Check c;
    PolyhedralDivisor zero(Base::point(), Cone::zero(2, Space::N), {});
    c.expect(list_equivalence_classes(zero).empty(), "sigma = {0} has classes");
    MLReport ml = ml_fib(zero);
    c.expect(ml.weight_monoid == Cone::full(2, Space::M) && ml.trivial == Tri::False, "sigma = {0}: ML_fib != A");
    std::size_t rays_checked = 0;
    for (const auto &dd : corpus::degree_zero_family(20))
        for (const auto &k : list_equivalence_classes(dd, 3)) {
            c.expect(k.exists == Tri::False, "degree-0 family ray reported existing");
            ++rays_checked;
        }
    Base e = Base::abstract_curve(1);
    QDivisor d(e);
    d.add(PrimeDivisor::labeled("a"), 1);
    d.add(PrimeDivisor::labeled("b"), -1);
    c.expect(is_semiample(e, d) == Tri::Unknown, "genus-1 degree-0 semiample not unknown");
    c.expect(cli({"eval", "--in", data("genus1_degree_zero.json"), "-m", "1,0"}) == cli::kUnknown,
             "CLI exit code != 3");
    c.expect(cli({"check-proper", "--in", data("genus1_big.json")}) == cli::kUnknown,
             "CLI check-proper exit code != 3");
    return c.outcome("sigma = {0}: no classes, omega = M; " + std::to_string(rays_checked) +
                     " degree-0 rays all false; genus-1 verdict unknown, exit 3");
}

Outcome criterion8()
{
    Check c;
    std::vector<std::vector<std::string>> commands{
        {"classes", "--in", data("s4.json")},
        {"classes", "--in", data("rank3_mixed.json"), "--bound", "2"},
        {"ml-fib", "--in", data("example1.json"), "--generators", "2"},
        {"check-proper", "--in", data("rank3_mixed.json")},
        {"piece", "--in", data("s4.json"), "-m", "2,3"},
        {"orbit", "--in", data("s4.json"), "--ray", "1,0", "-e", "-1,1", "--phi", "1", "--elt", "t;2,1", "-t", "1/3"},
        {"example-trivial-ml", "--rank", "3"},
    };
    for (const auto &args : commands) {
        std::string a, b;
        int ca = cli(args, &a), cb = cli(args, &b);
        c.expect(ca == cb && a == b && !a.empty(), "nondeterministic output for " + args.front());
    }
    std::size_t round_trips = 0;
    std::vector<PolyhedralDivisor> all = corpus::projline_corpus(kCrossCorpusSize);
    for (auto &dd : corpus::law_corpus(10))
        all.push_back(dd);
    for (const auto &dd : all) {
        io::json j = io::to_json(dd);
        PolyhedralDivisor back = io::parse_divisor(io::json::parse(j.dump()));
        c.expect(back == dd && io::to_json(back).dump() == j.dump(), "divisor round trip");
        MLReport ml = ml_fib(dd);
        c.expect(io::parse_ml(io::to_json(ml), dd.base(), dd.rank(), io::At()) == ml, "ML report round trip");
        ProperReport pr = is_proper(dd);
        c.expect(io::parse_proper(io::to_json(pr), dd.rank(), io::At()) == pr, "proper report round trip");
        for (const auto &k : list_equivalence_classes(dd, 3))
            c.expect(io::parse_class(io::to_json(k), dd.base(), dd.rank(), io::At()) == k, "class round trip");
        ++round_trips;
    }
    return c.outcome(std::to_string(commands.size()) + " CLI reports byte-identical across runs, " +
                     std::to_string(round_trips) + " corpus divisors round-tripped");
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"worked quadrant example", criterion1},
        {"graded k[x,y] over the affine line", criterion2},
        {"toric partial derivatives", criterion3},
        {"existence criterion vs brute-force search", criterion4},
        {"algebraic laws", criterion5},
        {"geometry kernel", criterion6},
        {"degenerate inputs", criterion7},
        {"determinism and JSON round trip", criterion8},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << ": "
                  << o.detail << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
