#pragma once

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tvar/serialize.hpp"

namespace tvar::cli {

using io::json;

enum ExitCode : int { kOk = 0, kValidation = 2, kUnknown = 3 };

/// "1,2", "(1,2)", "[1,2]" or "0" for the zero vector.
inline LatticeVector parse_vector(std::string text, Space space, std::size_t rank, const std::string &what)
{
    text.erase(std::remove_if(text.begin(), text.end(), [](char c) { return c == '(' || c == ')' || c == '[' || c == ']' || std::isspace(static_cast<unsigned char>(c)); }),
               text.end());
    if (text == "0")
        return LatticeVector::zero(space, rank);
    std::vector<Int> c;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        Rat q = parse_rational(item);
        if (!is_integer(q))
            throw Error(ErrorKind::Validation, what + ": coordinates must be integers");
        c.push_back(q.get_num());
    }
    if (c.size() != rank)
        throw Error(ErrorKind::Validation, what + ": expected " + std::to_string(rank) + " coordinates, got " +
                                               std::to_string(c.size()));
    return LatticeVector(space, std::move(c));
}

/// "f;m" such as "t;2,1".
inline HomogeneousElement parse_element_arg(const std::string &text, const PolyhedralDivisor &dd)
{
    auto semi = text.find(';');
    if (semi == std::string::npos)
        throw Error(ErrorKind::Validation, "--elt: expected '<function>;<degree>'");
    RationalSection f(dd.base(), parse_function(text.substr(0, semi)));
    LatticeVector m = parse_vector(text.substr(semi + 1), Space::M, dd.rank(), "--elt degree");
    return make_element(dd, f, m);
}

/// "inf", "2*inf,-1*0", "label:q": points with optional integer coefficients.
inline QDivisor parse_divisor_arg(const std::string &text, const Base &y)
{
    QDivisor d(y);
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        Rat c = 1;
        auto star = item.find('*');
        if (star != std::string::npos) {
            c = parse_rational(item.substr(0, star));
            item = item.substr(star + 1);
        }
        PrimeDivisor p = PrimeDivisor::parse(item);
        check_divisor_on(y, p);
        d.add(p, c);
    }
    return d;
}

inline json read_json_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::Validation, "cannot open input file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw Error(ErrorKind::Validation, path + ": " + e.what());
    }
}

inline PolyhedralDivisor load_divisor(const std::string &path)
{
    json j = read_json_file(path);
    try {
        return io::parse_divisor(j);
    } catch (const Error &e) {
        throw Error(e.kind(), path + ": " + e.detail());
    }
}

inline int exit_for(Tri t) { return t == Tri::Unknown ? kUnknown : kOk; }

struct Options {
    std::string in;
    std::string m;
    std::string ray;
    std::string e;
    std::string phi;
    std::string lnd;
    std::string elt;
    std::string t = "1";
    long bound = 6;
    std::optional<long> generators;
    bool slow = false;
    // example-trivial-ml
    std::string base = "proj_line";
    unsigned long genus = 0;
    std::string h = "inf";
    std::size_t rank = 2;
    std::string p;
};

inline FiberLND derivation_from(const Options &o, const PolyhedralDivisor &dd)
{
    if (!o.lnd.empty()) {
        if (!o.ray.empty() || !o.e.empty() || !o.phi.empty())
            throw Error(ErrorKind::Validation, "use either --lnd or --ray/-e/--phi");
        json j = read_json_file(o.lnd);
        return io::parse_lnd(j, dd);
    }
    if (o.ray.empty() || o.e.empty() || o.phi.empty())
        throw Error(ErrorKind::Validation, "a derivation needs --lnd or all of --ray, -e, --phi");
    return make_lnd(dd, parse_vector(o.ray, Space::N, dd.rank(), "--ray"),
                    parse_vector(o.e, Space::M, dd.rank(), "-e"),
                    RationalSection(dd.base(), parse_function(o.phi)));
}

inline RayContext context_from(const Options &o, const PolyhedralDivisor &dd)
{
    return make_context(dd, parse_vector(o.ray, Space::N, dd.rank(), "--ray"));
}

inline int run(const std::string &cmd, const Options &o, std::ostream &out)
{
    auto emit = [&](json result) { out << io::dump(io::envelope(cmd, std::move(result))); };

    if (cmd == "example-trivial-ml") {
        Base y = Base::proj_line();
        if (o.base == "abstract_curve")
            y = Base::abstract_curve(o.genus);
        else if (o.base != "proj_line")
            throw Error(ErrorKind::Validation, "--base must be proj_line or abstract_curve");
        std::vector<LatticeVector> basis;
        for (std::size_t i = 0; i < o.rank; ++i) {
            std::vector<Int> c(o.rank, Int(0));
            c[i] = 1;
            basis.emplace_back(Space::N, std::move(c));
        }
        Cone sigma = Cone::from_generators(o.rank, Space::N, basis);
        LatticeVector p = o.p.empty() ? LatticeVector(Space::N, std::vector<Int>(o.rank, Int(1)))
                                      : parse_vector(o.p, Space::N, o.rank, "-p");
        PolyhedralDivisor dd = build_trivial_ml_example(y, parse_divisor_arg(o.h, y), sigma, p);
        json derivs = nullptr;
        if (y.has_sections()) {
            derivs = json::array();
            try {
                for (const auto &d : standard_example_derivations(dd))
                    derivs.push_back(io::to_json(d));
            } catch (const Error &err) {
                if (err.kind() != ErrorKind::NotStandardForm)
                    throw;
                derivs = nullptr;
            }
        }
        emit(json{{"divisor", io::to_json(dd)}, {"derivations", derivs}, {"ml_fib", io::to_json(ml_fib(dd))}});
        return kOk;
    }

    if (o.in.empty())
        throw Error(ErrorKind::Validation, "--in <path> is required");
    const PolyhedralDivisor dd = load_divisor(o.in);

    if (cmd == "dual") {
        emit(json{{"tail", io::to_json(dd.tail())}, {"weight_cone", io::to_json(dd.weight_cone())}});
        return kOk;
    }
    if (cmd == "check-proper") {
        ProperReport r = is_proper(dd);
        emit(io::to_json(r));
        return exit_for(r.proper);
    }
    if (cmd == "eval") {
        LatticeVector m = parse_vector(o.m, Space::M, dd.rank(), "-m");
        QDivisor d = evaluate(dd, m);
        json deg = nullptr;
        if (dd.base().is_projective())
            deg = io::to_json(degree(d));
        Tri semi = is_semiample(dd.base(), d);
        emit(json{{"degree", io::to_json(m)},
                  {"divisor", io::to_json(d)},
                  {"divisor_degree", deg},
                  {"big", io::to_json(tri_of(is_big(dd.base(), d)))},
                  {"semiample", io::to_json(semi)}});
        return exit_for(semi);
    }
    if (cmd == "piece") {
        GradedPiece g = graded_piece(dd, parse_vector(o.m, Space::M, dd.rank(), "-m"));
        emit(io::to_json(g));
        return g.dimension.kind == H0Report::Kind::Unknown ? kUnknown : kOk;
    }
    if (cmd == "classes") {
        auto classes = list_equivalence_classes(dd, o.bound);
        emit(json{{"bound", o.bound}, {"classes", io::list_json(classes)}});
        bool unknown = std::any_of(classes.begin(), classes.end(), [](const auto &c) { return c.exists == Tri::Unknown; });
        return unknown ? kUnknown : kOk;
    }
    if (cmd == "srho") {
        RayContext ctx = context_from(o, dd);
        emit(json{{"context", io::to_json(ctx)},
                  {"bound", o.bound},
                  {"elements", io::list_json(s_rho_enumerate(ctx, o.bound))}});
        return kOk;
    }
    if (cmd == "de") {
        RayContext ctx = context_from(o, dd);
        LatticeVector e = parse_vector(o.e, Space::M, dd.rank(), "-e");
        QDivisor d = d_e(dd, ctx, e, o.slow ? DeMode::Slow : DeMode::Fast);
        emit(json{{"ray", io::to_json(ctx.rho())},
                  {"e", io::to_json(e)},
                  {"mode", o.slow ? "slow" : "fast"},
                  {"divisor", io::to_json(d)}});
        return kOk;
    }
    if (cmd == "phie") {
        RayContext ctx = context_from(o, dd);
        GradedPiece g = phi_e(dd, ctx, parse_vector(o.e, Space::M, dd.rank(), "-e"));
        emit(io::to_json(g));
        return g.dimension.kind == H0Report::Kind::Unknown ? kUnknown : kOk;
    }
    if (cmd == "mk-lnd") {
        FiberLND d = derivation_from(o, dd);
        emit(json{{"derivation", io::to_json(d)}, {"kernel", io::to_json(kernel_description(d, o.bound))}});
        return kOk;
    }
    if (cmd == "apply") {
        FiberLND d = derivation_from(o, dd);
        HomogeneousElement x = parse_element_arg(o.elt, dd);
        emit(json{{"derivation", io::to_json(d)},
                  {"input", io::to_json(x)},
                  {"output", io::to_json(apply(d, x))},
                  {"nilpotency_order", nilpotency_order(d, x)}});
        return kOk;
    }
    if (cmd == "orbit") {
        FiberLND d = derivation_from(o, dd);
        HomogeneousElement x = parse_element_arg(o.elt, dd);
        Rat t = parse_rational(o.t);
        emit(json{{"derivation", io::to_json(d)},
                  {"t", io::to_json(t)},
                  {"input", io::to_json(x)},
                  {"orbit", io::to_json(exp_action(d, t, x))}});
        return kOk;
    }
    if (cmd == "ml-fib") {
        std::optional<Int> b;
        if (o.generators)
            b = Int(*o.generators);
        MLReport r = ml_fib(dd, b);
        emit(io::to_json(r));
        return exit_for(r.trivial);
    }
    if (cmd == "fml-fib") {
        emit(io::to_json(fml_fib_lower_bound(dd)));
        return kOk;
    }
    throw Error(ErrorKind::Validation, "unknown command '" + cmd + "'");
}

/// Runs one invocation; args exclude the program name.
inline int cli_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Fiber-type locally nilpotent derivations on affine T-varieties of complexity at most one"};
    app.require_subcommand(1);
    Options o;

    auto with_in = [&](CLI::App *s) { s->add_option("--in", o.in, "polyhedral divisor JSON file")->required(); };
    auto with_lnd = [&](CLI::App *s) {
        s->add_option("--lnd", o.lnd, "derivation JSON file {ray, e, phi}");
        s->add_option("--ray", o.ray, "ray of the tail cone");
        s->add_option("-e", o.e, "degree in S_rho");
        s->add_option("--phi", o.phi, "section in Phi_e, a function of t");
    };

    auto *dual = app.add_subcommand("dual", "tail cone and weight cone");
    with_in(dual);
    auto *proper = app.add_subcommand("check-proper", "semiample and big checks");
    with_in(proper);
    auto *eval = app.add_subcommand("eval", "evaluate D(m)");
    with_in(eval);
    eval->add_option("-m", o.m, "degree")->required();
    auto *piece = app.add_subcommand("piece", "graded piece A_m");
    with_in(piece);
    piece->add_option("-m", o.m, "degree")->required();
    auto *classes = app.add_subcommand("classes", "equivalence classes of fiber-type LNDs");
    with_in(classes);
    classes->add_option("--bound", o.bound, "max-norm bound for witness search")->capture_default_str();
    auto *srho = app.add_subcommand("srho", "enumerate S_rho");
    with_in(srho);
    srho->add_option("--ray", o.ray, "ray")->required();
    srho->add_option("--bound", o.bound, "max-norm bound")->capture_default_str();
    auto *de = app.add_subcommand("de", "the divisor D_e");
    with_in(de);
    de->add_option("--ray", o.ray, "ray")->required();
    de->add_option("-e", o.e, "degree")->required();
    de->add_flag("--slow", o.slow, "max over all linear pieces");
    auto *phie = app.add_subcommand("phie", "the section space Phi_e");
    with_in(phie);
    phie->add_option("--ray", o.ray, "ray")->required();
    phie->add_option("-e", o.e, "degree")->required();
    auto *mk = app.add_subcommand("mk-lnd", "validate a derivation and describe its kernel");
    with_in(mk);
    with_lnd(mk);
    mk->add_option("--bound", o.bound, "generator search bound")->capture_default_str();
    auto *ap = app.add_subcommand("apply", "apply a derivation to f*chi^m");
    with_in(ap);
    with_lnd(ap);
    ap->add_option("--elt", o.elt, "element '<f>;<m>'")->required();
    auto *orbit = app.add_subcommand("orbit", "exp(t d) applied to f*chi^m");
    with_in(orbit);
    with_lnd(orbit);
    orbit->add_option("--elt", o.elt, "element '<f>;<m>'")->required();
    orbit->add_option("-t", o.t, "rational parameter")->capture_default_str();
    auto *ml = app.add_subcommand("ml-fib", "fiber-type Makar-Limanov invariant");
    with_in(ml);
    ml->add_option("--generators", o.generators, "also list generators up to this bound");
    auto *fml = app.add_subcommand("fml-fib", "lower bound for the fiber-type FML invariant");
    with_in(fml);
    auto *ex = app.add_subcommand("example-trivial-ml", "build (p + orthant) * H with trivial ML_fib");
    ex->add_option("--base", o.base, "proj_line or abstract_curve")->capture_default_str();
    ex->add_option("--genus", o.genus, "genus of the abstract curve")->capture_default_str();
    ex->add_option("-H,--divisor", o.h, "divisor H as '[c*]point,...'")->capture_default_str();
    ex->add_option("--rank", o.rank, "lattice rank")->capture_default_str();
    ex->add_option("-p", o.p, "interior point of the orthant (default all ones)");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        return run(cmd, o, out);
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    }
}

} // namespace tvar::cli
