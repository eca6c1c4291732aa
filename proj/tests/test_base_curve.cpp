#include <gtest/gtest.h>

#include "corpus.hpp"

using namespace tvar;

namespace {

const Base P1 = Base::proj_line();
const Base A1 = Base::affine_line();

PrimeDivisor at(const char *s) { return PrimeDivisor::parse(s); }

QDivisor div(const Base &y, std::initializer_list<std::pair<const char *, Rat>> cs)
{
    QDivisor d(y);
    for (const auto &[p, c] : cs)
        d.add(at(p), c);
    return d;
}

RationalSection sec(const Base &y, const char *f) { return RationalSection(y, parse_function(f)); }

ErrorKind kind_of(const std::function<void()> &f)
{
    try {
        f();
    } catch (const Error &e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::Validation;
}

} // namespace

TEST(Polynomial, ParseAndPrint)
{
    EXPECT_EQ(parse_function("2*t^2 - t/3 + 5").str(), "2*t^2 - 1/3*t + 5");
    EXPECT_EQ(parse_function("1/t").str(), "1/t");
    EXPECT_EQ(parse_function("(t+1)/(t-2)").str(), "(t + 1)/(t - 2)");
    EXPECT_EQ(parse_function("t^-2 * t^3"), parse_function("t"));
    EXPECT_EQ(parse_function("(t^2-1)/(t-1)"), parse_function("t+1"));
    EXPECT_THROW(parse_function("t +"), Error);
    EXPECT_THROW(parse_function("1/0"), Error);
}

TEST(Polynomial, GcdAndRoots)
{
    Polynomial a = Polynomial::linear(1) * Polynomial::linear(Rat(-1, 2));
    Polynomial b = Polynomial::linear(1) * Polynomial::linear(3);
    EXPECT_EQ(Polynomial::gcd(a, b), Polynomial::linear(1));
    EXPECT_EQ(a.rational_roots(), (std::vector<Rat>{Rat(-1, 2), Rat(1)}));
    EXPECT_EQ(b.multiplicity(3), 1u);
}

TEST(PrimeDivisor, ParseAndValidity)
{
    EXPECT_EQ(at("1/2").str(), "1/2");
    EXPECT_EQ(at("inf").str(), "inf");
    EXPECT_EQ(at("label:q").str(), "label:q");
    EXPECT_THROW(check_divisor_on(Base::point(), at("0")), Error);
    EXPECT_THROW(check_divisor_on(A1, at("inf")), Error);
    EXPECT_THROW(check_divisor_on(Base::abstract_curve(1), at("0")), Error);
    EXPECT_NO_THROW(check_divisor_on(P1, at("inf")));
}

TEST(QDivisor, CanonicalForm)
{
    QDivisor d = div(P1, {{"0", Rat(1)}, {"0", Rat(-1)}, {"inf", Rat(0)}});
    EXPECT_TRUE(d.is_zero());
    EXPECT_TRUE(d.coeffs().empty());
}

TEST(Degree, Examples)
{
    EXPECT_EQ(degree(div(P1, {{"inf", Rat(3)}})), 3);
    EXPECT_EQ(degree(div(P1, {{"0", Rat(1, 2)}, {"1", Rat(-1, 4)}})), Rat(1, 4));
    EXPECT_EQ(kind_of([] { degree(div(A1, {{"0", Rat(1)}})); }), ErrorKind::NotProjective);
}

TEST(RoundDown, Examples)
{
    EXPECT_TRUE(round_down(div(P1, {{"0", Rat(1, 2)}})).is_zero());
    EXPECT_EQ(round_down(div(P1, {{"0", Rat(-1, 2)}})), div(P1, {{"0", Rat(-1)}}));
    EXPECT_EQ(round_down(div(P1, {{"0", Rat(1)}, {"inf", Rat(3, 4)}})), div(P1, {{"0", Rat(1)}}));
}

TEST(H0, Examples)
{
    for (long r = 0; r < 5; ++r) {
        H0Report h = h0(P1, div(P1, {{"inf", Rat(r)}}));
        EXPECT_EQ(h.kind, H0Report::Kind::Finite);
        EXPECT_EQ(h.dim, r + 1);
    }
    EXPECT_EQ(h0(Base::point(), QDivisor(Base::point())).dim, 1);
    Base e = Base::abstract_curve(1);
    QDivisor p(e);
    p.add(at("label:p"), 1);
    EXPECT_EQ(h0(e, p).dim, 1);
    QDivisor zero_deg(e);
    zero_deg.add(at("label:p"), 1);
    zero_deg.add(at("label:q"), -1);
    EXPECT_EQ(h0(e, zero_deg).kind, H0Report::Kind::Unknown);
    H0Report aff = h0(A1, div(A1, {{"0", Rat(-2)}}));
    EXPECT_EQ(aff.kind, H0Report::Kind::InfiniteRank1);
    EXPECT_EQ(aff.generator->str(), "t^2");
}

TEST(SectionBasis, Examples)
{
    auto strs = [](const std::vector<RationalSection> &b) {
        std::vector<std::string> out;
        for (const auto &f : b)
            out.push_back(f.str());
        return out;
    };
    EXPECT_EQ(strs(section_basis(P1, div(P1, {{"inf", Rat(2)}}))), (std::vector<std::string>{"1", "t", "t^2"}));
    EXPECT_TRUE(section_basis(P1, div(P1, {{"inf", Rat(-1)}})).empty());
    EXPECT_EQ(strs(section_basis(P1, div(P1, {{"0", Rat(1)}}))), (std::vector<std::string>{"1/t", "1"}));
    EXPECT_EQ(strs(section_basis(Base::point(), QDivisor(Base::point()))), (std::vector<std::string>{"1"}));
    EXPECT_EQ(kind_of([] { section_basis(Base::abstract_curve(2), QDivisor(Base::abstract_curve(2))); }),
              ErrorKind::Unsupported);
}

TEST(SectionIn, Examples)
{
    QDivisor d = div(P1, {{"inf", Rat(1)}});
    EXPECT_TRUE(section_in(sec(P1, "t"), d));
    EXPECT_FALSE(section_in(sec(P1, "1/t"), d));
    EXPECT_FALSE(section_in(sec(P1, "t^2"), d));
    EXPECT_EQ(kind_of([] { section_in(sec(P1, "1/(t^2+1)"), QDivisor(P1)); }),
              ErrorKind::IrreducibleFactorOutsideGroundField);
}

TEST(PrincipalDivisor, DegreeZero)
{
    for (const char *f : {"t", "1/t", "(t-1)^2/(t+3)", "5", "(2*t-1)*(t+1/3)^3"})
        EXPECT_EQ(degree(principal_divisor(sec(P1, f))), 0) << f;
    EXPECT_EQ(principal_divisor(sec(P1, "t^2/(t-1)")), div(P1, {{"0", Rat(2)}, {"1", Rat(-1)}, {"inf", Rat(-1)}}));
}

TEST(BigSemiample, Examples)
{
    EXPECT_TRUE(is_big(P1, div(P1, {{"inf", Rat(1)}})));
    EXPECT_EQ(is_semiample(P1, div(P1, {{"inf", Rat(1)}})), Tri::True);
    EXPECT_FALSE(is_big(P1, QDivisor(P1)));
    EXPECT_EQ(is_semiample(P1, QDivisor(P1)), Tri::True);
    EXPECT_EQ(is_semiample(P1, div(P1, {{"0", Rat(-1, 2)}})), Tri::False);
    Base e = Base::abstract_curve(1);
    QDivisor z(e);
    z.add(at("label:p"), 1);
    z.add(at("label:q"), -1);
    EXPECT_EQ(is_semiample(e, z), Tri::Unknown);
    EXPECT_EQ(is_semiample(e, QDivisor(e)), Tri::True);
    EXPECT_TRUE(is_big(A1, QDivisor(A1)));
    EXPECT_EQ(is_semiample(Base::point(), QDivisor(Base::point())), Tri::True);
}

TEST(Sections, BasisPassesMembershipAndMatchesH0)
{
    corpus::Generator g(41);
    static const std::vector<const char *> pts{"0", "1", "-1", "1/2", "inf"};
    for (int i = 0; i < 100; ++i) {
        QDivisor d(P1);
        for (int k = 0; k < 3; ++k)
            d.add(at(pts[g.uniform(0, 4)]), make_rat(Int(g.uniform(-5, 8)), Int(g.uniform(1, 2))));
        auto basis = section_basis(P1, d);
        EXPECT_EQ(Int(basis.size()), h0(P1, d).dim);
        for (const auto &f : basis)
            EXPECT_TRUE(section_in(f, d));
        QDivisor bigger = d;
        bigger.add(at(pts[g.uniform(0, 4)]), 1);
        EXPECT_LE(h0(P1, d).dim, h0(P1, bigger).dim);
    }
}

TEST(Sections, ProductsStayInSums)
{
    corpus::Generator g(43);
    static const std::vector<const char *> pts{"0", "1", "2", "inf"};
    for (int i = 0; i < 60; ++i) {
        QDivisor d(P1), e(P1);
        for (int k = 0; k < 2; ++k) {
            d.add(at(pts[g.uniform(0, 3)]), g.uniform(-1, 3));
            e.add(at(pts[g.uniform(0, 3)]), g.uniform(-1, 3));
        }
        for (const auto &f : section_basis(P1, d))
            for (const auto &h : section_basis(P1, e))
                EXPECT_TRUE(section_in(f * h, d + e));
    }
}
