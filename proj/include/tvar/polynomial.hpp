#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tvar/error.hpp"
#include "tvar/rational.hpp"

namespace tvar {

/// Dense univariate polynomial in t over the rationals; coefficients low degree first.
class Polynomial
{
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(const Rat &constant) : c_{constant} { trim(); }
    Polynomial(long constant) : Polynomial(Rat(constant)) {}

    static Polynomial monomial(const Rat &coeff, std::size_t degree)
    {
        std::vector<Rat> c(degree + 1, Rat(0));
        c[degree] = coeff;
        return Polynomial(std::move(c));
    }

    /// (t - root)
    static Polynomial linear(const Rat &root) { return Polynomial(std::vector<Rat>{-root, Rat(1)}); }

    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<Rat> &coeffs() const { return c_; }
    Rat coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rat(0); }
    Rat leading() const { return c_.empty() ? Rat(0) : c_.back(); }

    Rat eval(const Rat &x) const
    {
        Rat acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    }

    Polynomial monic() const
    {
        if (is_zero())
            return *this;
        Polynomial out = *this;
        Rat inv = 1 / leading();
        for (auto &x : out.c_)
            x *= inv;
        return out;
    }

    friend Polynomial operator+(const Polynomial &a, const Polynomial &b)
    {
        std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i)
            c[i] += b.c_[i];
        return Polynomial(std::move(c));
    }

    Polynomial operator-() const
    {
        Polynomial out = *this;
        for (auto &x : out.c_)
            x = -x;
        return out;
    }

    friend Polynomial operator-(const Polynomial &a, const Polynomial &b) { return a + (-b); }

    friend Polynomial operator*(const Polynomial &a, const Polynomial &b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<Rat> c(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(c));
    }

    Polynomial pow(unsigned long k) const
    {
        Polynomial out(1);
        for (unsigned long i = 0; i < k; ++i)
            out = out * *this;
        return out;
    }

    /// Euclidean division: a = q * b + r with deg r < deg b.
    static std::pair<Polynomial, Polynomial> divmod(const Polynomial &a, const Polynomial &b)
    {
        if (b.is_zero())
            throw Error(ErrorKind::Validation, "polynomial division by zero");
        std::vector<Rat> r = a.c_;
        if (a.degree() < b.degree())
            return {Polynomial(), a};
        std::vector<Rat> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), Rat(0));
        const Rat lead = b.leading();
        for (long k = a.degree() - b.degree(); k >= 0; --k) {
            std::size_t top = static_cast<std::size_t>(k + b.degree());
            Rat f = r[top] / lead;
            q[static_cast<std::size_t>(k)] = f;
            if (f == 0)
                continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r[static_cast<std::size_t>(k) + j] -= f * b.c_[j];
        }
        return {Polynomial(std::move(q)), Polynomial(std::move(r))};
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    static Polynomial gcd(Polynomial a, Polynomial b)
    {
        while (!b.is_zero()) {
            Polynomial r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    /// Order of vanishing at t = root.
    unsigned long multiplicity(const Rat &root) const
    {
        if (is_zero())
            throw Error(ErrorKind::Validation, "multiplicity of a root of the zero polynomial");
        unsigned long k = 0;
        Polynomial p = *this;
        const Polynomial lin = linear(root);
        while (p.degree() > 0) {
            auto [q, r] = divmod(p, lin);
            if (!r.is_zero())
                break;
            p = std::move(q);
            ++k;
        }
        return k;
    }

    /// Distinct rational roots, ascending (rational root theorem).
    std::vector<Rat> rational_roots() const
    {
        if (is_zero())
            throw Error(ErrorKind::Validation, "roots of the zero polynomial");
        std::vector<Rat> roots;
        std::vector<Int> ic = integer_coefficients();
        std::size_t low = 0;
        while (low < ic.size() && ic[low] == 0)
            ++low;
        if (low > 0)
            roots.push_back(Rat(0));
        if (low + 1 >= ic.size()) {
            std::sort(roots.begin(), roots.end());
            return roots;
        }
        const Int a0 = abs(ic[low]);
        const Int an = abs(ic.back());
        for (const Int &p : divisors(a0))
            for (const Int &q : divisors(an))
                for (int sign : {1, -1}) {
                    Rat cand = make_rat(p * sign, q);
                    if (eval(cand) == 0 && std::find(roots.begin(), roots.end(), cand) == roots.end())
                        roots.push_back(cand);
                }
        std::sort(roots.begin(), roots.end());
        return roots;
    }

    friend bool operator==(const Polynomial &a, const Polynomial &b) { return a.c_ == b.c_; }
    friend bool operator!=(const Polynomial &a, const Polynomial &b) { return !(a == b); }

    std::size_t term_count() const
    {
        return static_cast<std::size_t>(std::count_if(c_.begin(), c_.end(), [](const Rat &x) { return x != 0; }));
    }

    /// Canonical text form, e.g. "2*t^2 - 1/3*t + 5".
    std::string str() const
    {
        if (is_zero())
            return "0";
        std::string out;
        bool first = true;
        for (long k = degree(); k >= 0; --k) {
            const Rat &c = c_[static_cast<std::size_t>(k)];
            if (c == 0)
                continue;
            Rat mag = abs(c);
            if (first)
                out += c < 0 ? "-" : "";
            else
                out += c < 0 ? " - " : " + ";
            first = false;
            if (k == 0) {
                out += to_string(mag);
                continue;
            }
            if (mag != 1)
                out += to_string(mag) + "*";
            out += "t";
            if (k > 1)
                out += "^" + std::to_string(k);
        }
        return out;
    }

private:
    void trim()
    {
        for (auto &x : c_)
            x.canonicalize();
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }

    std::vector<Int> integer_coefficients() const
    {
        Int l = lcm_of_denominators(c_);
        std::vector<Int> out;
        for (const auto &x : c_) {
            Rat s = x * l;
            out.push_back(s.get_num());
        }
        return out;
    }

    static std::vector<Int> divisors(const Int &n)
    {
        std::vector<Int> out;
        for (Int d = 1; d * d <= n; ++d)
            if (n % d == 0) {
                out.push_back(d);
                if (d * d != n)
                    out.push_back(n / d);
            }
        return out;
    }

    std::vector<Rat> c_;
};

/// A reduced quotient num/den of polynomials in t with monic denominator.
class RationalFunction
{
public:
    RationalFunction() : num_(), den_(1) {}
    RationalFunction(Polynomial num) : num_(std::move(num)), den_(1) {}
    RationalFunction(const Rat &c) : RationalFunction(Polynomial(c)) {}
    RationalFunction(long c) : RationalFunction(Polynomial(c)) {}
    RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

    static RationalFunction t() { return RationalFunction(Polynomial::monomial(1, 1)); }

    const Polynomial &num() const { return num_; }
    const Polynomial &den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

    friend RationalFunction operator+(const RationalFunction &a, const RationalFunction &b)
    {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    RationalFunction operator-() const { return RationalFunction(-num_, den_); }
    friend RationalFunction operator-(const RationalFunction &a, const RationalFunction &b) { return a + (-b); }
    friend RationalFunction operator*(const RationalFunction &a, const RationalFunction &b)
    {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction &a, const RationalFunction &b)
    {
        if (b.is_zero())
            throw Error(ErrorKind::Validation, "division by the zero function");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }

    RationalFunction pow(long k) const
    {
        if (k < 0) {
            if (is_zero())
                throw Error(ErrorKind::Validation, "negative power of zero");
            return RationalFunction(den_.pow(static_cast<unsigned long>(-k)), num_.pow(static_cast<unsigned long>(-k)));
        }
        return RationalFunction(num_.pow(static_cast<unsigned long>(k)), den_.pow(static_cast<unsigned long>(k)));
    }

    friend bool operator==(const RationalFunction &a, const RationalFunction &b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction &a, const RationalFunction &b) { return !(a == b); }

    std::string str() const
    {
        if (den_.degree() == 0)
            return num_.str();
        bool bare_num = num_.term_count() == 1 && is_integer(num_.leading());
        bool bare_den = den_.term_count() == 1;
        std::string n = bare_num ? num_.str() : "(" + num_.str() + ")";
        std::string d = bare_den ? den_.str() : "(" + den_.str() + ")";
        return n + "/" + d;
    }

    friend std::ostream &operator<<(std::ostream &os, const RationalFunction &f) { return os << f.str(); }

private:
    void reduce()
    {
        if (den_.is_zero())
            throw Error(ErrorKind::Validation, "rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = Polynomial(1);
            return;
        }
        Polynomial g = Polynomial::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = Polynomial::divmod(num_, g).first;
            den_ = Polynomial::divmod(den_, g).first;
        }
        Rat lead = den_.leading();
        if (lead != 1) {
            num_ = num_ * Polynomial(1 / lead);
            den_ = den_ * Polynomial(1 / lead);
        }
    }

    Polynomial num_;
    Polynomial den_;
};

namespace detail {

class FunctionParser
{
public:
    explicit FunctionParser(std::string_view text) : s_(text) {}

    RationalFunction parse()
    {
        RationalFunction f = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string &why) const
    {
        throw Error(ErrorKind::Validation,
                    "cannot parse function '" + std::string(s_) + "' at offset " + std::to_string(pos_) + ": " + why);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    RationalFunction expr()
    {
        RationalFunction acc = term();
        while (true) {
            if (eat('+'))
                acc = acc + term();
            else if (eat('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    RationalFunction term()
    {
        RationalFunction acc = unary();
        while (true) {
            if (eat('*'))
                acc = acc * unary();
            else if (eat('/'))
                acc = acc / unary();
            else
                return acc;
        }
    }

    RationalFunction unary()
    {
        if (eat('-'))
            return -unary();
        if (eat('+'))
            return unary();
        return power();
    }

    RationalFunction power()
    {
        RationalFunction base = atom();
        if (!eat('^'))
            return base;
        skip();
        bool neg = eat('-');
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected an integer exponent");
        long k = std::stol(std::string(s_.substr(start, pos_ - start)));
        return base.pow(neg ? -k : k);
    }

    RationalFunction atom()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            RationalFunction f = expr();
            if (!eat(')'))
                fail("expected ')'");
            return f;
        }
        if (c == 't') {
            ++pos_;
            return RationalFunction::t();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            return RationalFunction(Rat(Int(std::string(s_.substr(start, pos_ - start)), 10)));
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses expressions in t built from integers, + - * / ^ and parentheses.
inline RationalFunction parse_function(std::string_view text) { return detail::FunctionParser(text).parse(); }

} // namespace tvar
