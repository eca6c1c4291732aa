#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "tvar/error.hpp"

namespace tvar {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int &num, const Int &den = 1)
{
    if (den == 0)
        throw Error(ErrorKind::Validation, "zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Int floor_of(const Rat &q)
{
    Int out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

inline Int ceil_of(const Rat &q)
{
    Int out;
    mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

inline bool is_integer(const Rat &q) { return q.get_den() == 1; }

/// "p/q" for non-integers, plain digits otherwise.
inline std::string to_string(const Rat &q)
{
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const Int &z) { return z.get_str(); }

/// Accepts "n", "-n", "p/q" with optional surrounding blanks.
inline Rat parse_rational(std::string_view text)
{
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
            s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
            s.remove_suffix(1);
        return s;
    };
    auto parse_int = [&](std::string_view s) {
        s = trim(s);
        std::string digits(s);
        if (!digits.empty() && digits.front() == '+')
            digits.erase(0, 1);
        bool ok = !digits.empty();
        for (std::size_t i = 0; i < digits.size() && ok; ++i) {
            char c = digits[i];
            if (!(std::isdigit(static_cast<unsigned char>(c)) || (i == 0 && c == '-' && digits.size() > 1)))
                ok = false;
        }
        if (!ok)
            throw Error(ErrorKind::Validation, "malformed rational '" + std::string(text) + "'");
        return Int(digits, 10);
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rat(parse_int(text));
    return make_rat(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

inline Int gcd_of(const std::vector<Int> &v)
{
    Int g = 0;
    for (const auto &x : v)
        g = gcd(g, x);
    return g;
}

inline Int lcm_of_denominators(const std::vector<Rat> &v)
{
    Int l = 1;
    for (const auto &x : v)
        l = lcm(l, x.get_den());
    return l;
}

/// Scales a rational vector to the primitive integer vector on the same ray.
inline std::vector<Int> primitive_scaling(const std::vector<Rat> &v)
{
    Int l = lcm_of_denominators(v);
    std::vector<Int> out;
    out.reserve(v.size());
    for (const auto &x : v) {
        Rat s = x * l;
        out.push_back(s.get_num());
    }
    Int g = gcd_of(out);
    if (g > 1)
        for (auto &x : out)
            x /= g;
    return out;
}

} // namespace tvar
