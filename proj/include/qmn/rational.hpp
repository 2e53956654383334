#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qmn {

/// Exact rational scalar. Arithmetic is exact, equality is decidable.
using Rational = boost::multiprecision::mpq_rational;

using BigInt = boost::multiprecision::mpz_int;

/// Parses "p/q", plain integers and decimal strings ("0.25" -> 1/4).
/// Decimals are converted exactly as decimal fractions, never through a
/// binary float.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) {
        throw std::invalid_argument("empty rational literal");
    }
    auto bad = [&] {
        return std::invalid_argument("cannot parse rational literal '" + s + "'");
    };
    // GMP treats a leading 0 as an octal prefix; force base 10.
    auto parse_int = [&](std::string t) {
        bool neg = false;
        if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
            neg = t[0] == '-';
            t.erase(0, 1);
        }
        if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) throw bad();
        t.erase(0, std::min(t.find_first_not_of('0'), t.size() - 1));
        BigInt v(t);
        return neg ? BigInt(-v) : v;
    };
    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (num.empty() || den.empty()) throw bad();
        const BigInt d = parse_int(den);
        if (d == 0) throw bad();
        return Rational{parse_int(num), d};
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
        bool neg = false;
        std::string body = s;
        if (body[0] == '+' || body[0] == '-') {
            neg = body[0] == '-';
            body = body.substr(1);
            dot -= 1;
        }
        std::string digits = body.substr(0, dot) + body.substr(dot + 1);
        std::size_t frac_len = body.size() - dot - 1;
        BigInt num = parse_int(digits);
        BigInt den = 1;
        for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
        Rational r(num, den);
        return neg ? Rational(-r) : r;
    }
    return Rational(parse_int(s));
}

/// Renders as "p/q" (or "p" when the denominator is 1).
inline std::string to_display_string(const Rational& r) { return r.str(); }

/// Floats render with enough digits to round-trip bit-exactly.
inline std::string to_display_string(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

template <typename Scalar>
Scalar scalar_from_rational(const Rational& r) {
    if constexpr (std::is_same_v<Scalar, Rational>) {
        return r;
    } else {
        return static_cast<Scalar>(r);
    }
}

/// q^n for nonnegative integer n, by repeated squaring.
template <typename Scalar>
Scalar pow_ui(const Scalar& base, long long n) {
    if (n < 0) throw std::invalid_argument("pow_ui: negative exponent");
    Scalar result(1);
    Scalar b = base;
    while (n > 0) {
        if (n & 1) result *= b;
        b *= b;
        n >>= 1;
    }
    return result;
}

template <typename Scalar>
Scalar scalar_abs(const Scalar& x) {
    return x < Scalar(0) ? Scalar(-x) : x;
}

}  // namespace qmn
