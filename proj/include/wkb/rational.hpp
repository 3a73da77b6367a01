#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "wkb/errors.hpp"

namespace wkb {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/* Canonical form: "p/q" in lowest terms, "/1" suppressed, sign on the
 * numerator.  This is the only coefficient syntax accepted in documents. */
inline std::string rational_to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += "/";
        s += denominator(r).str();
    }
    return s;
}

/* Strict parse of ^-?[0-9]+(/[0-9]+)?$.  A zero denominator is rejected. */
inline std::optional<Rational> try_parse_rational(std::string_view s) {
    std::size_t i = 0;
    if (i < s.size() && s[i] == '-') ++i;
    std::size_t num_begin = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (i == num_begin) return std::nullopt;
    Integer num(std::string(s.substr(0, i)));
    Integer den = 1;
    if (i < s.size()) {
        if (s[i] != '/') return std::nullopt;
        ++i;
        std::size_t den_begin = i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
        if (i == den_begin || i != s.size()) return std::nullopt;
        den = Integer(std::string(s.substr(den_begin)));
        if (den == 0) return std::nullopt;
    }
    return Rational(num, den);
}

inline Rational parse_rational(std::string_view s) {
    auto r = try_parse_rational(s);
    if (!r) fail(ErrorKind::BadDocument, "invalid rational literal '" + std::string(s) + "'");
    return *r;
}

/* Exact square root over the rationals, if one exists. */
inline std::optional<Rational> exact_sqrt(const Rational& r) {
    if (r < 0) return std::nullopt;
    Integer n = numerator(r), d = denominator(r);
    Integer sn = boost::multiprecision::sqrt(n);
    Integer sd = boost::multiprecision::sqrt(d);
    if (sn * sn != n || sd * sd != d) return std::nullopt;
    return Rational(sn, sd);
}

inline Integer factorial(unsigned n) {
    Integer f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

inline Integer binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    Integer b = 1;
    for (unsigned i = 0; i < k; ++i) {
        b *= (n - i);
        b /= (i + 1);
    }
    return b;
}

} // namespace wkb
