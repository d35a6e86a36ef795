#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

namespace biform {

// All coefficients in this library are exact rationals; floating point only
// appears when rendering decimal strings for reports.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    Integer r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Integer binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Integer r = 1;
    for (int i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);  // exact: r is C(n,i+1) * remaining factors
    }
    return r;
}

inline Integer int_pow(Integer base, int exp) {
    if (exp < 0) throw std::invalid_argument("int_pow: negative exponent");
    Integer r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

/// Serialized form: "a" or "a/b" with b > 0, reduced.
inline std::string rational_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += "/";
        s += denominator(r).str();
    }
    return s;
}

/// Parses "a" or "a/b" with optional sign. Rejects anything else.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
    std::size_t pos = 0;
    auto read_int = [&](bool allow_sign) -> Integer {
        std::size_t start = pos;
        if (allow_sign && pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
        std::size_t digits = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ++pos;
            ++digits;
        }
        if (digits == 0) throw std::invalid_argument("parse_rational: malformed '" + text + "'");
        return Integer(text.substr(start, pos - start));
    };
    Integer num = read_int(true);
    Integer den = 1;
    if (pos < text.size()) {
        if (text[pos] != '/') throw std::invalid_argument("parse_rational: malformed '" + text + "'");
        ++pos;
        den = read_int(false);
        if (pos != text.size()) throw std::invalid_argument("parse_rational: malformed '" + text + "'");
        if (den == 0) throw std::invalid_argument("parse_rational: zero denominator in '" + text + "'");
    }
    return Rational(num, den);
}

namespace detail {
using DecimalFloat = boost::multiprecision::cpp_bin_float_50;

inline DecimalFloat to_float(const Rational& r) {
    return DecimalFloat(numerator(r)) / DecimalFloat(denominator(r));
}

inline std::string format_float(const DecimalFloat& v, int significant_digits) {
    std::ostringstream oss;
    oss << std::setprecision(significant_digits) << v;
    return oss.str();
}
}  // namespace detail

/// Decimal rendering with the given number of significant digits.
inline std::string decimal_string(const Rational& r, int significant_digits = 15) {
    return detail::format_float(detail::to_float(r), significant_digits);
}

}  // namespace biform
