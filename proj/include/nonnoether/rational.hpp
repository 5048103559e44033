#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace nonnoether {

// Exact arbitrary-precision rational coefficient type. All symbolic zero
// tests in the toolkit reduce to exact comparisons on these.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline Rational rat(long long num, long long den = 1) { return Rational(num, den); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

std::string rational_to_string(const Rational& r);

// Parses "p" or "p/q" with optional leading sign. Throws ParseError on junk.
Rational rational_from_string(const std::string& s);

inline Rational binomial(int n, int k) {
    if (k < 0 || k > n) return Rational(0);
    Rational r(1);
    for (int i = 0; i < k; ++i) r *= Rational(n - i, i + 1);
    return r;
}

inline Rational factorial(int n) {
    Rational r(1);
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

} // namespace nonnoether
