#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace hfb {

using Rational = mpq_class;
using Vec = std::vector<Rational>;

/// Canonical text form: "p" or "p/q" with q > 0.
std::string to_string(const Rational& q);

/// Parses "p", "p/q" or a plain decimal like "-0.25". Throws std::invalid_argument.
Rational parse_rational(const std::string& text);

inline bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (sgn(x) != 0) return false;
    return true;
}

inline Rational dot(const Vec& a, const Vec& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Vec operator+(Vec a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline Vec operator-(Vec a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

inline Vec operator*(const Rational& s, Vec a) {
    for (auto& x : a) x *= s;
    return a;
}

/// Integer power with negative exponents allowed (base must be nonzero then).
Rational pow(const Rational& base, int exponent);

/// Binomial coefficient C(n, k) for n possibly negative (generalised), k >= 0.
Rational binomial(long n, long k);

}  // namespace hfb
