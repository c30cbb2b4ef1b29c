#include "hfb/rational.hpp"

#include <stdexcept>

namespace hfb {

std::string to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    const auto dot_pos = text.find('.');
    try {
        if (dot_pos == std::string::npos) {
            Rational q(text, 10);
            if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
            q.canonicalize();
            return q;
        }
        // decimal literal: integer part and fractional digits
        std::string digits = text.substr(0, dot_pos) + text.substr(dot_pos + 1);
        if (digits.empty() || digits == "-" || digits == "+")
            throw std::invalid_argument("malformed decimal '" + text + "'");
        const auto frac_len = text.size() - dot_pos - 1;
        mpz_class num(digits, 10);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
        Rational q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("not a rational number: '" + text + "'");
    }
}

Rational pow(const Rational& base, int exponent) {
    if (exponent < 0) {
        if (sgn(base) == 0) throw std::domain_error("zero raised to a negative power");
        return Rational(1) / pow(base, -exponent);
    }
    Rational result = 1;
    Rational b = base;
    unsigned e = static_cast<unsigned>(exponent);
    while (e) {
        if (e & 1u) result *= b;
        b *= b;
        e >>= 1u;
    }
    return result;
}

Rational binomial(long n, long k) {
    if (k < 0) return 0;
    Rational r = 1;
    for (long i = 0; i < k; ++i) {
        r *= Rational(n - i);
        r /= Rational(i + 1);
    }
    return r;
}

}  // namespace hfb
