#pragma once

#include "hfb/rational.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hfb {

/// Sparse multivariate polynomial with rational coefficients.
class Poly {
public:
    /// Sorted (variable, exponent) pairs with positive exponents.
    using Monomial = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

    Poly() = default;
    Poly(int c) : Poly(Rational(c)) {}
    Poly(const Rational& c);

    static Poly variable(std::size_t v);

    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;
    /// One more than the largest variable index used (0 for constants).
    std::size_t variables() const;

    Poly derivative(std::size_t v) const;
    Rational evaluate(const Vec& x) const;
    double evaluate(const std::vector<double>& x) const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Rational& s);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) { return a *= Rational(-1); }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
    friend Poly operator/(Poly a, int d) { return a *= Rational(1, d < 0 ? -d : d) * (d < 0 ? -1 : 1); }
    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

    std::string to_string() const;

private:
    void add_term(const Monomial& m, const Rational& c);
    std::map<Monomial, Rational> terms_;
};

/// Dense univariate polynomials, lowest degree first; the zero polynomial is empty.
namespace upoly {

using UPoly = std::vector<Rational>;

UPoly trim(UPoly p);
int degree(const UPoly& p);
Rational eval(const UPoly& p, const Rational& x);
double eval(const UPoly& p, double x);
UPoly derivative(const UPoly& p);
UPoly add(const UPoly& a, const UPoly& b);
UPoly sub(const UPoly& a, const UPoly& b);
UPoly mul(const UPoly& a, const UPoly& b);
UPoly scale(const UPoly& a, const Rational& s);
/// Quotient and remainder; throws on division by zero.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
/// Monic greatest common divisor (empty when both are zero).
UPoly gcd(UPoly a, UPoly b);
UPoly monic(const UPoly& p);
/// prod (z - r) over the roots.
UPoly from_roots(const std::vector<Rational>& roots);
/// Coefficients of the unique polynomial of degree < samples through (t, values[t]), t = 0, 1, ...
UPoly interpolate(const std::vector<Rational>& values);

}  // namespace upoly

}  // namespace hfb
