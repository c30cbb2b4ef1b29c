#include "hfb/polynomial.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hfb {

Poly::Poly(const Rational& c) {
    if (sgn(c) != 0) terms_[{}] = c;
}

Poly Poly::variable(std::size_t v) {
    Poly p;
    p.terms_[{{static_cast<std::uint32_t>(v), 1u}}] = 1;
    return p;
}

int Poly::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
        int t = 0;
        for (const auto& [v, e] : m) t += static_cast<int>(e);
        d = std::max(d, t);
    }
    return d;
}

std::size_t Poly::variables() const {
    std::size_t n = 0;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m) n = std::max(n, static_cast<std::size_t>(v) + 1);
    return n;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
}

Poly Poly::derivative(std::size_t v) const {
    Poly d;
    for (const auto& [m, c] : terms_)
        for (std::size_t k = 0; k < m.size(); ++k) {
            if (m[k].first != v) continue;
            Monomial r = m;
            const auto e = r[k].second;
            if (e == 1)
                r.erase(r.begin() + static_cast<std::ptrdiff_t>(k));
            else
                r[k].second = e - 1;
            d.add_term(r, c * e);
        }
    return d;
}

Rational Poly::evaluate(const Vec& x) const {
    Rational s = 0;
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (const auto& [v, e] : m) t *= pow(x.at(v), static_cast<int>(e));
        s += t;
    }
    return s;
}

double Poly::evaluate(const std::vector<double>& x) const {
    double s = 0;
    for (const auto& [m, c] : terms_) {
        double t = c.get_d();
        for (const auto& [v, e] : m) t *= std::pow(x.at(v), static_cast<double>(e));
        s += t;
    }
    return s;
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly& Poly::operator*=(const Rational& s) {
    if (sgn(s) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            Poly::Monomial m;
            m.reserve(ma.size() + mb.size());
            std::size_t i = 0, j = 0;
            while (i < ma.size() || j < mb.size()) {
                if (j == mb.size() || (i < ma.size() && ma[i].first < mb[j].first)) {
                    m.push_back(ma[i++]);
                } else if (i == ma.size() || mb[j].first < ma[i].first) {
                    m.push_back(mb[j++]);
                } else {
                    m.push_back({ma[i].first, ma[i].second + mb[j].second});
                    ++i;
                    ++j;
                }
            }
            r.add_term(m, ca * cb);
        }
    return r;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        os << (first ? "" : " + ") << hfb::to_string(c);
        for (const auto& [v, e] : m) os << "*x" << v << (e > 1 ? "^" + std::to_string(e) : "");
        first = false;
    }
    return os.str();
}

}  // namespace hfb

namespace hfb::upoly {

UPoly trim(UPoly p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
    return p;
}

int degree(const UPoly& p) { return static_cast<int>(trim(p).size()) - 1; }

Rational eval(const UPoly& p, const Rational& x) {
    Rational s = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) s = s * x + *it;
    return s;
}

double eval(const UPoly& p, double x) {
    double s = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) s = s * x + it->get_d();
    return s;
}

UPoly derivative(const UPoly& p) {
    UPoly d;
    for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
    return trim(d);
}

UPoly add(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()));
    for (std::size_t k = 0; k < a.size(); ++k) r[k] += a[k];
    for (std::size_t k = 0; k < b.size(); ++k) r[k] += b[k];
    return trim(r);
}

UPoly sub(const UPoly& a, const UPoly& b) { return add(a, scale(b, -1)); }

UPoly mul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return trim(r);
}

UPoly scale(const UPoly& a, const Rational& s) {
    UPoly r = a;
    for (auto& c : r) c *= s;
    return trim(r);
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    const UPoly d = trim(b);
    if (d.empty()) throw std::invalid_argument("polynomial division by zero");
    UPoly r = trim(a);
    if (r.size() < d.size()) return {{}, r};
    UPoly q(r.size() - d.size() + 1);
    for (std::size_t k = q.size(); k-- > 0;) {
        const Rational c = r[k + d.size() - 1] / d.back();
        q[k] = c;
        for (std::size_t j = 0; j < d.size(); ++j) r[k + j] -= c * d[j];
    }
    return {trim(q), trim(r)};
}

UPoly monic(const UPoly& p) {
    const UPoly t = trim(p);
    if (t.empty()) return t;
    return scale(t, Rational(1) / t.back());
}

UPoly gcd(UPoly a, UPoly b) {
    a = trim(a);
    b = trim(b);
    while (!b.empty()) {
        UPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

UPoly from_roots(const std::vector<Rational>& roots) {
    UPoly p{1};
    for (const auto& r : roots) p = mul(p, UPoly{-r, 1});
    return p;
}

UPoly interpolate(const std::vector<Rational>& values) {
    // Newton divided differences on the nodes 0, 1, 2, ...
    const std::size_t n = values.size();
    std::vector<Rational> dd = values;
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i) dd[i] = (dd[i] - dd[i - 1]) / static_cast<long>(level);
    UPoly p;
    for (std::size_t i = n; i-- > 0;) {
        p = mul(p, UPoly{-static_cast<long>(i), 1});
        p = add(p, UPoly{dd[i]});
    }
    return trim(p);
}

}  // namespace hfb::upoly
