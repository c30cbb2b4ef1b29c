#include "hfb/curve.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace hfb::curve {

MarkedCurve::MarkedCurve(std::vector<Rational> pts, int g) : genus(g), points(std::move(pts)) { validate(); }

void MarkedCurve::validate() const {
    if (genus < 0) throw std::invalid_argument("genus must be nonnegative");
    if (points.empty()) throw std::invalid_argument("the divisor D must be nonempty (n >= 1)");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (sgn(points[i]) == 0) throw std::invalid_argument("marked points must be nonzero (z = 0 is reserved)");
        for (std::size_t j = 0; j < i; ++j)
            if (points[i] == points[j])
                throw std::invalid_argument("marked points must be distinct, " + to_string(points[i]) + " repeats");
    }
}

Matrix full_space(std::size_t m) { return Matrix::identity(m); }
Matrix zero_space(std::size_t m) { return Matrix(m, 0); }

SheafSpec SheafSpec::uniform(std::size_t m, std::size_t n, int order, int order_inf) {
    SheafSpec s;
    s.fiber_dim = m;
    s.order.assign(n, order);
    s.value_space.assign(n, full_space(m));
    s.order_inf = order_inf;
    s.value_space_inf = full_space(m);
    return s;
}

long SheafSpec::degree() const {
    const long m = static_cast<long>(fiber_dim);
    long d = 0;
    for (std::size_t p = 0; p <= points(); ++p)
        d += m * order_at(p) - (m - static_cast<long>(rank(space_at(p))));
    return d;
}

SheafSpec SheafSpec::canonical() const {
    SheafSpec s = *this;
    for (std::size_t p = 0; p <= points(); ++p) {
        const Matrix& v = space_at(p);
        if (rank(v) != 0) continue;
        if (p == points()) {
            s.order_inf -= 1;
            s.value_space_inf = full_space(fiber_dim);
        } else {
            s.order[p] -= 1;
            s.value_space[p] = full_space(fiber_dim);
        }
    }
    return s;
}

namespace {

// Column basis of {y : v^T form y = 0}; an empty form means the dot product.
Matrix annihilator(const Matrix& v, std::size_t m, const Matrix& form = Matrix()) {
    if (v.cols() == 0) return full_space(m);
    return nullspace(form.rows() == 0 ? v.transpose() : v.transpose() * form);
}

}  // namespace

SheafSpec SheafSpec::dual(const Matrix& form) const {
    SheafSpec s;
    s.fiber_dim = fiber_dim;
    for (std::size_t p = 0; p < points(); ++p) {
        s.order.push_back(1 - order[p]);
        s.value_space.push_back(annihilator(value_space[p], fiber_dim, form));
    }
    s.order_inf = -order_inf - 1;
    s.value_space_inf = annihilator(value_space_inf, fiber_dim, form);
    return s.canonical();
}

void SheafSpec::validate(const MarkedCurve& c) const {
    if (order.size() != c.n() || value_space.size() != c.n())
        throw std::invalid_argument("sheaf data must list one order and one value space per marked point");
    for (std::size_t p = 0; p <= points(); ++p)
        if (space_at(p).rows() != fiber_dim) throw std::invalid_argument("value space does not live in the fibre");
}

Rational ScalarSeries::at(int e) const {
    const long k = static_cast<long>(e) - lo;
    if (k < 0 || k >= static_cast<long>(c.size())) return 0;
    return c[static_cast<std::size_t>(k)];
}

Vec Series::at(int e) const {
    const long k = static_cast<long>(e) - lo;
    if (k < 0 || k >= static_cast<long>(c.size())) return Vec(m);
    return c[static_cast<std::size_t>(k)];
}

ScalarSeries expand(const MarkedCurve& c, const ScalarFn& f, std::size_t q, int hi) {
    ScalarSeries s;
    const bool inf = q == c.infinity();
    if (f.pole) {
        const int j = f.power;
        const Rational& xp = c.points[f.point];
        if (!inf && q == f.point) {
            s.lo = -j;
            if (hi >= s.lo) {
                s.c.assign(static_cast<std::size_t>(hi - s.lo + 1), Rational(0));
                s.c[0] = 1;
            }
        } else if (!inf) {
            // (u + x_q - x_p)^{-j}
            s.lo = 0;
            const Rational d = c.points[q] - xp;
            for (int k = 0; k <= hi; ++k) s.c.push_back(binomial(-j, k) * pow(d, -j - k));
        } else {
            // (1/w - x_p)^{-j} = w^j (1 - x_p w)^{-j}
            s.lo = j;
            for (int k = 0; j + k <= hi; ++k) s.c.push_back(binomial(j + k - 1, k) * pow(xp, k));
        }
    } else {
        const int j = f.power;
        if (!inf) {
            s.lo = 0;
            for (int k = 0; k <= hi; ++k) s.c.push_back(k <= j ? binomial(j, k) * pow(c.points[q], j - k) : Rational(0));
        } else {
            s.lo = -j;
            if (hi >= s.lo) {
                s.c.assign(static_cast<std::size_t>(hi - s.lo + 1), Rational(0));
                s.c[0] = 1;
            }
        }
    }
    return s;
}

std::vector<std::pair<ScalarFn, Rational>> divide_by_simple_pole(const MarkedCurve& c, const ScalarFn& f,
                                                                 std::size_t i) {
    std::vector<std::pair<ScalarFn, Rational>> out;
    const Rational& a = c.points[i];
    if (f.pole) {
        if (f.point == i) {
            out.push_back({ScalarFn{true, i, f.power + 1}, 1});
            return out;
        }
        // 1/((z-a)(z-b)^j) = (a-b)^{-j}/(z-a) + sum_l (-1)^{j-l} (b-a)^{-(j-l+1)}/(z-b)^l
        const Rational& b = c.points[f.point];
        const int j = f.power;
        out.push_back({ScalarFn{true, i, 1}, pow(a - b, -j)});
        for (int l = 1; l <= j; ++l) {
            const Rational sign = ((j - l) % 2 == 0) ? 1 : -1;
            out.push_back({ScalarFn{true, f.point, l}, sign * pow(b - a, -(j - l + 1))});
        }
        return out;
    }
    // z^j/(z-a) = sum_{k<j} a^{j-1-k} z^k + a^j/(z-a)
    const int j = f.power;
    for (int k = 0; k < j; ++k) out.push_back({ScalarFn{false, 0, k}, pow(a, j - 1 - k)});
    out.push_back({ScalarFn{true, i, 1}, pow(a, j)});
    return out;
}

Series RationalSection::expand(const MarkedCurve& c, std::size_t q, int hi) const {
    Series s;
    s.m = m;
    int lo = std::numeric_limits<int>::max();
    std::vector<std::pair<ScalarSeries, const Vec*>> terms;
    for (std::size_t p = 0; p < principal.size(); ++p)
        for (std::size_t j = 0; j < principal[p].size(); ++j) {
            if (is_zero(principal[p][j])) continue;
            terms.push_back({curve::expand(c, ScalarFn{true, p, static_cast<int>(j + 1)}, q, hi), &principal[p][j]});
        }
    for (std::size_t j = 0; j < polynomial.size(); ++j) {
        if (is_zero(polynomial[j])) continue;
        terms.push_back({curve::expand(c, ScalarFn{false, 0, static_cast<int>(j)}, q, hi), &polynomial[j]});
    }
    for (const auto& t : terms)
        if (!t.first.c.empty()) lo = std::min(lo, t.first.lo);
    if (lo == std::numeric_limits<int>::max()) lo = hi + 1;
    s.lo = lo;
    if (hi >= lo) s.c.assign(static_cast<std::size_t>(hi - lo + 1), Vec(m));
    for (const auto& [ser, vec] : terms)
        for (std::size_t k = 0; k < ser.c.size(); ++k) {
            if (sgn(ser.c[k]) == 0) continue;
            auto& slot = s.c[static_cast<std::size_t>(ser.lo + static_cast<int>(k) - lo)];
            for (std::size_t a = 0; a < m; ++a) slot[a] += ser.c[k] * (*vec)[a];
        }
    return s;
}

Rational residue(const MarkedCurve& c, const RationalSection& f, std::size_t q) {
    if (f.m != 1) throw std::invalid_argument("residue expects a scalar 1-form");
    if (q > c.n()) throw std::invalid_argument("residue: point index out of range");
    if (q == c.infinity()) {
        // dz = -dw / w^2
        return -f.expand(c, q, 1).at(1)[0];
    }
    return f.expand(c, q, -1).at(-1)[0];
}

Rational residue_at(const MarkedCurve& c, const RationalSection& f, const Rational& x) {
    for (std::size_t p = 0; p < c.n(); ++p)
        if (c.points[p] == x) return residue(c, f, p);
    return 0;
}

Rational pair_residue(const Series& a, const Series& b, const Matrix& form, bool at_infinity) {
    const int target = at_infinity ? 1 : -1;
    Rational r = 0;
    for (std::size_t k = 0; k < a.c.size(); ++k) {
        const Vec& x = a.c[k];
        if (is_zero(x)) continue;
        const Vec y = b.at(target - (a.lo + static_cast<int>(k)));
        if (is_zero(y)) continue;
        r += dot(x, form * y);
    }
    return at_infinity ? Rational(-r) : r;
}

Presentation::Presentation(const MarkedCurve& c, const SheafSpec& spec, int bound)
    : curve_(c), spec_(spec), bound_(bound) {
    spec_.validate(curve_);
    const std::size_t m = spec_.fiber_dim;
    const std::size_t n = curve_.n();
    for (std::size_t p = 0; p < n; ++p)
        for (int j = 1; j <= spec_.order[p] + bound_; ++j) scalars_.push_back({true, p, j});
    if (spec_.order_inf + bound_ < 0) throw std::invalid_argument("truncation bound too small for the sheaf at infinity");
    for (int j = 0; j <= spec_.order_inf + bound_; ++j) scalars_.push_back({false, 0, j});

    std::vector<Matrix> pis, lifts;
    std::size_t q_total = 0;
    for (std::size_t p = 0; p <= n; ++p) {
        tail_offset_.push_back(tail_dim_);
        tail_dim_ += static_cast<std::size_t>(bound_ + 1) * m;
        Matrix pi = annihilator(spec_.space_at(p), m).transpose();
        Matrix lift(m, pi.rows());
        if (pi.rows() > 0) lift = pi.transpose() * *inverse(pi * pi.transpose());
        q_total += static_cast<std::size_t>(bound_) * m + pi.rows();
        pis.push_back(std::move(pi));
        lifts.push_back(std::move(lift));
    }
    quot_dim_ = q_total;
    proj_ = Matrix(quot_dim_, tail_dim_);
    lift_ = Matrix(tail_dim_, quot_dim_);
    std::size_t qo = 0;
    for (std::size_t p = 0; p <= n; ++p) {
        const std::size_t to = tail_offset_[p];
        const std::size_t full = static_cast<std::size_t>(bound_) * m;
        for (std::size_t k = 0; k < full; ++k) {
            proj_(qo + k, to + k) = 1;
            lift_(to + k, qo + k) = 1;
        }
        proj_.set_block(qo + full, to + full, pis[p]);
        lift_.set_block(to + full, qo + full, lifts[p]);
        qo += full + pis[p].rows();
    }

    tails_ = Matrix(tail_dim_, global_dim());
    for (std::size_t s = 0; s < scalars_.size(); ++s)
        for (std::size_t p = 0; p <= n; ++p) {
            const ScalarSeries ser = expand(curve_, scalars_[s], p, window_hi(p));
            if (!ser.c.empty() && ser.lo < window_lo(p))
                throw std::logic_error("global section leaves the tail window");
            for (std::size_t k = 0; k < ser.c.size(); ++k) {
                if (sgn(ser.c[k]) == 0) continue;
                const int e = ser.lo + static_cast<int>(k);
                for (std::size_t a = 0; a < m; ++a) tails_(tail_index(p, e, a), s * m + a) = ser.c[k];
            }
        }
    eps_ = proj_ * tails_;
}

std::size_t Presentation::scalar_index(const ScalarFn& f) const {
    if (f.pole) {
        if (f.power < 1 || f.power > spec_.order[f.point] + bound_) return static_cast<std::size_t>(-1);
        std::size_t idx = 0;
        for (std::size_t p = 0; p < f.point; ++p) idx += static_cast<std::size_t>(std::max(0, spec_.order[p] + bound_));
        return idx + static_cast<std::size_t>(f.power - 1);
    }
    if (f.power < 0 || f.power > spec_.order_inf + bound_) return static_cast<std::size_t>(-1);
    std::size_t idx = 0;
    for (std::size_t p = 0; p < curve_.n(); ++p) idx += static_cast<std::size_t>(std::max(0, spec_.order[p] + bound_));
    return idx + static_cast<std::size_t>(f.power);
}

std::size_t Presentation::tail_index(std::size_t p, int level, std::size_t a) const {
    if (level < window_lo(p) || level > window_hi(p)) throw std::out_of_range("tail level outside the window");
    return tail_offset_[p] + static_cast<std::size_t>(level - window_lo(p)) * m() + a;
}

RationalSection Presentation::section(const Vec& global) const {
    RationalSection r;
    r.m = m();
    r.principal.assign(curve_.n(), {});
    for (std::size_t s = 0; s < scalars_.size(); ++s) {
        Vec v(global.begin() + static_cast<std::ptrdiff_t>(s * m()), global.begin() + static_cast<std::ptrdiff_t>((s + 1) * m()));
        const ScalarFn& f = scalars_[s];
        if (f.pole) {
            auto& pp = r.principal[f.point];
            if (pp.size() < static_cast<std::size_t>(f.power)) pp.resize(static_cast<std::size_t>(f.power), Vec(m()));
            pp[static_cast<std::size_t>(f.power - 1)] = v;
        } else {
            if (r.polynomial.size() <= static_cast<std::size_t>(f.power)) r.polynomial.resize(static_cast<std::size_t>(f.power) + 1, Vec(m()));
            r.polynomial[static_cast<std::size_t>(f.power)] = v;
        }
    }
    return r;
}

Series Presentation::tail_series(const Vec& tail, std::size_t p) const {
    Series s;
    s.m = m();
    s.lo = window_lo(p);
    for (int e = window_lo(p); e <= window_hi(p); ++e) {
        Vec v(m());
        for (std::size_t a = 0; a < m(); ++a) v[a] = tail[tail_index(p, e, a)];
        s.c.push_back(std::move(v));
    }
    return s;
}

Series Presentation::global_series(const Vec& global, std::size_t p, int hi) const {
    return section(global).expand(curve_, p, hi);
}

std::size_t Presentation::h0() const { return global_dim() - rank(eps_); }
std::size_t Presentation::h1() const { return quotient_dim() - rank(eps_); }

int default_bound(const std::vector<SheafSpec>& specs) {
    int b = 0;
    for (const auto& s : specs)
        for (std::size_t p = 0; p <= s.points(); ++p) b = std::max(b, std::abs(s.order_at(p)));
    return b + 2;
}

std::vector<RationalSection> global_sections(const MarkedCurve& c, const SheafSpec& spec) {
    if (c.genus != 0) throw std::invalid_argument("the explicit cohomology engine requires genus 0");
    const Presentation pres(c, spec, default_bound({spec}));
    const Matrix ker = nullspace(pres.epsilon());
    std::vector<RationalSection> out;
    for (std::size_t j = 0; j < ker.cols(); ++j) out.push_back(pres.section(ker.column(j)));
    return out;
}

bool H1Presentation::is_coboundary(const Vec& q) const {
    Matrix col(q.size(), 1);
    col.set_column(0, q);
    return rank(hstack(pres.epsilon(), col)) == rank(pres.epsilon());
}

std::vector<Series> H1Presentation::principal_parts(const Vec& q) const {
    const Vec tail = pres.lift() * q;
    std::vector<Series> out;
    for (std::size_t p = 0; p <= pres.curve().n(); ++p) out.push_back(pres.tail_series(tail, p));
    return out;
}

H1Presentation h1_presentation(const MarkedCurve& c, const SheafSpec& spec, int bound) {
    if (c.genus != 0) throw std::invalid_argument("the explicit cohomology engine requires genus 0");
    H1Presentation h{Presentation(c, spec, bound > 0 ? bound : default_bound({spec})), {}};
    const std::size_t qd = h.pres.quotient_dim();
    for (auto k : extend_basis(h.pres.epsilon(), Matrix::identity(qd))) {
        Vec e(qd);
        e[k] = 1;
        h.representatives.push_back(std::move(e));
    }
    return h;
}

Rational serre_pairing(const H1Presentation& h1, const Vec& cls, const RationalSection& dual_section,
                       const Matrix& form) {
    const Presentation& pres = h1.pres;
    if (dual_section.m != pres.m() || form.rows() != pres.m())
        throw std::invalid_argument("serre_pairing: incompatible fibre dimensions");
    if (cls.size() != pres.quotient_dim()) throw std::invalid_argument("serre_pairing: class has wrong length");
    const Vec tail = pres.lift() * cls;
    Rational total = 0;
    for (std::size_t p = 0; p <= pres.curve().n(); ++p) {
        const bool inf = p == pres.curve().infinity();
        const int hi = (inf ? 1 : -1) - pres.window_lo(p);
        total += pair_residue(pres.tail_series(tail, p), dual_section.expand(pres.curve(), p, hi), form, inf);
    }
    return total;
}

}  // namespace hfb::curve
