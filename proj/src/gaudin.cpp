#include "hfb/gaudin.hpp"

#include "hfb/random.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hfb::gaudin {

namespace {

using upoly::UPoly;

// Weights w_i(t) = prod_{j != i} (t - x_j), so that M(t) = sum_i w_i(t) A_i.
std::vector<Rational> weights(const curve::MarkedCurve& c, const Rational& t) {
    std::vector<Rational> w(c.n(), Rational(1));
    for (std::size_t i = 0; i < c.n(); ++i)
        for (std::size_t j = 0; j < c.n(); ++j)
            if (j != i) w[i] *= t - c.points[j];
    return w;
}

int top_degree(int d, std::size_t n) { return d * (static_cast<int>(n) - 2); }

std::size_t max_samples(const std::vector<int>& degrees, std::size_t n) {
    int m = 0;
    for (int d : degrees) m = std::max(m, d * (static_cast<int>(n) - 1));
    return static_cast<std::size_t>(m) + 1;
}

// Newton interpolation weights: coefficient j of the interpolant through samples
// 0..count-1 is sum_t coef[j][t] * value_t.
std::vector<Vec> interpolation_matrix(std::size_t count) {
    std::vector<Vec> m(count, Vec(count));
    for (std::size_t t = 0; t < count; ++t) {
        std::vector<Rational> unit(count, Rational(0));
        unit[t] = 1;
        const UPoly p = upoly::interpolate(unit);
        for (std::size_t j = 0; j < p.size(); ++j) m[j][t] = p[j];
    }
    return m;
}

}  // namespace

std::size_t HitchinPoint::dimension() const {
    std::size_t s = 0;
    for (const auto& v : coeffs) s += v.size();
    return s;
}

bool HitchinPoint::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Vec& v) { return hfb::is_zero(v); });
}

HitchinPoint hitchin_map(const lie::Algebra& g, const curve::MarkedCurve& c, const std::vector<Matrix>& residues) {
    if (residues.size() != c.n()) throw std::invalid_argument("one residue matrix per marked point is required");
    Matrix total(g.size(), g.size());
    for (const auto& a : residues) total += a;
    if (!total.is_zero()) throw std::invalid_argument("residues must sum to zero (theta must be holomorphic at infinity)");
    const auto gd = lie::group_data(g.id());
    const std::size_t n = c.n();
    const std::size_t samples = max_samples(gd.degrees, n);
    std::vector<Vec> values(gd.degrees.size());
    for (std::size_t t = 0; t < samples; ++t) {
        const auto w = weights(c, Rational(static_cast<long>(t)));
        Matrix m(g.size(), g.size());
        for (std::size_t i = 0; i < n; ++i) m += w[i] * residues[i];
        const Vec p = g.invariant_polynomials(m);
        for (std::size_t k = 0; k < p.size(); ++k) values[k].push_back(p[k]);
    }
    HitchinPoint h;
    h.degrees = gd.degrees;
    for (std::size_t k = 0; k < gd.degrees.size(); ++k) {
        const int d = gd.degrees[k];
        const std::size_t count = static_cast<std::size_t>(d * (static_cast<int>(n) - 1)) + 1;
        const UPoly q = upoly::interpolate(Vec(values[k].begin(), values[k].begin() + static_cast<long>(count)));
        const int top = top_degree(d, n);
        if (upoly::degree(q) > top) throw std::logic_error("invariant polynomial of theta is not holomorphic at infinity");
        Vec coeffs(static_cast<std::size_t>(std::max(top + 1, 0)));
        for (std::size_t j = 0; j < q.size() && j < coeffs.size(); ++j) coeffs[j] = q[j];
        h.coeffs.push_back(std::move(coeffs));
    }
    return h;
}

HitchinPoint hitchin_map(const defo::FramedHiggsModel& model) {
    model.validate();
    return hitchin_map(model.g, model.curve, model.residues);
}

Vec quadratic_residues(const HitchinPoint& h, const curve::MarkedCurve& c) {
    std::size_t k = 0;
    while (k < h.degrees.size() && h.degrees[k] != 2) ++k;
    if (k == h.degrees.size()) throw std::invalid_argument("no degree-2 invariant");
    const UPoly q = upoly::trim(h.coeffs[k]);
    Vec out;
    for (std::size_t i = 0; i < c.n(); ++i) {
        // Res_{x_i} Q / prod_j (z - x_j)^2 = (Q / R)'(x_i) with R = prod_{j != i} (z - x_j)^2
        UPoly r{1};
        for (std::size_t j = 0; j < c.n(); ++j)
            if (j != i) r = upoly::mul(r, upoly::mul(UPoly{-c.points[j], 1}, UPoly{-c.points[j], 1}));
        const Rational& x = c.points[i];
        const Rational rv = upoly::eval(r, x);
        out.push_back((upoly::eval(upoly::derivative(q), x) * rv - upoly::eval(q, x) * upoly::eval(upoly::derivative(r), x)) /
                      (rv * rv));
    }
    return out;
}

Rational PolyObservable::operator()(const std::vector<Matrix>& point) const { return poly.evaluate(flatten(point)); }

Vec flatten(const std::vector<Matrix>& point) {
    Vec v;
    for (const auto& m : point)
        for (std::size_t a = 0; a < m.rows(); ++a)
            for (std::size_t b = 0; b < m.cols(); ++b) v.push_back(m(a, b));
    return v;
}

namespace {

std::vector<std::vector<Poly>> symbolic_site(std::size_t size, std::size_t site) {
    std::vector<std::vector<Poly>> x(size, std::vector<Poly>(size));
    for (std::size_t a = 0; a < size; ++a)
        for (std::size_t b = 0; b < size; ++b) x[a][b] = Poly::variable((site * size + a) * size + b);
    return x;
}

Poly symbolic_form(const lie::Algebra& g, const std::vector<std::vector<Poly>>& x, const std::vector<std::vector<Poly>>& y) {
    const std::size_t r = x.size();
    Poly tr_xy, tr_x, tr_y;
    for (std::size_t a = 0; a < r; ++a) {
        tr_x += x[a][a];
        tr_y += y[a][a];
        for (std::size_t b = 0; b < r; ++b) tr_xy += x[a][b] * y[b][a];
    }
    if (sgn(g.kappa()) != 0) tr_xy += g.kappa() * (tr_x * tr_y);
    return tr_xy;
}

}  // namespace

std::vector<PolyObservable> hitchin_observables(const lie::Algebra& g, const curve::MarkedCurve& c) {
    const auto gd = lie::group_data(g.id());
    const std::size_t n = c.n(), r = g.size();
    const std::size_t samples = max_samples(gd.degrees, n);
    std::vector<std::vector<Poly>> values(gd.degrees.size());
    std::vector<std::vector<std::vector<Poly>>> sites;
    for (std::size_t i = 0; i < n; ++i) sites.push_back(symbolic_site(r, i));
    for (std::size_t t = 0; t < samples; ++t) {
        const auto w = weights(c, Rational(static_cast<long>(t)));
        std::vector<std::vector<Poly>> m(r, std::vector<Poly>(r));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t a = 0; a < r; ++a)
                for (std::size_t b = 0; b < r; ++b) m[a][b] += w[i] * sites[i][a][b];
        const auto p = lie::invariant_polynomials_of<Poly>(g.id(), m);
        for (std::size_t k = 0; k < p.size(); ++k) values[k].push_back(p[k]);
    }
    std::vector<PolyObservable> out;
    for (std::size_t k = 0; k < gd.degrees.size(); ++k) {
        const int d = gd.degrees[k];
        const int top = top_degree(d, n);
        if (top < 0) continue;
        const std::size_t count = static_cast<std::size_t>(d * (static_cast<int>(n) - 1)) + 1;
        const auto interp = interpolation_matrix(count);
        for (int j = 0; j <= top; ++j) {
            PolyObservable o{n, r, Poly(), "Q" + std::to_string(k + 1) + "[" + std::to_string(j) + "]"};
            for (std::size_t t = 0; t < count; ++t)
                if (sgn(interp[static_cast<std::size_t>(j)][t]) != 0) o.poly += interp[static_cast<std::size_t>(j)][t] * values[k][t];
            out.push_back(std::move(o));
        }
    }
    return out;
}

PolyObservable pairing_observable(const lie::Algebra& g, std::size_t sites, std::size_t site, const Matrix& x) {
    const std::size_t r = g.size();
    std::vector<std::vector<Poly>> xm(r, std::vector<Poly>(r));
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) xm[a][b] = Poly(x(a, b));
    return {sites, r, symbolic_form(g, xm, symbolic_site(r, site)), "sigma(x, A" + std::to_string(site + 1) + ")"};
}

PolyObservable casimir(const lie::Algebra& g, std::size_t sites, std::size_t site, std::size_t k) {
    const auto p = lie::invariant_polynomials_of<Poly>(g.id(), symbolic_site(g.size(), site));
    if (k >= p.size()) throw std::invalid_argument("casimir: invariant index out of range");
    return {sites, g.size(), p[k], "p" + std::to_string(k + 1) + "(A" + std::to_string(site + 1) + ")"};
}

LiePoisson::LiePoisson(const lie::Algebra& g, std::size_t sites) : g_(g), sites_(sites) {}

Matrix LiePoisson::gradient(const PolyObservable& f, std::size_t site, const std::vector<Matrix>& point) const {
    const Vec x = flatten(point);
    const std::size_t r = g_.size();
    Matrix df(r, r);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) df(a, b) = f.poly.derivative(f.var(site, a, b)).evaluate(x);
    Vec v(g_.dim());
    for (std::size_t j = 0; j < g_.dim(); ++j) {
        const Matrix& bj = g_.basis()[j];
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b) v[j] += df(a, b) * bj(a, b);
    }
    return g_.element(g_.gram_inverse() * v);
}

Rational LiePoisson::bracket(const PolyObservable& f, const PolyObservable& h, const std::vector<Matrix>& point) const {
    if (point.size() != sites_) throw std::invalid_argument("bracket: point has the wrong number of sites");
    Rational s = 0;
    for (std::size_t i = 0; i < sites_; ++i)
        s += g_.form(point[i], commutator(gradient(f, i, point), gradient(h, i, point)));
    return s;
}

std::vector<std::vector<Poly>> LiePoisson::symbolic_gradient(const PolyObservable& f, std::size_t site) const {
    const std::size_t r = g_.size();
    std::vector<Poly> v(g_.dim());
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) {
            const Poly d = f.poly.derivative(f.var(site, a, b));
            if (d.is_zero()) continue;
            for (std::size_t j = 0; j < g_.dim(); ++j)
                if (sgn(g_.basis()[j](a, b)) != 0) v[j] += g_.basis()[j](a, b) * d;
        }
    std::vector<std::vector<Poly>> grad(r, std::vector<Poly>(r));
    for (std::size_t j = 0; j < g_.dim(); ++j) {
        Poly cj;
        for (std::size_t l = 0; l < g_.dim(); ++l)
            if (sgn(g_.gram_inverse()(j, l)) != 0) cj += g_.gram_inverse()(j, l) * v[l];
        if (cj.is_zero()) continue;
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b)
                if (sgn(g_.basis()[j](a, b)) != 0) grad[a][b] += g_.basis()[j](a, b) * cj;
    }
    return grad;
}

PolyObservable LiePoisson::bracket(const PolyObservable& f, const PolyObservable& h) const {
    const std::size_t r = g_.size();
    PolyObservable out{sites_, r, Poly(), "{" + f.label + ", " + h.label + "}"};
    for (std::size_t i = 0; i < sites_; ++i) {
        const auto gf = symbolic_gradient(f, i), gh = symbolic_gradient(h, i);
        std::vector<std::vector<Poly>> c(r, std::vector<Poly>(r));
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b)
                for (std::size_t l = 0; l < r; ++l) c[a][b] += gf[a][l] * gh[l][b] - gh[a][l] * gf[l][b];
        out.poly += symbolic_form(g_, symbolic_site(r, i), c);
    }
    return out;
}

CommutativityReport commutativity_check(const defo::FramedHiggsModel& model, std::size_t random_points,
                                        std::uint64_t seed) {
    model.validate();
    const auto obs = hitchin_observables(model.g, model.curve);
    const LiePoisson lp(model.g, model.curve.n());
    std::vector<std::vector<Matrix>> points{model.residues};
    std::vector<std::vector<Matrix>> perps;
    for (const auto& f : model.framings) perps.push_back(f.perp);
    RationalRng rng(seed);
    for (std::size_t t = 0; t < random_points; ++t) points.push_back(random_residues(model.g, perps, rng));
    const Matrix probe = rng.element(model.g);

    CommutativityReport rep;
    rep.functions = obs.size();
    rep.points = points.size();
    for (const auto& o : obs) rep.labels.push_back(o.label);
    for (std::size_t a = 0; a < obs.size(); ++a)
        for (std::size_t b = a + 1; b < obs.size(); ++b) rep.table.push_back({a, b, 0});

    const PolyObservable control = pairing_observable(model.g, model.curve.n(), 0, probe);
    for (const auto& pt : points) {
        std::vector<std::vector<Matrix>> grads(obs.size());
        for (std::size_t k = 0; k < obs.size(); ++k)
            for (std::size_t i = 0; i < pt.size(); ++i) grads[k].push_back(lp.gradient(obs[k], i, pt));
        for (auto& e : rep.table) {
            Rational s = 0;
            for (std::size_t i = 0; i < pt.size(); ++i) s += model.g.form(pt[i], commutator(grads[e.a][i], grads[e.b][i]));
            e.max_abs = std::max(e.max_abs, Rational(abs(s)));
            rep.max_abs = std::max(rep.max_abs, e.max_abs);
        }
        for (const auto& o : obs) rep.negative_control = std::max(rep.negative_control, Rational(abs(lp.bracket(o, control, pt))));
    }
    return rep;
}

namespace {

struct DoubleField {
    std::size_t sites, r, dim;
    std::vector<std::vector<double>> basis;  // flattened basis matrices
    std::vector<double> gram_inv;            // dim x dim
    std::vector<Poly> partials;              // per variable

    // dA_i = [A_i, grad_i H]
    std::vector<double> operator()(const std::vector<double>& x) const {
        std::vector<double> out(x.size(), 0.0);
        std::vector<double> df(r * r), v(dim), grad(r * r);
        for (std::size_t i = 0; i < sites; ++i) {
            const std::size_t off = i * r * r;
            for (std::size_t k = 0; k < r * r; ++k) df[k] = partials[off + k].is_zero() ? 0.0 : partials[off + k].evaluate(x);
            for (std::size_t j = 0; j < dim; ++j) {
                v[j] = 0;
                for (std::size_t k = 0; k < r * r; ++k) v[j] += df[k] * basis[j][k];
            }
            std::fill(grad.begin(), grad.end(), 0.0);
            for (std::size_t j = 0; j < dim; ++j) {
                double c = 0;
                for (std::size_t l = 0; l < dim; ++l) c += gram_inv[j * dim + l] * v[l];
                for (std::size_t k = 0; k < r * r; ++k) grad[k] += c * basis[j][k];
            }
            for (std::size_t a = 0; a < r; ++a)
                for (std::size_t b = 0; b < r; ++b) {
                    double s = 0;
                    for (std::size_t l = 0; l < r; ++l) s += x[off + a * r + l] * grad[l * r + b] - grad[a * r + l] * x[off + l * r + b];
                    out[off + a * r + b] = s;
                }
        }
        return out;
    }
};

std::vector<double> axpy(const std::vector<double>& x, double h, const std::vector<double>& k) {
    std::vector<double> y = x;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += h * k[i];
    return y;
}

}  // namespace

FlowResult hamiltonian_flow(const lie::Algebra& g, const curve::MarkedCurve& c, const std::vector<Matrix>& start,
                            const PolyObservable& h, const FlowOptions& opt) {
    if (start.size() != c.n()) throw std::invalid_argument("flow: one residue matrix per marked point is required");
    if (opt.steps == 0 && opt.t_end != 0) throw std::invalid_argument("flow: steps must be positive");
    if (!(opt.tolerance > 0)) throw std::invalid_argument("flow: tolerance must be positive");
    for (const auto& a : start)
        if (!g.contains(a)) throw std::invalid_argument("flow: starting residue outside the algebra");

    const std::size_t r = g.size();
    DoubleField field{c.n(), r, g.dim(), {}, std::vector<double>(g.dim() * g.dim()), {}};
    for (const auto& b : g.basis()) {
        std::vector<double> fb;
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t k = 0; k < r; ++k) fb.push_back(b(a, k).get_d());
        field.basis.push_back(std::move(fb));
    }
    for (std::size_t j = 0; j < g.dim(); ++j)
        for (std::size_t l = 0; l < g.dim(); ++l) field.gram_inv[j * g.dim() + l] = g.gram_inverse()(j, l).get_d();
    for (std::size_t v = 0; v < c.n() * r * r; ++v) field.partials.push_back(h.poly.derivative(v));

    const auto obs = hitchin_observables(g, c);
    FlowResult res;
    for (const auto& o : obs) res.labels.push_back(o.label);
    std::vector<double> x;
    for (const auto& q : flatten(start)) x.push_back(q.get_d());
    for (const auto& o : obs) res.initial.push_back(o(x));
    res.drift.assign(obs.size(), 0.0);
    res.times.push_back(0.0);
    res.trajectory.push_back(x);

    const std::size_t steps = opt.t_end == 0 ? 0 : opt.steps;
    const double dt = steps ? opt.t_end / static_cast<double>(steps) : 0.0;
    for (std::size_t s = 1; s <= steps; ++s) {
        const auto k1 = field(x);
        const auto k2 = field(axpy(x, dt / 2, k1));
        const auto k3 = field(axpy(x, dt / 2, k2));
        const auto k4 = field(axpy(x, dt, k3));
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        for (std::size_t k = 0; k < obs.size(); ++k) {
            const double d = std::abs(obs[k](x) - res.initial[k]) / std::max(std::abs(res.initial[k]), drift_floor);
            res.drift[k] = std::max(res.drift[k], d);
        }
        if ((opt.record_every && s % opt.record_every == 0) || s == steps) {
            res.times.push_back(dt * static_cast<double>(s));
            res.trajectory.push_back(x);
        }
    }
    for (double d : res.drift) res.max_drift = std::max(res.max_drift, d);
    res.accepted = res.max_drift < opt.tolerance;
    return res;
}

}  // namespace hfb::gaudin
