#include "hfb/deformation.hpp"

#include <map>
#include <stdexcept>
#include <tuple>

namespace hfb::defo {

using curve::Presentation;
using curve::ScalarFn;
using curve::Series;
using curve::SheafSpec;

namespace {

Matrix coords_of(const lie::Algebra& g, const std::vector<Matrix>& xs) {
    std::vector<Vec> cols;
    for (const auto& x : xs) cols.push_back(g.coords(x));
    return Matrix::from_columns(cols, g.dim());
}

bool in_span(const Matrix& span, const Vec& v) {
    Matrix col(v.size(), 1);
    col.set_column(0, v);
    return rank(hstack(span, col)) == rank(span);
}

Vec segment(const Vec& v, std::size_t from, std::size_t len) {
    return Vec(v.begin() + static_cast<std::ptrdiff_t>(from), v.begin() + static_cast<std::ptrdiff_t>(from + len));
}

// Laurent series of theta * b at one point, for levels up to hi.
Series times_theta(const std::vector<Matrix>& theta, int theta_lo, const Series& b, int hi) {
    Series out;
    out.m = b.m;
    out.lo = b.lo + theta_lo;
    if (hi < out.lo) return out;
    out.c.assign(static_cast<std::size_t>(hi - out.lo + 1), Vec(b.m));
    for (std::size_t i = 0; i < b.c.size(); ++i) {
        if (is_zero(b.c[i])) continue;
        for (std::size_t k = 0; k < theta.size(); ++k) {
            const int e = b.lo + static_cast<int>(i) + theta_lo + static_cast<int>(k);
            if (e > hi) break;
            auto& slot = out.c[static_cast<std::size_t>(e - out.lo)];
            slot = slot + theta[k] * b.c[i];
        }
    }
    return out;
}

int residue_target(bool at_inf) { return at_inf ? 1 : -1; }

}  // namespace

void FramedHiggsModel::validate() const {
    const std::size_t n = curve.n();
    if (curve.genus != 0) throw std::invalid_argument("explicit framed Higgs models live on the rational curve (genus 0)");
    if (framings.size() != n) throw std::invalid_argument("one framing per marked point is required");
    if (residues.size() != n) throw std::invalid_argument("one residue matrix per marked point is required");
    Matrix total(g.size(), g.size());
    for (std::size_t i = 0; i < n; ++i) {
        const Matrix& a = residues[i];
        if (a.rows() != g.size() || a.cols() != g.size())
            throw std::invalid_argument("residue " + std::to_string(i + 1) + " has the wrong shape");
        if (!g.contains(a))
            throw std::invalid_argument("residue " + std::to_string(i + 1) + " is not in " + g.id().name());
        if (!in_span(coords_of(g, framings[i].perp), g.coords(a)))
            throw std::invalid_argument("residue " + std::to_string(i + 1) +
                                        " is not in the annihilator of the framing subalgebra at that point");
        total += a;
    }
    if (!total.is_zero())
        throw std::invalid_argument("residues must sum to zero (theta must be holomorphic at infinity)");
}

FramedHiggsModel make_model(const lie::Algebra& g, const curve::MarkedCurve& c, std::vector<lie::Framing> framings,
                            std::vector<Matrix> residues) {
    FramedHiggsModel m{g, c, std::move(framings), std::move(residues)};
    m.validate();
    return m;
}

std::pair<SheafSpec, SheafSpec> twisted_specs(const FramedHiggsModel& model) {
    const std::size_t m = model.g.dim(), n = model.curve.n();
    return {SheafSpec::uniform(m, n, 0, 0), SheafSpec::uniform(m, n, 1, -2)};
}

std::pair<SheafSpec, SheafSpec> framed_specs(const FramedHiggsModel& model) {
    auto [f0, f1] = twisted_specs(model);
    for (std::size_t p = 0; p < model.curve.n(); ++p) {
        f0.value_space[p] = coords_of(model.g, model.framings[p].h);
        f1.value_space[p] = coords_of(model.g, model.framings[p].perp);
    }
    return {f0, f1};
}

std::pair<SheafSpec, SheafSpec> twisted_dual_specs(const FramedHiggsModel& model) {
    const std::size_t m = model.g.dim(), n = model.curve.n();
    return {SheafSpec::uniform(m, n, -1, 0), SheafSpec::uniform(m, n, 0, -2)};
}

std::size_t subsheaf_mapping_failures(const FramedHiggsModel& model) {
    std::size_t failures = 0;
    for (std::size_t p = 0; p < model.curve.n(); ++p) {
        const Matrix perp = coords_of(model.g, model.framings[p].perp);
        for (const auto& h : model.framings[p].h)
            if (!in_span(perp, model.g.coords(commutator(model.residues[p], h)))) ++failures;
    }
    return failures;
}

ComplexModel::ComplexModel(std::shared_ptr<const FramedHiggsModel> model, std::string name, const SheafSpec& f0,
                           const SheafSpec& f1, int bound)
    : model_(std::move(model)), name_(std::move(name)), pres0_(model_->curve, f0, bound), pres1_(model_->curve, f1, bound) {
    const auto& c = model_->curve;
    const std::size_t n = c.n();
    const std::size_t m = model_->g.dim();
    if (f0.fiber_dim != m || f1.fiber_dim != m) throw std::invalid_argument("complex terms must have the adjoint fibre");
    for (std::size_t p = 0; p < n; ++p)
        if (f1.order[p] < f0.order[p] + 1)
            throw std::invalid_argument("complex " + name_ + ": pole order of F1 must exceed that of F0 at D");
    if (f1.order_inf < f0.order_inf - theta_lo(n))
        throw std::invalid_argument("complex " + name_ + ": growth of F1 at infinity too small for theta");

    std::vector<Matrix> ad_res;
    for (const auto& a : model_->residues) ad_res.push_back(model_->g.ad(a));

    // Global part: theta times each elementary section, regrouped by partial fractions.
    const auto& s0 = pres0_.scalars();
    f_global_ = Matrix(pres1_.global_dim(), pres0_.global_dim());
    for (std::size_t s = 0; s < s0.size(); ++s) {
        std::map<std::tuple<bool, std::size_t, int>, Matrix> acc;
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& [fn, coef] : curve::divide_by_simple_pole(c, s0[s], i)) {
                auto key = std::make_tuple(fn.pole, fn.pole ? fn.point : 0, fn.power);
                auto it = acc.find(key);
                if (it == acc.end()) it = acc.emplace(key, Matrix(m, m)).first;
                it->second += coef * ad_res[i];
            }
        for (const auto& [key, block] : acc) {
            const ScalarFn fn{std::get<0>(key), std::get<1>(key), std::get<2>(key)};
            const std::size_t idx = pres1_.scalar_index(fn);
            if (idx == static_cast<std::size_t>(-1)) {
                if (!block.is_zero()) throw std::logic_error("complex " + name_ + ": theta maps outside the F1 presentation");
                continue;
            }
            f_global_.set_block(idx * m, s * m, f_global_.block(idx * m, s * m, m, m) + block);
        }
    }

    // Tail part: multiply each tail basis vector by the expansion of theta and truncate.
    f_tail_ = Matrix(pres1_.tail_dim(), pres0_.tail_dim());
    for (std::size_t p = 0; p <= n; ++p) {
        const int lo0 = pres0_.window_lo(p), hi0 = pres0_.window_hi(p);
        const int lo1 = pres1_.window_lo(p), hi1 = pres1_.window_hi(p);
        const auto theta = theta_ad(p, hi1 - lo0);
        for (int e0 = lo0; e0 <= hi0; ++e0)
            for (std::size_t k = 0; k < theta.size(); ++k) {
                const int e = e0 + theta_lo(p) + static_cast<int>(k);
                if (e > hi1) break;
                if (theta[k].is_zero()) continue;
                if (e < lo1) throw std::logic_error("complex " + name_ + ": tail product below the F1 window");
                for (std::size_t a = 0; a < m; ++a)
                    for (std::size_t b = 0; b < m; ++b)
                        if (sgn(theta[k](b, a)) != 0) f_tail_(pres1_.tail_index(p, e, b), pres0_.tail_index(p, e0, a)) += theta[k](b, a);
            }
    }
    f_quot_ = pres1_.projection() * f_tail_ * pres0_.lift();

    const std::size_t q0 = pres0_.quotient_dim(), g1 = pres1_.global_dim();
    d0_ = vstack(pres0_.epsilon(), f_global_);
    d1_ = hstack(f_quot_, -pres1_.epsilon());
    if (!(d1_ * d0_).is_zero()) throw std::logic_error("complex " + name_ + ": total differential does not square to zero");

    const std::size_t r0 = rank(d0_), r1 = rank(d1_);
    h0_ = d0_.cols() - r0;
    h2_ = d1_.rows() - r1;

    std::vector<Vec> cands;
    const Matrix k1 = nullspace(pres1_.epsilon());
    for (std::size_t j = 0; j < k1.cols(); ++j) {
        Vec v(q0 + g1);
        const Vec col = k1.column(j);
        for (std::size_t i = 0; i < g1; ++i) v[q0 + i] = col[i];
        cands.push_back(std::move(v));
    }
    const Matrix kq = nullspace(f_quot_);
    for (std::size_t j = 0; j < kq.cols(); ++j) {
        Vec v(q0 + g1);
        const Vec col = kq.column(j);
        for (std::size_t i = 0; i < q0; ++i) v[i] = col[i];
        cands.push_back(std::move(v));
    }
    const Matrix z = nullspace(d1_);
    for (std::size_t j = 0; j < z.cols(); ++j) cands.push_back(z.column(j));
    const Matrix cand = Matrix::from_columns(cands, q0 + g1);
    std::vector<Vec> picked;
    for (auto j : extend_basis(d0_, cand)) picked.push_back(cand.column(j));
    basis_ = Matrix::from_columns(picked, q0 + g1);
    if (basis_.cols() != z.cols() - r0) throw std::logic_error("complex " + name_ + ": H^1 basis has the wrong size");
}

long ComplexModel::euler_expected() const {
    return pres0_.spec().euler_characteristic() - pres1_.spec().euler_characteristic();
}

bool ComplexModel::is_cocycle(const Vec& z) const { return is_zero(d1_ * z); }

Matrix ComplexModel::classes_of(const Matrix& cocycles) const {
    if (!(d1_ * cocycles).is_zero()) throw std::invalid_argument("classes_of: input is not a cocycle");
    const auto x = solve(hstack(basis_, d0_), cocycles);
    if (!x) throw std::logic_error("complex " + name_ + ": cocycle outside span of basis and coboundaries");
    return x->block(0, 0, basis_.cols(), cocycles.cols());
}

std::vector<Matrix> ComplexModel::theta_ad(std::size_t p, int hi) const {
    const auto& c = model_->curve;
    const std::size_t m = model_->g.dim();
    const int lo = theta_lo(p);
    std::vector<Matrix> out;
    if (hi < lo) return out;
    out.assign(static_cast<std::size_t>(hi - lo + 1), Matrix(m, m));
    std::vector<Matrix> ad_res;
    for (const auto& a : model_->residues) ad_res.push_back(model_->g.ad(a));
    for (std::size_t i = 0; i < c.n(); ++i) {
        const auto ser = curve::expand(c, ScalarFn{true, i, 1}, p, hi);
        for (int e = ser.lo; e <= hi; ++e) {
            const Rational coef = ser.at(e);
            if (sgn(coef) == 0) continue;
            if (e < lo) {
                // only the w^1 term at infinity, which cancels since the residues sum to zero
                continue;
            }
            out[static_cast<std::size_t>(e - lo)] += coef * ad_res[i];
        }
    }
    return out;
}

Complexes build_complexes(const FramedHiggsModel& model) {
    model.validate();
    auto shared = std::make_shared<const FramedHiggsModel>(model);
    const auto tw = twisted_specs(model);
    const auto fr = framed_specs(model);
    const auto du = twisted_dual_specs(model);
    const int bound = curve::default_bound({tw.first, tw.second, fr.first, fr.second, du.first, du.second});
    return Complexes{shared, bound, ComplexModel(shared, "twisted", tw.first, tw.second, bound),
                     ComplexModel(shared, "framed", fr.first, fr.second, bound),
                     ComplexModel(shared, "twisted_dual", du.first, du.second, bound)};
}

namespace {

Matrix tail_inclusion(const Presentation& from, const Presentation& to) {
    const auto& c = from.curve();
    const std::size_t m = from.m();
    Matrix r(to.tail_dim(), from.tail_dim());
    for (std::size_t p = 0; p <= c.n(); ++p) {
        const int fo = from.spec().order_at(p), to_o = to.spec().order_at(p);
        if (fo > to_o) throw std::invalid_argument("inclusion of complexes: pole orders must not decrease");
        if (fo == to_o && rank(hstack(to.spec().space_at(p), from.spec().space_at(p))) != rank(to.spec().space_at(p)))
            throw std::invalid_argument("inclusion of complexes: value spaces must be nested");
        for (int e = from.window_lo(p); e <= std::min(from.window_hi(p), to.window_hi(p)); ++e)
            for (std::size_t a = 0; a < m; ++a) r(to.tail_index(p, e, a), from.tail_index(p, e, a)) = 1;
    }
    return r;
}

Matrix global_inclusion(const Presentation& from, const Presentation& to) {
    const std::size_t m = from.m();
    Matrix r(to.global_dim(), from.global_dim());
    for (std::size_t s = 0; s < from.scalars().size(); ++s) {
        const std::size_t idx = to.scalar_index(from.scalars()[s]);
        if (idx == static_cast<std::size_t>(-1)) throw std::invalid_argument("inclusion of complexes: global sections do not embed");
        for (std::size_t a = 0; a < m; ++a) r(idx * m + a, s * m + a) = 1;
    }
    return r;
}

}  // namespace

Matrix inclusion_cochain_map(const ComplexModel& from, const ComplexModel& to) {
    if (&from.model() != &to.model()) throw std::invalid_argument("inclusion of complexes: different Higgs models");
    if (from.pres0().bound() != to.pres0().bound()) throw std::invalid_argument("inclusion of complexes: truncation bounds differ");
    const Matrix q = to.pres0().projection() * tail_inclusion(from.pres0(), to.pres0()) * from.pres0().lift();
    const Matrix g = global_inclusion(from.pres1(), to.pres1());
    tail_inclusion(from.pres1(), to.pres1());  // order checks on the second terms
    Matrix map(to.tot1_dim(), from.tot1_dim());
    map.set_block(0, 0, q);
    map.set_block(q.rows(), q.cols(), g);
    return map;
}

Matrix induced_map(const ComplexModel& from, const ComplexModel& to) {
    return to.classes_of(inclusion_cochain_map(from, to) * from.h1_basis());
}

namespace {

// Local data of one Tot^1 cocycle: lifted F0 tails, and expansions of the global F1 part.
struct Local {
    std::vector<Series> b;
    std::vector<Series> c;
    std::vector<Series> theta_b;
};

Local local_data(const ComplexModel& x, const Vec& z, const ComplexModel& other) {
    const auto& cv = x.model().curve;
    const std::size_t q0 = x.pres0().quotient_dim();
    const Vec tail = x.pres0().lift() * segment(z, 0, q0);
    const Vec glob = segment(z, q0, x.pres1().global_dim());
    const auto section = x.pres1().section(glob);
    Local l;
    for (std::size_t p = 0; p <= cv.n(); ++p) {
        const int hi = residue_target(p == cv.infinity()) - other.pres0().window_lo(p);
        l.b.push_back(x.pres0().tail_series(tail, p));
        l.c.push_back(section.expand(cv, p, hi));
        const int need = hi - l.b.back().lo - x.theta_lo(p);
        l.theta_b.push_back(times_theta(x.theta_ad(p, x.theta_lo(p) + need), x.theta_lo(p), l.b.back(), hi));
    }
    return l;
}

Rational pair_local(const lie::Algebra& g, std::size_t points, const Local& a, const Local& b) {
    Rational total = 0;
    for (std::size_t p = 0; p <= points; ++p) {
        const bool inf = p == points;
        total += curve::pair_residue(b.b[p], a.c[p], g.gram(), inf);
        total -= curve::pair_residue(a.b[p], b.c[p], g.gram(), inf);
        total += curve::pair_residue(a.b[p], b.theta_b[p], g.gram(), inf);
    }
    return total;
}

}  // namespace

Rational pair_cocycles(const ComplexModel& x, const Vec& a, const ComplexModel& y, const Vec& b) {
    if (&x.model() != &y.model()) throw std::invalid_argument("pairing: different Higgs models");
    return pair_local(x.model().g, x.model().curve.n(), local_data(x, a, y), local_data(y, b, x));
}

Matrix pairing_matrix(const ComplexModel& x, const ComplexModel& y) {
    if (&x.model() != &y.model()) throw std::invalid_argument("pairing: different Higgs models");
    std::vector<Local> la, lb;
    for (std::size_t i = 0; i < x.h1(); ++i) la.push_back(local_data(x, x.h1_basis().column(i), y));
    for (std::size_t j = 0; j < y.h1(); ++j) lb.push_back(local_data(y, y.h1_basis().column(j), x));
    Matrix s(x.h1(), y.h1());
    for (std::size_t i = 0; i < x.h1(); ++i)
        for (std::size_t j = 0; j < y.h1(); ++j) s(i, j) = pair_local(x.model().g, x.model().curve.n(), la[i], lb[j]);
    return s;
}

HypercohResult hypercoh(const ComplexModel& c) {
    HypercohResult r;
    r.complex = c.name();
    r.h0 = c.h0();
    r.h1 = c.h1();
    r.h2 = c.h2();
    r.euler_expected = c.euler_expected();
    r.euler_ok = static_cast<long>(r.h0) - static_cast<long>(r.h1) + static_cast<long>(r.h2) == r.euler_expected;
    r.basis = c.h1_basis();
    return r;
}

Matrix symplectic_matrix(const ComplexModel& framed) {
    const Matrix phi = pairing_matrix(framed, framed);
    if (framed.h1() == 0 || framed.d0().cols() == 0) return phi;
    // a fixed coboundary must not change any pairing
    Vec a(framed.d0().cols());
    for (std::size_t k = 0; k < a.size(); ++k) {
        a[k] = Rational(static_cast<long>(k % 5) - 2, static_cast<unsigned long>(k % 3 + 1));
        a[k].canonicalize();
    }
    const Vec delta = framed.d0() * a;
    const Vec shifted = framed.h1_basis().column(0) + delta;
    for (std::size_t j = 0; j < framed.h1(); ++j) {
        if (pair_cocycles(framed, shifted, framed, framed.h1_basis().column(j)) != phi(0, j) ||
            pair_cocycles(framed, framed.h1_basis().column(j), framed, shifted) != phi(j, 0))
            throw std::logic_error("symplectic pairing depends on the cocycle representative");
    }
    return phi;
}

Matrix poisson_matrix(const Complexes& cx) { return induced_map(cx.twisted_dual, cx.twisted); }

PoissonIdentityResult verify_poisson_identity(const Complexes& cx) {
    PoissonIdentityResult r;
    r.phi = symplectic_matrix(cx.framed);
    r.phi_rank = rank(r.phi);
    r.phi_skew = (r.phi + r.phi.transpose()).is_zero();
    r.d_phi = induced_map(cx.framed, cx.twisted);
    r.e = induced_map(cx.twisted_dual, cx.framed);
    r.p = poisson_matrix(cx);
    r.serre = pairing_matrix(cx.twisted, cx.twisted_dual);
    const Matrix dual_map = r.d_phi.transpose() * r.serre;
    r.compatibility = dual_map - r.phi * r.e;
    const auto inv = inverse(r.phi);
    r.phi_invertible = inv.has_value();
    if (!inv) {
        r.degenerate_directions = nullspace(r.phi);
        return r;
    }
    r.residual = r.d_phi * *inv * dual_map - r.p;
    r.corrupted_residual = r.d_phi * *inv * (-dual_map) - r.p;
    return r;
}

PoissonIdentityResult verify_poisson_identity(const FramedHiggsModel& model) { return verify_poisson_identity(build_complexes(model)); }

}  // namespace hfb::defo
