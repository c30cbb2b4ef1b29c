#include "hfb/spectral.hpp"

#include "hfb/dims.hpp"

#include <algorithm>
#include <stdexcept>

namespace hfb::spectral {

using upoly::UPoly;

namespace {

std::vector<std::vector<Rational>> rows_of(const Matrix& m) {
    std::vector<std::vector<Rational>> r(m.rows(), std::vector<Rational>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = m(i, j);
    return r;
}

// Number of sign changes of the Sturm chain at x.
int variations(const std::vector<UPoly>& chain, const Rational& x) {
    int v = 0, last = 0;
    for (const auto& p : chain) {
        const int s = sgn(upoly::eval(p, x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

std::vector<UPoly> sturm_chain(const UPoly& p) {
    std::vector<UPoly> chain{upoly::trim(p), upoly::derivative(p)};
    while (!chain.back().empty()) {
        UPoly r = upoly::divmod(chain[chain.size() - 2], chain.back()).second;
        if (r.empty()) break;
        chain.push_back(upoly::scale(r, -1));
    }
    return chain;
}

Rational floor_q(const Rational& x) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return Rational(f);
}

Rational ceil_q(const Rational& x) {
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return Rational(c);
}

// Rational of least denominator in [a, b].
Rational simplest_between(const Rational& a, const Rational& b) {
    if (sgn(a) <= 0 && sgn(b) >= 0) return 0;
    if (sgn(b) < 0) return -simplest_between(-b, -a);
    const Rational c = ceil_q(a);
    if (c <= b) return c;
    const Rational f = floor_q(a);
    Rational r = f + Rational(1) / simplest_between(Rational(1) / (b - f), Rational(1) / (a - f));
    r.canonicalize();
    return r;
}

// Primitive integer multiple of p.
std::vector<mpz_class> primitive(const UPoly& p) {
    mpz_class l = 1;
    for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    std::vector<mpz_class> v;
    mpz_class g = 0;
    for (const auto& c : p) {
        v.push_back(c.get_num() * (l / c.get_den()));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.back().get_mpz_t());
    }
    for (auto& c : v) c /= g;
    return v;
}

// Sign of p at a dyadic rational x = a / 2^k, in integer arithmetic.
int dyadic_sign(const std::vector<mpz_class>& p, const Rational& x) {
    const std::size_t k = mpz_sizeinbase(x.get_den_mpz_t(), 2) - 1;
    const mpz_class& a = x.get_num();
    mpz_class s = p.back(), scale = 1;
    for (std::size_t i = p.size() - 1; i-- > 0;) {
        scale <<= k;
        s = s * a + p[i] * scale;
    }
    return sgn(s);
}

}  // namespace

upoly::UPoly discriminant(const std::vector<UPoly>& b) {
    using namespace upoly;
    if (b.size() == 2) return sub(mul(b[0], b[0]), scale(b[1], 4));
    if (b.size() == 3) {
        // mu^3 + p mu^2 + q mu + s with p = -b1, q = b2, s = -b3:
        // p^2 q^2 - 4 q^3 - 4 p^3 s - 27 s^2 + 18 p q s
        const UPoly p = scale(b[0], -1), q = b[1], s = scale(b[2], -1);
        const UPoly pq = mul(p, q);
        UPoly d = mul(pq, pq);
        d = sub(d, scale(mul(q, mul(q, q)), 4));
        d = sub(d, scale(mul(mul(p, mul(p, p)), s), 4));
        d = sub(d, scale(mul(s, s), 27));
        d = add(d, scale(mul(pq, s), 18));
        return d;
    }
    throw std::invalid_argument("discriminant implemented for rank 2 and 3 only");
}

std::vector<UPoly> squarefree_decomposition(const UPoly& p0) {
    using namespace upoly;
    const UPoly p = monic(p0);
    if (degree(p) <= 0) return {};
    std::vector<UPoly> out;
    UPoly a = gcd(p, derivative(p));
    UPoly b = divmod(p, a).first;
    UPoly c = divmod(derivative(p), a).first;
    UPoly d = sub(c, derivative(b));
    while (degree(b) > 0) {
        const UPoly f = gcd(b, d);
        out.push_back(f);
        b = divmod(b, f).first;
        c = divmod(d, f).first;
        d = sub(c, derivative(b));
    }
    while (!out.empty() && degree(out.back()) == 0) out.pop_back();
    return out;
}

std::vector<BranchPoint> isolate_real_roots(const UPoly& p0, const Rational& width) {
    const UPoly p = upoly::trim(p0);
    std::vector<BranchPoint> roots;
    if (upoly::degree(p) <= 0) return roots;
    if (sgn(width) <= 0) throw std::invalid_argument("isolation width must be positive");
    const auto chain = sturm_chain(p);
    Rational bound = 0;
    for (std::size_t k = 0; k + 1 < p.size(); ++k) bound = std::max(bound, Rational(abs(p[k] / p.back())));
    // integer bound keeps every bisection point dyadic
    bound = ceil_q(bound) + 1;

    // A rational root has denominator dividing L; two such rationals are >= 1/L^2 apart.
    const auto ip = primitive(p);
    const mpz_class lead = abs(ip.back());
    const Rational separation = Rational(1) / (2 * Rational(lead * lead));
    const Rational fine = std::min(width, separation);

    struct Interval {
        Rational lo, hi;
    };
    std::vector<Interval> todo{{-bound, bound}};
    while (!todo.empty()) {
        auto [lo, hi] = todo.back();
        todo.pop_back();
        const int count = variations(chain, lo) - variations(chain, hi);
        if (count == 0) continue;
        if (count > 1) {
            Rational mid = (lo + hi) / 2;
            mid.canonicalize();
            todo.push_back({mid, hi});
            todo.push_back({lo, mid});
            continue;
        }
        // one root in (lo, hi]
        BranchPoint bp;
        if (sgn(upoly::eval(p, hi)) == 0) {
            bp.exact = hi;
        } else {
            const int s_hi = dyadic_sign(ip, hi);
            while (hi - lo > fine) {
                Rational mid = (lo + hi) / 2;
                mid.canonicalize();
                const int s_mid = dyadic_sign(ip, mid);
                if (s_mid == 0) {
                    bp.exact = mid;
                    break;
                }
                // lo may itself be a root of p lying outside (lo, hi]; fall back to Sturm then
                const bool left = dyadic_sign(ip, lo) != 0 ? s_mid == s_hi
                                                           : variations(chain, lo) - variations(chain, mid) == 1;
                if (left)
                    hi = mid;
                else
                    lo = mid;
            }
            if (!bp.exact) {
                const Rational s = simplest_between(lo, hi);
                if (sgn(upoly::eval(p, s)) == 0) bp.exact = s;
            }
        }
        if (bp.exact) {
            bp.lo = bp.hi = *bp.exact;
        } else {
            bp.lo = lo;
            bp.hi = hi;
        }
        bp.approx = Rational((bp.lo + bp.hi) / 2).get_d();
        roots.push_back(bp);
    }
    std::sort(roots.begin(), roots.end(), [](const BranchPoint& a, const BranchPoint& b) { return a.lo < b.lo; });
    return roots;
}

SpectralCurveReport spectral_data(const defo::FramedHiggsModel& model, const SpectralOptions& opt) {
    model.validate();
    const auto id = model.g.id();
    if (id.family != lie::Family::GL && id.family != lie::Family::SL)
        throw std::invalid_argument("spectral data needs gl(r) or sl(r), got " + id.name());
    if (id.size != 2 && id.size != 3) throw std::invalid_argument("spectral data supports rank r in {2, 3}");
    if (model.curve.genus != 0) throw std::invalid_argument("spectral data needs a genus-0 model");

    const auto& c = model.curve;
    const std::size_t n = c.n();
    const int r = id.size;
    SpectralCurveReport s;
    s.group = id.name();
    s.rank = r;
    s.n = n;
    s.denominator = upoly::from_roots(c.points);

    // b_k = e_k(M) with M(t) = P(t) theta(t) = sum_i A_i prod_{j != i} (t - x_j)
    const std::size_t samples = static_cast<std::size_t>(r) * (n > 0 ? n - 1 : 0) + 1;
    std::vector<Vec> values(static_cast<std::size_t>(r));
    for (std::size_t t = 0; t < samples; ++t) {
        const Rational z(static_cast<long>(t));
        Matrix m(model.g.size(), model.g.size());
        for (std::size_t i = 0; i < n; ++i) {
            Rational w = 1;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) w *= z - c.points[j];
            m += w * model.residues[i];
        }
        const auto e = lie::elementary_symmetric(rows_of(m));
        for (int k = 0; k < r; ++k) values[static_cast<std::size_t>(k)].push_back(e[static_cast<std::size_t>(k)]);
    }
    for (int k = 0; k < r; ++k) {
        const auto& v = values[static_cast<std::size_t>(k)];
        const std::size_t count = static_cast<std::size_t>(k + 1) * (n > 0 ? n - 1 : 0) + 1;
        s.b.push_back(upoly::interpolate(Vec(v.begin(), v.begin() + static_cast<long>(count))));
    }

    s.disc = discriminant(s.b);
    s.disc_degree = upoly::degree(s.disc);
    s.branch_degree = r * (r - 1) * (static_cast<int>(n) - 2);
    for (const auto& x : c.points) s.disc_at_points.push_back(upoly::eval(s.disc, x));
    s.degenerate = s.disc.empty();
    s.unramified_over_d =
        !s.degenerate && std::all_of(s.disc_at_points.begin(), s.disc_at_points.end(), [](const Rational& v) { return sgn(v) != 0; });
    if (s.degenerate) return s;
    if (s.disc_degree > s.branch_degree)
        throw std::logic_error("discriminant degree exceeds the branch divisor degree");
    s.multiplicity_at_infinity = s.branch_degree - s.disc_degree;

    const auto parts = squarefree_decomposition(s.disc);
    int finite = 0;
    bool squarefree = true;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const int mult = static_cast<int>(i) + 1;
        const int deg = upoly::degree(parts[i]);
        if (deg <= 0) continue;
        if (mult > 1) squarefree = false;
        finite += mult * deg;
        auto roots = isolate_real_roots(parts[i], opt.width);
        s.nonreal_branch_points += mult * (deg - static_cast<int>(roots.size()));
        for (auto& bp : roots) {
            bp.multiplicity = mult;
            s.real_branch_points.push_back(bp);
        }
    }
    std::sort(s.real_branch_points.begin(), s.real_branch_points.end(),
              [](const BranchPoint& a, const BranchPoint& b) { return a.lo < b.lo; });
    if (finite != s.disc_degree) throw std::logic_error("square-free decomposition lost roots");
    s.branch_count = finite + s.multiplicity_at_infinity;
    s.smooth = squarefree && s.multiplicity_at_infinity <= 1;
    if (s.smooth) {
        // 2 g_s - 2 = -2r + (number of simple branch points)
        const int chi = s.branch_count - 2 * r + 2;
        if (chi % 2 != 0) throw std::logic_error("odd branch count for a smooth spectral cover");
        s.genus = chi / 2;
    }
    return s;
}

long spectral_genus(int r, int genus, int n) {
    if (r < 2) throw std::invalid_argument("spectral_genus needs r >= 2");
    if (genus < 0) throw std::invalid_argument("genus must be nonnegative");
    if (n < 1) throw std::invalid_argument("at least one marked point is required");
    const long gs = static_cast<long>(r) * (genus - 1) + 1 + static_cast<long>(r) * (r - 1) * (2L * genus - 2 + n) / 2;
    const long fiber = dims::fiber_dim_formula(lie::group_data(lie::GroupId{lie::Family::GL, r}), genus, n);
    if (gs != fiber)
        throw std::logic_error("spectral genus " + std::to_string(gs) + " differs from the gl fibre dimension " +
                               std::to_string(fiber));
    return gs;
}

TorsorFiberReport torsor_fiber_dims(const lie::GroupData& gd, int genus, int n) {
    TorsorFiberReport t;
    t.group = gd.id.name();
    t.genus = genus;
    t.n = static_cast<std::size_t>(n);
    t.fiber = dims::fiber_dim_formula(gd, genus, n);
    t.framed_fiber = *t.fiber + static_cast<long>(n) * gd.dim_g - gd.dim_center_grp;
    t.relative_fiber = *t.fiber + static_cast<long>(n) * gd.dim_torus - gd.dim_center_grp;
    t.base_dim = dims::hitchin_base_dim(gd, genus, n);
    t.relative_equals_base = *t.relative_fiber == *t.base_dim;
    if (genus == 0) t.note = "genus-0 substitution into the fibre formula";
    return t;
}

TorsorFiberReport torsor_fiber_report(const defo::FramedHiggsModel& model, const SpectralCurveReport& s) {
    const auto gd = lie::group_data(model.g.id());
    const int n = static_cast<int>(model.curve.n());
    if (!s.in_smooth_unramified_locus()) {
        TorsorFiberReport t;
        t.group = gd.id.name();
        t.genus = model.curve.genus;
        t.n = model.curve.n();
        t.in_locus = false;
        t.note = s.degenerate ? "outside the smooth unramified locus: degenerate discriminant"
                 : !s.unramified_over_d ? "outside the smooth unramified locus: ramified over D"
                                        : "outside the smooth unramified locus: singular spectral curve";
        return t;
    }
    return torsor_fiber_dims(gd, model.curve.genus, n);
}

}  // namespace hfb::spectral
