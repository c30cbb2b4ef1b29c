#include <doctest.h>

#include "hfb/curve.hpp"
#include "hfb/random.hpp"

using namespace hfb;
using namespace hfb::curve;

namespace {

MarkedCurve line(std::initializer_list<long> pts) {
    std::vector<Rational> v;
    for (long p : pts) v.push_back(p);
    return MarkedCurve(v);
}

RationalSection simple_poles(std::size_t n, const Vec& res) {
    RationalSection f;
    f.m = 1;
    f.principal.assign(n, {});
    for (std::size_t p = 0; p < n; ++p) f.principal[p] = {Vec{res[p]}};
    return f;
}

// Random spec: orders in [-2, 2], random value spaces, growth at infinity in [-3, 2].
SheafSpec random_spec(RationalRng& rng, std::size_t m, std::size_t n) {
    SheafSpec s;
    s.fiber_dim = m;
    auto space = [&]() {
        const std::size_t k = rng.raw() % (m + 1);
        return k == m ? full_space(m) : (k == 0 ? zero_space(m) : rng.matrix(m, k));
    };
    for (std::size_t p = 0; p < n; ++p) {
        s.order.push_back(static_cast<int>(rng.raw() % 5) - 2);
        s.value_space.push_back(space());
    }
    s.order_inf = static_cast<int>(rng.raw() % 6) - 3;
    s.value_space_inf = space();
    return s;
}

}  // namespace

TEST_CASE("marked curve validation") {
    CHECK_THROWS_AS(MarkedCurve(std::vector<Rational>{}), std::invalid_argument);
    CHECK_THROWS_AS(MarkedCurve(std::vector<Rational>{1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(MarkedCurve(std::vector<Rational>{0, 2}), std::invalid_argument);
    CHECK_NOTHROW(MarkedCurve({1, Rational(-1, 2)}));
}

TEST_CASE("residue examples") {
    const MarkedCurve c = line({3});
    const RationalSection f = simple_poles(1, {1});
    CHECK(residue(c, f, 0) == 1);
    CHECK(residue(c, f, c.infinity()) == -1);
    CHECK(residue_at(c, f, 5) == 0);

    // z/((z-1)(z-2)) = -1/(z-1) + 2/(z-2) by partial fractions
    const MarkedCurve c2 = line({1, 2});
    const RationalSection g = simple_poles(2, {-1, 2});
    CHECK(residue(c2, g, 0) == -1);
    CHECK(residue(c2, g, 1) == 2);
    CHECK(residue(c2, g, 2) == -1);
    // expansion at z = 3 agrees with evaluating z/((z-1)(z-2)) there
    CHECK(g.expand(c2, 0, 0).at(0)[0] == -2);  // regular part at x_1 is 2/(u - 1) at u = 0
    const Series at3 = g.expand(MarkedCurve({1, 2, 3}), 2, 0);
    CHECK(at3.at(0)[0] == Rational(3, 2));
}

TEST_CASE("residue theorem on random rational 1-forms") {
    RationalRng rng(41);
    for (int t = 0; t < 20; ++t) {
        const MarkedCurve c({rng.next_nonzero(), rng.next_nonzero() + 11, rng.next_nonzero() - 11});
        RationalSection f;
        f.principal.assign(3, {});
        for (auto& pp : f.principal)
            for (int j = 0; j < 3; ++j) pp.push_back(Vec{rng.next()});
        for (int j = 0; j < 3; ++j) f.polynomial.push_back(Vec{rng.next()});
        Rational total = 0;
        for (std::size_t p = 0; p <= c.n(); ++p) total += residue(c, f, p);
        CHECK(total == 0);
    }
}

TEST_CASE("partial fractions: division by a simple pole") {
    const MarkedCurve c({2, 5});
    // check f/(z - x_i) against f evaluated at sample points
    auto eval = [&](const ScalarFn& f, const Rational& z) {
        return f.pole ? pow(z - c.points[f.point], -f.power) : pow(z, f.power);
    };
    for (const ScalarFn f : {ScalarFn{true, 0, 3}, ScalarFn{true, 1, 2}, ScalarFn{false, 0, 4}, ScalarFn{false, 0, 0}})
        for (std::size_t i = 0; i < 2; ++i)
            for (const Rational z : {Rational(7), Rational(-3, 4), Rational(11, 3)}) {
                Rational lhs = eval(f, z) / (z - c.points[i]);
                Rational rhs = 0;
                for (const auto& [g, coef] : divide_by_simple_pole(c, f, i)) rhs += coef * eval(g, z);
                CHECK(lhs == rhs);
            }
}

TEST_CASE("global sections examples") {
    // g tensor O(-D), sl2, n = 2
    const MarkedCurve c2 = line({1, 2});
    CHECK(global_sections(c2, SheafSpec::uniform(3, 2, -1, 0)).empty());

    // K(D) model with n = 3: oracle is the residue-sum-zero system
    const MarkedCurve c3 = line({1, 2, 4});
    const auto secs = global_sections(c3, SheafSpec::uniform(1, 3, 1, -2));
    REQUIRE(secs.size() == 2);
    std::vector<Vec> residues;
    for (const auto& s : secs) {
        CHECK(std::all_of(s.polynomial.begin(), s.polynomial.end(), [](const Vec& v) { return is_zero(v); }));
        Vec r;
        for (const auto& pp : s.principal) {
            for (std::size_t j = 1; j < pp.size(); ++j) CHECK(is_zero(pp[j]));
            r.push_back(pp.empty() ? Rational(0) : pp[0][0]);
        }
        CHECK(r[0] + r[1] + r[2] == 0);
        residues.push_back(r);
    }
    const Matrix expected = Matrix::from_rows({{1, 0, -1}, {0, 1, -1}});
    CHECK(rank(vstack(Matrix::from_rows(residues), expected)) == 2);

    // value at x_1 forced into {0} on the trivial line bundle
    SheafSpec v = SheafSpec::uniform(1, 2, 0, 0);
    v.value_space[0] = zero_space(1);
    CHECK(global_sections(c2, v).empty());
}

TEST_CASE("h1 presentation examples") {
    const MarkedCurve c3 = line({1, 2, 4});
    const auto o_minus_d = h1_presentation(c3, SheafSpec::uniform(1, 3, -1, 0));
    CHECK(o_minus_d.dim() == 2);
    CHECK(SheafSpec::uniform(1, 3, -1, 0).euler_characteristic() == -2);

    for (int d = 0; d <= 3; ++d) CHECK(h1_presentation(c3, SheafSpec::uniform(1, 3, 0, d)).dim() == 0);

    const MarkedCurve c2 = line({1, 2});
    CHECK(h1_presentation(c2, SheafSpec::uniform(3, 2, -1, 0)).dim() == 3);
}

TEST_CASE("Riemann-Roch and truncation stability on a random corpus") {
    RationalRng rng(43);
    for (int t = 0; t < 40; ++t) {
        const std::size_t m = 1 + rng.raw() % 3;
        const std::size_t n = 1 + rng.raw() % 3;
        std::vector<Rational> pts;
        for (std::size_t p = 0; p < n; ++p) pts.push_back(Rational(static_cast<long>(p) + 1) + Rational(1, 3));
        const MarkedCurve c(pts);
        const SheafSpec s = random_spec(rng, m, n);
        const int b = default_bound({s});
        const Presentation p0(c, s, b);
        const Presentation p1(c, s, b + 1);
        CAPTURE(t);
        CHECK(static_cast<long>(p0.h0()) - static_cast<long>(p0.h1()) == s.euler_characteristic());
        CHECK(p0.h0() == p1.h0());
        CHECK(p0.h1() == p1.h1());
    }
}

TEST_CASE("dual model: orders, annihilators and double dual") {
    RationalRng rng(47);
    for (int t = 0; t < 20; ++t) {
        const SheafSpec s = random_spec(rng, 2, 2).canonical();
        const SheafSpec dd = s.dual().dual();
        CHECK(dd.order == s.order);
        CHECK(dd.order_inf == s.order_inf);
        // Serre duality: h1(F) = h0(F^dual tensor K)
        const MarkedCurve c({2, 3});
        CHECK(Presentation(c, s, default_bound({s, s.dual()})).h1() ==
              Presentation(c, s.dual(), default_bound({s, s.dual()})).h0());
    }
}

TEST_CASE("Serre pairing: perfect on duals and blind to coboundaries") {
    const MarkedCurve c = line({1, 2, 4});
    const SheafSpec f = SheafSpec::uniform(1, 3, -1, 0);
    const SheafSpec fd = f.dual();
    CHECK(fd.order == std::vector<int>{1, 1, 1});
    CHECK(fd.order_inf == -2);
    const auto h1 = h1_presentation(c, f);
    const auto secs = global_sections(c, fd);
    REQUIRE(h1.dim() == 2);
    REQUIRE(secs.size() == 2);
    const Matrix one = Matrix::identity(1);
    Matrix gram(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) gram(i, j) = serre_pairing(h1, h1.representatives[i], secs[j], one);
    CHECK(rank(gram) == 2);

    CHECK(serre_pairing(h1, Vec(h1.pres.quotient_dim()), secs[0], one) == 0);
    RationalRng rng(53);
    for (int t = 0; t < 5; ++t) {
        const Vec g = rng.matrix(h1.pres.global_dim(), 1).column(0);
        const Vec cob = h1.pres.epsilon() * g;
        CHECK(h1.is_coboundary(cob));
        for (const auto& s : secs) CHECK(serre_pairing(h1, cob, s, one) == 0);
    }
}

TEST_CASE("Serre pairing is perfect for random vector-valued duals") {
    RationalRng rng(59);
    const MarkedCurve c({2, 5});
    for (int t = 0; t < 10; ++t) {
        const SheafSpec f = random_spec(rng, 2, 2).canonical();
        const int b = default_bound({f, f.dual()});
        const auto h1 = h1_presentation(c, f, b);
        const auto secs = global_sections(c, f.dual());
        REQUIRE(h1.dim() == secs.size());
        if (secs.empty()) continue;
        Matrix gram(h1.dim(), secs.size());
        for (std::size_t i = 0; i < h1.dim(); ++i)
            for (std::size_t j = 0; j < secs.size(); ++j)
                gram(i, j) = serre_pairing(h1, h1.representatives[i], secs[j], Matrix::identity(2));
        CHECK(rank(gram) == h1.dim());
    }
}
