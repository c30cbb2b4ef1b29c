#include <doctest.h>

#include "hfb/gaudin.hpp"
#include "hfb/random.hpp"

#include <cmath>

using namespace hfb;
using namespace hfb::gaudin;

namespace {

const std::vector<Rational> kPoints{2, -1, Rational(1, 3), 5};

curve::MarkedCurve marked(std::size_t n) {
    return curve::MarkedCurve(std::vector<Rational>(kPoints.begin(), kPoints.begin() + static_cast<long>(n)));
}

std::vector<Matrix> residues(const lie::Algebra& g, std::size_t n, RationalRng& rng) {
    std::vector<std::vector<Matrix>> perps(n, g.basis());
    return random_residues(g, perps, rng);
}

defo::FramedHiggsModel model(const char* group, std::size_t n, std::uint64_t seed) {
    const lie::Algebra g(lie::parse_group(group));
    RationalRng rng(seed);
    return defo::make_model(g, marked(n), std::vector<lie::Framing>(n, lie::make_framing(g, lie::FramingKind::Trivial)),
                            residues(g, n, rng));
}

PolyObservable random_observable(std::size_t sites, std::size_t size, RationalRng& rng) {
    PolyObservable o{sites, size, Poly(), "random"};
    const std::size_t vars = sites * size * size;
    for (int t = 0; t < 4; ++t) {
        Poly m = rng.next();
        const std::size_t deg = rng.raw() % 3;
        for (std::size_t k = 0; k < deg; ++k) m = m * Poly::variable(rng.raw() % vars);
        o.poly += m;
    }
    return o;
}

}  // namespace

TEST_CASE("Hitchin map of the zero field") {
    const lie::Algebra g(lie::parse_group("sl3"));
    const auto h = hitchin_map(g, marked(3), std::vector<Matrix>(3, Matrix(3, 3)));
    CHECK(h.is_zero());
    CHECK(h.dimension() == 3 + 4);
}

TEST_CASE("Hitchin map against direct evaluation of p_k(theta)") {
    for (const char* name : {"sl2", "gl2", "sl3", "gl3", "sp4", "so4", "so5"}) {
        CAPTURE(name);
        const lie::Algebra g(lie::parse_group(name));
        RationalRng rng(5);
        const auto c = marked(3);
        const auto res = residues(g, 3, rng);
        const auto h = hitchin_map(g, c, res);
        // dimension of the base at genus 0
        long expected = 0;
        for (int d : lie::group_data(g.id()).degrees) expected += d + 1;
        CHECK(static_cast<long>(h.dimension()) == expected);
        for (const Rational z : {Rational(7), Rational(-3, 4)}) {
            Matrix theta(g.size(), g.size());
            Rational denom = 1;
            for (std::size_t i = 0; i < 3; ++i) {
                theta += (Rational(1) / (z - c.points[i])) * res[i];
                denom *= z - c.points[i];
            }
            const Vec p = g.invariant_polynomials(theta);
            for (std::size_t k = 0; k < p.size(); ++k)
                CHECK(upoly::eval(h.coeffs[k], z) == p[k] * pow(denom, h.degrees[k]));
        }
    }
}

TEST_CASE("gl2 with two opposite residues") {
    const lie::Algebra g(lie::parse_group("gl2"));
    const Matrix a = Matrix::from_rows({{1, 2}, {3, 5}});
    const auto c = marked(2);
    const auto h = hitchin_map(g, c, {a, -a});
    // p_1(theta) = tr(A_1) (1/(z - x_1) - 1/(z - x_2)) = tr(A_1)(x_1 - x_2) / ((z - x_1)(z - x_2))
    REQUIRE(h.coeffs[0].size() == 1);
    CHECK(h.coeffs[0][0] == a.trace() * (c.points[0] - c.points[1]));
}

TEST_CASE("Gaudin Hamiltonians are the residues of the quadratic part") {
    const lie::Algebra g(lie::parse_group("sl2"));
    RationalRng rng(8);
    const auto c = marked(3);
    const auto res = residues(g, 3, rng);
    const Vec r = quadratic_residues(hitchin_map(g, c, res), c);
    for (std::size_t i = 0; i < 3; ++i) {
        Rational gaudin = 0;
        for (std::size_t j = 0; j < 3; ++j)
            if (j != i) gaudin += 2 * g.form(res[i], res[j]) / (c.points[i] - c.points[j]);
        // p_2 = det = -tr(x^2)/2 on sl2, so the residue is -1/2 of the classical normalisation
        CHECK(r[i] == -gaudin / 2);
    }
}

TEST_CASE("Hitchin map is invariant under simultaneous conjugation") {
    for (const char* name : {"gl3", "sp4", "so5"}) {
        const lie::Algebra g(lie::parse_group(name));
        RationalRng rng(12);
        const auto c = marked(4);
        const auto res = residues(g, 4, rng);
        // conjugate by a Cayley transform so that the result stays in the matrix model
        const Matrix x = rng.element(g);
        const Matrix id = Matrix::identity(g.size());
        const auto s = inverse(id - x);
        REQUIRE(s.has_value());
        const Matrix u = (id + x) * *s;
        const Matrix ui = *inverse(u);
        std::vector<Matrix> conj;
        for (const auto& a : res) conj.push_back(u * a * ui);
        CHECK(hitchin_map(g, c, conj) == hitchin_map(g, c, res));
    }
}

TEST_CASE("Hitchin observables reproduce the Hitchin map") {
    const lie::Algebra g(lie::parse_group("sl3"));
    RationalRng rng(2);
    const auto c = marked(3);
    const auto res = residues(g, 3, rng);
    const auto h = hitchin_map(g, c, res);
    const auto obs = hitchin_observables(g, c);
    std::size_t idx = 0;
    for (const auto& v : h.coeffs)
        for (const auto& q : v) CHECK(obs.at(idx++)(res) == q);
    CHECK(idx == obs.size());
}

TEST_CASE("Lie-Poisson bracket axioms") {
    const lie::Algebra g(lie::parse_group("sl2"));
    const LiePoisson lp(g, 2);
    RationalRng rng(77);
    for (int t = 0; t < 5; ++t) {
        const auto f = random_observable(2, 2, rng), h = random_observable(2, 2, rng), k = random_observable(2, 2, rng);
        CHECK(lp.bracket(f, f).poly.is_zero());
        CHECK((lp.bracket(f, h).poly + lp.bracket(h, f).poly).is_zero());
        const Poly jac = lp.bracket(f, lp.bracket(h, k)).poly + lp.bracket(h, lp.bracket(k, f)).poly +
                         lp.bracket(k, lp.bracket(f, h)).poly;
        CHECK(jac.is_zero());
        PolyObservable hk = h;
        hk.poly = h.poly * k.poly;
        CHECK(lp.bracket(f, hk).poly == lp.bracket(f, h).poly * k.poly + h.poly * lp.bracket(f, k).poly);
        const auto pt = residues(g, 2, rng);
        CHECK(lp.bracket(f, h, pt) == lp.bracket(f, h).poly.evaluate(flatten(pt)));
    }
}

TEST_CASE("structure constants from coordinate functions") {
    const lie::Algebra g(lie::parse_group("sl2"));
    const Matrix e = Matrix::from_rows({{0, 1}, {0, 0}});
    const Matrix f = Matrix::from_rows({{0, 0}, {1, 0}});
    const Matrix h = Matrix::from_rows({{1, 0}, {0, -1}});
    const LiePoisson lp(g, 1);
    const auto a = pairing_observable(g, 1, 0, e), b = pairing_observable(g, 1, 0, f);
    CHECK(lp.bracket(a, b).poly == pairing_observable(g, 1, 0, h).poly);
    CHECK(lp.bracket(pairing_observable(g, 1, 0, h), a).poly == Rational(2) * a.poly);
}

TEST_CASE("Hitchin coefficients Poisson-commute") {
    for (const char* name : {"sl2", "sl3", "gl2"}) {
        CAPTURE(name);
        const auto rep = commutativity_check(model(name, 3, 4), 3, 9);
        CHECK(rep.commute());
        CHECK(rep.negative_control != 0);
        CHECK(rep.points == 4);
    }
    const auto sp = commutativity_check(model("sp4", 2, 6), 2, 1);
    CHECK(sp.commute());
}

TEST_CASE("Hamiltonian flow") {
    const lie::Algebra g(lie::parse_group("sl2"));
    const auto m = model("sl2", 3, 21);
    const auto obs = hitchin_observables(g, m.curve);
    REQUIRE(obs.size() == 3);

    SUBCASE("zero time is the identity") {
        const auto r = hamiltonian_flow(g, m.curve, m.residues, obs[1], FlowOptions{0.0, 100, 1e-8, 0});
        REQUIRE(r.trajectory.size() == 1);
        CHECK(r.max_drift == 0);
    }
    SUBCASE("Hitchin coefficients are conserved") {
        const auto r = hamiltonian_flow(g, m.curve, m.residues, obs[0], FlowOptions{1.0, 10000, 1e-8, 0});
        CHECK(r.accepted);
        CHECK(r.max_drift < 1e-8);
        REQUIRE(r.trajectory.size() == 2);
        double moved = 0;
        for (std::size_t i = 0; i < r.trajectory[0].size(); ++i) moved = std::max(moved, std::abs(r.trajectory[0][i] - r.trajectory[1][i]));
        CHECK(moved > 1e-6);
    }
    SUBCASE("Casimirs generate no motion") {
        RationalRng rng(3);
        const curve::MarkedCurve one(std::vector<Rational>{1});
        const std::vector<Matrix> start{rng.element(g)};
        const auto r = hamiltonian_flow(g, one, start, casimir(g, 1, 0, 0), FlowOptions{1.0, 1000, 1e-8, 0});
        for (std::size_t i = 0; i < r.trajectory[0].size(); ++i) CHECK(std::abs(r.trajectory[0][i] - r.trajectory[1][i]) < 1e-12);
    }
    SUBCASE("a loose step is rejected") {
        const auto r = hamiltonian_flow(g, m.curve, m.residues, obs[0], FlowOptions{1.0, 3, 1e-14, 0});
        CHECK_FALSE(r.accepted);
    }
}
