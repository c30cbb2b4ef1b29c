#include <doctest.h>

#include "hfb/matrix.hpp"
#include "hfb/random.hpp"

using namespace hfb;

TEST_CASE("rational parsing and printing") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-0.25") == Rational(-1, 4));
    CHECK(parse_rational("7") == 7);
    CHECK(to_string(Rational(-4, 6)) == "-2/3");
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("binomial and pow") {
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(-2, 3) == -4);  // (-2)(-3)(-4)/6
    CHECK(binomial(3, 5) == 0);
    CHECK(pow(Rational(2, 3), -2) == Rational(9, 4));
    CHECK(pow(Rational(-1), 7) == -1);
}

TEST_CASE("rank, nullspace and solve agree") {
    RationalRng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        // product of random 5x3 and 3x6 has rank <= 3
        Matrix a = rng.matrix(5, 3) * rng.matrix(3, 6);
        const Matrix ker = nullspace(a);
        CHECK(rank(a) + ker.cols() == a.cols());
        CHECK((a * ker).is_zero());
        const Vec x = rng.matrix(6, 1).column(0);
        const Vec b = a * x;
        auto sol = solve(a, b);
        REQUIRE(sol.has_value());
        CHECK(a * *sol == b);
    }
}

TEST_CASE("inverse and determinant") {
    RationalRng rng(3);
    const Matrix m = rng.invertible(4);
    auto inv = inverse(m);
    REQUIRE(inv.has_value());
    CHECK(m * *inv == Matrix::identity(4));
    CHECK(determinant(m) * determinant(*inv) == 1);
    Matrix singular = m;
    singular.set_column(3, m.column(0) + m.column(1));
    CHECK_FALSE(inverse(singular).has_value());
    CHECK(determinant(singular) == 0);
}

TEST_CASE("inconsistent system has no solution") {
    const Matrix a = Matrix::from_rows({{1, 1}, {2, 2}});
    CHECK_FALSE(solve(a, Vec{1, 3}).has_value());
}

TEST_CASE("extend_basis picks columns outside the base span") {
    const Matrix base = Matrix::from_rows({{1}, {0}, {0}});
    const Matrix extra = Matrix::from_rows({{2, 0, 0}, {0, 0, 1}, {0, 0, 1}});
    const auto picked = extend_basis(base, extra);
    REQUIRE(picked.size() == 1);
    CHECK(picked[0] == 2);
}
