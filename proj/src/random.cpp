#include "hfb/random.hpp"

#include <stdexcept>

namespace hfb {

Rational RationalRng::next() {
    const auto span = static_cast<std::uint64_t>(2 * height_ + 1);
    const long num = static_cast<long>(engine_() % span) - height_;
    const long den = static_cast<long>(engine_() % static_cast<std::uint64_t>(height_)) + 1;
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational RationalRng::next_nonzero() {
    for (;;) {
        Rational q = next();
        if (sgn(q) != 0) return q;
    }
}

Matrix RationalRng::matrix(std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = next();
    return m;
}

Matrix RationalRng::invertible(std::size_t n) {
    for (;;) {
        Matrix m = matrix(n, n);
        if (sgn(determinant(m)) != 0) return m;
    }
}

Matrix RationalRng::element(const lie::Algebra& g) { return combination(g, g.basis()); }

Matrix RationalRng::combination(const lie::Algebra& g, const std::vector<Matrix>& basis) {
    Matrix x(g.size(), g.size());
    for (const auto& b : basis) x += next() * b;
    return x;
}

std::vector<Matrix> random_residues(const lie::Algebra& g, const std::vector<std::vector<Matrix>>& perps,
                                    RationalRng& rng) {
    // Parametrize tuples (A_i in perp_i) by stacked coefficients and keep the kernel of the sum.
    std::size_t total = 0;
    for (const auto& p : perps) total += p.size();
    if (total == 0) return std::vector<Matrix>(perps.size(), Matrix(g.size(), g.size()));
    Matrix sum(g.dim(), total);
    std::size_t col = 0;
    for (const auto& p : perps)
        for (const auto& b : p) sum.set_column(col++, g.coords(b));
    const Matrix ker = nullspace(sum);
    Vec coeffs(total);
    for (std::size_t j = 0; j < ker.cols(); ++j) coeffs = coeffs + rng.next() * ker.column(j);
    std::vector<Matrix> out;
    col = 0;
    for (const auto& p : perps) {
        Matrix a(g.size(), g.size());
        for (const auto& b : p) a += coeffs[col++] * b;
        out.push_back(std::move(a));
    }
    return out;
}

}  // namespace hfb
