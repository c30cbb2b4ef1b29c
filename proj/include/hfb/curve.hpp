#pragma once

#include "hfb/matrix.hpp"

#include <cstddef>
#include <vector>

namespace hfb::curve {

/// The projective line with marked finite points x_1..x_n; infinity is an auxiliary
/// chart point that is never in D. Point index n stands for infinity throughout.
struct MarkedCurve {
    int genus = 0;
    std::vector<Rational> points;

    MarkedCurve() = default;
    MarkedCurve(std::vector<Rational> pts, int g = 0);

    std::size_t n() const { return points.size(); }
    std::size_t infinity() const { return points.size(); }
    /// Throws std::invalid_argument unless n >= 1 and the points are distinct and nonzero.
    void validate() const;
};

/// Matrix with the identity as columns (the whole fibre) or with no columns (zero).
Matrix full_space(std::size_t m);
Matrix zero_space(std::size_t m);

/// Trivial rank-m bundle with poles of order <= order[p] at x_p (negative means
/// vanishing), leading coefficient at x_p in the column span of value_space[p], and
/// growth O(z^order_inf) at infinity with leading coefficient in value_space_inf.
/// Sections of twisted sheaves are stored through their dz-coefficient.
struct SheafSpec {
    std::size_t fiber_dim = 1;
    std::vector<int> order;
    std::vector<Matrix> value_space;
    int order_inf = 0;
    Matrix value_space_inf;

    static SheafSpec uniform(std::size_t m, std::size_t n, int order, int order_inf);

    std::size_t points() const { return order.size(); }
    int order_at(std::size_t p) const { return p == order.size() ? order_inf : order[p]; }
    const Matrix& space_at(std::size_t p) const { return p == order.size() ? value_space_inf : value_space[p]; }

    long degree() const;
    /// Riemann-Roch on the rational curve: deg + rank.
    long euler_characteristic() const { return degree() + static_cast<long>(fiber_dim); }

    /// Same sheaf with every zero value space traded for one less pole order.
    SheafSpec canonical() const;
    /// Model of Hom(F, O) tensor K: dual orders 1 - o and annihilator value spaces,
    /// where the fibre is paired with itself through `form` (identity when empty).
    SheafSpec dual(const Matrix& form = Matrix()) const;

    void validate(const MarkedCurve& c) const;
};

/// Elementary scalar functions: (z - x_p)^{-j} with j >= 1, or z^j with j >= 0.
struct ScalarFn {
    bool pole = false;
    std::size_t point = 0;
    int power = 0;
    friend bool operator==(const ScalarFn&, const ScalarFn&) = default;
};

/// Scalar Laurent expansion: coefficient of u^{lo + k} is c[k].
struct ScalarSeries {
    int lo = 0;
    std::vector<Rational> c;
    Rational at(int e) const;
};

/// Vector Laurent expansion: coefficient of u^{lo + k} is c[k].
struct Series {
    int lo = 0;
    std::vector<Vec> c;
    std::size_t m = 0;
    Vec at(int e) const;
};

/// Expansion at point q (q = n for infinity, in w = 1/z) through order hi.
ScalarSeries expand(const MarkedCurve& c, const ScalarFn& f, std::size_t q, int hi);

/// f(z) / (z - x_i) as a combination of elementary functions.
std::vector<std::pair<ScalarFn, Rational>> divide_by_simple_pole(const MarkedCurve& c, const ScalarFn& f, std::size_t i);

/// Vector-valued rational function in partial-fraction form.
struct RationalSection {
    std::size_t m = 1;
    std::vector<std::vector<Vec>> principal;  // [p][j - 1]: coefficient of (z - x_p)^{-j}
    std::vector<Vec> polynomial;              // [j]: coefficient of z^j

    Series expand(const MarkedCurve& c, std::size_t q, int hi) const;
};

/// Residue of f dz at point q (q = n for infinity); f must be scalar (m = 1).
Rational residue(const MarkedCurve& c, const RationalSection& f, std::size_t q);
/// Residue at an arbitrary finite point; zero away from the marked points.
Rational residue_at(const MarkedCurve& c, const RationalSection& f, const Rational& x);

/// Residue of sigma(a, b) dz where the fibre form has Gram matrix `form`.
Rational pair_residue(const Series& a, const Series& b, const Matrix& form, bool at_infinity);

/// Laurent-tail presentation of a sheaf F inside F' = F(bound * S), S = D + infinity:
/// G = H^0(F') is spanned by elementary functions times fibre basis vectors, T is the
/// space of tails in the window [-o_p - bound, -o_p] at each point, and Q = T / L with
/// L the leading-level value spaces. H^0(F) = ker(G -> Q), H^1(F) = coker.
class Presentation {
public:
    Presentation(const MarkedCurve& c, const SheafSpec& spec, int bound);

    const MarkedCurve& curve() const { return curve_; }
    const SheafSpec& spec() const { return spec_; }
    int bound() const { return bound_; }
    std::size_t m() const { return spec_.fiber_dim; }

    const std::vector<ScalarFn>& scalars() const { return scalars_; }
    std::size_t global_dim() const { return scalars_.size() * m(); }
    /// Index of an elementary function in the global basis, or npos when outside it.
    std::size_t scalar_index(const ScalarFn& f) const;

    int window_lo(std::size_t p) const { return -spec_.order_at(p) - bound_; }
    int window_hi(std::size_t p) const { return -spec_.order_at(p); }
    std::size_t tail_dim() const { return tail_dim_; }
    std::size_t tail_offset(std::size_t p) const { return tail_offset_[p]; }
    std::size_t tail_index(std::size_t p, int level, std::size_t a) const;
    std::size_t quotient_dim() const { return quot_dim_; }

    /// Q x T projection, T x Q lift with projection * lift = identity.
    const Matrix& projection() const { return proj_; }
    const Matrix& lift() const { return lift_; }
    /// T x G matrix of tails of global sections, and Q x G matrix epsilon.
    const Matrix& tails() const { return tails_; }
    const Matrix& epsilon() const { return eps_; }

    RationalSection section(const Vec& global) const;
    /// Tail at point p of a T-vector, as a series over the window.
    Series tail_series(const Vec& tail, std::size_t p) const;
    /// Expansion of a global section at p through order hi.
    Series global_series(const Vec& global, std::size_t p, int hi) const;

    std::size_t h0() const;
    std::size_t h1() const;

private:
    MarkedCurve curve_;
    SheafSpec spec_;
    int bound_;
    std::vector<ScalarFn> scalars_;
    std::vector<std::size_t> tail_offset_;
    std::size_t tail_dim_ = 0;
    std::size_t quot_dim_ = 0;
    Matrix proj_;
    Matrix lift_;
    Matrix tails_;
    Matrix eps_;
};

/// max |order| over the specs plus 2.
int default_bound(const std::vector<SheafSpec>& specs);

std::vector<RationalSection> global_sections(const MarkedCurve& c, const SheafSpec& spec);

struct H1Presentation {
    Presentation pres;
    /// Q-coordinates of H^1 representatives, extending the coboundaries in the
    /// point-then-order term ordering.
    std::vector<Vec> representatives;

    std::size_t dim() const { return representatives.size(); }
    bool is_coboundary(const Vec& q) const;
    /// Principal parts of a Q-class at every point of D and infinity.
    std::vector<Series> principal_parts(const Vec& q) const;
};

H1Presentation h1_presentation(const MarkedCurve& c, const SheafSpec& spec, int bound = 0);

/// Serre pairing of an H^1 class of F (Q-coordinates in `h1.pres`) with a global
/// section of the dual model, both fibres paired through `form`.
Rational serre_pairing(const H1Presentation& h1, const Vec& cls, const RationalSection& dual_section,
                       const Matrix& form);

}  // namespace hfb::curve
