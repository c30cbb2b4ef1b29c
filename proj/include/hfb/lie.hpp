#pragma once

#include "hfb/matrix.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hfb::lie {

enum class Family { GL, SL, SO, SP, G2, F4, E6, E7, E8 };

/// Group label. For classical families `size` is the size of the defining matrices
/// (so sp4 is the rank-2 symplectic algebra); exceptional families ignore it.
struct GroupId {
    Family family = Family::SL;
    int size = 2;

    bool classical() const { return family == Family::GL || family == Family::SL ||
                                    family == Family::SO || family == Family::SP; }
    std::string name() const;
    friend bool operator==(const GroupId&, const GroupId&) = default;
};

/// Accepts "sl2", "sl(2)", "gl3", "so5", "sp4", "g2", "f4", "e6", "e7", "e8".
GroupId parse_group(const std::string& text);

struct GroupData {
    GroupId id;
    int dim_g = 0;
    int rank = 0;
    int dim_borel = 0;
    int dim_torus = 0;
    int dim_center_alg = 0;
    int dim_center_grp = 0;
    std::vector<int> degrees;
};

/// Tabulated Lie data; throws std::invalid_argument naming the id when unsupported.
GroupData group_data(const GroupId& id);

using BilinearForm = std::function<Rational(const Matrix&, const Matrix&)>;

/// Matrix model of a classical Lie algebra together with its invariant form
/// sigma(a, b) = tr(ab) + kappa tr(a) tr(b). The kappa term only matters on gl,
/// where it changes the form on the center.
class Algebra {
public:
    explicit Algebra(const GroupId& id, const Rational& kappa = 0);

    const GroupId& id() const { return id_; }
    std::size_t size() const { return size_; }
    std::size_t dim() const { return basis_.size(); }
    const Rational& kappa() const { return kappa_; }
    const std::vector<Matrix>& basis() const { return basis_; }

    bool contains(const Matrix& x) const;
    /// Coordinates in `basis()`; throws std::invalid_argument when x is not in the algebra.
    Vec coords(const Matrix& x) const;
    Matrix element(const Vec& c) const;

    Rational form(const Matrix& a, const Matrix& b) const;
    BilinearForm form_fn() const;
    const Matrix& gram() const { return gram_; }
    const Matrix& gram_inverse() const { return gram_inv_; }

    /// Matrix of [x, .] on coordinates.
    Matrix ad(const Matrix& x) const;

    /// Diagonal elements (a Cartan subalgebra) and upper-triangular elements (a Borel).
    std::vector<Matrix> torus_basis() const;
    std::vector<Matrix> borel_basis() const;
    /// Scalar matrices inside the algebra.
    std::vector<Matrix> center_basis() const;

    /// p_1..p_r, homogeneous of the degrees in group_data.
    Vec invariant_polynomials(const Matrix& x) const;

private:
    GroupId id_;
    std::size_t size_;
    Rational kappa_;
    Matrix metric_;
    std::vector<Matrix> basis_;
    std::vector<std::size_t> coord_rows_;
    Matrix coord_map_;
    Matrix gram_;
    Matrix gram_inv_;
};

/// Coefficients e_1..e_n of det(t - x) = t^n - e_1 t^{n-1} + ... over any ring with
/// +, -, * and division by an int.
template <class T>
std::vector<T> elementary_symmetric(const std::vector<std::vector<T>>& x) {
    const std::size_t n = x.size();
    std::vector<std::vector<T>> m(n, std::vector<T>(n, T(0)));
    std::vector<T> e;
    e.reserve(n);
    T c_prev = T(1);
    for (std::size_t k = 1; k <= n; ++k) {
        // m <- x m + c_prev I, then c_k = -tr(x m) / k
        std::vector<std::vector<T>> next(n, std::vector<T>(n, T(0)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l)
                for (std::size_t j = 0; j < n; ++j) next[i][j] = next[i][j] + x[i][l] * m[l][j];
        for (std::size_t i = 0; i < n; ++i) next[i][i] = next[i][i] + c_prev;
        T tr = T(0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) tr = tr + x[i][l] * next[l][i];
        T c = T(T(0) - tr) / static_cast<int>(k);
        e.push_back((k % 2 == 0) ? c : T(T(0) - c));
        m = std::move(next);
        c_prev = c;
    }
    return e;
}

/// Pfaffian of an antisymmetric matrix by expansion along the first row.
template <class T>
T pfaffian(const std::vector<std::vector<T>>& s) {
    const std::size_t n = s.size();
    if (n == 0) return T(1);
    if (n % 2 == 1) return T(0);
    T total = T(0);
    for (std::size_t j = 1; j < n; ++j) {
        std::vector<std::size_t> keep;
        for (std::size_t i = 1; i < n; ++i)
            if (i != j) keep.push_back(i);
        std::vector<std::vector<T>> minor(keep.size(), std::vector<T>(keep.size(), T(0)));
        for (std::size_t a = 0; a < keep.size(); ++a)
            for (std::size_t b = 0; b < keep.size(); ++b) minor[a][b] = s[keep[a]][keep[b]];
        T term = s[0][j] * pfaffian(minor);
        total = (j % 2 == 1) ? T(total + term) : T(total - term);
    }
    return total;
}

/// Invariant polynomials of `id` evaluated on a generic-ring matrix (same conventions
/// as Algebra::invariant_polynomials).
template <class T>
std::vector<T> invariant_polynomials_of(const GroupId& id, const std::vector<std::vector<T>>& x) {
    const std::size_t n = x.size();
    std::vector<T> e = elementary_symmetric(x);
    std::vector<T> out;
    switch (id.family) {
        case Family::GL:
            return e;
        case Family::SL:
            return std::vector<T>(e.begin() + 1, e.end());
        case Family::SP:
        case Family::SO: {
            const std::size_t k = n / 2;
            const bool even_so = id.family == Family::SO && n % 2 == 0;
            for (std::size_t j = 1; j <= k; ++j) {
                if (even_so && j == k) break;
                out.push_back(e[2 * j - 1]);
            }
            if (even_so) {
                // J x is antisymmetric for x in the model; J is the antidiagonal.
                std::vector<std::vector<T>> s(n, std::vector<T>(n, T(0)));
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) s[i][j] = x[n - 1 - i][j];
                out.push_back(pfaffian(s));
            }
            return out;
        }
        default:
            throw std::invalid_argument("invariant polynomials: " + id.name() +
                                        " is not supported for evaluation");
    }
}

Matrix bracket(const Algebra& g, const Matrix& a, const Matrix& b);

/// sigma([a, c], b) + sigma(c, [a, b]); zero for an invariant form.
Rational check_invariance(const BilinearForm& sigma, const Matrix& a, const Matrix& b, const Matrix& c);

/// Basis of {v : sigma(v, h) = 0 for all h}. Throws on a dependent input basis.
std::vector<Matrix> perp_subspace(const Algebra& g, const std::vector<Matrix>& h);

/// True when span(h) is closed under the bracket.
bool is_subalgebra(const Algebra& g, const std::vector<Matrix>& h);

/// Dimension of span(a) intersected with span(b), both given by algebra elements.
std::size_t intersection_dim(const Algebra& g, const std::vector<Matrix>& a, const std::vector<Matrix>& b);

/// Basis of span(a) intersected with span(b).
std::vector<Matrix> intersection(const Algebra& g, const std::vector<Matrix>& a, const std::vector<Matrix>& b);

/// Framing data at one marked point.
struct Framing {
    std::vector<Matrix> h;
    std::vector<Matrix> perp;
    std::size_t dim_torus_meet = 0;
    std::optional<int> dim_z_hx;
};

enum class FramingKind { Trivial, Torus, Borel, Custom };

/// Builds the framing for subalgebra basis `h`; throws if h is dependent, not closed
/// under the bracket, or the whole algebra.
Framing make_framing(const Algebra& g, const std::vector<Matrix>& h);
Framing make_framing(const Algebra& g, FramingKind kind, const std::vector<Matrix>& custom = {});

/// Number of pairs (h_i, p_j) of basis elements with [h_i, p_j] outside span(perp).
std::size_t bracket_containment_failures(const Algebra& g, const Framing& f);

}  // namespace hfb::lie
