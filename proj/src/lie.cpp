#include "hfb/lie.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace hfb::lie {

namespace {

Matrix unit(std::size_t n, std::size_t i, std::size_t j) {
    Matrix m(n, n);
    m(i, j) = 1;
    return m;
}

Matrix antidiagonal(std::size_t n) {
    Matrix j(n, n);
    for (std::size_t i = 0; i < n; ++i) j(i, n - 1 - i) = 1;
    return j;
}

// Omega = [[0, J_k], [-J_k, 0]], so that sp is { x : x^T Omega + Omega x = 0 }.
Matrix symplectic_form(std::size_t n) {
    const std::size_t k = n / 2;
    Matrix w(n, n);
    for (std::size_t i = 0; i < k; ++i) {
        w(i, n - 1 - i) = 1;
        w(n - 1 - i, i) = -1;
    }
    return w;
}

std::vector<std::vector<Rational>> to_nested(const Matrix& x) {
    std::vector<std::vector<Rational>> out(x.rows(), std::vector<Rational>(x.cols()));
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) out[i][j] = x(i, j);
    return out;
}

Matrix coordinate_columns(const Algebra& g, const std::vector<Matrix>& xs) {
    std::vector<Vec> cols;
    cols.reserve(xs.size());
    for (const auto& x : xs) cols.push_back(g.coords(x));
    return Matrix::from_columns(cols, g.dim());
}

std::vector<Matrix> elements_from_columns(const Algebra& g, const Matrix& cols) {
    std::vector<Matrix> out;
    for (std::size_t j = 0; j < cols.cols(); ++j) out.push_back(g.element(cols.column(j)));
    return out;
}

}  // namespace

std::string GroupId::name() const {
    switch (family) {
        case Family::GL: return "gl" + std::to_string(size);
        case Family::SL: return "sl" + std::to_string(size);
        case Family::SO: return "so" + std::to_string(size);
        case Family::SP: return "sp" + std::to_string(size);
        case Family::G2: return "g2";
        case Family::F4: return "f4";
        case Family::E6: return "e6";
        case Family::E7: return "e7";
        case Family::E8: return "e8";
    }
    return "?";
}

GroupId parse_group(const std::string& text) {
    std::string t;
    for (char c : text)
        if (c != '(' && c != ')' && c != ' ' && c != '_') t.push_back(static_cast<char>(std::tolower(c)));
    static const std::pair<const char*, Family> exceptional[] = {
        {"g2", Family::G2}, {"f4", Family::F4}, {"e6", Family::E6}, {"e7", Family::E7}, {"e8", Family::E8}};
    for (const auto& [label, fam] : exceptional)
        if (t == label) return {fam, 0};
    static const std::pair<const char*, Family> classical[] = {
        {"gl", Family::GL}, {"sl", Family::SL}, {"so", Family::SO}, {"sp", Family::SP}};
    for (const auto& [label, fam] : classical) {
        if (t.rfind(label, 0) != 0) continue;
        const std::string digits = t.substr(2);
        if (digits.empty() || digits.size() > 3 ||
            !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(c); }))
            break;
        return {fam, std::stoi(digits)};
    }
    throw std::invalid_argument("unsupported group id '" + text + "'");
}

GroupData group_data(const GroupId& id) {
    GroupData d;
    d.id = id;
    const int r = id.size;
    auto bad = [&]() { return std::invalid_argument("unsupported group id '" + id.name() + "'"); };
    switch (id.family) {
        case Family::GL:
            if (r < 1) throw bad();
            d.dim_g = r * r;
            d.rank = r;
            for (int k = 1; k <= r; ++k) d.degrees.push_back(k);
            d.dim_center_alg = d.dim_center_grp = 1;
            break;
        case Family::SL:
            if (r < 2) throw bad();
            d.dim_g = r * r - 1;
            d.rank = r - 1;
            for (int k = 2; k <= r; ++k) d.degrees.push_back(k);
            break;
        case Family::SO:
            if (r < 3) throw bad();
            d.dim_g = r * (r - 1) / 2;
            d.rank = r / 2;
            if (r % 2 == 1) {
                for (int k = 1; k <= r / 2; ++k) d.degrees.push_back(2 * k);
            } else {
                for (int k = 1; k < r / 2; ++k) d.degrees.push_back(2 * k);
                d.degrees.push_back(r / 2);
            }
            break;
        case Family::SP:
            if (r < 2 || r % 2 != 0) throw bad();
            d.dim_g = r * (r + 1) / 2;
            d.rank = r / 2;
            for (int k = 1; k <= r / 2; ++k) d.degrees.push_back(2 * k);
            break;
        case Family::G2: d.dim_g = 14; d.degrees = {2, 6}; break;
        case Family::F4: d.dim_g = 52; d.degrees = {2, 6, 8, 12}; break;
        case Family::E6: d.dim_g = 78; d.degrees = {2, 5, 6, 8, 9, 12}; break;
        case Family::E7: d.dim_g = 133; d.degrees = {2, 6, 8, 10, 12, 14, 18}; break;
        case Family::E8: d.dim_g = 248; d.degrees = {2, 8, 12, 14, 18, 20, 24, 30}; break;
    }
    if (!id.classical()) d.rank = static_cast<int>(d.degrees.size());
    d.dim_torus = d.rank;
    d.dim_borel = (d.dim_g + d.dim_torus) / 2;
    int check = 0;
    for (int k : d.degrees) check += 2 * k - 1;
    if (check != d.dim_g || static_cast<int>(d.degrees.size()) != d.rank)
        throw std::logic_error("inconsistent Lie data for " + id.name());
    return d;
}

Algebra::Algebra(const GroupId& id, const Rational& kappa) : id_(id), kappa_(kappa) {
    if (!id.classical()) throw std::invalid_argument(id.name() + " has no matrix model");
    (void)group_data(id);
    size_ = static_cast<std::size_t>(id.size);
    const std::size_t n = size_;
    switch (id.family) {
        case Family::GL:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) basis_.push_back(unit(n, i, j));
            break;
        case Family::SL:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (i != j) basis_.push_back(unit(n, i, j));
            for (std::size_t i = 0; i + 1 < n; ++i) basis_.push_back(unit(n, i, i) - unit(n, i + 1, i + 1));
            break;
        case Family::SO:
            metric_ = antidiagonal(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) basis_.push_back(metric_ * (unit(n, i, j) - unit(n, j, i)));
            break;
        case Family::SP: {
            metric_ = symplectic_form(n);
            const Matrix inv = -metric_;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) basis_.push_back(inv * (unit(n, i, j) + unit(n, j, i)));
            break;
        }
        default:
            break;
    }
    if (id.family != Family::GL && sgn(kappa_) != 0)
        throw std::invalid_argument("a center correction to the form only applies to gl");

    // Coordinates are read off from a set of independent matrix entries.
    Matrix flat(n * n, basis_.size());
    for (std::size_t b = 0; b < basis_.size(); ++b)
        for (std::size_t k = 0; k < n * n; ++k) flat(k, b) = basis_[b](k / n, k % n);
    coord_rows_ = independent_columns(flat.transpose());
    Matrix square(basis_.size(), basis_.size());
    for (std::size_t r = 0; r < coord_rows_.size(); ++r)
        for (std::size_t b = 0; b < basis_.size(); ++b) square(r, b) = flat(coord_rows_[r], b);
    coord_map_ = *inverse(square);

    gram_ = Matrix(dim(), dim());
    for (std::size_t a = 0; a < dim(); ++a)
        for (std::size_t b = 0; b < dim(); ++b) gram_(a, b) = form(basis_[a], basis_[b]);
    auto gi = inverse(gram_);
    if (!gi) throw std::invalid_argument("degenerate invariant form on " + id.name());
    gram_inv_ = *gi;
}

bool Algebra::contains(const Matrix& x) const {
    if (x.rows() != size_ || x.cols() != size_) return false;
    switch (id_.family) {
        case Family::GL: return true;
        case Family::SL: return sgn(x.trace()) == 0;
        default: return (x.transpose() * metric_ + metric_ * x).is_zero();
    }
}

Vec Algebra::coords(const Matrix& x) const {
    if (!contains(x)) throw std::invalid_argument("matrix is not an element of " + id_.name());
    Vec entries(coord_rows_.size());
    for (std::size_t r = 0; r < coord_rows_.size(); ++r) entries[r] = x(coord_rows_[r] / size_, coord_rows_[r] % size_);
    return coord_map_ * entries;
}

Matrix Algebra::element(const Vec& c) const {
    if (c.size() != dim()) throw std::invalid_argument("coordinate vector has wrong length");
    Matrix x(size_, size_);
    for (std::size_t b = 0; b < dim(); ++b)
        if (sgn(c[b]) != 0) x += c[b] * basis_[b];
    return x;
}

Rational Algebra::form(const Matrix& a, const Matrix& b) const {
    Rational t = 0;
    for (std::size_t i = 0; i < size_; ++i)
        for (std::size_t k = 0; k < size_; ++k) t += a(i, k) * b(k, i);
    if (sgn(kappa_) != 0) t += kappa_ * a.trace() * b.trace();
    return t;
}

BilinearForm Algebra::form_fn() const {
    return [this](const Matrix& a, const Matrix& b) { return form(a, b); };
}

Matrix Algebra::ad(const Matrix& x) const {
    Matrix m(dim(), dim());
    for (std::size_t b = 0; b < dim(); ++b) m.set_column(b, coords(commutator(x, basis_[b])));
    return m;
}

std::vector<Matrix> Algebra::torus_basis() const {
    std::vector<Matrix> diag;
    for (const auto& b : basis_) {
        bool is_diag = true;
        for (std::size_t i = 0; i < size_ && is_diag; ++i)
            for (std::size_t j = 0; j < size_; ++j)
                if (i != j && sgn(b(i, j)) != 0) { is_diag = false; break; }
        if (is_diag) diag.push_back(b);
    }
    return diag;
}

std::vector<Matrix> Algebra::borel_basis() const {
    // Upper-triangular part: kernel of the strictly-lower entries on coordinates.
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < size_; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            Vec r(dim());
            for (std::size_t b = 0; b < dim(); ++b) r[b] = basis_[b](i, j);
            rows.push_back(r);
        }
    if (rows.empty()) return basis_;
    return elements_from_columns(*this, nullspace(Matrix::from_rows(rows)));
}

std::vector<Matrix> Algebra::center_basis() const {
    if (id_.family == Family::GL) return {Matrix::identity(size_)};
    return {};
}

Vec Algebra::invariant_polynomials(const Matrix& x) const {
    if (!contains(x)) throw std::invalid_argument("matrix is not an element of " + id_.name());
    return invariant_polynomials_of<Rational>(id_, to_nested(x));
}

Matrix bracket(const Algebra& g, const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != g.size())
        throw std::invalid_argument("bracket: shape mismatch");
    return commutator(a, b);
}

Rational check_invariance(const BilinearForm& sigma, const Matrix& a, const Matrix& b, const Matrix& c) {
    if (a.rows() != b.rows() || b.rows() != c.rows()) throw std::invalid_argument("check_invariance: shape mismatch");
    return sigma(commutator(a, c), b) + sigma(c, commutator(a, b));
}

std::vector<Matrix> perp_subspace(const Algebra& g, const std::vector<Matrix>& h) {
    if (h.empty()) return g.basis();
    const Matrix hc = coordinate_columns(g, h);
    if (rank(hc) != h.size()) throw std::invalid_argument("perp_subspace: dependent input basis");
    // v is orthogonal to h iff (H^T G) v = 0
    return elements_from_columns(g, nullspace(hc.transpose() * g.gram()));
}

bool is_subalgebra(const Algebra& g, const std::vector<Matrix>& h) {
    if (h.empty()) return true;
    const Matrix hc = coordinate_columns(g, h);
    const std::size_t r = rank(hc);
    for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = i + 1; j < h.size(); ++j) {
            Matrix one(g.dim(), 1);
            one.set_column(0, g.coords(commutator(h[i], h[j])));
            if (rank(hstack(hc, one)) != r) return false;
        }
    return true;
}

std::vector<Matrix> intersection(const Algebra& g, const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
    if (a.empty() || b.empty()) return {};
    const Matrix ac = coordinate_columns(g, a);
    const Matrix bc = coordinate_columns(g, b);
    // x in span(a) and span(b): a u = b w, read through the a-part of the kernel
    const Matrix ker = nullspace(hstack(ac, -bc));
    const Matrix meet = ac * ker.block(0, 0, a.size(), ker.cols());
    std::vector<Vec> cols;
    for (auto j : independent_columns(meet)) cols.push_back(meet.column(j));
    return elements_from_columns(g, Matrix::from_columns(cols, g.dim()));
}

std::size_t intersection_dim(const Algebra& g, const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
    return intersection(g, a, b).size();
}

Framing make_framing(const Algebra& g, const std::vector<Matrix>& h) {
    Framing f;
    f.h = h;
    if (!h.empty()) {
        const Matrix hc = coordinate_columns(g, h);
        if (rank(hc) != h.size()) throw std::invalid_argument("framing: subalgebra basis is linearly dependent");
        if (h.size() == g.dim()) throw std::invalid_argument("framing: the framing subgroup must be proper, got all of " + g.id().name());
        if (!is_subalgebra(g, h)) throw std::invalid_argument("framing: basis is not closed under the bracket");
    }
    f.perp = perp_subspace(g, h);
    f.dim_torus_meet = intersection_dim(g, h, g.torus_basis());
    return f;
}

Framing make_framing(const Algebra& g, FramingKind kind, const std::vector<Matrix>& custom) {
    switch (kind) {
        case FramingKind::Trivial: return make_framing(g, std::vector<Matrix>{});
        case FramingKind::Torus: return make_framing(g, g.torus_basis());
        case FramingKind::Borel: return make_framing(g, g.borel_basis());
        case FramingKind::Custom: return make_framing(g, custom);
    }
    throw std::invalid_argument("unknown framing kind");
}

std::size_t bracket_containment_failures(const Algebra& g, const Framing& f) {
    if (f.perp.empty()) return 0;
    const Matrix pc = coordinate_columns(g, f.perp);
    const std::size_t r = rank(pc);
    std::size_t failures = 0;
    for (const auto& x : f.h)
        for (const auto& p : f.perp) {
            Matrix one(g.dim(), 1);
            one.set_column(0, g.coords(commutator(x, p)));
            if (rank(hstack(pc, one)) != r) ++failures;
        }
    return failures;
}

}  // namespace hfb::lie
