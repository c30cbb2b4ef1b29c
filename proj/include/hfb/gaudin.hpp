#pragma once

#include "hfb/curve.hpp"
#include "hfb/deformation.hpp"
#include "hfb/lie.hpp"
#include "hfb/polynomial.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hfb::gaudin {

/// p_k(theta) = Q_k(z) dz^{d_k} / prod_j (z - x_j)^{d_k}; coeffs[k][j] is the z^j
/// coefficient of Q_k, for j <= d_k (n - 2).
struct HitchinPoint {
    std::vector<int> degrees;
    std::vector<Vec> coeffs;

    std::size_t dimension() const;
    bool is_zero() const;
    friend bool operator==(const HitchinPoint&, const HitchinPoint&) = default;
};

/// Throws std::invalid_argument unless the residues sum to zero; throws
/// std::logic_error if some Q_k exceeds its degree bound.
HitchinPoint hitchin_map(const lie::Algebra& g, const curve::MarkedCurve& c, const std::vector<Matrix>& residues);
HitchinPoint hitchin_map(const defo::FramedHiggsModel& model);

/// Residues at x_1..x_n of the degree-2 component (the Gaudin Hamiltonians in the
/// normalisation of the invariant polynomials).
Vec quadratic_residues(const HitchinPoint& h, const curve::MarkedCurve& c);

/// Polynomial in the matrix entries of residue tuples: variable (i, a, b) is entry
/// (a, b) of A_i and has index (i * size + a) * size + b.
struct PolyObservable {
    std::size_t sites = 0;
    std::size_t size = 0;
    Poly poly;
    std::string label;

    std::size_t var(std::size_t i, std::size_t a, std::size_t b) const { return (i * size + a) * size + b; }
    Rational operator()(const std::vector<Matrix>& point) const;
    double operator()(const std::vector<double>& flat) const { return poly.evaluate(flat); }
};

Vec flatten(const std::vector<Matrix>& point);

/// Coefficient functions of the Hitchin map, in HitchinPoint order, labelled "Q<k>[<j>]".
std::vector<PolyObservable> hitchin_observables(const lie::Algebra& g, const curve::MarkedCurve& c);
/// sigma(x, A_site).
PolyObservable pairing_observable(const lie::Algebra& g, std::size_t sites, std::size_t site, const Matrix& x);
/// p_k(A_site).
PolyObservable casimir(const lie::Algebra& g, std::size_t sites, std::size_t site, std::size_t k);

/// Product Lie-Poisson structure on g^n transported by sigma:
/// {F, G}(A) = sum_i sigma(A_i, [grad_i F, grad_i G]).
class LiePoisson {
public:
    LiePoisson(const lie::Algebra& g, std::size_t sites);

    const lie::Algebra& algebra() const { return g_; }
    std::size_t sites() const { return sites_; }

    /// sigma-gradient of F at site i, an element of g.
    Matrix gradient(const PolyObservable& f, std::size_t site, const std::vector<Matrix>& point) const;
    Rational bracket(const PolyObservable& f, const PolyObservable& h, const std::vector<Matrix>& point) const;
    /// Symbolic bracket.
    PolyObservable bracket(const PolyObservable& f, const PolyObservable& h) const;

private:
    std::vector<std::vector<Poly>> symbolic_gradient(const PolyObservable& f, std::size_t site) const;

    lie::Algebra g_;
    std::size_t sites_;
};

struct BracketEntry {
    std::size_t a = 0, b = 0;
    Rational max_abs;
};

struct CommutativityReport {
    std::size_t functions = 0;
    std::size_t points = 0;
    std::vector<std::string> labels;
    std::vector<BracketEntry> table;  // upper triangle, max over the points
    Rational max_abs;
    /// max |{H_k, random linear observable}| over the coefficients and points.
    Rational negative_control;

    bool commute() const { return sgn(max_abs) == 0; }
};

/// Brackets of all pairs of Hitchin coefficients at the model point and at
/// `random_points` seeded residue tuples with the same framings.
CommutativityReport commutativity_check(const defo::FramedHiggsModel& model, std::size_t random_points,
                                        std::uint64_t seed);

struct FlowOptions {
    double t_end = 1.0;
    std::size_t steps = 10000;
    double tolerance = 1e-8;
    /// Keep every k-th state in the trajectory (0: first and last only).
    std::size_t record_every = 0;
};

struct FlowResult {
    std::vector<double> times;
    std::vector<std::vector<double>> trajectory;  // flattened residue tuples
    std::vector<std::string> labels;
    std::vector<double> initial;                  // Hitchin coefficients at t = 0
    std::vector<double> drift;                    // max relative drift per coefficient
    double max_drift = 0;
    bool accepted = true;
};

/// Relative drift |H(t) - H(0)| / max(|H(0)|, drift_floor).
inline constexpr double drift_floor = 1e-12;

/// Fixed-step RK4 for dA_i/dt = [A_i, grad_i H] in double precision. The sum of the
/// residues is not checked, so single-site diagnostics are allowed.
FlowResult hamiltonian_flow(const lie::Algebra& g, const curve::MarkedCurve& c, const std::vector<Matrix>& start,
                            const PolyObservable& h, const FlowOptions& opt);

}  // namespace hfb::gaudin
