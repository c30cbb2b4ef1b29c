#pragma once

#include "hfb/deformation.hpp"
#include "hfb/polynomial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hfb::spectral {

/// A branch point of the spectral cover over the affine chart.
struct BranchPoint {
    int multiplicity = 1;
    /// Set when the point is rational; otherwise [lo, hi] isolates a real root.
    std::optional<Rational> exact;
    Rational lo, hi;
    double approx = 0;
};

/// Spectral curve det(lambda - theta(z)) = 0 of a genus-0 model with theta =
/// sum A_i / (z - x_i). With P(z) = prod (z - x_j) and mu = P lambda, the curve is
/// mu^r - b_1 mu^{r-1} + ... + (-1)^r b_r with b_k = P^k a_k polynomial, and
/// Delta = disc / P^{r(r-1)}, where disc is a polynomial section of K(D)^{r(r-1)}.
struct SpectralCurveReport {
    std::string group;
    int rank = 0;          // r, the number of sheets
    std::size_t n = 0;
    /// a_k(z) = b_k(z) / P(z)^k, with a_k = e_k(theta) the k-th elementary symmetric
    /// function of the eigenvalues.
    std::vector<upoly::UPoly> b;
    upoly::UPoly denominator;  // P
    upoly::UPoly disc;
    int branch_degree = 0;     // r(r-1)(n-2), the degree of the branch divisor
    int disc_degree = -1;

    bool degenerate = false;   // disc identically zero
    bool unramified_over_d = false;
    bool smooth = false;       // square-free disc and at most a simple branch point at infinity
    std::vector<Rational> disc_at_points;

    std::vector<BranchPoint> real_branch_points;
    int nonreal_branch_points = 0;  // with multiplicity
    int multiplicity_at_infinity = 0;
    /// Branch points with multiplicity: finite plus infinity.
    int branch_count = 0;
    std::optional<long> genus;  // from Riemann-Hurwitz when smooth

    bool in_smooth_unramified_locus() const { return !degenerate && smooth && unramified_over_d; }
};

struct SpectralOptions {
    Rational width{1, 1000000000};
};

/// Requires gl(r) or sl(r) with r in {2, 3} on the projective line.
SpectralCurveReport spectral_data(const defo::FramedHiggsModel& model, const SpectralOptions& opt = {});

/// Discriminant of the monic polynomial mu^r - b_1 mu^{r-1} + ... for r in {2, 3},
/// over polynomial coefficients.
upoly::UPoly discriminant(const std::vector<upoly::UPoly>& b);

/// g_s = r(g - 1) + 1 + r(r - 1)(2g - 2 + n)/2; throws std::logic_error unless it equals
/// the gl(r) fibre dimension.
long spectral_genus(int r, int genus, int n);

/// Yun decomposition p = c * prod f_i^i; entry i - 1 is f_i (constants for absent i).
std::vector<upoly::UPoly> squarefree_decomposition(const upoly::UPoly& p);

/// Real roots of a square-free polynomial, isolated to width at most `width`;
/// rational roots are found exactly.
std::vector<BranchPoint> isolate_real_roots(const upoly::UPoly& p, const Rational& width);

struct TorsorFiberReport {
    std::string group;
    int genus = 0;
    std::size_t n = 0;
    bool in_locus = true;  // smooth and unramified over D
    std::string note;
    std::optional<long> fiber;
    std::optional<long> framed_fiber;
    std::optional<long> relative_fiber;
    std::optional<long> base_dim;
    bool relative_equals_base = false;
};

/// Fibre dimensions of an explicit genus-0 model; only emitted inside the locus.
TorsorFiberReport torsor_fiber_report(const defo::FramedHiggsModel& model, const SpectralCurveReport& s);
/// Formula-level version for any genus.
TorsorFiberReport torsor_fiber_dims(const lie::GroupData& gd, int genus, int n);

}  // namespace hfb::spectral
