#pragma once

#include "hfb/curve.hpp"
#include "hfb/lie.hpp"

#include <memory>
#include <string>
#include <vector>

namespace hfb::defo {

/// Framed Higgs field on the trivial bundle over P^1:
/// theta(z) = sum_i A_i dz / (z - x_i), with A_i in the annihilator of h_{x_i}.
struct FramedHiggsModel {
    lie::Algebra g;
    curve::MarkedCurve curve;
    std::vector<lie::Framing> framings;
    std::vector<Matrix> residues;

    /// Throws std::invalid_argument when a residue leaves its annihilator or the
    /// residues do not sum to zero.
    void validate() const;
};

FramedHiggsModel make_model(const lie::Algebra& g, const curve::MarkedCurve& c, std::vector<lie::Framing> framings,
                            std::vector<Matrix> residues);

/// Two-term complex F0 -> F1 with differential [theta, .], presented by the total
/// complex  G0 -> Q0 + G1 -> Q1  of the Laurent-tail presentations.
class ComplexModel {
public:
    ComplexModel(std::shared_ptr<const FramedHiggsModel> model, std::string name, const curve::SheafSpec& f0,
                 const curve::SheafSpec& f1, int bound);

    const std::string& name() const { return name_; }
    const FramedHiggsModel& model() const { return *model_; }
    const curve::Presentation& pres0() const { return pres0_; }
    const curve::Presentation& pres1() const { return pres1_; }

    const Matrix& f_global() const { return f_global_; }  // G1 x G0
    const Matrix& f_tail() const { return f_tail_; }      // T1 x T0
    const Matrix& f_quotient() const { return f_quot_; }  // Q1 x Q0
    const Matrix& d0() const { return d0_; }
    const Matrix& d1() const { return d1_; }

    std::size_t tot1_dim() const { return d1_.cols(); }
    std::size_t h0() const { return h0_; }
    std::size_t h1() const { return basis_.cols(); }
    std::size_t h2() const { return h2_; }
    long euler_expected() const;

    /// Columns are cocycle representatives in Tot^1 = Q0 + G1: the H^0(F1) block
    /// first, then classes from ker f_Q, then the remaining cocycles.
    const Matrix& h1_basis() const { return basis_; }
    bool is_cocycle(const Vec& z) const;
    /// Coordinates of the class of each column of `cocycles` in h1_basis().
    Matrix classes_of(const Matrix& cocycles) const;

    /// Expansion of theta at point p, as ad-matrices on coordinates, for levels lo..hi.
    std::vector<Matrix> theta_ad(std::size_t p, int hi) const;
    int theta_lo(std::size_t p) const { return p == model_->curve.infinity() ? 2 : -1; }

private:
    std::shared_ptr<const FramedHiggsModel> model_;
    std::string name_;
    curve::Presentation pres0_;
    curve::Presentation pres1_;
    Matrix f_global_, f_tail_, f_quot_, d0_, d1_;
    std::size_t h0_ = 0;
    std::size_t h2_ = 0;
    Matrix basis_;
};

/// The twisted complex ad -> ad K(D), the framed complex (values in h) -> (residues
/// in the annihilator), and the Serre dual of the twisted one, ad(-D) -> ad K.
struct Complexes {
    std::shared_ptr<const FramedHiggsModel> model;
    int bound = 0;
    ComplexModel twisted;
    ComplexModel framed;
    ComplexModel twisted_dual;
};

Complexes build_complexes(const FramedHiggsModel& model);

/// Sheaf specs (in algebra coordinates) of each complex.
std::pair<curve::SheafSpec, curve::SheafSpec> twisted_specs(const FramedHiggsModel& model);
std::pair<curve::SheafSpec, curve::SheafSpec> framed_specs(const FramedHiggsModel& model);
std::pair<curve::SheafSpec, curve::SheafSpec> twisted_dual_specs(const FramedHiggsModel& model);

/// Number of (point, h-basis) pairs whose bracket with the residue leaves the annihilator.
std::size_t subsheaf_mapping_failures(const FramedHiggsModel& model);

/// Tot^1 matrix of the map induced by a termwise inclusion of complexes.
Matrix inclusion_cochain_map(const ComplexModel& from, const ComplexModel& to);
/// Matrix of the induced map on H^1 in the chosen bases.
Matrix induced_map(const ComplexModel& from, const ComplexModel& to);

/// Cup-product pairing of Tot^1 cocycles of x and y, where the terms of y are the
/// Serre duals of the terms of x (up to swapping):
/// sum over D and infinity of Res [ s(c_a, b_b) - s(b_a, c_b) + s(b_a, [theta, b_b]) ].
Rational pair_cocycles(const ComplexModel& x, const Vec& a, const ComplexModel& y, const Vec& b);
/// Pairing matrix between the H^1 bases of x and y.
Matrix pairing_matrix(const ComplexModel& x, const ComplexModel& y);

struct HypercohResult {
    std::string complex;
    std::size_t h0 = 0, h1 = 0, h2 = 0;
    long euler_expected = 0;
    bool euler_ok = false;
    Matrix basis;
};

HypercohResult hypercoh(const ComplexModel& c);

/// Gram matrix of Phi on H^1 of the framed complex. Throws std::logic_error when a
/// coboundary perturbation changes the pairing (an assembly bug).
Matrix symplectic_matrix(const ComplexModel& framed);
/// Matrix of P: H^1(twisted dual) -> H^1(twisted).
Matrix poisson_matrix(const Complexes& cx);

struct PoissonIdentityResult {
    std::size_t phi_rank = 0;
    bool phi_invertible = false;
    bool phi_skew = false;
    Matrix d_phi;       // H^1(framed) -> H^1(twisted)
    Matrix e;           // H^1(twisted dual) -> H^1(framed)
    Matrix p;           // H^1(twisted dual) -> H^1(twisted)
    Matrix serre;       // pairing H^1(twisted) x H^1(twisted dual)
    Matrix phi;
    Matrix residual;    // d_phi Phi^{-1} d_phi^T S - P
    Matrix compatibility;  // d_phi^T S - Phi E
    Matrix corrupted_residual;  // same with the sign of the dual map flipped
    /// Kernel of Phi when it is singular.
    Matrix degenerate_directions;

    bool holds() const { return phi_invertible && residual.is_zero() && compatibility.is_zero(); }
};

PoissonIdentityResult verify_poisson_identity(const Complexes& cx);
PoissonIdentityResult verify_poisson_identity(const FramedHiggsModel& model);

}  // namespace hfb::defo
