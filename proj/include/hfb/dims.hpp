#pragma once

#include "hfb/lie.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hfb::dims {

/// Dimension-only framing input. Empty `dim_h` / `dim_t` mean zero at every point.
struct FramingDims {
    std::vector<int> dim_h;
    int dim_z_h = 0;
    std::vector<int> dim_t;
    /// dim Z_{H_x}(G) per point, when supplied.
    std::vector<int> dim_z_hx;
};

/// Dims read off explicit framings; Z_h = (intersection of the h_x) intersected with Z(g).
FramingDims framing_dims(const lie::Algebra& g, const std::vector<lie::Framing>& framings);

long dim_moduli_higgs(const lie::GroupData& gd, int genus, int n);
long dim_moduli_framed(const lie::GroupData& gd, int genus, int n, const FramingDims& f);
/// N by both closed forms; throws std::logic_error if they disagree.
long hitchin_base_dim(const lie::GroupData& gd, int genus, int n);
long fiber_dim(const lie::GroupData& gd, int genus, int n);
/// Same expression as fiber_dim without the genus >= 1 hypothesis (for diagnostics at genus 0).
long fiber_dim_formula(const lie::GroupData& gd, int genus, int n);

struct TorsorDims {
    long framed_group = 0;    // dim G^n / Z(G)
    long relative_group = 0;  // dim T^n / Z(G)
    /// Torus torsor for general framings. "unsummed" keeps a single Z_{H_x} term (only
    /// defined when every point supplies the same value); "summed" sums it over D.
    std::optional<long> general_group_unsummed;
    std::optional<long> general_group_summed;
    std::optional<long> general_total_unsummed;  // needs the genus for N
    std::optional<long> general_total_summed;
    std::string note;
};

TorsorDims torsor_dims(const lie::GroupData& gd, int n, const FramingDims& f = {},
                       std::optional<int> genus = std::nullopt);

struct Check {
    std::string name;
    bool asserted = true;
    bool passed = true;
    long lhs = 0;
    long rhs = 0;
    long discrepancy = 0;
    std::string provenance;
};

struct DimReport {
    std::string group;
    int genus = 0;
    int n = 0;
    FramingDims framing;
    long dim_mh = 0;
    long dim_mfh = 0;
    long base_dim = 0;
    long fiber = 0;
    long relative_fiber = 0;
    TorsorDims torsor;
    std::vector<Check> checks;

    bool all_asserted_pass() const;
};

DimReport consistency_audit(const lie::GroupData& gd, int genus, int n, const FramingDims& f = {});

}  // namespace hfb::dims
