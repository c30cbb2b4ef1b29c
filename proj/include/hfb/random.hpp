#pragma once

#include "hfb/lie.hpp"

#include <cstdint>
#include <random>

namespace hfb {

/// Seeded source of small-height rationals. Only the raw 64-bit output of
/// mt19937_64 is used, so streams are identical across platforms.
class RationalRng {
public:
    explicit RationalRng(std::uint64_t seed, int height = 10) : engine_(seed), height_(height) {}

    /// p/q with |p| <= height and 1 <= q <= height.
    Rational next();
    /// Nonzero variant of next().
    Rational next_nonzero();
    std::uint64_t raw() { return engine_(); }
    int height() const { return height_; }

    Matrix matrix(std::size_t rows, std::size_t cols);
    Matrix invertible(std::size_t n);
    Matrix element(const lie::Algebra& g);
    /// Random element of span(basis).
    Matrix combination(const lie::Algebra& g, const std::vector<Matrix>& basis);

private:
    std::mt19937_64 engine_;
    int height_;
};

/// Random residues A_i in the annihilators `perps[i]` with sum zero.
std::vector<Matrix> random_residues(const lie::Algebra& g, const std::vector<std::vector<Matrix>>& perps,
                                    RationalRng& rng);

}  // namespace hfb
