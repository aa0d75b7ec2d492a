#pragma once

#include <cstdint>
#include <vector>

#include "bousslab/spectral_field.hpp"

namespace bousslab {

/// Power-law random fields: coefficient amplitude |k|^{-slope} with uniform
/// random phases, Hermitian-symmetrized, zero mean, band-limited to the
/// Euclidean ball |k| <= n/3. Bit-reproducible for a given seed (the uniform
/// variates come from an explicit 53-bit mapping of mt19937_64 output).
struct RandomFieldSpec {
    std::uint64_t seed = 7;
    double slope = 2.0;
    double k_min = 1.0;
    double k_max = 0.0; // 0 = grid ball cutoff n/3
    enum class Normalize { None, LinfOne, L2One } normalize = Normalize::L2One;
};

SpectralField random_field(const Grid& grid, const RandomFieldSpec& spec);

/// count fields with seeds spec.seed, spec.seed+1, ...
std::vector<SpectralField> random_ensemble(const Grid& grid,
                                           const RandomFieldSpec& spec,
                                           int count);

/// Uniform double in [0, 1) from the top 53 bits of the engine output.
double uniform01(std::uint64_t raw);

} // namespace bousslab
