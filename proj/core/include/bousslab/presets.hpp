#pragma once

#include "bousslab/solvers.hpp"

namespace bousslab {

/// omega = sin x sin y: Laplacian eigenfunction, a steady 2D Euler state.
SpectralField preset_euler_eigen(const Grid& grid);

/// Periodic Gaussian-like bump centered at (pi, pi):
/// exp((cos(x-pi)-1)/w^2) * exp((cos(y-pi)-1)/w^2), peak value 1.
SpectralField preset_gaussian_bump(const Grid& grid, double width = 0.5);

/// Random field confined to dyadic ring q, sup-normalized.
SpectralField preset_single_block(const Grid& grid, int q, std::uint64_t seed);

/// Power-law random field, sup-normalized.
SpectralField preset_random(const Grid& grid, std::uint64_t seed, double slope);

/// Steady providers.
VelocityProvider zero_velocity(const Grid& grid);
VelocityProvider shear_velocity(const Grid& grid);          // (sin y, 0)
VelocityProvider eigenfunction_velocity(const Grid& grid);  // biot_savart(sin x sin y)
VelocityProvider steady_velocity(VectorField v);
VelocityProvider random_streamfunction_velocity(const Grid& grid,
                                                std::uint64_t seed);

/// cos(t) * (sin y, 0): time-dependent but still divergence-free.
VelocityProvider pulsating_shear_velocity(const Grid& grid);

} // namespace bousslab
