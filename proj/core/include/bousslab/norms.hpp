#pragma once

#include <limits>
#include <span>

#include "bousslab/spectral_field.hpp"

namespace bousslab {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// L^p norm by rectangle-rule quadrature on the collocation grid
/// (spectrally exact for trig polynomials); p = infinity is the grid max.
/// Rejects p < 1.
double lp_norm(const SpectralField& f, double p);

/// Same, for already-transformed collocation values.
double lp_norm_physical(std::span<const double> values, const Grid& grid,
                        double p);

/// L^2 norm from the spectral side: sqrt(L^2 * sum |f_hat|^2).
double parseval_l2(const SpectralField& f);

/// L^p norm of a vector field using the pointwise Euclidean magnitude.
double lp_norm(const VectorField& v, double p);

/// sup over the grid of max_ij |d v_j / d x_i|.
double grad_sup_norm(const VectorField& v);

/// sup over the grid of |grad f| (Euclidean).
double grad_sup_norm(const SpectralField& f);

} // namespace bousslab
