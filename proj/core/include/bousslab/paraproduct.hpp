#pragma once

#include "bousslab/dyadic_partition.hpp"
#include "bousslab/fourier_ops.hpp"

namespace bousslab {

/// The three pieces of u*v = T_u v + T_v u + R(u,v).
struct BonyDecomposition {
    SpectralField low_high;  // T_u v = sum_q S_{q-1}u Delta_q v
    SpectralField high_low;  // T_v u
    SpectralField remainder; // R(u,v) = sum_{|q-q'|<=1} Delta_q u Delta_{q'} v
};

/// Paraproduct split of the (dealiased) product. Same-grid inputs only.
BonyDecomposition bony_decompose(const DyadicPartition& partition,
                                 const SpectralField& u,
                                 const SpectralField& v);

/// [Delta_q, v.grad] u = Delta_q(v.grad u) - v.grad(Delta_q u), products
/// dealiased. Requires div v = 0.
SpectralField advection_commutator(const DyadicPartition& partition, int q,
                                   const VectorField& v,
                                   const SpectralField& u,
                                   double div_tol = 1e-8);

} // namespace bousslab
