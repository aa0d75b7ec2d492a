#pragma once

#include <iosfwd>
#include <vector>

#include "bousslab/dyadic_partition.hpp"
#include "bousslab/norms.hpp"

namespace bousslab {

/// Indices of B^s_{p,r}: regularity s, integrability p, summation r.
struct BesovIndex {
    double s = 0.0;
    double p = 2.0;
    double r = 1.0;

    BesovIndex(double s_, double p_, double r_) : s(s_), p(p_), r(r_) {
        if (p < 1.0 || r < 1.0)
            throw std::invalid_argument("BesovIndex: p and r must be >= 1");
    }
};

/// ell^r of a nonnegative sequence; r = infinity is the max.
double ell_r(std::span<const double> values, double r);

/// ||Delta_q f||_{L^p} for q = -1 .. q_max, one inverse transform per block.
std::vector<double> block_lp_norms(const DyadicPartition& partition,
                                   const SpectralField& f, double p);

/// Same, for several p at once (one inverse transform per block total).
std::vector<std::vector<double>> block_lp_norms(
    const DyadicPartition& partition, const SpectralField& f,
    std::span<const double> ps);

/// Block norms of a vector field using the pointwise Euclidean magnitude.
std::vector<double> block_lp_norms(const DyadicPartition& partition,
                                   const VectorField& v, double p);

/// ||f||_{B^s_{p,r}} = || 2^{qs} ||Delta_q f||_{L^p} ||_{ell^r}.
double besov_norm(const SpectralField& f, const BesovIndex& idx,
                  const DyadicPartition& partition);

double besov_norm(const VectorField& v, const BesovIndex& idx,
                  const DyadicPartition& partition);

/// Write rows "q,weighted_norm" with weight 2^{qs}, for plotting.
void write_block_norms_csv(std::ostream& os, const DyadicPartition& partition,
                           const SpectralField& f, const BesovIndex& idx);

} // namespace bousslab
