#pragma once

#include <vector>

#include "bousslab/spectral_field.hpp"

namespace bousslab {

/// Dyadic partition of unity on frequency space and the induced block
/// operators.
///
/// The low-frequency profile chi is 1 on [0, 3/4], 0 on [4/3, inf) and a
/// smooth bump transition in between; the annulus profile is the telescoping
/// difference phi(xi) = chi(xi/2) - chi(xi), supported in [3/4, 8/3]. The
/// telescoping choice makes
///   chi(|k|) + sum_{q=0}^{Q} phi(2^{-q}|k|) = chi(2^{-(Q+1)}|k|)
/// an identity, so the partition sums to 1 exactly wherever the last low-pass
/// profile has saturated.
///
/// Blocks run over q in {-1, 0, ..., q_max} with q_max the largest q such
/// that (3/4)*2^q <= n/3 (in box-scaled units); the covered region is the
/// Euclidean ball |k| <= (3/2)*2^q_max, which contains |k| <= n/3.
class DyadicPartition {
  public:
    struct Params {
        double sharpness = 1.0; // exponent scale of the bump exp(-s/t)
    };

    explicit DyadicPartition(const Grid& grid) : DyadicPartition(grid, Params{}) {}
    DyadicPartition(const Grid& grid, Params params);

    const Grid& grid() const { return grid_; }
    int q_max() const { return q_max_; }

    /// Radial profiles, evaluated analytically.
    double chi(double xi) const;
    double phi(double xi) const { return chi(0.5 * xi) - chi(xi); }

    /// Frequency block Delta_q f: phi(2^{-q}|k|) f_hat for q >= 0,
    /// chi(|k|) f_hat for q = -1. Rejects q outside {-1, ..., q_max}.
    SpectralField block(const SpectralField& f, int q) const;

    /// Low-pass S_q f = chi(2^{-q}|k|) f_hat, q >= 0.
    SpectralField low_pass(const SpectralField& f, int q) const;

    /// All blocks q = -1 .. q_max, in order.
    std::vector<SpectralField> decompose(const SpectralField& f) const;

    /// Multiplier mask for block q (flat grid layout), q in {-1..q_max}.
    std::span<const double> block_mask(int q) const;

    /// max over grid frequencies with |k| <= n/3 of |chi + sum phi - 1|,
    /// the summation evaluated the way block() applies it.
    double partition_defect() const;

  private:
    Grid grid_;
    Params params_;
    int q_max_;
    std::vector<std::vector<double>> block_masks_;   // index q+1
    std::vector<std::vector<double>> lowpass_masks_; // index q
};

} // namespace bousslab
