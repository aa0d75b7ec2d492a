#pragma once

#include <vector>

#include "bousslab/besov.hpp"

namespace bousslab {

/// Trapezoid rule on a strictly increasing time grid.
double integrate_trapezoid(std::span<const double> times,
                           std::span<const double> values);

/// Composite Simpson on a uniform grid (falls back to trapezoid on
/// non-uniform or too-short grids). Used where trapezoid bias matters.
double integrate_simpson(std::span<const double> times,
                         std::span<const double> values);

/// (int |v|^rho dt)^{1/rho}; rho = infinity is the max over samples.
double time_lr_norm(std::span<const double> times,
                    std::span<const double> values, double rho);

/// Per-block time series of ||Delta_q f(t_i)||_{L^p}, the data behind the
/// time-integrated Besov norms.
struct TimeSeriesNorm {
    std::vector<double> times;                // strictly increasing
    std::vector<std::vector<double>> values;  // values[q+1][i], q = -1..q_max
    double p = 2.0;                           // spatial exponent of the data
    double rho = 1.0;                         // default time exponent

    int block_count() const { return static_cast<int>(values.size()); }
    void validate() const;
};

/// || (2^{qs} ||Delta_q f||_{L^rho_T L^p})_q ||_{ell^r}: time integration
/// inside the dyadic sum.
double chemin_lerner_norm(const TimeSeriesNorm& series, const BesovIndex& idx);
double chemin_lerner_norm(const TimeSeriesNorm& series, const BesovIndex& idx,
                          double rho);

/// || ||f||_{B^s_{p,r}} ||_{L^rho_T}: time integration outside.
double mixed_time_norm(const TimeSeriesNorm& series, const BesovIndex& idx);
double mixed_time_norm(const TimeSeriesNorm& series, const BesovIndex& idx,
                       double rho);

} // namespace bousslab
