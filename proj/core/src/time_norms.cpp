#include "bousslab/time_norms.hpp"

#include <cmath>
#include <stdexcept>

namespace bousslab {

double integrate_trapezoid(std::span<const double> times,
                           std::span<const double> values) {
    if (times.size() != values.size())
        throw std::invalid_argument("integrate_trapezoid: size mismatch");
    double sum = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i)
        sum += 0.5 * (times[i] - times[i - 1]) * (values[i] + values[i - 1]);
    return sum;
}

double integrate_simpson(std::span<const double> times,
                         std::span<const double> values) {
    const std::size_t n = times.size();
    if (n != values.size())
        throw std::invalid_argument("integrate_simpson: size mismatch");
    if (n < 3)
        return integrate_trapezoid(times, values);
    const double h = times[1] - times[0];
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs((times[i] - times[i - 1]) - h) > 1e-12 * std::max(h, 1.0))
            return integrate_trapezoid(times, values);

    const std::size_t intervals = n - 1;
    const std::size_t pairs = intervals / 2;
    double sum = 0.0;
    for (std::size_t j = 0; j < pairs; ++j) {
        const std::size_t i = 2 * j;
        sum += h / 3.0 * (values[i] + 4.0 * values[i + 1] + values[i + 2]);
    }
    if (intervals % 2 == 1) // odd tail: trapezoid on the last interval
        sum += 0.5 * h * (values[n - 2] + values[n - 1]);
    return sum;
}

double time_lr_norm(std::span<const double> times,
                    std::span<const double> values, double rho) {
    if (rho < 1.0)
        throw std::invalid_argument("time_lr_norm: rho must be >= 1");
    if (rho == kInfinity) {
        double best = 0.0;
        for (double v : values)
            best = std::max(best, std::abs(v));
        return best;
    }
    std::vector<double> powered(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        powered[i] = rho == 1.0 ? std::abs(values[i])
                                : std::pow(std::abs(values[i]), rho);
    const double integral = integrate_trapezoid(times, powered);
    return rho == 1.0 ? integral : std::pow(integral, 1.0 / rho);
}

void TimeSeriesNorm::validate() const {
    if (times.empty() || values.empty())
        throw std::invalid_argument("TimeSeriesNorm: empty series");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("TimeSeriesNorm: times not increasing");
    for (const auto& row : values)
        if (row.size() != times.size())
            throw std::invalid_argument("TimeSeriesNorm: ragged values");
}

double chemin_lerner_norm(const TimeSeriesNorm& series, const BesovIndex& idx) {
    return chemin_lerner_norm(series, idx, series.rho);
}

double chemin_lerner_norm(const TimeSeriesNorm& series, const BesovIndex& idx,
                          double rho) {
    series.validate();
    std::vector<double> per_block(series.values.size());
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        const int q = static_cast<int>(i) - 1;
        per_block[i] = std::pow(2.0, q * idx.s) *
                       time_lr_norm(series.times, series.values[i], rho);
    }
    return ell_r(per_block, idx.r);
}

double mixed_time_norm(const TimeSeriesNorm& series, const BesovIndex& idx) {
    return mixed_time_norm(series, idx, series.rho);
}

double mixed_time_norm(const TimeSeriesNorm& series, const BesovIndex& idx,
                       double rho) {
    series.validate();
    std::vector<double> besov_at_time(series.times.size());
    std::vector<double> weighted(series.values.size());
    for (std::size_t t = 0; t < series.times.size(); ++t) {
        for (std::size_t i = 0; i < series.values.size(); ++i) {
            const int q = static_cast<int>(i) - 1;
            weighted[i] = std::pow(2.0, q * idx.s) * series.values[i][t];
        }
        besov_at_time[t] = ell_r(weighted, idx.r);
    }
    return time_lr_norm(series.times, besov_at_time, rho);
}

} // namespace bousslab
