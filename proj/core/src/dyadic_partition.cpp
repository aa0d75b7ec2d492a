#include "bousslab/dyadic_partition.hpp"

#include <cmath>
#include <stdexcept>

namespace bousslab {

namespace {
constexpr double kChiFlatEnd = 0.75;      // chi == 1 below this
constexpr double kChiSupportEnd = 4.0 / 3.0; // chi == 0 above this
} // namespace

DyadicPartition::DyadicPartition(const Grid& grid, Params params)
    : grid_(grid), params_(params) {
    const double k_ball = grid.retained_k_max();
    q_max_ = 0;
    while (kChiFlatEnd * std::pow(2.0, q_max_ + 1) <= k_ball)
        ++q_max_;

    block_masks_.resize(static_cast<std::size_t>(q_max_) + 2);
    lowpass_masks_.resize(static_cast<std::size_t>(q_max_) + 1);
    const int size = grid.size();
    for (int q = -1; q <= q_max_; ++q) {
        auto& mask = block_masks_[static_cast<std::size_t>(q + 1)];
        mask.resize(static_cast<std::size_t>(size));
        const double scale = q < 0 ? 1.0 : std::pow(2.0, -q);
        for (int m = 0; m < size; ++m) {
            const double xi = scale * grid.k_mag(m);
            mask[static_cast<std::size_t>(m)] = q < 0 ? chi(xi) : phi(xi);
        }
    }
    for (int q = 0; q <= q_max_; ++q) {
        auto& mask = lowpass_masks_[static_cast<std::size_t>(q)];
        mask.resize(static_cast<std::size_t>(size));
        const double scale = std::pow(2.0, -q);
        for (int m = 0; m < size; ++m)
            mask[static_cast<std::size_t>(m)] = chi(scale * grid.k_mag(m));
    }
}

double DyadicPartition::chi(double xi) const {
    if (xi <= kChiFlatEnd)
        return 1.0;
    if (xi >= kChiSupportEnd)
        return 0.0;
    // smooth step from 1 to 0 built from exp(-s/t)
    const double t = (xi - kChiFlatEnd) / (kChiSupportEnd - kChiFlatEnd);
    const double s = params_.sharpness;
    const double a = std::exp(-s / t);
    const double b = std::exp(-s / (1.0 - t));
    return b / (a + b);
}

SpectralField DyadicPartition::block(const SpectralField& f, int q) const {
    if (q < -1 || q > q_max_)
        throw std::out_of_range("DyadicPartition::block: q out of range");
    const auto& mask = block_masks_[static_cast<std::size_t>(q + 1)];
    SpectralField out = f;
    auto c = out.coeffs();
    for (std::size_t m = 0; m < mask.size(); ++m)
        c[m] *= mask[m];
    return out;
}

SpectralField DyadicPartition::low_pass(const SpectralField& f, int q) const {
    if (q < 0 || q > q_max_)
        throw std::out_of_range("DyadicPartition::low_pass: q out of range");
    const auto& mask = lowpass_masks_[static_cast<std::size_t>(q)];
    SpectralField out = f;
    auto c = out.coeffs();
    for (std::size_t m = 0; m < mask.size(); ++m)
        c[m] *= mask[m];
    return out;
}

std::vector<SpectralField> DyadicPartition::decompose(
    const SpectralField& f) const {
    std::vector<SpectralField> blocks;
    blocks.reserve(static_cast<std::size_t>(q_max_) + 2);
    for (int q = -1; q <= q_max_; ++q)
        blocks.push_back(block(f, q));
    return blocks;
}

std::span<const double> DyadicPartition::block_mask(int q) const {
    if (q < -1 || q > q_max_)
        throw std::out_of_range("DyadicPartition::block_mask: q out of range");
    return block_masks_[static_cast<std::size_t>(q + 1)];
}

double DyadicPartition::partition_defect() const {
    const double k_ball = grid_.retained_k_max();
    double worst = 0.0;
    for (int m = 0; m < grid_.size(); ++m) {
        if (grid_.k_mag(m) > k_ball)
            continue;
        double sum = 0.0;
        for (int q = -1; q <= q_max_; ++q)
            sum += block_masks_[static_cast<std::size_t>(q + 1)]
                               [static_cast<std::size_t>(m)];
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return worst;
}

} // namespace bousslab
