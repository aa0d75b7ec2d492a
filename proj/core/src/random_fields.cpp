#include "bousslab/random_fields.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "bousslab/norms.hpp"

namespace bousslab {

double uniform01(std::uint64_t raw) {
    return static_cast<double>(raw >> 11) * 0x1.0p-53;
}

SpectralField random_field(const Grid& grid, const RandomFieldSpec& spec) {
    const int cut = grid.dealias_cutoff();
    const double k_ball = spec.k_max > 0.0 ? spec.k_max : grid.retained_k_max();
    std::mt19937_64 rng(spec.seed);
    SpectralField f(grid);

    // Half-plane sweep in a fixed order; the mirror mode gets the conjugate.
    for (int ky = 0; ky <= cut; ++ky) {
        for (int kx = -cut; kx <= cut; ++kx) {
            if (ky == 0 && kx <= 0)
                continue;
            const double mag = grid.k_scale() * std::hypot(kx, ky);
            const double phase =
                2.0 * std::numbers::pi * uniform01(rng()); // consume in order
            if (mag < spec.k_min * grid.k_scale() || mag > k_ball)
                continue;
            const double amp = std::pow(mag, -spec.slope);
            const Complex c = std::polar(amp, phase);
            f.at(kx, ky) = c;
            f.at(-kx, -ky) = std::conj(c);
        }
    }

    switch (spec.normalize) {
    case RandomFieldSpec::Normalize::None:
        break;
    case RandomFieldSpec::Normalize::LinfOne: {
        const double norm = lp_norm(f, kInfinity);
        if (norm > 0.0)
            f *= 1.0 / norm;
        break;
    }
    case RandomFieldSpec::Normalize::L2One: {
        const double norm = parseval_l2(f);
        if (norm > 0.0)
            f *= 1.0 / norm;
        break;
    }
    }
    return f;
}

std::vector<SpectralField> random_ensemble(const Grid& grid,
                                           const RandomFieldSpec& spec,
                                           int count) {
    if (count < 1)
        throw std::invalid_argument("random_ensemble: count must be >= 1");
    std::vector<SpectralField> fields;
    fields.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        RandomFieldSpec s = spec;
        s.seed = spec.seed + static_cast<std::uint64_t>(i);
        fields.push_back(random_field(grid, s));
    }
    return fields;
}

} // namespace bousslab
