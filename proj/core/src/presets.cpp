#include "bousslab/presets.hpp"

#include <cmath>
#include <numbers>

#include "bousslab/dyadic_partition.hpp"
#include "bousslab/norms.hpp"
#include "bousslab/random_fields.hpp"

namespace bousslab {

SpectralField preset_euler_eigen(const Grid& grid) {
    return SpectralField::from_function(grid, [](double x, double y) {
        return std::sin(x) * std::sin(y);
    });
}

SpectralField preset_gaussian_bump(const Grid& grid, double width) {
    const double inv_w2 = 1.0 / (width * width);
    const double pi = std::numbers::pi;
    SpectralField f =
        SpectralField::from_function(grid, [inv_w2, pi](double x, double y) {
            return std::exp((std::cos(x - pi) - 1.0) * inv_w2) *
                   std::exp((std::cos(y - pi) - 1.0) * inv_w2);
        });
    return dealias(f);
}

SpectralField preset_single_block(const Grid& grid, int q, std::uint64_t seed) {
    const DyadicPartition partition(grid);
    RandomFieldSpec spec;
    spec.seed = seed;
    spec.slope = 0.0;
    spec.normalize = RandomFieldSpec::Normalize::None;
    SpectralField f = partition.block(random_field(grid, spec), q);
    const double norm = lp_norm(f, kInfinity);
    if (norm > 0.0)
        f *= 1.0 / norm;
    return f;
}

SpectralField preset_random(const Grid& grid, std::uint64_t seed, double slope) {
    RandomFieldSpec spec;
    spec.seed = seed;
    spec.slope = slope;
    spec.normalize = RandomFieldSpec::Normalize::LinfOne;
    return random_field(grid, spec);
}

VelocityProvider zero_velocity(const Grid& grid) {
    return [grid](double) {
        return VectorField{SpectralField::zero(grid), SpectralField::zero(grid),
                           true};
    };
}

VelocityProvider shear_velocity(const Grid& grid) {
    SpectralField u1 = SpectralField::from_function(
        grid, [](double, double y) { return std::sin(y); });
    return steady_velocity(
        VectorField{std::move(u1), SpectralField::zero(grid), true});
}

VelocityProvider eigenfunction_velocity(const Grid& grid) {
    return steady_velocity(biot_savart(preset_euler_eigen(grid)));
}

VelocityProvider steady_velocity(VectorField v) {
    return [v = std::move(v)](double) { return v; };
}

VelocityProvider random_streamfunction_velocity(const Grid& grid,
                                                std::uint64_t seed) {
    RandomFieldSpec spec;
    spec.seed = seed;
    spec.slope = 3.0;
    spec.normalize = RandomFieldSpec::Normalize::LinfOne;
    return steady_velocity(perp_gradient(random_field(grid, spec)));
}

VelocityProvider pulsating_shear_velocity(const Grid& grid) {
    SpectralField u1 = SpectralField::from_function(
        grid, [](double, double y) { return std::sin(y); });
    const SpectralField zero = SpectralField::zero(grid);
    return [u1 = std::move(u1), zero](double t) {
        SpectralField scaled = u1;
        scaled *= std::cos(t);
        return VectorField{std::move(scaled), zero, true};
    };
}

} // namespace bousslab
