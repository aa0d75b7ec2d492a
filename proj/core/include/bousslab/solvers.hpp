#pragma once

#include <functional>

#include "bousslab/fourier_ops.hpp"
#include "bousslab/source_function.hpp"
#include "bousslab/trajectory.hpp"

namespace bousslab {

/// Thrown when a run goes numerically bad (NaN, CFL collapse, source
/// overflow). The CLI maps this to exit code 2.
class NumericalAbort : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct IntegratorConfig {
    double dt = 0.01;
    double cfl_safety = 0.5; // dt <= cfl_safety * dx / max(1, ||v||_inf)
    double t_end = 1.0;
    int snapshot_stride = 1; // scalar diagnostics every k-th step
    int block_stride = 1;    // block-norm series every k-th step
    int field_stride = 0;    // full-field snapshots; 0 = endpoints only
    double lp_exponent = 2.0;
    std::vector<double> omega_norm_ps{2.0, kInfinity};
    std::vector<BlockTrack> block_tracks;

    void validate() const;
};

using VelocityProvider = std::function<VectorField(double)>;
using ForcingProvider = std::function<SpectralField(double)>;

/// d/dx F2(theta) - d/dy F1(theta): pointwise evaluation on the collocation
/// grid, spectral derivatives, dealiased.
SpectralField evaluate_source(const SpectralField& theta,
                              const SourceFunction& F);

/// Integrate d/dt theta + v.grad theta + |D|^alpha theta = f with prescribed
/// divergence-free velocity, by integrating-factor RK4 (the |D|^alpha part is
/// applied exactly per stage). alpha = nullopt disables dissipation (pure
/// transport). forcing may be null.
Trajectory solve_transport_diffusion(const SpectralField& theta0,
                                     const VelocityProvider& velocity,
                                     const ForcingProvider& forcing,
                                     std::optional<FractionalOrder> alpha,
                                     const IntegratorConfig& cfg);

/// Integrate the coupled vorticity-temperature system
///   d/dt omega + v.grad omega = d/dx F2(theta) - d/dy F1(theta)
///   d/dt theta + v.grad theta + |D|^alpha theta = 0,  v = biot_savart(omega).
/// The mean of omega0 is projected out.
Trajectory solve_boussinesq(const SpectralField& omega0,
                            const SpectralField& theta0,
                            const SourceFunction& F, FractionalOrder alpha,
                            const IntegratorConfig& cfg);

struct TwinRunInit {
    SpectralField omega;
    SpectralField theta;
};

/// Difference growth between two runs advanced in lockstep, against the
/// Gronwall-type envelope
///   C * exp(V1(t) + V2(t)) * exp(t * ||grad theta_1||_{L1_t Linf}) * delta0.
struct TwinRunReport {
    std::vector<double> times;
    std::vector<double> v_diff_lp;     // ||v2 - v1||_{L^p}(t)
    std::vector<double> theta_diff_lp; // ||theta2 - theta1||_{L^p}(t)
    std::vector<double> envelope;      // fitted_C * shape(t) * delta0
    double p = 2.0;
    double delta0 = 0.0;
    double theta_diff_l1t_lp = 0.0;
    double fitted_c = 0.0; // smallest C making the envelope dominate
    double fitted_a = 0.0; // log-linear fit v_diff ~ A * delta0 * e^{B t}
    double fitted_b = 0.0;
};

TwinRunReport twin_run_stability(const TwinRunInit& run1,
                                 const TwinRunInit& run2,
                                 const SourceFunction& F, FractionalOrder alpha,
                                 const IntegratorConfig& cfg);

/// Linear interpolation of a sampled series (clamped at the ends).
double interp_at(std::span<const double> times, std::span<const double> values,
                 double t);

} // namespace bousslab
