#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "bousslab/time_norms.hpp"

namespace bousslab {

enum class TrackedField { Theta, Omega, Velocity, Forcing };

/// Which per-block norm series a run should record.
struct BlockTrack {
    TrackedField field;
    double p;
    auto operator<=>(const BlockTrack&) const = default;
};

/// Per-step scalar diagnostics; all vectors share `times`.
struct ScalarSeries {
    std::vector<double> times;
    std::vector<double> theta_linf;
    std::vector<double> theta_l2;
    std::vector<double> theta_mean;
    std::vector<double> dissipation; // 2 || |D|^{alpha/2} theta ||_{L2}^2
    std::vector<double> energy;      // ||v||_{L2}
    std::vector<double> grad_theta_linf;
    std::vector<double> grad_v_linf;
    std::vector<double> grad_lowblock_v_linf; // ||grad Delta_{-1} v||_inf
    std::vector<double> v_accum;              // int ||grad v||_inf
    std::vector<double> lip_theta_accum;      // int ||grad theta||_inf
    std::map<double, std::vector<double>> omega_lp;   // p -> ||omega||_p
    std::map<double, std::vector<double>> forcing_lp; // p -> ||f||_p
};

struct FieldSnapshot {
    double t;
    std::optional<SpectralField> omega;
    SpectralField theta;
};

struct Trajectory {
    Grid grid{16};
    double alpha = 0.0; // 0 when the dissipation term is disabled
    bool diffusion_enabled = false;
    double lp_exponent = 2.0;

    SpectralField theta0{Grid(16)};
    std::optional<SpectralField> omega0;

    ScalarSeries scalars;
    std::map<BlockTrack, TimeSeriesNorm> block_series;
    std::vector<FieldSnapshot> snapshots;

    double t_end() const { return scalars.times.back(); }
    const TimeSeriesNorm& series(TrackedField field, double p) const;
};

/// Versioned little-endian binary dump of the snapshots
/// (magic "BQTR", u32 version, grid header, coefficient arrays).
void write_trajectory(std::ostream& os, const Trajectory& traj);
Trajectory read_trajectory(std::istream& is);

/// Summary CSV: t, ||theta||_inf, ||omega||_inf, ||omega||_p, V(t), energy.
void write_summary_csv(std::ostream& os, const Trajectory& traj);

} // namespace bousslab
