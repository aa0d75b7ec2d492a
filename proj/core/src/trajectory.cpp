#include "bousslab/trajectory.hpp"

#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace bousslab {

const TimeSeriesNorm& Trajectory::series(TrackedField field, double p) const {
    const auto it = block_series.find(BlockTrack{field, p});
    if (it == block_series.end())
        throw std::out_of_range("Trajectory::series: block series not tracked");
    return it->second;
}

namespace {

constexpr char kMagic[4] = {'B', 'Q', 'T', 'R'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_raw(std::ostream& os, const T& value) {
    os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_raw(std::istream& is) {
    T value{};
    is.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!is)
        throw std::runtime_error("trajectory read: truncated stream");
    return value;
}

void write_field(std::ostream& os, const SpectralField& f) {
    for (const Complex& c : f.coeffs()) {
        write_raw(os, c.real());
        write_raw(os, c.imag());
    }
}

SpectralField read_field(std::istream& is, const Grid& grid) {
    SpectralField f(grid);
    for (Complex& c : f.coeffs()) {
        const double re = read_raw<double>(is);
        const double im = read_raw<double>(is);
        c = Complex(re, im);
    }
    return f;
}

} // namespace

void write_trajectory(std::ostream& os, const Trajectory& traj) {
    os.write(kMagic, 4);
    write_raw(os, kVersion);
    write_raw(os, static_cast<std::uint32_t>(traj.grid.n()));
    write_raw(os, traj.grid.box_length());
    write_raw(os, traj.alpha);
    write_raw(os, static_cast<std::uint8_t>(traj.diffusion_enabled ? 1 : 0));
    const bool has_omega = !traj.snapshots.empty() &&
                           traj.snapshots.front().omega.has_value();
    write_raw(os, static_cast<std::uint8_t>(has_omega ? 1 : 0));
    write_raw(os, static_cast<std::uint32_t>(traj.snapshots.size()));
    for (const FieldSnapshot& snap : traj.snapshots) {
        write_raw(os, snap.t);
        if (has_omega)
            write_field(os, *snap.omega);
        write_field(os, snap.theta);
    }
}

Trajectory read_trajectory(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("trajectory read: bad magic");
    const auto version = read_raw<std::uint32_t>(is);
    if (version != kVersion)
        throw std::runtime_error("trajectory read: unsupported version " +
                                 std::to_string(version));
    const auto n = read_raw<std::uint32_t>(is);
    const auto box = read_raw<double>(is);
    Trajectory traj;
    traj.grid = Grid(static_cast<int>(n), box);
    traj.alpha = read_raw<double>(is);
    traj.diffusion_enabled = read_raw<std::uint8_t>(is) != 0;
    const bool has_omega = read_raw<std::uint8_t>(is) != 0;
    const auto count = read_raw<std::uint32_t>(is);
    traj.theta0 = SpectralField(traj.grid);
    for (std::uint32_t i = 0; i < count; ++i) {
        FieldSnapshot snap{read_raw<double>(is), std::nullopt,
                           SpectralField(traj.grid)};
        if (has_omega)
            snap.omega = read_field(is, traj.grid);
        snap.theta = read_field(is, traj.grid);
        traj.snapshots.push_back(std::move(snap));
    }
    if (!traj.snapshots.empty()) {
        traj.theta0 = traj.snapshots.front().theta;
        traj.omega0 = traj.snapshots.front().omega;
    }
    return traj;
}

void write_summary_csv(std::ostream& os, const Trajectory& traj) {
    os << "t,theta_linf,omega_linf,omega_lp,V,energy\n";
    const ScalarSeries& s = traj.scalars;
    const auto omega_inf = s.omega_lp.find(kInfinity);
    const auto omega_p = s.omega_lp.find(traj.lp_exponent);
    char buf[160];
    for (std::size_t i = 0; i < s.times.size(); ++i) {
        const double winf =
            omega_inf != s.omega_lp.end() ? omega_inf->second[i] : 0.0;
        const double wp = omega_p != s.omega_lp.end() ? omega_p->second[i] : 0.0;
        std::snprintf(buf, sizeof(buf), "%.15g,%.15g,%.15g,%.15g,%.15g,%.15g\n",
                      s.times[i], s.theta_linf[i], winf, wp, s.v_accum[i],
                      s.energy[i]);
        os << buf;
    }
}

} // namespace bousslab
