#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bousslab {

/// Square periodic collocation grid [0, L)^2 with n points per axis.
/// Wavenumbers are the integer lattice {-n/2, ..., n/2-1}^2 scaled by 2*pi/L.
class Grid {
  public:
    explicit Grid(int n, double box_length = 2.0 * std::numbers::pi)
        : n_(n), box_length_(box_length) {
        if (n < 16 || (n & (n - 1)) != 0)
            throw std::invalid_argument("Grid: n must be a power of two >= 16");
        if (!(box_length > 0.0))
            throw std::invalid_argument("Grid: box_length must be positive");
    }

    int n() const { return n_; }
    int size() const { return n_ * n_; }
    double box_length() const { return box_length_; }
    double dx() const { return box_length_ / n_; }
    double cell_area() const { return dx() * dx(); }

    /// Scale factor from integer lattice to physical wavenumbers.
    double k_scale() const { return 2.0 * std::numbers::pi / box_length_; }

    /// Signed integer wavenumber for array index along one axis.
    int wave_int(int idx) const { return idx <= n_ / 2 - 1 ? idx : idx - n_; }

    /// Physical wavenumber components and Euclidean magnitude at flat index m.
    double kx(int m) const { return k_scale() * wave_int(m % n_); }
    double ky(int m) const { return k_scale() * wave_int(m / n_); }
    double k_mag(int m) const { return std::hypot(kx(m), ky(m)); }

    /// 2/3-rule cutoff on the integer lattice: modes with
    /// max(|k1|,|k2|) > n/3 are removed by dealiasing.
    int dealias_cutoff() const { return n_ / 3; }

    /// Largest physical |k| guaranteed alias-free and inside the dyadic
    /// coverage ball (Euclidean |k| <= n/3 in box-scaled units).
    double retained_k_max() const { return k_scale() * (n_ / 3.0); }

    double x(int ix) const { return box_length_ * ix / n_; }
    double y(int iy) const { return box_length_ * iy / n_; }

    bool operator==(const Grid&) const = default;

  private:
    int n_;
    double box_length_;
};

} // namespace bousslab
