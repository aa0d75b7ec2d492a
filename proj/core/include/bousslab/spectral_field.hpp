#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "bousslab/grid.hpp"

namespace bousslab {

using Complex = std::complex<double>;

/// Real scalar field on a periodic grid, stored as complex Fourier
/// coefficients f_hat(k), flat layout m = iy*n + ix.
class SpectralField {
  public:
    explicit SpectralField(const Grid& grid)
        : grid_(grid), coeffs_(static_cast<std::size_t>(grid.size())) {}

    static SpectralField zero(const Grid& grid) { return SpectralField(grid); }

    /// Transform collocation values; enforces Hermitian symmetry exactly.
    static SpectralField from_physical(const Grid& grid,
                                       std::span<const double> values);

    /// Sample f(x,y) on the collocation grid, then transform.
    static SpectralField from_function(
        const Grid& grid, const std::function<double(double, double)>& f);

    std::vector<double> to_physical() const;

    const Grid& grid() const { return grid_; }
    std::span<Complex> coeffs() { return coeffs_; }
    std::span<const Complex> coeffs() const { return coeffs_; }

    /// Coefficient at integer wavenumber (kx, ky); indices wrap mod n.
    Complex& at(int kx_int, int ky_int);
    const Complex& at(int kx_int, int ky_int) const;

    double mean() const { return coeffs_[0].real(); }
    void set_mean(double value) { coeffs_[0] = Complex(value, 0.0); }

    /// Max relative deviation from coeffs(-k) = conj(coeffs(k)).
    double hermitian_defect() const;
    bool is_real(double tol = 1e-12) const { return hermitian_defect() <= tol; }

    /// Average coefficients with their reflected conjugates, making the
    /// represented field exactly real.
    void enforce_hermitian();

    double max_abs_coeff() const;

    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator-=(const SpectralField& other);
    SpectralField& operator*=(double scalar);

    friend SpectralField operator+(SpectralField a, const SpectralField& b) {
        return a += b;
    }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) {
        return a -= b;
    }
    friend SpectralField operator*(double s, SpectralField f) { return f *= s; }

  private:
    Grid grid_;
    std::vector<Complex> coeffs_;
};

/// Pair of scalar fields (v1, v2) on one grid.
struct VectorField {
    SpectralField u1;
    SpectralField u2;
    bool divergence_free = false;

    const Grid& grid() const { return u1.grid(); }

    /// max_k |k1*u1_hat + k2*u2_hat| relative to max coefficient magnitude.
    double divergence_defect() const;
};

} // namespace bousslab
