#pragma once

#include "bousslab/spectral_field.hpp"

namespace bousslab {

/// Dissipation exponent alpha in (0, 2].
class FractionalOrder {
  public:
    explicit FractionalOrder(double alpha) : alpha_(alpha) {
        if (!(alpha > 0.0) || alpha > 2.0)
            throw std::invalid_argument("FractionalOrder: alpha must be in (0, 2]");
    }
    double value() const { return alpha_; }

  private:
    double alpha_;
};

/// |D|^alpha f: multiply coefficients by |k|^alpha; zero mode -> 0.
SpectralField fractional_laplacian(const SpectralField& f, FractionalOrder alpha);

/// e^{-t |D|^alpha} f; exact identity at t = 0, rejects t < 0.
SpectralField semigroup_apply(const SpectralField& f, FractionalOrder alpha,
                              double t);

/// d/dx (axis 0) or d/dy (axis 1) via the i*k multiplier; the unmatched
/// Nyquist line is zeroed so derivatives of real fields stay real.
SpectralField derivative(const SpectralField& f, int axis);

/// (d/dx f, d/dy f).
VectorField gradient(const SpectralField& f);

/// d/dx u1 + d/dy u2.
SpectralField divergence(const VectorField& v);

/// (-d/dy f, d/dx f); divergence(perp_gradient(f)) == 0 identically.
VectorField perp_gradient(const SpectralField& f);

/// Velocity from vorticity: v_hat(k) = i k^perp / |k|^2 omega_hat(k).
/// Requires zero-mean omega (no stream function on the torus otherwise).
VectorField biot_savart(const SpectralField& omega,
                        double mean_tol = 1e-10);

/// curl of a planar field: d/dx u2 - d/dy u1.
SpectralField curl(const VectorField& v);

/// 2/3-rule truncation: zero modes with max(|k1|,|k2|) > n/3. Idempotent.
SpectralField dealias(const SpectralField& f);
void dealias_in_place(SpectralField& f);

/// Zero modes with Euclidean |k| above k_max (box-scaled units).
SpectralField band_limit(const SpectralField& f, double k_max);

/// Remove the gradient part: u_hat -= k (k . u_hat) / |k|^2.
VectorField leray_project(const VectorField& u);

/// Pointwise collocation product followed by dealiasing.
SpectralField multiply(const SpectralField& a, const SpectralField& b);

/// v . grad(f) with dealiased products.
SpectralField advect(const VectorField& v, const SpectralField& f);

} // namespace bousslab
