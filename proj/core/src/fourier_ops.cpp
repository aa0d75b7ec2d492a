#include "bousslab/fourier_ops.hpp"

#include <cmath>

namespace bousslab {

SpectralField derivative(const SpectralField& f, int axis) {
    const Grid& g = f.grid();
    const int n = g.n();
    SpectralField out(g);
    auto src = f.coeffs();
    auto dst = out.coeffs();
    for (int m = 0; m < g.size(); ++m) {
        const int idx = axis == 0 ? m % n : m / n;
        if (g.wave_int(idx) == -n / 2) {
            dst[m] = Complex(0.0, 0.0);
            continue;
        }
        const double k = axis == 0 ? g.kx(m) : g.ky(m);
        dst[m] = Complex(0.0, k) * src[m];
    }
    return out;
}

SpectralField fractional_laplacian(const SpectralField& f, FractionalOrder alpha) {
    const Grid& g = f.grid();
    SpectralField out(g);
    auto src = f.coeffs();
    auto dst = out.coeffs();
    const double a = alpha.value();
    dst[0] = Complex(0.0, 0.0);
    for (int m = 1; m < g.size(); ++m)
        dst[m] = std::pow(g.k_mag(m), a) * src[m];
    return out;
}

SpectralField semigroup_apply(const SpectralField& f, FractionalOrder alpha,
                              double t) {
    if (t < 0.0)
        throw std::invalid_argument("semigroup_apply: t must be >= 0");
    if (t == 0.0)
        return f;
    const Grid& g = f.grid();
    SpectralField out(g);
    auto src = f.coeffs();
    auto dst = out.coeffs();
    const double a = alpha.value();
    dst[0] = src[0];
    for (int m = 1; m < g.size(); ++m)
        dst[m] = std::exp(-t * std::pow(g.k_mag(m), a)) * src[m];
    return out;
}

VectorField gradient(const SpectralField& f) {
    return VectorField{derivative(f, 0), derivative(f, 1), false};
}

SpectralField divergence(const VectorField& v) {
    return derivative(v.u1, 0) + derivative(v.u2, 1);
}

VectorField perp_gradient(const SpectralField& f) {
    SpectralField dx = derivative(f, 0);
    SpectralField dy = derivative(f, 1);
    dy *= -1.0;
    return VectorField{std::move(dy), std::move(dx), true};
}

VectorField biot_savart(const SpectralField& omega, double mean_tol) {
    const Grid& g = omega.grid();
    const double scale = omega.max_abs_coeff();
    if (scale > 0.0 && std::abs(omega.coeffs()[0]) > mean_tol * scale)
        throw std::invalid_argument("biot_savart: omega has nonzero mean");
    SpectralField v1(g), v2(g);
    auto w = omega.coeffs();
    auto c1 = v1.coeffs();
    auto c2 = v2.coeffs();
    // orientation fixed by omega = d/dx v2 - d/dy v1 (curl recovery)
    for (int m = 1; m < g.size(); ++m) {
        const double kx = g.kx(m);
        const double ky = g.ky(m);
        const Complex factor = Complex(0.0, 1.0) * w[m] / (kx * kx + ky * ky);
        c1[m] = ky * factor;
        c2[m] = -kx * factor;
    }
    return VectorField{std::move(v1), std::move(v2), true};
}

SpectralField curl(const VectorField& v) {
    return derivative(v.u2, 0) - derivative(v.u1, 1);
}

void dealias_in_place(SpectralField& f) {
    const Grid& g = f.grid();
    const int n = g.n();
    const int cut = g.dealias_cutoff();
    auto c = f.coeffs();
    for (int m = 0; m < g.size(); ++m) {
        const int kx = g.wave_int(m % n);
        const int ky = g.wave_int(m / n);
        if (std::max(std::abs(kx), std::abs(ky)) > cut)
            c[m] = Complex(0.0, 0.0);
    }
}

SpectralField dealias(const SpectralField& f) {
    SpectralField out = f;
    dealias_in_place(out);
    return out;
}

SpectralField band_limit(const SpectralField& f, double k_max) {
    const Grid& g = f.grid();
    SpectralField out = f;
    auto c = out.coeffs();
    for (int m = 0; m < g.size(); ++m)
        if (g.k_mag(m) > k_max)
            c[m] = Complex(0.0, 0.0);
    return out;
}

VectorField leray_project(const VectorField& u) {
    const Grid& g = u.grid();
    SpectralField p1 = u.u1;
    SpectralField p2 = u.u2;
    auto c1 = p1.coeffs();
    auto c2 = p2.coeffs();
    for (int m = 1; m < g.size(); ++m) {
        const double kx = g.kx(m);
        const double ky = g.ky(m);
        const Complex kdotu = (kx * c1[m] + ky * c2[m]) / (kx * kx + ky * ky);
        c1[m] -= kx * kdotu;
        c2[m] -= ky * kdotu;
    }
    return VectorField{std::move(p1), std::move(p2), true};
}

SpectralField multiply(const SpectralField& a, const SpectralField& b) {
    if (!(a.grid() == b.grid()))
        throw std::invalid_argument("multiply: grid mismatch");
    std::vector<double> pa = a.to_physical();
    const std::vector<double> pb = b.to_physical();
    for (std::size_t m = 0; m < pa.size(); ++m)
        pa[m] *= pb[m];
    SpectralField out = SpectralField::from_physical(a.grid(), pa);
    dealias_in_place(out);
    return out;
}

SpectralField advect(const VectorField& v, const SpectralField& f) {
    VectorField grad_f = gradient(f);
    std::vector<double> p1 = v.u1.to_physical();
    const std::vector<double> p2 = v.u2.to_physical();
    const std::vector<double> g1 = grad_f.u1.to_physical();
    const std::vector<double> g2 = grad_f.u2.to_physical();
    for (std::size_t m = 0; m < p1.size(); ++m)
        p1[m] = p1[m] * g1[m] + p2[m] * g2[m];
    SpectralField out = SpectralField::from_physical(f.grid(), p1);
    dealias_in_place(out);
    return out;
}

} // namespace bousslab
