#include "bousslab/spectral_field.hpp"

#include <algorithm>
#include <cmath>

#include "bousslab/fft_engine.hpp"

namespace bousslab {

SpectralField SpectralField::from_physical(const Grid& grid,
                                           std::span<const double> values) {
    if (static_cast<int>(values.size()) != grid.size())
        throw std::invalid_argument("from_physical: value count != grid size");
    SpectralField f(grid);
    FftEngine::shared(grid).forward(values, f.coeffs_);
    f.enforce_hermitian();
    return f;
}

SpectralField SpectralField::from_function(
    const Grid& grid, const std::function<double(double, double)>& f) {
    const int n = grid.n();
    std::vector<double> values(static_cast<std::size_t>(grid.size()));
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix)
            values[static_cast<std::size_t>(iy) * n + ix] = f(grid.x(ix), grid.y(iy));
    return from_physical(grid, values);
}

std::vector<double> SpectralField::to_physical() const {
    std::vector<double> values(coeffs_.size());
    FftEngine::shared(grid_).backward(coeffs_, values);
    return values;
}

Complex& SpectralField::at(int kx_int, int ky_int) {
    const int n = grid_.n();
    const int ix = ((kx_int % n) + n) % n;
    const int iy = ((ky_int % n) + n) % n;
    return coeffs_[static_cast<std::size_t>(iy) * n + ix];
}

const Complex& SpectralField::at(int kx_int, int ky_int) const {
    return const_cast<SpectralField*>(this)->at(kx_int, ky_int);
}

double SpectralField::hermitian_defect() const {
    const int n = grid_.n();
    double worst = 0.0;
    double scale = max_abs_coeff();
    if (scale == 0.0)
        return 0.0;
    for (int iy = 0; iy < n; ++iy) {
        const int jy = (n - iy) % n;
        for (int ix = 0; ix < n; ++ix) {
            const int jx = (n - ix) % n;
            const Complex a = coeffs_[static_cast<std::size_t>(iy) * n + ix];
            const Complex b = coeffs_[static_cast<std::size_t>(jy) * n + jx];
            worst = std::max(worst, std::abs(a - std::conj(b)));
        }
    }
    return worst / scale;
}

void SpectralField::enforce_hermitian() {
    const int n = grid_.n();
    for (int iy = 0; iy < n; ++iy) {
        const int jy = (n - iy) % n;
        for (int ix = 0; ix < n; ++ix) {
            const int jx = (n - ix) % n;
            const std::size_t m = static_cast<std::size_t>(iy) * n + ix;
            const std::size_t r = static_cast<std::size_t>(jy) * n + jx;
            if (r < m)
                continue;
            const Complex avg = 0.5 * (coeffs_[m] + std::conj(coeffs_[r]));
            coeffs_[m] = avg;
            coeffs_[r] = std::conj(avg);
        }
    }
}

double SpectralField::max_abs_coeff() const {
    double best = 0.0;
    for (const Complex& c : coeffs_)
        best = std::max(best, std::abs(c));
    return best;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
    if (!(grid_ == other.grid_))
        throw std::invalid_argument("SpectralField: grid mismatch");
    for (std::size_t m = 0; m < coeffs_.size(); ++m)
        coeffs_[m] += other.coeffs_[m];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
    if (!(grid_ == other.grid_))
        throw std::invalid_argument("SpectralField: grid mismatch");
    for (std::size_t m = 0; m < coeffs_.size(); ++m)
        coeffs_[m] -= other.coeffs_[m];
    return *this;
}

SpectralField& SpectralField::operator*=(double scalar) {
    for (Complex& c : coeffs_)
        c *= scalar;
    return *this;
}

double VectorField::divergence_defect() const {
    const Grid& g = u1.grid();
    const auto c1 = u1.coeffs();
    const auto c2 = u2.coeffs();
    double worst = 0.0;
    double scale = std::max(u1.max_abs_coeff(), u2.max_abs_coeff());
    if (scale == 0.0)
        return 0.0;
    for (int m = 0; m < g.size(); ++m)
        worst = std::max(worst, std::abs(g.kx(m) * c1[m] + g.ky(m) * c2[m]));
    return worst / scale;
}

} // namespace bousslab
