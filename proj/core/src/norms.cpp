#include "bousslab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bousslab/fourier_ops.hpp"

namespace bousslab {

double lp_norm_physical(std::span<const double> values, const Grid& grid,
                        double p) {
    if (p < 1.0)
        throw std::invalid_argument("lp_norm: p must be >= 1");
    if (p == kInfinity) {
        double best = 0.0;
        for (double v : values)
            best = std::max(best, std::abs(v));
        return best;
    }
    double sum = 0.0;
    if (p == 2.0) {
        for (double v : values)
            sum += v * v;
    } else if (p == 1.0) {
        for (double v : values)
            sum += std::abs(v);
    } else {
        for (double v : values)
            sum += std::pow(std::abs(v), p);
    }
    return std::pow(sum * grid.cell_area(), 1.0 / p);
}

double lp_norm(const SpectralField& f, double p) {
    return lp_norm_physical(f.to_physical(), f.grid(), p);
}

double parseval_l2(const SpectralField& f) {
    double sum = 0.0;
    for (const Complex& c : f.coeffs())
        sum += std::norm(c);
    const double area = f.grid().box_length() * f.grid().box_length();
    return std::sqrt(sum * area);
}

double lp_norm(const VectorField& v, double p) {
    if (p < 1.0)
        throw std::invalid_argument("lp_norm: p must be >= 1");
    const std::vector<double> p1 = v.u1.to_physical();
    const std::vector<double> p2 = v.u2.to_physical();
    const Grid& g = v.grid();
    if (p == kInfinity) {
        double best = 0.0;
        for (std::size_t m = 0; m < p1.size(); ++m)
            best = std::max(best, std::hypot(p1[m], p2[m]));
        return best;
    }
    double sum = 0.0;
    for (std::size_t m = 0; m < p1.size(); ++m)
        sum += std::pow(std::hypot(p1[m], p2[m]), p);
    return std::pow(sum * g.cell_area(), 1.0 / p);
}

double grad_sup_norm(const VectorField& v) {
    const VectorField g1 = gradient(v.u1);
    const VectorField g2 = gradient(v.u2);
    double best = 0.0;
    for (const SpectralField* f : {&g1.u1, &g1.u2, &g2.u1, &g2.u2})
        best = std::max(best, lp_norm(*f, kInfinity));
    return best;
}

double grad_sup_norm(const SpectralField& f) {
    const VectorField g = gradient(f);
    const std::vector<double> gx = g.u1.to_physical();
    const std::vector<double> gy = g.u2.to_physical();
    double best = 0.0;
    for (std::size_t m = 0; m < gx.size(); ++m)
        best = std::max(best, std::hypot(gx[m], gy[m]));
    return best;
}

} // namespace bousslab
