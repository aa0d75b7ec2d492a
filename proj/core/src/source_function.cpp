#include "bousslab/source_function.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bousslab {

namespace {

/// d^m/dx^m sin(x) = sin(x + m pi/2).
double sin_derivative(int m, double x) {
    return std::sin(x + m * std::numbers::pi / 2.0);
}

/// d^m/dx^m (x cos x) = x cos(x + m pi/2) + m cos(x + (m-1) pi/2).
double xcos_derivative(int m, double x) {
    const double half_pi = std::numbers::pi / 2.0;
    double out = x * std::cos(x + m * half_pi);
    if (m > 0)
        out += m * std::cos(x + (m - 1) * half_pi);
    return out;
}

double poly_derivative(const std::vector<double>& coeffs, int order, double x) {
    double sum = 0.0;
    for (std::size_t power = static_cast<std::size_t>(order);
         power < coeffs.size(); ++power) {
        double factor = coeffs[power];
        for (int j = 0; j < order; ++j)
            factor *= static_cast<double>(power - j);
        sum += factor * std::pow(x, static_cast<double>(power - order));
    }
    return sum;
}

} // namespace

SourceFunction SourceFunction::linear() { return {Kind::Linear, "linear"}; }
SourceFunction SourceFunction::cubic() { return {Kind::Cubic, "cubic"}; }
SourceFunction SourceFunction::sine() { return {Kind::Sine, "sine"}; }

SourceFunction SourceFunction::polynomial(std::vector<double> f1_coeffs,
                                          std::vector<double> f2_coeffs) {
    if ((!f1_coeffs.empty() && f1_coeffs[0] != 0.0) ||
        (!f2_coeffs.empty() && f2_coeffs[0] != 0.0))
        throw std::invalid_argument(
            "SourceFunction: constant term violates F(0) = 0");
    SourceFunction f(Kind::Polynomial, "polynomial");
    f.f1_coeffs_ = std::move(f1_coeffs);
    f.f2_coeffs_ = std::move(f2_coeffs);
    return f;
}

double SourceFunction::derivative(int which, int order, double x) const {
    if (which != 1 && which != 2)
        throw std::invalid_argument("SourceFunction: component must be 1 or 2");
    if (order < 0 || order > 5)
        throw std::invalid_argument("SourceFunction: order must be in 0..5");
    switch (kind_) {
    case Kind::Linear:
        if (which == 1)
            return 0.0;
        return order == 0 ? x : (order == 1 ? 1.0 : 0.0);
    case Kind::Cubic:
        if (which == 2)
            return order == 0 ? x : (order == 1 ? 1.0 : 0.0);
        switch (order) {
        case 0: return x * x * x / 6.0;
        case 1: return x * x / 2.0;
        case 2: return x;
        case 3: return 1.0;
        default: return 0.0;
        }
    case Kind::Sine:
        return which == 1 ? sin_derivative(order, x) : xcos_derivative(order, x);
    case Kind::Polynomial:
        return poly_derivative(which == 1 ? f1_coeffs_ : f2_coeffs_, order, x);
    }
    return 0.0;
}

double SourceFunction::derivative_bound(double radius, int max_order) const {
    constexpr int samples = 512;
    double best = 0.0;
    for (int which = 1; which <= 2; ++which)
        for (int m = 1; m <= max_order && m <= 5; ++m)
            for (int i = 0; i <= samples; ++i) {
                const double x = -radius + 2.0 * radius * i / samples;
                best = std::max(best, std::abs(derivative(which, m, x)));
            }
    return best;
}

} // namespace bousslab
