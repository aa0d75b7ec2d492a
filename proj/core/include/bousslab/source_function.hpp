#pragma once

#include <string>
#include <vector>

namespace bousslab {

/// Buoyancy source F = (F1, F2), scalar functions of theta with closed-form
/// derivatives up to order 5 and F(0) = 0.
///
/// Presets: linear (0, x), cubic (x^3/6, x), sine (sin x, x cos x), plus
/// user polynomials without constant term.
class SourceFunction {
  public:
    static SourceFunction linear();
    static SourceFunction cubic();
    static SourceFunction sine();
    static SourceFunction polynomial(std::vector<double> f1_coeffs,
                                     std::vector<double> f2_coeffs);

    /// Component values; which is 1 or 2.
    double value(int which, double x) const { return derivative(which, 0, x); }

    /// d^order/dx^order of component `which`, order in 0..5.
    double derivative(int which, int order, double x) const;

    /// max over orders 1..max_order and |x| <= radius of |F_i^(m)(x)|,
    /// sampled. Used by the composition-bound check.
    double derivative_bound(double radius, int max_order) const;

    const std::string& name() const { return name_; }

  private:
    enum class Kind { Linear, Cubic, Sine, Polynomial };
    SourceFunction(Kind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

    Kind kind_;
    std::string name_;
    std::vector<double> f1_coeffs_; // polynomial only; index = power
    std::vector<double> f2_coeffs_;
};

} // namespace bousslab
