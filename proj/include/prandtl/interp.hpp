#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace prandtl {

/// Monotone piecewise-cubic Hermite interpolant (Fritsch-Carlson slopes).
/// Preserves monotonicity of the data; C1.
class MonotoneCubic {
public:
    MonotoneCubic(std::vector<double> x, std::vector<double> y);

    double eval(double x) const;
    double deriv(double x) const;
    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

private:
    std::size_t find_cell(double x) const;
    std::vector<double> x_, y_, slope_;
};

/// Piecewise-linear interpolation with clamped extrapolation.
double interp_linear(const std::vector<double>& x, const std::vector<double>& y, double xq);

}  // namespace prandtl
