#pragma once

#include <complex>
#include <span>
#include <vector>

#include "prandtl/field.hpp"
#include "prandtl/grid.hpp"

namespace prandtl {

/// First or second Y-derivative of a column sampled on `grid`.
/// Three-point stencils: centered in the interior, one-sided at the ends.
/// Exact for quadratic polynomials on any (also graded) grid.
std::vector<double> diff_y(std::span<const double> f, const Grid1D& grid, int order);
ComplexColumn diff_y(const ComplexColumn& f, const Grid1D& grid, int order);

/// diff_y applied to every x-row of a field.
Field2D diff_y(const Field2D& f, int order);

/// Tangential derivative on the torus. Fourier differentiation by default,
/// centered second-order differences when spectral=false.
Field2D diff_x(const Field2D& f, bool spectral = true);

/// Trapezoidal cumulative integral from Y=0; output at node 0 is exactly 0.
std::vector<double> cumulative_integral(std::span<const double> f, const Grid1D& grid);
ComplexColumn cumulative_integral(const ComplexColumn& f, const Grid1D& grid);

/// Trapezoid rule over the whole grid.
double trapezoid(std::span<const double> f, const Grid1D& grid);

}  // namespace prandtl
