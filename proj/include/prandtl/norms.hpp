#pragma once

#include <span>
#include <stdexcept>

#include "prandtl/field.hpp"

namespace prandtl {

/// Descriptor of the (optionally weighted) Sobolev norm ||e^{alpha Y} . ||_{H^m}.
struct WeightedNormSpec {
    int m = 0;           // Sobolev order, 0..3
    double alpha = 0.0;  // exponential weight rate
    bool weighted = false;

    void validate() const {
        if (m < 0 || m > 3) throw std::invalid_argument("WeightedNormSpec: m must be in [0,3]");
        if (alpha < 0.0) throw std::invalid_argument("WeightedNormSpec: alpha must be >= 0");
    }
};

struct WeightIncompatibleField : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// || e^{alpha Y} field ||_{H^m} = sum over i+j <= m of the L2 norms of the
/// mixed derivatives d_x^i d_Y^j (e^{alpha Y} field). x-derivatives are
/// spectral on the uniform torus, Y-derivatives use diff_y; quadrature is
/// trapezoid in Y and the uniform rule in x.
/// Throws WeightIncompatibleField when the weight defeats the field's decay.
double weighted_norm(const Field2D& field, const WeightedNormSpec& spec);

/// Same norm for a single Y-column (no x-derivative terms).
double weighted_norm_column(std::span<const double> column, const Grid1D& grid,
                            const WeightedNormSpec& spec);
double weighted_norm_column(const ComplexColumn& column, const Grid1D& grid,
                            const WeightedNormSpec& spec);

/// Plain L2 norm of a complex column (trapezoid in Y).
double l2_norm(const ComplexColumn& column, const Grid1D& grid);
double l2_norm(std::span<const double> column, const Grid1D& grid);
double l2_norm(const Field2D& field);

}  // namespace prandtl
