#include "prandtl/norms.hpp"

#include <cmath>

#include "prandtl/operators.hpp"

namespace prandtl {

namespace {

double l2_of_field(const Field2D& f) {
    const double dx = f.grid_x.spacing();
    double total = 0.0;
    std::vector<double> sq(f.ny());
    for (std::size_t i = 0; i < f.nx(); ++i) {
        for (std::size_t j = 0; j < f.ny(); ++j) sq[j] = f.at(i, j) * f.at(i, j);
        total += dx * trapezoid(sq, f.grid_y);
    }
    return std::sqrt(total);
}

Field2D apply_weight(const Field2D& field, const WeightedNormSpec& spec) {
    Field2D g = field;
    if (spec.weighted && spec.alpha > 0.0) {
        for (std::size_t i = 0; i < g.nx(); ++i)
            for (std::size_t j = 0; j < g.ny(); ++j)
                g.at(i, j) *= std::exp(spec.alpha * g.grid_y[j]);
    }
    for (double v : g.values)
        if (!std::isfinite(v))
            throw WeightIncompatibleField("weight-incompatible field: non-finite weighted sample");
    return g;
}

}  // namespace

double weighted_norm(const Field2D& field, const WeightedNormSpec& spec) {
    spec.validate();
    Field2D g = apply_weight(field, spec);

    double norm = 0.0;
    Field2D dx_i = g;
    for (int i = 0; i <= spec.m; ++i) {
        if (i > 0) dx_i = diff_x(dx_i);
        Field2D dmix = dx_i;
        for (int j = 0; i + j <= spec.m; ++j) {
            if (j > 0) dmix = diff_y(dmix, 1);
            norm += l2_of_field(dmix);
        }
    }
    if (!std::isfinite(norm))
        throw WeightIncompatibleField("weight-incompatible field: non-finite norm");
    return norm;
}

double weighted_norm_column(std::span<const double> column, const Grid1D& grid,
                            const WeightedNormSpec& spec) {
    spec.validate();
    std::vector<double> g(column.begin(), column.end());
    if (spec.weighted && spec.alpha > 0.0)
        for (std::size_t j = 0; j < g.size(); ++j) g[j] *= std::exp(spec.alpha * grid[j]);
    for (double v : g)
        if (!std::isfinite(v))
            throw WeightIncompatibleField("weight-incompatible field: non-finite weighted sample");
    double norm = 0.0;
    std::vector<double> d = g;
    for (int j = 0; j <= spec.m; ++j) {
        if (j > 0) d = diff_y(std::span<const double>(d), grid, 1);
        norm += l2_norm(std::span<const double>(d), grid);
    }
    return norm;
}

double weighted_norm_column(const ComplexColumn& column, const Grid1D& grid,
                            const WeightedNormSpec& spec) {
    spec.validate();
    ComplexColumn g = column;
    if (spec.weighted && spec.alpha > 0.0)
        for (std::size_t j = 0; j < g.size(); ++j) g[j] *= std::exp(spec.alpha * grid[j]);
    double norm = 0.0;
    ComplexColumn d = g;
    for (int j = 0; j <= spec.m; ++j) {
        if (j > 0) d = diff_y(d, grid, 1);
        norm += l2_norm(d, grid);
    }
    if (!std::isfinite(norm))
        throw WeightIncompatibleField("weight-incompatible field: non-finite norm");
    return norm;
}

double l2_norm(const ComplexColumn& column, const Grid1D& grid) {
    std::vector<double> sq(column.size());
    for (std::size_t j = 0; j < column.size(); ++j) sq[j] = std::norm(column[j]);
    return std::sqrt(trapezoid(sq, grid));
}

double l2_norm(std::span<const double> column, const Grid1D& grid) {
    std::vector<double> sq(column.size());
    for (std::size_t j = 0; j < column.size(); ++j) sq[j] = column[j] * column[j];
    return std::sqrt(trapezoid(sq, grid));
}

double l2_norm(const Field2D& field) { return l2_of_field(field); }

}  // namespace prandtl
