#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "prandtl/grid.hpp"

namespace prandtl {

/// Real scalar samples on PeriodicGridX x Grid1D, row-major in x.
/// values[i*ny + j] is the sample at (x_i, Y_j).
struct Field2D {
    PeriodicGridX grid_x;
    Grid1D grid_y;
    std::vector<double> values;

    Field2D(PeriodicGridX gx, Grid1D gy)
        : grid_x(gx), grid_y(std::move(gy)),
          values(grid_x.n_x * grid_y.size(), 0.0) {}

    std::size_t nx() const { return grid_x.n_x; }
    std::size_t ny() const { return grid_y.size(); }
    double& at(std::size_t i, std::size_t j) { return values[i * ny() + j]; }
    double at(std::size_t i, std::size_t j) const { return values[i * ny() + j]; }

    template <class F>
    static Field2D sample(PeriodicGridX gx, Grid1D gy, F&& f) {
        Field2D out(gx, std::move(gy));
        for (std::size_t i = 0; i < out.nx(); ++i)
            for (std::size_t j = 0; j < out.ny(); ++j)
                out.at(i, j) = f(out.grid_x.node(i), out.grid_y[j]);
        return out;
    }
};

using ComplexColumn = std::vector<std::complex<double>>;

}  // namespace prandtl
