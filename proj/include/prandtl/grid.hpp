#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace prandtl {

enum class Grading { Uniform, TanhStretched };

/// Discretization of the truncated half-line Y in [0, Y_max].
/// Nodes are strictly increasing, node 0 is the wall.
struct Grid1D {
    std::vector<double> nodes;
    Grading grading = Grading::Uniform;
    double y_max = 0.0;

    std::size_t size() const { return nodes.size(); }
    double operator[](std::size_t i) const { return nodes[i]; }
    bool is_uniform() const { return grading == Grading::Uniform; }
    /// Spacing of a uniform grid; throws for graded grids.
    double spacing() const;
};

/// Uniform grid on the torus [0, 2*pi).
struct PeriodicGridX {
    std::size_t n_x;

    explicit PeriodicGridX(std::size_t n) : n_x(n) {
        if (n_x < 4 || n_x % 2 != 0)
            throw std::invalid_argument("PeriodicGridX: n_x must be even and >= 4");
    }
    double spacing() const { return 2.0 * M_PI / static_cast<double>(n_x); }
    double node(std::size_t i) const { return static_cast<double>(i) * spacing(); }
};

Grid1D build_grid(double y_max, std::size_t n, Grading grading = Grading::Uniform);

}  // namespace prandtl
