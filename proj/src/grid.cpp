#include "prandtl/grid.hpp"

#include <cmath>

namespace prandtl {

double Grid1D::spacing() const {
    if (!is_uniform()) throw std::logic_error("Grid1D::spacing: grid is graded");
    return nodes[1] - nodes[0];
}

Grid1D build_grid(double y_max, std::size_t n, Grading grading) {
    if (!std::isfinite(y_max) || y_max <= 0.0)
        throw std::invalid_argument("build_grid: Y_max must be finite and positive");
    if (n < 16) throw std::invalid_argument("build_grid: need at least 16 nodes");

    Grid1D g;
    g.grading = grading;
    g.y_max = y_max;
    g.nodes.resize(n);
    const double ds = 1.0 / static_cast<double>(n - 1);
    if (grading == Grading::Uniform) {
        for (std::size_t i = 0; i < n; ++i)
            g.nodes[i] = y_max * static_cast<double>(i) * ds;
    } else {
        // tanh stretching toward the wall: clusters nodes near Y = 0.
        const double gamma = 2.0;
        const double t0 = std::tanh(gamma);
        for (std::size_t i = 0; i < n; ++i) {
            const double s = static_cast<double>(i) * ds;
            g.nodes[i] = y_max * (1.0 - std::tanh(gamma * (1.0 - s)) / t0);
        }
    }
    g.nodes.front() = 0.0;
    g.nodes.back() = y_max;
    return g;
}

}  // namespace prandtl
