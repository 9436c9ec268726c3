#include "prandtl/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace prandtl {

namespace {

// Derivative weights of the quadratic through (xa, xb, xc), evaluated at x.
struct Stencil3 {
    double wa, wb, wc;
};

Stencil3 first_derivative_weights(double xa, double xb, double xc, double x) {
    return {(2 * x - xb - xc) / ((xa - xb) * (xa - xc)),
            (2 * x - xa - xc) / ((xb - xa) * (xb - xc)),
            (2 * x - xa - xb) / ((xc - xa) * (xc - xb))};
}

Stencil3 second_derivative_weights(double xa, double xb, double xc) {
    return {2.0 / ((xa - xb) * (xa - xc)),
            2.0 / ((xb - xa) * (xb - xc)),
            2.0 / ((xc - xa) * (xc - xb))};
}

template <class T>
std::vector<T> diff_y_impl(std::span<const T> f, const Grid1D& grid, int order) {
    const std::size_t n = grid.size();
    if (n < 3) throw std::invalid_argument("diff_y: grid needs at least 3 nodes");
    if (f.size() != n) throw std::invalid_argument("diff_y: column/grid size mismatch");
    if (order != 1 && order != 2) throw std::invalid_argument("diff_y: order must be 1 or 2");

    std::vector<T> out(n);
    const auto& x = grid.nodes;
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t a = (j == 0) ? 0 : (j == n - 1 ? n - 3 : j - 1);
        const Stencil3 w = (order == 1)
                               ? first_derivative_weights(x[a], x[a + 1], x[a + 2], x[j])
                               : second_derivative_weights(x[a], x[a + 1], x[a + 2]);
        out[j] = w.wa * f[a] + w.wb * f[a + 1] + w.wc * f[a + 2];
    }
    return out;
}

template <class T>
std::vector<T> cumint_impl(std::span<const T> f, const Grid1D& grid) {
    const std::size_t n = grid.size();
    if (f.size() != n) throw std::invalid_argument("cumulative_integral: size mismatch");
    std::vector<T> out(n);
    out[0] = T{};
    for (std::size_t j = 1; j < n; ++j)
        out[j] = out[j - 1] + (grid.nodes[j] - grid.nodes[j - 1]) * 0.5 * (f[j] + f[j - 1]);
    return out;
}

}  // namespace

std::vector<double> diff_y(std::span<const double> f, const Grid1D& grid, int order) {
    return diff_y_impl(f, grid, order);
}

ComplexColumn diff_y(const ComplexColumn& f, const Grid1D& grid, int order) {
    return diff_y_impl(std::span<const std::complex<double>>(f), grid, order);
}

Field2D diff_y(const Field2D& f, int order) {
    Field2D out(f.grid_x, f.grid_y);
    std::vector<double> col(f.ny());
    for (std::size_t i = 0; i < f.nx(); ++i) {
        for (std::size_t j = 0; j < f.ny(); ++j) col[j] = f.at(i, j);
        auto d = diff_y(std::span<const double>(col), f.grid_y, order);
        for (std::size_t j = 0; j < f.ny(); ++j) out.at(i, j) = d[j];
    }
    return out;
}

Field2D diff_x(const Field2D& f, bool spectral) {
    const std::size_t nx = f.nx(), ny = f.ny();
    Field2D out(f.grid_x, f.grid_y);
    if (!spectral) {
        const double inv2h = 1.0 / (2.0 * f.grid_x.spacing());
        for (std::size_t i = 0; i < nx; ++i) {
            const std::size_t ip = (i + 1) % nx, im = (i + nx - 1) % nx;
            for (std::size_t j = 0; j < ny; ++j)
                out.at(i, j) = (f.at(ip, j) - f.at(im, j)) * inv2h;
        }
        return out;
    }
    // Fourier differentiation, naive DFT with a precomputed twiddle table.
    std::vector<std::complex<double>> twiddle(nx);
    for (std::size_t m = 0; m < nx; ++m) {
        const double ang = 2.0 * M_PI * static_cast<double>(m) / static_cast<double>(nx);
        twiddle[m] = {std::cos(ang), std::sin(ang)};
    }
    std::vector<std::complex<double>> coeffs(nx);
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t k = 0; k < nx; ++k) {
            std::complex<double> c{0.0, 0.0};
            for (std::size_t i = 0; i < nx; ++i)
                c += f.at(i, j) * std::conj(twiddle[(i * k) % nx]);
            coeffs[k] = c / static_cast<double>(nx);
        }
        for (std::size_t i = 0; i < nx; ++i) {
            std::complex<double> s{0.0, 0.0};
            for (std::size_t k = 0; k < nx; ++k) {
                // signed wavenumber; Nyquist mode differentiates to zero
                const long ks = (k <= nx / 2) ? static_cast<long>(k)
                                              : static_cast<long>(k) - static_cast<long>(nx);
                if (k == nx / 2) continue;
                s += std::complex<double>(0.0, static_cast<double>(ks)) * coeffs[k] *
                     twiddle[(i * k) % nx];
            }
            out.at(i, j) = s.real();
        }
    }
    return out;
}

std::vector<double> cumulative_integral(std::span<const double> f, const Grid1D& grid) {
    for (double v : f)
        if (!std::isfinite(v))
            throw std::invalid_argument("cumulative_integral: non-finite input");
    return cumint_impl(f, grid);
}

ComplexColumn cumulative_integral(const ComplexColumn& f, const Grid1D& grid) {
    return cumint_impl(std::span<const std::complex<double>>(f), grid);
}

double trapezoid(std::span<const double> f, const Grid1D& grid) {
    double s = 0.0;
    for (std::size_t j = 1; j < grid.size(); ++j)
        s += (grid.nodes[j] - grid.nodes[j - 1]) * 0.5 * (f[j] + f[j - 1]);
    return s;
}

}  // namespace prandtl
