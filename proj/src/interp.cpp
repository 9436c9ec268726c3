#include "prandtl/interp.hpp"

#include <algorithm>
#include <cmath>

namespace prandtl {

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n)
        throw std::invalid_argument("MonotoneCubic: need matching arrays of size >= 2");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1]))
            throw std::invalid_argument("MonotoneCubic: abscissae must be strictly increasing");

    std::vector<double> d(n - 1);  // secant slopes
    for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);

    slope_.resize(n);
    slope_[0] = d[0];
    slope_[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            slope_[i] = 0.0;
        } else {
            const double w1 = 2.0 * (x_[i + 1] - x_[i]) + (x_[i] - x_[i - 1]);
            const double w2 = (x_[i + 1] - x_[i]) + 2.0 * (x_[i] - x_[i - 1]);
            slope_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    // Fritsch-Carlson limiting at the ends
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (d[i] == 0.0) {
            slope_[i] = slope_[i + 1] = 0.0;
        } else {
            const double a = slope_[i] / d[i], b = slope_[i + 1] / d[i];
            const double s = std::hypot(a, b);
            if (s > 3.0) {
                slope_[i] = 3.0 * a / s * d[i];
                slope_[i + 1] = 3.0 * b / s * d[i];
            }
        }
    }
}

std::size_t MonotoneCubic::find_cell(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = static_cast<std::size_t>(std::distance(x_.begin(), it));
    if (i == 0) return 0;
    if (i >= x_.size()) return x_.size() - 2;
    return i - 1;
}

double MonotoneCubic::eval(double x) const {
    const std::size_t i = find_cell(x);
    const double h = x_[i + 1] - x_[i], t = (x - x_[i]) / h;
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
    const double h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t);
    const double h11 = t * t * (t - 1);
    return h00 * y_[i] + h10 * h * slope_[i] + h01 * y_[i + 1] + h11 * h * slope_[i + 1];
}

double MonotoneCubic::deriv(double x) const {
    const std::size_t i = find_cell(x);
    const double h = x_[i + 1] - x_[i], t = (x - x_[i]) / h;
    const double dh00 = 6 * t * (t - 1) / h;
    const double dh10 = (3 * t * t - 4 * t + 1);
    const double dh01 = -6 * t * (t - 1) / h;
    const double dh11 = (3 * t * t - 2 * t);
    return dh00 * y_[i] + dh10 * slope_[i] + dh01 * y_[i + 1] + dh11 * slope_[i + 1];
}

double interp_linear(const std::vector<double>& x, const std::vector<double>& y, double xq) {
    if (xq <= x.front()) return y.front();
    if (xq >= x.back()) return y.back();
    auto it = std::upper_bound(x.begin(), x.end(), xq);
    const std::size_t i = static_cast<std::size_t>(std::distance(x.begin(), it)) - 1;
    const double t = (xq - x[i]) / (x[i + 1] - x[i]);
    return y[i] + t * (y[i + 1] - y[i]);
}

}  // namespace prandtl
