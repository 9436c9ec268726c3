#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace prandtl {

struct TridiagonalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thomas algorithm. a = sub-diagonal (a[0] unused), b = diagonal,
/// c = super-diagonal (c[n-1] unused). Solves in place into x.
template <class T>
std::vector<T> solve_tridiagonal(const std::vector<T>& a, const std::vector<T>& b,
                                 const std::vector<T>& c, const std::vector<T>& d) {
    const std::size_t n = d.size();
    if (a.size() != n || b.size() != n || c.size() != n)
        throw std::invalid_argument("solve_tridiagonal: band size mismatch");
    std::vector<T> cp(n), dp(n), x(n);
    if (b[0] == T{}) throw TridiagonalFailure("zero pivot at row 0");
    cp[0] = c[0] / b[0];
    dp[0] = d[0] / b[0];
    for (std::size_t i = 1; i < n; ++i) {
        const T m = b[i] - a[i] * cp[i - 1];
        if (m == T{}) throw TridiagonalFailure("zero pivot at row " + std::to_string(i));
        cp[i] = c[i] / m;
        dp[i] = (d[i] - a[i] * dp[i - 1]) / m;
    }
    x[n - 1] = dp[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = dp[i] - cp[i] * x[i + 1];
    return x;
}

}  // namespace prandtl
