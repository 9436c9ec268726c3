#include "prandtl/crocco.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "prandtl/interp.hpp"
#include "prandtl/operators.hpp"
#include "prandtl/tridiag.hpp"

namespace prandtl {

namespace {

// integral of 1/w over one cell with w linear in eta (exact; reduces to the
// trapezoid value as w0 -> w1)
double cell_inv_w(double h, double w0, double w1) {
    if (std::abs(w1 - w0) < 1e-12 * std::max(w0, w1)) return h * 0.5 * (1.0 / w0 + 1.0 / w1);
    return h / (w0 - w1) * std::log(w0 / w1);
}

// integral of p/w^2 over one cell with both p and w linear in eta
double cell_p_over_w2(double h, double p0, double p1, double w0, double w1) {
    const double B = (w1 - w0) / h;
    if (std::abs(B) < 1e-12 * std::max(w0, w1) / h)
        return h * 0.5 * (p0 / (w0 * w0) + p1 / (w1 * w1));
    const double A = (p1 - p0) / h;
    return (1.0 / B) * ((p0 - A * w0 / B) * (1.0 / w0 - 1.0 / w1) + (A / B) * std::log(w1 / w0));
}

// y(eta) at the interior nodes of one x-column
std::vector<double> y_of_eta(const CroccoGrid& grid, const double* w) {
    const std::size_t ni = grid.n_eta;
    std::vector<double> y(ni, 0.0);
    for (std::size_t j = 1; j < ni; ++j) {
        if (!(w[j - 1] > 0.0) || !(w[j] > 0.0))
            throw std::runtime_error("from_crocco: non-positive w at eta = " +
                                     std::to_string(grid.eta(j)));
        const double dy = cell_inv_w(grid.eta(j) - grid.eta(j - 1), w[j - 1], w[j]);
        if (!(dy > 0.0)) throw std::runtime_error("from_crocco: non-monotone y(eta) table");
        y[j] = y[j - 1] + dy;
    }
    return y;
}

}  // namespace

CroccoGrid build_crocco_grid(std::size_t n_eta, PeriodicGridX gx, double delta_eta) {
    if (n_eta < 16) throw std::invalid_argument("build_crocco_grid: n_eta must be >= 16");
    if (delta_eta == 0.0) delta_eta = 1.0 / (2.0 * static_cast<double>(n_eta));
    if (!(delta_eta > 0.0) || delta_eta >= 0.5)
        throw std::invalid_argument("build_crocco_grid: delta_eta must lie in (0, 0.5)");
    CroccoGrid grid{std::vector<double>(), gx, delta_eta, n_eta};
    grid.eta_nodes.resize(n_eta + 1);
    const double last = 1.0 - delta_eta;
    for (std::size_t j = 0; j < n_eta; ++j)
        grid.eta_nodes[j] = last * static_cast<double>(j) / static_cast<double>(n_eta - 1);
    grid.eta_nodes[n_eta] = 1.0;
    return grid;
}

void CroccoState::validate() const {
    for (std::size_t i = 0; i < nx(); ++i) {
        if (at(i, neta() - 1) != 0.0)
            throw std::runtime_error("CroccoState: w(eta = 1) must be exactly 0");
        for (std::size_t j = 0; j + 1 < neta(); ++j)
            if (!(at(i, j) > 0.0))
                throw MonotoneBreakdown(t, grid.grid_x.node(i), grid.eta(j));
    }
}

AssumptionOReport check_assumption_O(const Field2D& u0, const OuterFlow& outer) {
    AssumptionOReport report;
    std::vector<double> U, Ux, Ut;
    outer.slice(0.0, U, Ux, Ut);

    const Field2D dy = diff_y(u0, 1);
    const Field2D d2y = diff_y(dy, 1);
    const Field2D d3y = diff_y(d2y, 1);
    const Field2D dx = diff_x(u0);
    const Field2D dxy = diff_y(dx, 1);

    double theta0 = std::numeric_limits<double>::infinity();
    double C0 = 0.0;
    for (std::size_t i = 0; i < u0.nx(); ++i) {
        for (std::size_t j = 0; j < u0.ny(); ++j) {
            const double d = dy.at(i, j);
            // skip the saturated far field: once U - u0 falls below double
            // resolution the difference quotients are pure rounding noise
            if (std::abs(U[i] - u0.at(i, j)) < 1e-12 * U[i]) continue;
            if (!(d > 0.0)) {
                report.violation = "not monotone at x = " + std::to_string(u0.grid_x.node(i)) +
                                   ", y = " + std::to_string(u0.grid_y[j]);
                return report;
            }
            report.max_dy = std::max(report.max_dy, d);
            report.max_dx = std::max(report.max_dx, std::abs(dx.at(i, j)));
            report.max_dxy = std::max(report.max_dxy, std::abs(dxy.at(i, j)));
            const double gap = U[i] - u0.at(i, j);
            if (gap >= 1e-10 * U[i]) {
                const double r = d / gap;
                theta0 = std::min(theta0, r);
                C0 = std::max(C0, r);
            }
            if (d > 1e-14)
                report.max_ratio_d2 = std::max(report.max_ratio_d2, std::abs(d2y.at(i, j)) / d);
            if (std::abs(d2y.at(i, j)) > 1e-14)
                report.max_ratio_d3 =
                    std::max(report.max_ratio_d3, std::abs(d3y.at(i, j) * d / d2y.at(i, j)));
        }
    }
    if (report.max_ratio_d2 > 1e6 || report.max_ratio_d3 > 1e6) {
        report.violation = "ratio unbounded: max observed " +
                           std::to_string(std::max(report.max_ratio_d2, report.max_ratio_d3));
        return report;
    }
    report.satisfied = true;
    report.bounds.theta0 = theta0;
    report.bounds.C0 = C0;
    report.bounds.theta1 = theta0;
    report.bounds.theta2 = C0;
    return report;
}

CroccoState to_crocco(const Field2D& u, const OuterFlow& outer, const CroccoGrid& grid, double t) {
    CroccoState state(grid, outer);
    state.t = t;
    std::vector<double> U, Ux, Ut;
    outer.slice(t, U, Ux, Ut);
    const Grid1D& gy = u.grid_y;

    for (std::size_t i = 0; i < grid.grid_x.n_x; ++i) {
        // g(y) = -ln(1 - u/U) is linear in y for exponential profiles; invert
        // it with a monotone cubic so those profiles round-trip exactly
        std::vector<double> g, ys;
        double prev = -1.0;
        for (std::size_t j = 0; j < gy.size(); ++j) {
            const double uv = u.at(i, j);
            if (j > 0 && uv <= prev)
                throw std::runtime_error("to_crocco: monotonicity violation at x = " +
                                         std::to_string(grid.grid_x.node(i)) +
                                         ", y = " + std::to_string(gy[j]));
            prev = uv;
            const double frac = 1.0 - uv / U[i];
            if (frac <= 1e-12) break;
            g.push_back(-std::log(frac));
            ys.push_back(gy[j]);
        }
        if (g.size() < 4) throw std::runtime_error("to_crocco: too few resolvable samples");
        MonotoneCubic inverse(g, ys);
        for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
            const double s = -std::log(1.0 - grid.eta(j));
            const double dyds = inverse.deriv(s);
            if (!(dyds > 0.0)) throw std::runtime_error("to_crocco: degenerate inverse map");
            state.at(i, j) = (1.0 - grid.eta(j)) / dyds;
        }
        state.at(i, grid.size() - 1) = 0.0;
    }
    return state;
}

Field2D from_crocco(const CroccoState& state, const Grid1D& y_grid) {
    const CroccoGrid& grid = state.grid;
    const std::size_t ni = grid.n_eta;
    std::vector<double> U, Ux, Ut;
    state.outer.slice(state.t, U, Ux, Ut);

    Field2D u(grid.grid_x, y_grid);
    std::vector<double> s(ni);
    for (std::size_t j = 0; j < ni; ++j) s[j] = -std::log(1.0 - grid.eta(j));

    for (std::size_t i = 0; i < u.nx(); ++i) {
        const double* w = &state.w[i * state.neta()];
        const std::vector<double> y = y_of_eta(grid, w);
        const double y_last = y.back();
        const double theta_hat = w[ni - 1] / grid.delta_eta;
        const double gap_last = 1.0 - grid.eta(ni - 1);  // = delta_eta
        for (std::size_t j = 0; j < y_grid.size(); ++j) {
            const double yv = y_grid[j];
            if (yv <= y_last) {
                u.at(i, j) = U[i] * (1.0 - std::exp(-interp_linear(y, s, yv)));
            } else {
                u.at(i, j) = U[i] * (1.0 - gap_last * std::exp(-(yv - y_last) * theta_hat));
            }
        }
    }
    return u;
}

CroccoCoefficients crocco_coeffs(const OuterFlow& outer, const CroccoGrid& grid, double t) {
    std::vector<double> U, Ux, Ut;
    outer.slice(t, U, Ux, Ut);
    CroccoCoefficients coeffs;
    const std::size_t n = grid.size();
    coeffs.A.resize(grid.grid_x.n_x * n);
    coeffs.B.resize(grid.grid_x.n_x * n);
    for (std::size_t i = 0; i < grid.grid_x.n_x; ++i) {
        if (!(U[i] > 0.0))
            throw std::runtime_error("crocco_coeffs: U must be positive, got " +
                                     std::to_string(U[i]));
        const double ratio = Ut[i] / U[i];
        for (std::size_t j = 0; j < n; ++j) {
            const double eta = grid.eta(j);
            coeffs.A[i * n + j] = (eta * eta - 1.0) * Ux[i] + (eta - 1.0) * ratio;
            coeffs.B[i * n + j] = -eta * Ux[i] - ratio;
        }
    }
    return coeffs;
}

double crocco_cfl(const CroccoState& state) {
    const CroccoGrid& grid = state.grid;
    std::vector<double> U, Ux, Ut;
    state.outer.slice(state.t, U, Ux, Ut);
    const CroccoCoefficients coeffs = crocco_coeffs(state.outer, grid, state.t);
    double sup_speed = 0.0, sup_A = 0.0;
    for (std::size_t i = 0; i < state.nx(); ++i)
        for (std::size_t j = 0; j < state.neta(); ++j) {
            sup_speed = std::max(sup_speed, std::abs(grid.eta(j) * U[i]));
            sup_A = std::max(sup_A, std::abs(coeffs.A[i * state.neta() + j]));
        }
    const double dx = grid.grid_x.spacing();
    const double deta = grid.eta(1) - grid.eta(0);
    double bound = std::numeric_limits<double>::infinity();
    if (sup_speed > 0.0) bound = std::min(bound, dx / sup_speed);
    if (sup_A > 0.0) bound = std::min(bound, deta / sup_A);
    return 0.5 * bound;
}

CroccoState step_crocco(const CroccoState& state, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("step_crocco: dt must be positive");
    const CroccoGrid& grid = state.grid;
    const std::size_t nx = state.nx();
    const std::size_t n = state.neta();
    const std::size_t ni = grid.n_eta;  // unknowns 0 .. ni-1; node ni is eta=1

    std::vector<double> U, Ux, Ut;
    state.outer.slice(state.t, U, Ux, Ut);
    const CroccoCoefficients coeffs = crocco_coeffs(state.outer, grid, state.t);
    const double dx = grid.grid_x.spacing();
    const double half = dt / 2.0;

    CroccoState next = state;
    next.t = state.t + dt;

    std::vector<double> a(ni), b(ni), c(ni), rhs(ni);
    for (std::size_t i = 0; i < nx; ++i) {
        const std::size_t im = (i + nx - 1) % nx;
        const std::size_t ip = (i + 1) % nx;
        const double* w = &state.w[i * n];
        const double c_robin = Ux[i] + Ut[i] / U[i];
        const double D = grid.eta(1) - grid.eta(0);

        for (std::size_t j = 0; j < ni; ++j) {
            // explicit transport: eta U dx w upwinded in x, A deta w upwinded
            // against the characteristic speed -A, plus B w
            const double speed = grid.eta(j) * U[i];
            const double wx = speed >= 0.0 ? (w[j] - state.at(im, j)) / dx
                                           : (state.at(ip, j) - w[j]) / dx;
            const double A = coeffs.A[i * n + j];
            double weta;
            if (A >= 0.0) {
                weta = (w[j + 1] - w[j]) / (grid.eta(j + 1) - grid.eta(j));
            } else {
                weta = j == 0 ? (w[1] - w[0]) / D : (w[j] - w[j - 1]) / (grid.eta(j) - grid.eta(j - 1));
            }
            const double expl = -speed * wx + A * weta + coeffs.B[i * n + j] * w[j];
            const double W2 = w[j] * w[j];

            if (j == 0) {
                // ghost node from one Newton step on w w_eta + c_robin = 0
                const double L00 = -2.0 / (D * D), L01 = 2.0 / (D * D);
                const double g_const = 2.0 * c_robin / (D * std::max(w[0], 1e-12));
                a[0] = 0.0;
                b[0] = 1.0 - half * W2 * L00;
                c[0] = -half * W2 * L01;
                rhs[0] = w[0] + half * W2 * (L00 * w[0] + L01 * w[1]) + dt * W2 * g_const +
                         dt * expl;
            } else {
                const double hm = grid.eta(j) - grid.eta(j - 1);
                const double hp = grid.eta(j + 1) - grid.eta(j);
                const double lo = 2.0 / (hm * (hm + hp));
                const double di = -2.0 / (hm * hp);
                const double hi = 2.0 / (hp * (hm + hp));
                a[j] = -half * W2 * lo;
                b[j] = 1.0 - half * W2 * di;
                c[j] = j + 1 < ni ? -half * W2 * hi : 0.0;  // Dirichlet 0 at eta=1
                rhs[j] = w[j] + half * W2 * (lo * w[j - 1] + di * w[j] + hi * w[j + 1]) + dt * expl;
            }
        }
        auto sol = solve_tridiagonal(a, b, c, rhs);
        for (std::size_t j = 0; j < ni; ++j) {
            if (!std::isfinite(sol[j]) || !(sol[j] > 0.0))
                throw MonotoneBreakdown(next.t, grid.grid_x.node(i), grid.eta(j));
            next.at(i, j) = sol[j];
        }
        next.at(i, ni) = 0.0;
    }
    return next;
}

BoundsReport verify_bounds(const std::vector<CroccoState>& run, const MonotoneBounds& bounds0,
                           const Grid1D& y_grid, double slack) {
    if (run.empty()) throw std::invalid_argument("verify_bounds: empty run");
    BoundsReport report;
    report.fitted.theta0 = bounds0.theta0;
    report.fitted.C0 = bounds0.C0;

    double th1 = std::numeric_limits<double>::infinity();
    double th2 = 0.0;
    for (const auto& state : run)
        for (std::size_t i = 0; i < state.nx(); ++i)
            for (std::size_t j = 0; j + 1 < state.neta(); ++j) {
                const double r = state.at(i, j) / (1.0 - state.grid.eta(j));
                th1 = std::min(th1, r);
                th2 = std::max(th2, r);
            }
    report.fitted.theta1 = th1;
    report.fitted.theta2 = th2;
    report.pass = th1 > 0.0;
    if (!report.pass) return report;  // degenerate w; no invertible physical map

    // physical-space sandwich e^{-theta2 y} <= 1 - u/U <= e^{-theta1 y},
    // checked below the extrapolation tail with a small quadrature slack
    report.sandwich_ok = report.pass;
    for (const auto& state : run) {
        std::vector<double> U, Ux, Ut;
        state.outer.slice(state.t, U, Ux, Ut);
        const Field2D u = from_crocco(state, y_grid);
        for (std::size_t i = 0; i < state.nx(); ++i) {
            const double* w = &state.w[i * state.neta()];
            const double y_last = y_of_eta(state.grid, w).back();
            for (std::size_t j = 0; j < y_grid.size(); ++j) {
                const double y = y_grid[j];
                if (y > y_last) break;
                const double gap = 1.0 - u.at(i, j) / U[i];
                const double low = std::exp(-th2 * y) * (1.0 - slack) - slack * 1e-9;
                const double high = std::exp(-th1 * y) * (1.0 + slack) + slack * 1e-9;
                if (gap < low || gap > high) {
                    report.sandwich_ok = false;
                    report.worst_violation =
                        std::max(report.worst_violation, std::max(low - gap, gap - high));
                }
            }
        }
    }
    return report;
}

Field2D reconstruct_ux(const CroccoState& state, const Grid1D& y_grid) {
    const CroccoGrid& grid = state.grid;
    const std::size_t nx = state.nx();
    const std::size_t n = state.neta();
    const std::size_t ni = grid.n_eta;
    std::vector<double> U, Ux, Ut;
    state.outer.slice(state.t, U, Ux, Ut);

    // w_x by Fourier differentiation of each eta row
    Grid1D eta_carrier{grid.eta_nodes, Grading::Uniform, 1.0};
    Field2D w_field(grid.grid_x, eta_carrier);
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < n; ++j) w_field.at(i, j) = state.at(i, j);
    const Field2D wx_field = diff_x(w_field);

    std::vector<double> s(ni), eta_int(ni);
    for (std::size_t j = 0; j < ni; ++j) {
        eta_int[j] = grid.eta(j);
        s[j] = -std::log(1.0 - grid.eta(j));
    }

    Field2D ux(grid.grid_x, y_grid);
    std::vector<double> Q(ni), w_col(ni), p_col(ni);
    for (std::size_t i = 0; i < nx; ++i) {
        const double* w = &state.w[i * n];
        for (std::size_t j = 0; j < ni; ++j) {
            w_col[j] = w[j];
            p_col[j] = wx_field.at(i, j);
        }
        Q[0] = 0.0;
        for (std::size_t j = 1; j < ni; ++j)
            Q[j] = Q[j - 1] + cell_p_over_w2(eta_int[j] - eta_int[j - 1], p_col[j - 1], p_col[j],
                                             w_col[j - 1], w_col[j]);
        const std::vector<double> y = y_of_eta(grid, w);
        const double y_last = y.back();
        const double theta_hat = w[ni - 1] / grid.delta_eta;
        const double gap_last = 1.0 - eta_int[ni - 1];

        for (std::size_t j = 0; j < y_grid.size(); ++j) {
            const double yv = y_grid[j];
            double eta, w_at, q_at;
            if (yv <= y_last) {
                const double sv = interp_linear(y, s, yv);
                eta = 1.0 - std::exp(-sv);
                w_at = interp_linear(eta_int, w_col, eta);
                q_at = interp_linear(eta_int, Q, eta);
            } else {
                // tail continues w ~ theta_hat (1-eta), w_x ~ p_last (1-eta)/gap
                const double gap = gap_last * std::exp(-(yv - y_last) * theta_hat);
                eta = 1.0 - gap;
                w_at = theta_hat * gap;
                q_at = Q[ni - 1] + p_col[ni - 1] / (theta_hat * theta_hat * gap_last) *
                                       std::log(gap_last / gap);
            }
            ux.at(i, j) = U[i] * eta * Ux[i] / U[i] + w_at * U[i] * q_at;
        }
    }
    return ux;
}

}  // namespace prandtl
