#include "prandtl/linear_mode.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "prandtl/norms.hpp"
#include "prandtl/operators.hpp"
#include "prandtl/tridiag.hpp"

namespace prandtl {

namespace {

using Complex = std::complex<double>;

bool finite(const ComplexColumn& w) {
    for (const auto& z : w)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

ComplexColumn explicit_rhs(int k, const ComplexColumn& w, const std::vector<double>& u_s,
                           const std::vector<double>& du_s, const Grid1D& grid) {
    ComplexColumn integral = cumulative_integral(w, grid);
    ComplexColumn f(w.size());
    const Complex ik(0.0, static_cast<double>(k));
    for (std::size_t j = 0; j < w.size(); ++j)
        f[j] = -ik * u_s[j] * w[j] + ik * du_s[j] * integral[j];
    return f;
}

}  // namespace

void FourierModeState::validate() const {
    if (w_hat.size() != grid.size())
        throw std::invalid_argument("FourierModeState: column/grid size mismatch");
    if (std::abs(w_hat.front()) > 1e-12)
        throw std::invalid_argument("FourierModeState: wall condition w(0) = 0 violated");
}

FourierModeState step_mode(const FourierModeState& state, const ShearProvider& shear, double dt,
                           const ComplexColumn* f_prev, ComplexColumn* f_out) {
    if (!(dt > 0.0)) throw std::invalid_argument("step_mode: dt must be positive");
    const Grid1D& grid = state.grid;
    const std::size_t n = grid.size();
    const std::size_t ni = n - 2;

    std::vector<double> u_s, du_s;
    shear.at(state.t, u_s, du_s);

    ComplexColumn fn = explicit_rhs(state.k, state.w_hat, u_s, du_s, grid);
    ComplexColumn expl(n);
    if (f_prev) {
        for (std::size_t j = 0; j < n; ++j) expl[j] = 1.5 * fn[j] - 0.5 * (*f_prev)[j];
    } else {
        expl = fn;
    }
    if (f_out) *f_out = std::move(fn);

    const double half = dt / 2.0;
    std::vector<Complex> a(ni), b(ni), c(ni), rhs(ni);
    const auto& Y = grid.nodes;
    for (std::size_t i = 0; i < ni; ++i) {
        const std::size_t j = i + 1;
        const double hm = Y[j] - Y[j - 1], hp = Y[j + 1] - Y[j];
        const double lo = 2.0 / (hm * (hm + hp));
        const double di = -2.0 / (hm * hp);
        const double hi = 2.0 / (hp * (hm + hp));
        a[i] = -half * lo;
        b[i] = 1.0 - half * di;
        c[i] = -half * hi;
        rhs[i] = state.w_hat[j] +
                 half * (lo * state.w_hat[j - 1] + di * state.w_hat[j] + hi * state.w_hat[j + 1]) +
                 dt * expl[j];
    }
    a[0] = 0.0;
    c[ni - 1] = 0.0;  // Dirichlet zero at both ends
    auto sol = solve_tridiagonal(a, b, c, rhs);

    FourierModeState next = state;
    next.t += dt;
    next.w_hat.front() = 0.0;
    next.w_hat.back() = 0.0;
    for (std::size_t i = 0; i < ni; ++i) next.w_hat[i + 1] = sol[i];
    return next;
}

ModeTrajectory solve_mode(int k, const ComplexColumn& w0, const ShearProvider& shear, double t0,
                          double t1, double dt, std::size_t store_every) {
    if (t1 < t0) throw std::invalid_argument("solve_mode: t1 < t0");
    if (!(dt > 0.0)) throw std::invalid_argument("solve_mode: dt must be positive");
    if (store_every == 0) store_every = 1;

    FourierModeState state{k, t0, shear.grid(), w0};
    state.validate();

    ModeTrajectory traj;
    traj.k = k;
    traj.times.push_back(t0);
    traj.norms.push_back(l2_norm(state.w_hat, state.grid));

    if (t1 == t0) {
        traj.final_state = std::move(state);
        return traj;
    }
    const std::size_t nsteps =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround((t1 - t0) / dt)));
    const double h = (t1 - t0) / static_cast<double>(nsteps);

    ComplexColumn f_prev, f_cur;
    for (std::size_t step = 0; step < nsteps; ++step) {
        state = step_mode(state, shear, h, step == 0 ? nullptr : &f_prev, &f_cur);
        f_prev = std::move(f_cur);
        if (!finite(state.w_hat)) {
            traj.blew_up = true;
            traj.blowup_time = state.t;
            break;
        }
        if ((step + 1) % store_every == 0 || step + 1 == nsteps) {
            traj.times.push_back(state.t);
            traj.norms.push_back(l2_norm(state.w_hat, state.grid));
        }
    }
    traj.final_state = std::move(state);
    return traj;
}

GrowthRate growth_rate(const ModeTrajectory& traj, double t1, double t2) {
    std::vector<double> ts, logs;
    GrowthRate out;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        if (t < t1 - 1e-12 || t > t2 + 1e-12) continue;
        const double nrm = traj.norms[i];
        if (!(nrm > 0.0) || !std::isfinite(nrm)) {
            out.decayed = true;
            return out;
        }
        ts.push_back(t);
        logs.push_back(std::log(nrm));
    }
    if (ts.size() < 2) throw std::invalid_argument("growth_rate: window contains < 2 samples");

    double st = 0, sl = 0, stt = 0, stl = 0;
    const double n = static_cast<double>(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        st += ts[i];
        sl += logs[i];
        stt += ts[i] * ts[i];
        stl += ts[i] * logs[i];
    }
    out.sigma = (n * stl - st * sl) / (n * stt - st * st);
    return out;
}

ComplexColumn default_mode_data(const Grid1D& grid) {
    std::vector<double> shape(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double Y = grid[j];
        shape[j] = Y * std::exp(-(Y - 2.0) * (Y - 2.0));
    }
    const double nrm = l2_norm(std::span<const double>(shape), grid);
    ComplexColumn w0(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) w0[j] = shape[j] / nrm;
    return w0;
}

GrowthFitResult growth_scan(const std::vector<int>& ks, const ShearProfile& profile,
                            const GrowthScanParams& params) {
    for (std::size_t i = 1; i < ks.size(); ++i)
        if (ks[i] <= ks[i - 1])
            throw std::invalid_argument("growth_scan: frequencies must be positive increasing");
    if (ks.empty() || ks.front() <= 0)
        throw std::invalid_argument("growth_scan: frequencies must be positive increasing");

    FrozenShear shear(profile);
    const ComplexColumn w0 = default_mode_data(profile.grid);
    const double sup = shear.sup_speed();

    GrowthFitResult fit;
    fit.ks = ks;
    const double t_fit = params.discard_fraction * params.horizon;
    for (int k : ks) {
        const double dt = std::min(params.dt_max, params.cfl / (std::abs(k) * std::max(sup, 1e-12)));
        ModeTrajectory traj = solve_mode(k, w0, shear, 0.0, params.horizon, dt, params.store_every);
        bool excluded = false;
        double sigma = 0.0;
        if (traj.blew_up && traj.times.back() <= t_fit) {
            excluded = true;
        } else {
            GrowthRate gr = growth_rate(traj, t_fit, params.horizon);
            sigma = gr.sigma;
            excluded = gr.decayed;
        }
        fit.sigma.push_back(sigma);
        fit.excluded.push_back(excluded);
    }

    // least squares for sigma = a sqrt(k) + b over included modes
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < ks.size(); ++i)
        if (!fit.excluded[i]) {
            xs.push_back(std::sqrt(static_cast<double>(ks[i])));
            ys.push_back(fit.sigma[i]);
        }
    if (ys.size() == 1) {
        fit.a = 0.0;
        fit.b = ys[0];
        fit.r_squared = 1.0;
        return fit;
    }
    if (ys.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        fit.a = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        fit.b = (sy - fit.a * sx) / n;
        const double mean = sy / n;
        double ss_res = 0, ss_tot = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double pred = fit.a * xs[i] + fit.b;
            ss_res += (ys[i] - pred) * (ys[i] - pred);
            ss_tot += (ys[i] - mean) * (ys[i] - mean);
        }
        fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    }
    return fit;
}

GronwallReport gronwall_check(const ModeTrajectory& traj, double C) {
    GronwallReport report;
    report.C = C;
    report.k = traj.k;
    const double n0 = traj.norms.front();
    if (n0 == 0.0) {
        report.margin = 0.0;
        report.pass = true;
        return report;
    }
    const double t0 = traj.times.front();
    double margin = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double bound = std::exp(C * std::abs(traj.k) * (traj.times[i] - t0)) * n0;
        margin = std::max(margin, traj.norms[i] / bound);
    }
    report.margin = margin;
    report.pass = margin <= 1.0 + 1e-2;
    return report;
}

AmplificationTable amplification_experiment(const ShearProfile& profile0,
                                            const AmplificationParams& params) {
    for (double s : params.shifts)
        if (s < 0.0) throw std::invalid_argument("amplification_experiment: shifts must be >= 0");

    WeightedNormSpec spec{params.m, params.alpha, true};
    spec.validate();
    const Grid1D& grid = profile0.grid;

    std::vector<double> shape(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double Y = grid[j];
        shape[j] = Y * std::exp(-(Y - 2.0) * (Y - 2.0));
    }
    const double nrm = weighted_norm_column(std::span<const double>(shape), grid, spec);
    ComplexColumn w0(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) w0[j] = shape[j] / nrm;

    AmplificationTable table;
    for (double shift : params.shifts) {
        HeatEvolvedShear shear(profile0, params.horizon, params.shear_dt, shift);
        const double sup = shear.sup_speed();
        for (int k : params.ks) {
            const double dt =
                std::min(params.dt_max, params.cfl / (std::abs(k) * std::max(sup, 1e-12)));
            ModeTrajectory traj = solve_mode(k, w0, shear, 0.0, params.horizon, dt, 2);
            double peak = 0.0;
            for (double v : traj.norms)
                if (std::isfinite(v)) peak = std::max(peak, v);
            // mode pair Re(w e^{ikx}) has 2D L2 = sqrt(pi) * ||w||_{L2_Y}
            table.cells.push_back({shift, k, std::sqrt(M_PI) * peak, traj.blew_up});
        }
    }
    return table;
}

double nonlinear_residual(const Field2D& u_pert, double delta) {
    const Field2D ux = diff_x(u_pert);
    const Field2D uy = diff_y(u_pert, 1);
    const std::size_t nx = u_pert.nx(), ny = u_pert.ny();
    const Grid1D& gy = u_pert.grid_y;

    const double y_half = gy.y_max / 2.0;
    std::vector<double> phi(ny, 0.0);
    for (std::size_t j = 0; j < ny; ++j) {
        const double s = gy[j] / y_half;
        if (s < 1.0) phi[j] = std::exp(1.0 - 1.0 / (1.0 - s * s));
    }

    double total = 0.0;
    std::vector<double> col(ny), integrand(ny);
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < ny; ++j) col[j] = ux.at(i, j);
        std::vector<double> v = cumulative_integral(std::span<const double>(col), gy);
        for (std::size_t j = 0; j < ny; ++j) {
            const double N = -u_pert.at(i, j) * ux.at(i, j) + v[j] * uy.at(i, j);
            integrand[j] = N * phi[j];
        }
        total += u_pert.grid_x.spacing() * trapezoid(integrand, gy);
    }
    return delta * std::abs(total);
}

}  // namespace prandtl
