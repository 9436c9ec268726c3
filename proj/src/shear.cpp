#include "prandtl/shear.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "prandtl/interp.hpp"
#include "prandtl/operators.hpp"
#include "prandtl/tridiag.hpp"

namespace prandtl {

void ShearProfile::refresh_derivatives() {
    du_s = diff_y(std::span<const double>(u_s), grid, 1);
    d2u_s = diff_y(std::span<const double>(u_s), grid, 2);
}

void ShearProfile::validate() const {
    if (u_s.size() != grid.size())
        throw std::invalid_argument("ShearProfile: sample/grid size mismatch");
    if (std::abs(u_s.front()) > 1e-12)
        throw std::invalid_argument("ShearProfile: u_s(0) must vanish");
    const double tol = 1e-6 * std::abs(U) + 1e-12;
    if (std::abs(u_s.back() - U) > tol)
        throw std::invalid_argument(
            "ShearProfile: |u_s(Y_max) - U| exceeds 1e-6|U|; increase Y_max");
}

ShearProfile make_profile(ProfileKind kind, const ProfileParams& params, const Grid1D& grid) {
    ShearProfile p;
    p.grid = grid;
    p.U = params.U;
    p.u_s.resize(grid.size());

    switch (kind) {
        case ProfileKind::ErfMonotone: {
            if (!(params.t0 > 0.0) || !std::isfinite(params.t0))
                throw std::invalid_argument("make_profile: erf t0 must be positive");
            const double s = 2.0 * std::sqrt(params.t0);
            for (std::size_t j = 0; j < grid.size(); ++j)
                p.u_s[j] = params.U * std::erf(grid[j] / s);
            break;
        }
        case ProfileKind::GdNonmonotone: {
            const double c = params.bump_c;
            if (!(c > 0.0) || !std::isfinite(c))
                throw std::invalid_argument("make_profile: bump amplitude c must be positive");
            for (std::size_t j = 0; j < grid.size(); ++j) {
                const double Y = grid[j];
                p.u_s[j] = params.U * (1.0 - std::exp(-Y)) + c * Y * Y * std::exp(-Y);
            }
            break;
        }
        case ProfileKind::CustomTable: {
            if (params.table_y.size() < 2 || params.table_y.size() != params.table_u.size())
                throw std::invalid_argument("make_profile: custom table needs matched columns");
            MonotoneCubic interp(params.table_y, params.table_u);
            for (std::size_t j = 0; j < grid.size(); ++j) p.u_s[j] = interp.eval(grid[j]);
            break;
        }
    }
    p.refresh_derivatives();
    p.validate();

    if (kind == ProfileKind::GdNonmonotone) {
        auto report = critical_points(p);
        bool ok = false;
        for (const auto& cp : report.points)
            if (std::abs(cp.curvature) > 1e-8) ok = true;
        if (!ok)
            throw std::invalid_argument(
                "make_profile: bump amplitude yields no non-degenerate interior critical point");
    }
    return p;
}

ProfileParams load_profile_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_profile_table: cannot open " + path);
    ProfileParams params;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double y, u;
        if (ls >> y >> u) {
            params.table_y.push_back(y);
            params.table_u.push_back(u);
        }
    }
    if (params.table_y.size() < 2)
        throw std::runtime_error("load_profile_table: fewer than 2 samples in " + path);
    params.U = params.table_u.back();
    return params;
}

ShearProfile evolve_heat(const ShearProfile& profile, double t_target, double dt) {
    if (t_target < profile.t)
        throw std::invalid_argument("evolve_heat: t_target before profile time");
    if (!(dt > 0.0)) throw std::invalid_argument("evolve_heat: dt must be positive");
    ShearProfile p = profile;
    const std::size_t n = p.grid.size();
    const std::size_t ni = n - 2;
    const auto& Y = p.grid.nodes;

    // second-derivative stencil per interior node
    std::vector<double> lo(ni), di(ni), hi(ni);
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double hm = Y[j] - Y[j - 1], hp = Y[j + 1] - Y[j];
        lo[j - 1] = 2.0 / (hm * (hm + hp));
        di[j - 1] = -2.0 / (hm * hp);
        hi[j - 1] = 2.0 / (hp * (hm + hp));
    }

    std::size_t step_index = 0;
    while (p.t < t_target - 1e-12) {
        const double h = std::min(dt, t_target - p.t);
        const double half = h / 2.0;
        std::vector<double> a(ni), b(ni), c(ni), rhs(ni);
        for (std::size_t i = 0; i < ni; ++i) {
            a[i] = -half * lo[i];
            b[i] = 1.0 - half * di[i];
            c[i] = -half * hi[i];
            const std::size_t j = i + 1;
            rhs[i] = p.u_s[j] +
                     half * (lo[i] * p.u_s[j - 1] + di[i] * p.u_s[j] + hi[i] * p.u_s[j + 1]);
        }
        // Dirichlet ends: u(0)=0, u(Y_max)=U at both time levels
        rhs[ni - 1] += half * hi[ni - 1] * p.U;
        a[0] = 0.0;
        c[ni - 1] = 0.0;
        auto sol = solve_tridiagonal(a, b, c, rhs);
        for (std::size_t i = 0; i < ni; ++i) {
            if (!std::isfinite(sol[i]))
                throw TridiagonalFailure("evolve_heat: non-finite solve at step " +
                                         std::to_string(step_index));
            p.u_s[i + 1] = sol[i];
        }
        p.u_s[0] = 0.0;
        p.u_s[n - 1] = p.U;
        p.t += h;
        ++step_index;
    }
    p.refresh_derivatives();
    return p;
}

CriticalPointReport critical_points(const ShearProfile& profile) {
    CriticalPointReport report;
    const auto& Y = profile.grid.nodes;
    const auto& du = profile.du_s;
    const auto& d2u = profile.d2u_s;
    const std::size_t n = Y.size();

    // ignore the saturated far field, where dY u_s underflows to exact zeros
    double du_scale = 0.0;
    for (double v : du) du_scale = std::max(du_scale, std::abs(v));
    const double tol = 1e-8 * du_scale;

    for (std::size_t j = 1; j + 2 < n; ++j) {
        const double a = du[j], b = du[j + 1];
        if (std::abs(a) <= tol) {
            if (std::abs(du[j - 1]) > tol && std::abs(b) > tol && du[j - 1] * b < 0.0)
                report.points.push_back({Y[j], d2u[j]});
            continue;
        }
        if (std::abs(b) <= tol) continue;  // grazing zero, handled at the next node
        if (a * b < 0.0) {
            // quadratic fit of dY u_s through nodes j-1, j, j+1; root in [Y_j, Y_{j+1}]
            const double x0 = Y[j - 1], x1 = Y[j], x2 = Y[j + 1];
            const double f0 = du[j - 1], f1 = du[j], f2 = du[j + 1];
            const double d01 = (f1 - f0) / (x1 - x0);
            const double d12 = (f2 - f1) / (x2 - x1);
            const double c2 = (d12 - d01) / (x2 - x0);
            // p(x) = f1 + d12 (x - x1) + c2 (x - x1)(x - x2); Newton from linear root
            double root = x1 - a / ((b - a) / (x2 - x1));
            for (int it = 0; it < 8; ++it) {
                const double px = f1 + d12 * (root - x1) + c2 * (root - x1) * (root - x2);
                const double dpx = d12 + c2 * (2.0 * root - x1 - x2);
                if (dpx == 0.0) break;
                root -= px / dpx;
            }
            root = std::clamp(root, x1, x2);
            const double t = (root - x1) / (x2 - x1);
            const double curv = (1.0 - t) * d2u[j] + t * d2u[j + 1];
            report.points.push_back({root, curv});
        }
    }
    return report;
}

double shear_admissibility(const ShearProfile& profile) {
    double sup = 0.0;
    for (double v : profile.u_s) {
        if (!std::isfinite(v)) throw std::runtime_error("shear_admissibility: non-finite profile");
        sup = std::max(sup, std::abs(v));
    }
    std::vector<double> integrand(profile.grid.size());
    for (std::size_t j = 0; j < integrand.size(); ++j) {
        integrand[j] = profile.grid[j] * profile.du_s[j] * profile.du_s[j];
        if (!std::isfinite(integrand[j]))
            throw std::runtime_error("shear_admissibility: non-finite integrand");
    }
    return sup + trapezoid(integrand, profile.grid);
}

OuterFlow OuterFlow::constant(PeriodicGridX gx, double value) {
    return steady(gx, std::vector<double>(gx.n_x, value));
}

OuterFlow OuterFlow::steady(PeriodicGridX gx, const std::vector<double>& u_row) {
    return bernoulli_pressure(gx, {0.0}, {u_row});
}

bool OuterFlow::positive() const {
    for (const auto& row : U)
        for (double v : row)
            if (!(v > 0.0)) return false;
    return true;
}

void OuterFlow::slice(double t, std::vector<double>& u, std::vector<double>& u_x,
                      std::vector<double>& u_t) const {
    const std::size_t nt = times.size();
    if (nt == 1 || t <= times.front()) {
        u = U.front();
        u_x = U_x.front();
        u_t = U_t.front();
        return;
    }
    if (t >= times.back()) {
        u = U.back();
        u_x = U_x.back();
        u_t = U_t.back();
        return;
    }
    auto it = std::upper_bound(times.begin(), times.end(), t);
    const std::size_t i = static_cast<std::size_t>(std::distance(times.begin(), it)) - 1;
    const double w = (t - times[i]) / (times[i + 1] - times[i]);
    const std::size_t nx = grid_x.n_x;
    u.resize(nx);
    u_x.resize(nx);
    u_t.resize(nx);
    for (std::size_t j = 0; j < nx; ++j) {
        u[j] = (1 - w) * U[i][j] + w * U[i + 1][j];
        u_x[j] = (1 - w) * U_x[i][j] + w * U_x[i + 1][j];
        u_t[j] = (1 - w) * U_t[i][j] + w * U_t[i + 1][j];
    }
}

OuterFlow bernoulli_pressure(PeriodicGridX gx, const std::vector<double>& times,
                             const std::vector<std::vector<double>>& u_samples) {
    if (times.empty() || times.size() != u_samples.size())
        throw std::invalid_argument("bernoulli_pressure: times/samples mismatch");
    OuterFlow flow(gx);
    flow.times = times;
    flow.U = u_samples;
    const std::size_t nt = times.size();
    const std::size_t nx = gx.n_x;

    // U_x by Fourier differentiation of each time row
    Grid1D dummy = build_grid(1.0, 16);  // diff_x needs a Field2D carrier
    for (std::size_t i = 0; i < nt; ++i) {
        if (u_samples[i].size() != nx)
            throw std::invalid_argument("bernoulli_pressure: row size mismatch");
        Field2D row(gx, dummy);
        for (std::size_t j = 0; j < nx; ++j)
            for (std::size_t y = 0; y < dummy.size(); ++y) row.at(j, y) = u_samples[i][j];
        Field2D drow = diff_x(row);
        std::vector<double> ux(nx);
        for (std::size_t j = 0; j < nx; ++j) ux[j] = drow.at(j, 0);
        flow.U_x.push_back(std::move(ux));
    }
    // U_t by centered differences in t, one-sided at the ends
    for (std::size_t i = 0; i < nt; ++i) {
        std::vector<double> ut(nx, 0.0);
        if (nt >= 2) {
            const std::size_t a = (i == 0) ? 0 : i - 1;
            const std::size_t b = (i + 1 == nt) ? i : i + 1;
            const double dt = times[b] - times[a];
            for (std::size_t j = 0; j < nx; ++j)
                ut[j] = (u_samples[b][j] - u_samples[a][j]) / dt;
        }
        flow.U_t.push_back(std::move(ut));
    }
    for (std::size_t i = 0; i < nt; ++i) {
        std::vector<double> px(nx);
        for (std::size_t j = 0; j < nx; ++j)
            px[j] = -(flow.U_t[i][j] + flow.U[i][j] * flow.U_x[i][j]);
        flow.P_x.push_back(std::move(px));
    }
    return flow;
}

FrozenShear::FrozenShear(ShearProfile profile) : profile_(std::move(profile)) {}

void FrozenShear::at(double, std::vector<double>& u_s, std::vector<double>& du_s) const {
    u_s = profile_.u_s;
    du_s = profile_.du_s;
}

double FrozenShear::sup_speed() const {
    double s = 0.0;
    for (double v : profile_.u_s) s = std::max(s, std::abs(v));
    return s;
}

HeatEvolvedShear::HeatEvolvedShear(ShearProfile initial, double horizon, double dt, double shift)
    : dt_(dt), shift_(shift) {
    if (!(dt > 0.0)) throw std::invalid_argument("HeatEvolvedShear: dt must be positive");
    if (shift < 0.0) throw std::invalid_argument("HeatEvolvedShear: shift must be >= 0");
    const double total = shift + horizon;
    const std::size_t count = static_cast<std::size_t>(std::ceil(total / dt)) + 1;
    snapshots_.reserve(count + 1);
    snapshots_.push_back(initial);
    ShearProfile cur = std::move(initial);
    for (std::size_t i = 1; i <= count; ++i) {
        cur = evolve_heat(cur, cur.t + dt, dt);
        snapshots_.push_back(cur);
    }
}

void HeatEvolvedShear::at(double t, std::vector<double>& u_s, std::vector<double>& du_s) const {
    const double tau = std::max(0.0, t + shift_ - snapshots_.front().t);
    const double idx = tau / dt_;
    std::size_t i = static_cast<std::size_t>(idx);
    if (i + 1 >= snapshots_.size()) {
        u_s = snapshots_.back().u_s;
        du_s = snapshots_.back().du_s;
        return;
    }
    const double w = idx - static_cast<double>(i);
    const auto& p0 = snapshots_[i];
    const auto& p1 = snapshots_[i + 1];
    const std::size_t n = p0.u_s.size();
    u_s.resize(n);
    du_s.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        u_s[j] = (1 - w) * p0.u_s[j] + w * p1.u_s[j];
        du_s[j] = (1 - w) * p0.du_s[j] + w * p1.du_s[j];
    }
}

double HeatEvolvedShear::sup_speed() const {
    double s = 0.0;
    for (const auto& p : snapshots_)
        for (double v : p.u_s) s = std::max(s, std::abs(v));
    return s;
}

}  // namespace prandtl
