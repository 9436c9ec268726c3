#include "prandtl/stability.hpp"

#include <algorithm>
#include <cmath>

#include "prandtl/norms.hpp"
#include "prandtl/operators.hpp"

namespace prandtl {

namespace {

// I over one pair of Crocco states plus the w_x rows supplied by the caller
double functional_value(const CroccoState& w1, const CroccoState& w2, const Field2D& w1x,
                        const Field2D& w2x, double beta) {
    const CroccoGrid& grid = w1.grid;
    const std::size_t ni = grid.n_eta;
    const double dx = grid.grid_x.spacing();
    double total = 0.0;
    std::vector<double> integrand(ni);
    Grid1D eta_carrier{std::vector<double>(grid.eta_nodes.begin(), grid.eta_nodes.begin() + ni),
                       Grading::Uniform, grid.eta(ni - 1)};
    for (std::size_t i = 0; i < w1.nx(); ++i) {
        for (std::size_t j = 0; j < ni; ++j) {
            const double weight = std::pow(1.0 - grid.eta(j), -beta);
            const double dz = w1.at(i, j) - w2.at(i, j);
            const double dzx = w1x.at(i, j) - w2x.at(i, j);
            integrand[j] = (dzx * dzx + dz * dz) * weight;
            if (!std::isfinite(integrand[j]))
                throw std::runtime_error("weight-incompatible states at eta = " +
                                         std::to_string(grid.eta(j)));
        }
        total += dx * trapezoid(integrand, eta_carrier);
    }
    return total;
}

Field2D crocco_x_derivative(const CroccoState& state) {
    Grid1D eta_carrier{state.grid.eta_nodes, Grading::Uniform, 1.0};
    Field2D w_field(state.grid.grid_x, eta_carrier);
    for (std::size_t i = 0; i < state.nx(); ++i)
        for (std::size_t j = 0; j < state.neta(); ++j) w_field.at(i, j) = state.at(i, j);
    return diff_x(w_field);
}

double field_l2_squared(const Field2D& f) {
    const double v = l2_norm(f);
    return v * v;
}

}  // namespace

double stability_functional(const CroccoState& w1, const CroccoState& w2,
                            const StabilityFunctionalSpec& spec) {
    spec.validate();
    if (w1.grid.size() != w2.grid.size() || w1.nx() != w2.nx())
        throw std::invalid_argument("stability_functional: grids differ");
    const Field2D w1x = crocco_x_derivative(w1);
    const Field2D w2x = crocco_x_derivative(w2);
    return functional_value(w1, w2, w1x, w2x, spec.beta);
}

FunctionalTrace track_functional(const std::vector<CroccoState>& run1,
                                 const std::vector<CroccoState>& run2,
                                 const std::vector<double>& times,
                                 const StabilityFunctionalSpec& spec) {
    if (run1.size() != run2.size() || run1.size() != times.size() || run1.empty())
        throw std::invalid_argument("track_functional: runs and times must align");
    FunctionalTrace trace;
    trace.times = times;
    for (std::size_t i = 0; i < run1.size(); ++i)
        trace.I.push_back(stability_functional(run1[i], run2[i], spec));

    const double I0 = trace.I.front();
    if (I0 == 0.0) {
        trace.identical = true;
        trace.pass = true;
        for (double v : trace.I)
            if (v != 0.0) trace.pass = false;
        return trace;
    }
    // log-linear fit of I(t)/I(0)
    double st = 0, sl = 0, stt = 0, stl = 0;
    const double n = static_cast<double>(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double l = std::log(trace.I[i] / I0);
        st += times[i];
        sl += l;
        stt += times[i] * times[i];
        stl += times[i] * l;
    }
    trace.C_hat = (n * stl - st * sl) / (n * stt - st * st);
    trace.pass = true;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double bound = 1.25 * I0 * std::exp(trace.C_hat * (times[i] - times.front()));
        if (!(trace.I[i] <= bound) || !std::isfinite(trace.I[i])) trace.pass = false;
    }
    return trace;
}

DifferenceState difference_fields(const Field2D& u1, const Field2D& u2) {
    if (u1.nx() != u2.nx() || u1.ny() != u2.ny())
        throw std::invalid_argument("difference_fields: grids differ");
    Field2D z = u1;
    for (std::size_t idx = 0; idx < z.values.size(); ++idx) z.values[idx] -= u2.values[idx];

    const Field2D zx = diff_x(z);
    Field2D h(z.grid_x, z.grid_y);
    std::vector<double> col(z.ny());
    for (std::size_t i = 0; i < z.nx(); ++i) {
        for (std::size_t j = 0; j < z.ny(); ++j) col[j] = zx.at(i, j);
        const std::vector<double> integral =
            cumulative_integral(std::span<const double>(col), z.grid_y);
        for (std::size_t j = 0; j < z.ny(); ++j) h.at(i, j) = -integral[j];
    }
    return {std::move(z), std::move(h)};
}

std::vector<double> energy_identity_residual(const std::vector<double>& times,
                                             const std::vector<DifferenceState>& z_run,
                                             const std::vector<Field2D>& u2_run, double k_exp) {
    if (times.size() != z_run.size() || times.size() != u2_run.size() || times.size() < 3)
        throw std::invalid_argument("energy_identity_residual: need >= 3 aligned samples");

    std::vector<double> energy(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double scale = std::exp(-2.0 * k_exp * times[i]);
        energy[i] = scale * field_l2_squared(z_run[i].z);
    }

    std::vector<double> residuals;
    for (std::size_t i = 1; i + 1 < times.size(); ++i) {
        const double ddt = 0.5 * (energy[i + 1] - energy[i - 1]) / (times[i + 1] - times[i - 1]);
        const double scale = std::exp(-2.0 * k_exp * times[i]);

        const Field2D u2x = diff_x(u2_run[i]);
        const Field2D u2y = diff_y(u2_run[i], 1);
        const Field2D zy = diff_y(z_run[i].z, 1);

        const Field2D& z = z_run[i].z;
        const Field2D& h = z_run[i].h;
        const double dx = z.grid_x.spacing();
        double term_k = 0.0, term_cross = 0.0, term_diss = 0.0;
        std::vector<double> ik(z.ny()), ic(z.ny()), id(z.ny());
        for (std::size_t x = 0; x < z.nx(); ++x) {
            for (std::size_t j = 0; j < z.ny(); ++j) {
                const double zv = z.at(x, j);
                ik[j] = (k_exp + u2x.at(x, j)) * zv * zv;
                ic[j] = u2y.at(x, j) * h.at(x, j) * zv;
                id[j] = zy.at(x, j) * zy.at(x, j);
            }
            term_k += dx * trapezoid(ik, z.grid_y);
            term_cross += dx * trapezoid(ic, z.grid_y);
            term_diss += dx * trapezoid(id, z.grid_y);
        }
        term_k *= scale;
        term_cross *= scale;
        term_diss *= scale;

        const double lhs = 0.5 * ddt + term_k + term_cross + term_diss;
        const double largest = std::max({std::abs(0.5 * ddt), std::abs(term_k),
                                         std::abs(term_cross), std::abs(term_diss), 1e-300});
        residuals.push_back(std::abs(lhs) / largest);
    }
    return residuals;
}

ZxBoundReport zx_bound_check(const DifferenceState& z, const CroccoState& w1,
                             const CroccoState& w2, const StabilityFunctionalSpec& spec) {
    spec.validate();
    ZxBoundReport report;

    double th1 = std::numeric_limits<double>::infinity(), th2 = 0.0;
    for (const CroccoState* s : {&w1, &w2})
        for (std::size_t i = 0; i < s->nx(); ++i)
            for (std::size_t j = 0; j + 1 < s->neta(); ++j) {
                const double r = s->at(i, j) / (1.0 - s->grid.eta(j));
                th1 = std::min(th1, r);
                th2 = std::max(th2, r);
            }
    report.theta1 = th1;
    report.theta2 = th2;
    if ((3.0 - spec.beta) * th2 > th1) {
        report.skipped = true;
        return report;
    }

    const Field2D zx = diff_x(z.z);
    const Field2D zy = diff_y(z.z, 1);
    Field2D yzy = zy;
    for (std::size_t i = 0; i < yzy.nx(); ++i)
        for (std::size_t j = 0; j < yzy.ny(); ++j) yzy.at(i, j) *= yzy.grid_y[j];

    report.lhs = field_l2_squared(zx);
    report.rhs = field_l2_squared(z.z) + field_l2_squared(yzy) +
                 stability_functional(w1, w2, spec);
    if (report.lhs == 0.0 && report.rhs == 0.0) {
        report.degenerate = true;
        report.pass = true;
        return report;
    }
    report.ratio = report.lhs / report.rhs;
    report.pass = std::isfinite(report.ratio);
    return report;
}

double stability_ratio(const std::vector<Field2D>& run1, const std::vector<Field2D>& run2,
                       const std::vector<double>& times, double alpha, double horizon) {
    if (run1.size() != run2.size() || run1.size() != times.size() || run1.empty())
        throw std::invalid_argument("stability_ratio: runs and times must align");

    Field2D d0 = run1.front();
    for (std::size_t idx = 0; idx < d0.values.size(); ++idx)
        d0.values[idx] -= run2.front().values[idx];
    const double denom = weighted_norm(d0, WeightedNormSpec{2, alpha, true});
    if (denom == 0.0) return 0.0;

    double sup = 0.0;
    for (std::size_t i = 0; i < run1.size(); ++i) {
        if (times[i] > horizon + 1e-12) break;
        Field2D d = run1[i];
        for (std::size_t idx = 0; idx < d.values.size(); ++idx) d.values[idx] -= run2[i].values[idx];
        sup = std::max(sup, weighted_norm(d, WeightedNormSpec{1, 0.0, false}));
    }
    return sup / denom;
}

}  // namespace prandtl
