// Acceptance gate: one line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "prandtl/crocco.hpp"
#include "prandtl/linear_mode.hpp"
#include "prandtl/shear.hpp"
#include "prandtl/stability.hpp"

using namespace prandtl;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& name, const std::string& detail) {
    std::printf("criterion %2d: %s  %s (%s)\n", id, pass ? "PASS" : "FAIL", name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// -------------------------------------------------------------------------

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    const Grid1D grid = build_grid(20.0, 256);
    const ShearProfile evolved =
        evolve_heat(make_profile(ProfileKind::ErfMonotone, {}, grid), 1.0, 1e-3);
    double err = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j)
        err = std::max(err, std::abs(evolved.u_s[j] - std::erf(grid[j] / (2.0 * std::sqrt(2.0)))));
    const double elapsed = seconds_since(t0);
    report(1, err <= 1e-3 && elapsed <= 5.0, "heat-equation oracle",
           "max err " + fmt(err) + ", " + fmt(elapsed) + " s");
}

void criterion_2() {
    const Grid1D grid = build_grid(20.0, 256);
    const FrozenShear shear(make_profile(ProfileKind::ErfMonotone, {}, grid));
    const ComplexColumn zero(grid.size(), 0.0);
    double worst = 0.0;
    for (int k : {0, 8, 32}) {
        const ModeTrajectory traj = solve_mode(k, zero, shear, 0.0, 1.0, 1e-3);
        for (double n : traj.norms) worst = std::max(worst, n);
    }
    report(2, worst <= 1e-12, "linear uniqueness from zero data", "max norm " + fmt(worst));
}

void criterion_3() {
    const Grid1D grid = build_grid(20.0, 256);
    const ShearProfile profile = make_profile(ProfileKind::ErfMonotone, {}, grid);
    const FrozenShear shear(profile);
    const ComplexColumn w0 = default_mode_data(grid);
    const double C = 1.0 + 1.0 / M_PI;  // analytic admissibility constant
    double worst = 0.0;
    bool all_pass = true;
    for (int k : {4, 8, 16}) {
        const double dt = std::min(1e-3, 0.2 / static_cast<double>(k));
        const ModeTrajectory traj = solve_mode(k, w0, shear, 0.0, 0.5, dt);
        const GronwallReport g = gronwall_check(traj, C);
        worst = std::max(worst, g.margin);
        all_pass = all_pass && g.pass;
    }
    report(3, all_pass && worst <= 1.01, "Gronwall envelope", "worst margin " + fmt(worst));
}

void criterion_4() {
    const auto t0 = std::chrono::steady_clock::now();
    const Grid1D grid = build_grid(25.0, 320);
    const std::vector<int> ks{8, 16, 32, 64};
    const GrowthFitResult non =
        growth_scan(ks, make_profile(ProfileKind::GdNonmonotone, {}, grid));
    const GrowthFitResult mono =
        growth_scan(ks, make_profile(ProfileKind::ErfMonotone, {}, grid));
    const double elapsed = seconds_since(t0);
    const bool dichotomy = mono.sigma.back() <= non.sigma.back() / 5.0;
    report(4,
           non.a > 0.0 && non.r_squared >= 0.9 && dichotomy && elapsed <= 120.0,
           "growth dichotomy sigma = a sqrt(k) + b",
           "a " + fmt(non.a) + ", R^2 " + fmt(non.r_squared) + ", sigma64 " +
               fmt(non.sigma.back()) + " vs " + fmt(mono.sigma.back()) + ", " + fmt(elapsed) +
               " s");
}

void criterion_5() {
    const Grid1D grid = build_grid(25.0, 320);
    const ShearProfile profile = make_profile(ProfileKind::GdNonmonotone, {}, grid);
    const AmplificationTable table = amplification_experiment(profile, {});
    bool increasing = true;
    std::string ratios;
    for (std::size_t c = 0; c < table.cells.size(); ++c) {
        if (c > 0 && table.cells[c].shift == table.cells[c - 1].shift &&
            !(table.cells[c].ratio > table.cells[c - 1].ratio))
            increasing = false;
        ratios += (c ? " " : "") + fmt(table.cells[c].ratio);
    }
    report(5, increasing && !table.cells.empty(), "amplification grows with k", ratios);
}

double cross_solver_error(std::size_t n, double dt_crocco) {
    const Grid1D gy = build_grid(20.0, n);
    const PeriodicGridX gx(4);
    const OuterFlow outer = OuterFlow::constant(gx, 1.0);
    const Field2D u0 = Field2D::sample(gx, gy, [](double, double y) {
        return 1.0 - std::exp(-y);
    });
    CroccoState state = to_crocco(u0, outer, build_crocco_grid(n, gx));
    const long nsteps = std::llround(0.5 / dt_crocco);
    for (long s = 0; s < nsteps; ++s) state = step_crocco(state, dt_crocco);
    const Field2D u = from_crocco(state, gy);

    ShearProfile carrier;
    carrier.grid = gy;
    carrier.U = 1.0;
    carrier.u_s.resize(gy.size());
    for (std::size_t j = 0; j < gy.size(); ++j) carrier.u_s[j] = u0.at(0, j);
    carrier.refresh_derivatives();
    const ShearProfile heat = evolve_heat(carrier, 0.5, 2.5e-5);

    double err = 0.0;
    for (std::size_t j = 0; j < gy.size(); ++j)
        err = std::max(err, std::abs(u.at(0, j) - heat.u_s[j]));
    return err;
}

void criterion_6() {
    const auto t0 = std::chrono::steady_clock::now();
    const double coarse = cross_solver_error(256, 5e-4);
    const double fine = cross_solver_error(512, 1.25e-4);
    report(6, coarse <= 2e-3 && fine <= coarse / 3.0, "Crocco cross-solver oracle",
           "err " + fmt(coarse) + " -> " + fmt(fine) + ", " + fmt(seconds_since(t0)) + " s");
}

void criterion_7() {
    const Grid1D gy = build_grid(20.0, 512);
    const PeriodicGridX gx(8);
    const OuterFlow outer = OuterFlow::constant(gx, 1.0);
    const CroccoGrid grid = build_crocco_grid(256, gx);

    const Field2D u0 = Field2D::sample(gx, gy, [](double, double y) {
        return 1.0 - std::exp(-y);
    });
    const Field2D round = from_crocco(to_crocco(u0, outer, grid), gy);
    double err_round = 0.0;
    for (std::size_t j = 0; j < gy.size(); ++j)
        err_round = std::max(err_round, std::abs(round.at(0, j) - u0.at(0, j)));

    CroccoState linear(grid, outer);
    for (std::size_t i = 0; i < linear.nx(); ++i)
        for (std::size_t j = 0; j < linear.neta(); ++j)
            linear.at(i, j) = 1.0 - grid.eta(j);
    const Field2D mapped = from_crocco(linear, gy);
    double err_map = 0.0;
    for (std::size_t j = 0; j < gy.size(); ++j)
        err_map = std::max(err_map, std::abs(mapped.at(0, j) - u0.at(0, j)));

    report(7, err_round <= 1e-6 && err_map <= 1e-4, "Crocco round trip",
           "round " + fmt(err_round) + ", map " + fmt(err_map));
}

struct EvolvedRun {
    std::vector<double> times;
    std::vector<CroccoState> states;
    MonotoneBounds bounds0;
};

EvolvedRun evolve_run(double theta, double b, double xmod, std::size_t n_eta, std::size_t n_x,
                      double t_target, double dt, std::size_t stride, const Grid1D& gy) {
    const PeriodicGridX gx(n_x);
    const OuterFlow outer = OuterFlow::constant(gx, 1.0);
    const Field2D u0 = Field2D::sample(gx, gy, [&](double x, double y) {
        const double th = theta * (1.0 + xmod * std::sin(x));
        return 1.0 - std::exp(-(th * y + b * (1.0 - std::exp(-y))));
    });
    const AssumptionOReport check = check_assumption_O(u0, outer);
    if (!check.satisfied) throw std::runtime_error("initial data: " + check.violation);

    CroccoState state = to_crocco(u0, outer, build_crocco_grid(n_eta, gx));
    EvolvedRun run;
    run.bounds0 = check.bounds;
    run.times.push_back(0.0);
    run.states.push_back(state);
    const std::size_t nsteps = static_cast<std::size_t>(std::llround(t_target / dt));
    for (std::size_t s = 0; s < nsteps; ++s) {
        state = step_crocco(state, dt);
        if ((s + 1) % stride == 0 || s + 1 == nsteps) {
            run.times.push_back(state.t);
            run.states.push_back(state);
        }
    }
    return run;
}

void criterion_8() {
    const Grid1D gy = build_grid(20.0, 512);
    const EvolvedRun run = evolve_run(1.0, 0.2, 0.0, 256, 8, 0.5, 5e-4, 50, gy);
    const BoundsReport bounds = verify_bounds(run.states, run.bounds0, gy);
    const bool constants = std::abs(run.bounds0.theta0 - 1.0) <= 0.02 &&
                           std::abs(run.bounds0.C0 - 1.2) <= 0.02;
    report(8, bounds.pass && bounds.sandwich_ok && constants, "monotone bound persistence",
           "theta1 " + fmt(bounds.fitted.theta1) + ", theta2 " + fmt(bounds.fitted.theta2) +
               ", theta0 " + fmt(run.bounds0.theta0) + ", C0 " + fmt(run.bounds0.C0));
}

void criterion_9() {
    const Grid1D gy = build_grid(20.0, 512);
    const StabilityFunctionalSpec spec{2.5, 8.0};

    auto trace_at = [&](std::size_t n_eta, double dt) {
        const EvolvedRun a = evolve_run(1.0, 0.2, 0.0, n_eta, 8, 0.5, dt, 50, gy);
        const EvolvedRun b = evolve_run(1.0, 0.25, 0.0, n_eta, 8, 0.5, dt, 50, gy);
        return track_functional(a.states, b.states, a.times, spec);
    };
    const FunctionalTrace coarse = trace_at(128, 1e-3);
    const FunctionalTrace fine = trace_at(256, 5e-4);

    bool finite = true;
    for (double v : coarse.I) finite = finite && std::isfinite(v);
    for (double v : fine.I) finite = finite && std::isfinite(v);
    const double drift = std::abs(fine.C_hat - coarse.C_hat) /
                         std::max({std::abs(coarse.C_hat), std::abs(fine.C_hat), 1e-12});
    report(9, coarse.pass && fine.pass && finite && drift <= 0.25, "stability functional",
           "C_hat " + fmt(coarse.C_hat) + " -> " + fmt(fine.C_hat) + ", drift " + fmt(drift));
}

void criterion_10() {
    const auto t0 = std::chrono::steady_clock::now();
    const Grid1D gy = build_grid(20.0, 256);
    const StabilityFunctionalSpec spec{2.5, 8.0};
    const double horizon = 0.25;

    const EvolvedRun base = evolve_run(1.0, 0.0, 0.0, 128, 8, horizon, 1e-3, 25, gy);
    std::vector<Field2D> base_fields;
    for (const auto& s : base.states) base_fields.push_back(from_crocco(s, gy));

    std::vector<double> ratios;
    for (double eps : {1e-1, 1e-2, 1e-3}) {
        const EvolvedRun pert = evolve_run(1.0, 0.0, eps, 128, 8, horizon, 1e-3, 25, gy);
        std::vector<Field2D> pert_fields;
        for (const auto& s : pert.states) pert_fields.push_back(from_crocco(s, gy));

        const BoundsReport bounds = verify_bounds(pert.states, pert.bounds0, gy);
        const double alpha = (spec.beta - 1.0) * bounds.fitted.theta2 / 2.0;
        ratios.push_back(
            stability_ratio(base_fields, pert_fields, base.times, alpha, horizon));
    }
    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[1];
    const bool tight = sorted.back() <= 2.0 * median && sorted.front() >= median / 2.0;
    const double elapsed = seconds_since(t0);
    report(10, tight && median > 0.0 && elapsed <= 300.0, "Lipschitz stability ratio",
           "R " + fmt(ratios[0]) + " " + fmt(ratios[1]) + " " + fmt(ratios[2]) + ", " +
               fmt(elapsed) + " s");
}

// ---- CLI plumbing -------------------------------------------------------

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& body) {
    std::ofstream out(path);
    out << body;
}

int run_cli(const std::string& args, const fs::path& err_file) {
    const std::string cmd = std::string(PRANDTL_LAB_BIN) + " " + args + " > /dev/null 2> " +
                            err_file.string();
    return std::system(cmd.c_str());
}

void criterion_11() {
    const fs::path dir = fs::temp_directory_path() / "prandtl_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path err = dir / "stderr.txt";
    std::string detail;
    bool pass = true;

    write_file(dir / "shear.cfg", "grid.n = 128\nrun.t_target = 0.5\nrun.dt = 1e-3\n");
    const int s1 = run_cli("shear --config " + (dir / "shear.cfg").string() + " --out " +
                               (dir / "out1").string(), err);
    const int s2 = run_cli("shear --config " + (dir / "shear.cfg").string() + " --out " +
                               (dir / "out2").string(), err);
    const std::string csv1 = slurp(dir / "out1/profile.csv");
    if (s1 != 0 || s2 != 0 || csv1.empty() || csv1 != slurp(dir / "out2/profile.csv")) {
        pass = false;
        detail += "determinism broken; ";
    }

    write_file(dir / "bad_beta.cfg", "norm.beta = 3.5\n");
    if (run_cli("stability --config " + (dir / "bad_beta.cfg").string() + " --out " +
                    (dir / "out_beta").string(), err) == 0 ||
        slurp(err).find("norm.beta") == std::string::npos) {
        pass = false;
        detail += "beta not rejected; ";
    }

    write_file(dir / "bad_dt.cfg", "run.dt = -1\n");
    if (run_cli("shear --config " + (dir / "bad_dt.cfg").string() + " --out " +
                    (dir / "out_dt").string(), err) == 0 ||
        slurp(err).find("run.dt") == std::string::npos) {
        pass = false;
        detail += "dt not rejected; ";
    }

    write_file(dir / "bump.cfg",
               "ic.kind = bump\nic.b = 0.5\ngrid.n_eta = 64\nrun.t_target = 0.1\n");
    if (run_cli("crocco --config " + (dir / "bump.cfg").string() + " --out " +
                    (dir / "out_bump").string(), err) == 0 ||
        slurp(err).find("assumption (O)") == std::string::npos) {
        pass = false;
        detail += "non-monotone data not rejected; ";
    }

    report(11, pass, "determinism and config rejection",
           detail.empty() ? "byte-identical reruns, named-key rejections" : detail);
}

}  // namespace

int main() {
    using Criterion = void (*)();
    const Criterion criteria[] = {criterion_1, criterion_2, criterion_3, criterion_4,
                                  criterion_5, criterion_6, criterion_7, criterion_8,
                                  criterion_9, criterion_10, criterion_11};
    int id = 0;
    for (Criterion c : criteria) {
        ++id;
        try {
            c();
        } catch (const std::exception& e) {
            report(id, false, "exception", e.what());
        }
    }
    return failures == 0 ? 0 : 1;
}
