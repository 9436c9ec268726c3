#include "prandtl/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>

#include "prandtl/crocco.hpp"
#include "prandtl/linear_mode.hpp"
#include "prandtl/norms.hpp"
#include "prandtl/shear.hpp"
#include "prandtl/stability.hpp"

namespace prandtl {

namespace {

using nlohmann::ordered_json;

struct Emitter {
    std::string out_dir;
    OutputFormat format;
    RunManifest* manifest;

    void csv(const std::string& name, const std::vector<CsvColumn>& columns) const {
        if (format == OutputFormat::Json) return;
        const std::string path = out_dir + "/" + name;
        emit_csv(path, columns);
        manifest->files.push_back(name);
    }
};

Grid1D grid_from_config(const RunConfig& config) {
    return build_grid(config.get_double("grid.y_max"),
                      static_cast<std::size_t>(config.get_int("grid.n")),
                      config.get("grid.grading") == "tanh" ? Grading::TanhStretched
                                                           : Grading::Uniform);
}

ShearProfile profile_from_config(const RunConfig& config, const Grid1D& grid) {
    ProfileParams params;
    params.U = config.get_double("profile.u");
    params.t0 = config.get_double("profile.t0");
    params.bump_c = config.get_double("profile.c");
    const std::string& kind = config.get("profile.kind");
    if (kind == "erf") return make_profile(ProfileKind::ErfMonotone, params, grid);
    if (kind == "gd") return make_profile(ProfileKind::GdNonmonotone, params, grid);
    const std::string& table = config.get("profile.table");
    if (table.empty()) throw ConfigError("profile.table: required when profile.kind = table");
    ProfileParams loaded = load_profile_table(table);
    return make_profile(ProfileKind::CustomTable, loaded, grid);
}

// exp/blended: u0(x, y) = U (1 - exp(-(theta(x) y + b (1 - e^{-y})))) with
// theta(x) = theta (1 + xmod sin x) -- monotone in y.
// bump: u0 = U (1 - e^{-theta y}) + b y^2 e^{-y}, non-monotone for sizable b.
Field2D crocco_initial(const RunConfig& config, const std::string& section, PeriodicGridX gx,
                       const Grid1D& gy) {
    const double theta = config.get_double(section + ".theta");
    const double b = config.get_double(section + ".b");
    const double xmod = config.get_double(section + ".xmod");
    const double U = config.get_double("outer.u");
    if (config.get(section + ".kind") == "bump")
        return Field2D::sample(gx, gy, [&](double, double y) {
            return U * (1.0 - std::exp(-theta * y)) + b * y * y * std::exp(-y);
        });
    return Field2D::sample(gx, gy, [&](double x, double y) {
        const double th = theta * (1.0 + xmod * std::sin(x));
        return U * (1.0 - std::exp(-(th * y + b * (1.0 - std::exp(-y)))));
    });
}

struct CroccoRun {
    std::vector<double> times;
    std::vector<CroccoState> states;
    MonotoneBounds bounds0;
};

CroccoRun run_crocco_evolution(const RunConfig& config, const std::string& section,
                               const Grid1D& y_grid) {
    PeriodicGridX gx(static_cast<std::size_t>(config.get_int("grid.n_x")));
    const Field2D u0 = crocco_initial(config, section, gx, y_grid);
    const OuterFlow outer = OuterFlow::constant(gx, config.get_double("outer.u"));

    const AssumptionOReport check = check_assumption_O(u0, outer);
    if (!check.satisfied)
        throw ConfigError(section + ": initial data violates assumption (O): " + check.violation);

    const CroccoGrid grid =
        build_crocco_grid(static_cast<std::size_t>(config.get_int("grid.n_eta")), gx);
    CroccoState state = to_crocco(u0, outer, grid);

    const double t_target = config.get_double("run.t_target");
    double dt = config.get_double("run.dt");
    dt = std::min(dt, crocco_cfl(state));
    const std::size_t nsteps =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(t_target / dt)));
    const double h = t_target / static_cast<double>(nsteps);
    const std::size_t stride = static_cast<std::size_t>(config.get_int("run.store_every"));

    CroccoRun run;
    run.bounds0 = check.bounds;
    run.times.push_back(0.0);
    run.states.push_back(state);
    for (std::size_t step = 0; step < nsteps; ++step) {
        state = step_crocco(state, h);
        if ((step + 1) % stride == 0 || step + 1 == nsteps) {
            run.times.push_back(state.t);
            run.states.push_back(state);
        }
    }
    return run;
}

void per_state_thetas(const CroccoState& state, double& th1, double& th2) {
    th1 = std::numeric_limits<double>::infinity();
    th2 = 0.0;
    for (std::size_t i = 0; i < state.nx(); ++i)
        for (std::size_t j = 0; j + 1 < state.neta(); ++j) {
            const double r = state.at(i, j) / (1.0 - state.grid.eta(j));
            th1 = std::min(th1, r);
            th2 = std::max(th2, r);
        }
}

void scenario_shear(const RunConfig& config, const Emitter& out, RunManifest& manifest) {
    const Grid1D grid = grid_from_config(config);
    ShearProfile profile = profile_from_config(config, grid);
    const double t_target = config.get_double("run.t_target");
    ShearProfile evolved = evolve_heat(profile, t_target, config.get_double("run.dt"));

    std::vector<double> Y(grid.nodes);
    out.csv("profile.csv", {{"Y", Y}, {"u_s", evolved.u_s}, {"du_s", evolved.du_s},
                            {"d2u_s", evolved.d2u_s}});

    manifest.metrics["admissibility_C"] = shear_admissibility(evolved);
    ordered_json cps = ordered_json::array();
    for (const auto& cp : critical_points(evolved).points)
        cps.push_back({{"location", cp.location}, {"curvature", cp.curvature}});
    manifest.metrics["critical_points"] = cps;

    if (config.get("profile.kind") == "erf") {
        const double U = config.get_double("profile.u");
        const double s = 2.0 * std::sqrt(config.get_double("profile.t0") + t_target);
        double max_err = 0.0;
        for (std::size_t j = 0; j < grid.size(); ++j)
            max_err = std::max(max_err, std::abs(evolved.u_s[j] - U * std::erf(grid[j] / s)));
        manifest.metrics["max_error_vs_analytic"] = max_err;
    }
}

void scenario_linear(const RunConfig& config, const Emitter& out, RunManifest& manifest) {
    const Grid1D grid = grid_from_config(config);
    const ShearProfile profile = profile_from_config(config, grid);
    FrozenShear shear(profile);

    const int k = static_cast<int>(config.get_int("run.k"));
    const double sup = shear.sup_speed();
    double dt = config.get_double("run.dt_max");
    if (k != 0) dt = std::min(dt, config.get_double("run.cfl") / (std::abs(k) * std::max(sup, 1e-12)));

    const ModeTrajectory traj =
        solve_mode(k, default_mode_data(grid), shear, config.get_double("run.t0"),
                   config.get_double("run.t1"), dt,
                   static_cast<std::size_t>(config.get_int("run.store_every")));
    out.csv("mode_norms.csv", {{"t", traj.times}, {"norm", traj.norms}});

    const GronwallReport gronwall = gronwall_check(traj, shear_admissibility(profile));
    manifest.metrics["k"] = k;
    manifest.metrics["dt"] = dt;
    manifest.metrics["blew_up"] = traj.blew_up;
    manifest.metrics["gronwall_C"] = gronwall.C;
    manifest.metrics["gronwall_margin"] = gronwall.margin;
    manifest.metrics["gronwall_pass"] = gronwall.pass;
}

void scenario_growth_scan(const RunConfig& config, const Emitter& out, RunManifest& manifest) {
    const Grid1D grid = grid_from_config(config);
    const ShearProfile profile = profile_from_config(config, grid);

    GrowthScanParams params;
    params.horizon = config.get_double("run.horizon");
    params.dt_max = config.get_double("run.dt_max");
    params.cfl = config.get_double("run.cfl");
    params.discard_fraction = config.get_double("run.discard");
    params.store_every = static_cast<std::size_t>(config.get_int("run.store_every"));

    std::vector<int> ks;
    for (long k : config.get_int_list("run.ks")) ks.push_back(static_cast<int>(k));
    const GrowthFitResult fit = growth_scan(ks, profile, params);

    std::vector<double> kcol, scol, xcol;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        kcol.push_back(ks[i]);
        scol.push_back(fit.sigma[i]);
        xcol.push_back(fit.excluded[i] ? 1.0 : 0.0);
    }
    out.csv("growth.csv", {{"k", kcol}, {"sigma", scol}, {"excluded", xcol}});

    manifest.metrics["a"] = fit.a;
    manifest.metrics["b"] = fit.b;
    manifest.metrics["r_squared"] = fit.r_squared;

    // Gronwall margins are meaningful for monotone profiles only
    if (critical_points(profile).empty()) {
        const double C = shear_admissibility(profile);
        FrozenShear shear(profile);
        const ComplexColumn w0 = default_mode_data(grid);
        ordered_json margins = ordered_json::array();
        bool all_pass = true;
        for (int k : ks) {
            const double dt =
                std::min(params.dt_max, params.cfl / (std::abs(k) * std::max(shear.sup_speed(), 1e-12)));
            const ModeTrajectory traj =
                solve_mode(k, w0, shear, 0.0, params.horizon, dt, params.store_every);
            const GronwallReport report = gronwall_check(traj, C);
            margins.push_back({{"k", k}, {"margin", report.margin}, {"pass", report.pass}});
            all_pass = all_pass && report.pass;
        }
        manifest.metrics["gronwall_margins"] = margins;
        manifest.metrics["gronwall_all_pass"] = all_pass;
    }
}

void scenario_amplify(const RunConfig& config, const Emitter& out, RunManifest& manifest) {
    const Grid1D grid = grid_from_config(config);
    const ShearProfile profile = profile_from_config(config, grid);

    AmplificationParams params;
    params.shifts = config.get_double_list("run.shifts");
    params.ks.clear();
    for (long k : config.get_int_list("run.ks")) params.ks.push_back(static_cast<int>(k));
    params.alpha = config.get_double("norm.alpha");
    params.m = static_cast<int>(config.get_int("norm.m"));
    params.horizon = config.get_double("run.horizon");
    params.dt_max = config.get_double("run.dt_max");
    params.cfl = config.get_double("run.cfl");
    params.shear_dt = config.get_double("run.shear_dt");

    const AmplificationTable table = amplification_experiment(profile, params);
    std::vector<double> shift_col, k_col, ratio_col, trunc_col;
    for (const auto& cell : table.cells) {
        shift_col.push_back(cell.shift);
        k_col.push_back(cell.k);
        ratio_col.push_back(cell.ratio);
        trunc_col.push_back(cell.truncated ? 1.0 : 0.0);
    }
    out.csv("amplification.csv",
            {{"shift", shift_col}, {"k", k_col}, {"ratio", ratio_col}, {"truncated", trunc_col}});

    ordered_json trends = ordered_json::array();
    for (double shift : params.shifts) {
        std::vector<double> ratios;
        for (const auto& cell : table.cells)
            if (cell.shift == shift) ratios.push_back(cell.ratio);
        bool increasing = ratios.size() >= 2;
        for (std::size_t i = 0; i + 1 < ratios.size(); ++i)
            if (!(ratios[i] < ratios[i + 1])) increasing = false;
        trends.push_back({{"shift", shift}, {"increasing_in_k", increasing}});
    }
    manifest.metrics["trends"] = trends;
}

void scenario_crocco(const RunConfig& config, const Emitter& out, RunManifest& manifest) {
    const Grid1D y_grid = grid_from_config(config);
    const CroccoRun run = run_crocco_evolution(config, "ic", y_grid);

    const BoundsReport bounds = verify_bounds(run.states, run.bounds0, y_grid);
    std::vector<double> th1_col, th2_col;
    for (const auto& state : run.states) {
        double th1, th2;
        per_state_thetas(state, th1, th2);
        th1_col.push_back(th1);
        th2_col.push_back(th2);
    }
    out.csv("bounds.csv", {{"t", run.times}, {"theta1", th1_col}, {"theta2", th2_col}});

    const CroccoState& last = run.states.back();
    std::vector<double> eta_col(last.grid.eta_nodes), w_col(last.neta());
    for (std::size_t j = 0; j < last.neta(); ++j) w_col[j] = last.at(0, j);
    out.csv("w_final.csv", {{"eta", eta_col}, {"w", w_col}});

    const Field2D u_final = from_crocco(last, y_grid);
    std::vector<double> y_col(y_grid.nodes), u_col(y_grid.size());
    for (std::size_t j = 0; j < y_grid.size(); ++j) u_col[j] = u_final.at(0, j);
    out.csv("u_final.csv", {{"y", y_col}, {"u", u_col}});

    manifest.metrics["theta0"] = run.bounds0.theta0;
    manifest.metrics["C0"] = run.bounds0.C0;
    manifest.metrics["theta1"] = bounds.fitted.theta1;
    manifest.metrics["theta2"] = bounds.fitted.theta2;
    manifest.metrics["bounds_pass"] = bounds.pass;
    manifest.metrics["sandwich_ok"] = bounds.sandwich_ok;
    manifest.pass = bounds.pass;
}

void scenario_stability(const RunConfig& config, const Emitter& out, RunManifest& manifest) {
    const Grid1D y_grid = grid_from_config(config);
    const CroccoRun run1 = run_crocco_evolution(config, "ic", y_grid);
    const CroccoRun run2 = run_crocco_evolution(config, "ic2", y_grid);

    StabilityFunctionalSpec spec;
    spec.beta = config.get_double("norm.beta");
    spec.k_w = config.get_double("norm.k_w");

    const FunctionalTrace trace = track_functional(run1.states, run2.states, run1.times, spec);
    out.csv("functional.csv", {{"t", trace.times}, {"I", trace.I}});

    std::vector<Field2D> u1_run, u2_run;
    std::vector<DifferenceState> z_run;
    for (std::size_t i = 0; i < run1.states.size(); ++i) {
        u1_run.push_back(from_crocco(run1.states[i], y_grid));
        u2_run.push_back(from_crocco(run2.states[i], y_grid));
        z_run.push_back(difference_fields(u1_run.back(), u2_run.back()));
    }
    double residual_max = 0.0;
    if (run1.times.size() >= 3) {
        for (double r : energy_identity_residual(run1.times, z_run, u2_run, spec.k_w))
            residual_max = std::max(residual_max, r);
    }

    const ZxBoundReport zx =
        zx_bound_check(z_run.back(), run1.states.back(), run2.states.back(), spec);

    const BoundsReport bounds = verify_bounds(run1.states, run1.bounds0, y_grid);
    const double alpha = (spec.beta - 1.0) * bounds.fitted.theta2 / 2.0;
    const double R =
        stability_ratio(u1_run, u2_run, run1.times, alpha, config.get_double("run.t_target"));

    manifest.metrics["I0"] = trace.I.front();
    manifest.metrics["C_hat"] = trace.C_hat;
    manifest.metrics["functional_pass"] = trace.pass;
    manifest.metrics["identical_runs"] = trace.identical;
    manifest.metrics["energy_residual_max"] = residual_max;
    manifest.metrics["zx_ratio"] = zx.ratio;
    manifest.metrics["zx_skipped"] = zx.skipped;
    manifest.metrics["alpha"] = alpha;
    manifest.metrics["stability_ratio"] = R;
    manifest.pass = trace.pass;
}

}  // namespace

RunManifest run_scenario(const RunConfig& config, const std::string& out_dir,
                         OutputFormat format) {
    RunManifest manifest;
    manifest.scenario = config.scenario;
    manifest.config_echo = config.values;
    manifest.started_at = utc_timestamp();

    std::filesystem::create_directories(out_dir);
    Emitter out{out_dir, format, &manifest};
    try {
        if (config.scenario == "shear") scenario_shear(config, out, manifest);
        else if (config.scenario == "linear") scenario_linear(config, out, manifest);
        else if (config.scenario == "growth-scan") scenario_growth_scan(config, out, manifest);
        else if (config.scenario == "amplify") scenario_amplify(config, out, manifest);
        else if (config.scenario == "crocco") scenario_crocco(config, out, manifest);
        else if (config.scenario == "stability") scenario_stability(config, out, manifest);
        else throw ConfigError("unknown scenario '" + config.scenario + "'");
    } catch (const std::exception& e) {
        manifest.pass = false;
        manifest.error = e.what();
    }
    manifest.finished_at = utc_timestamp();

    if (format != OutputFormat::Csv) {
        manifest.files.push_back("manifest.json");
        emit_json(manifest, out_dir + "/manifest.json");
    }
    return manifest;
}

}  // namespace prandtl
