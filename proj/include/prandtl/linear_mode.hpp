#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "prandtl/field.hpp"
#include "prandtl/grid.hpp"
#include "prandtl/shear.hpp"

namespace prandtl {

/// One tangential Fourier mode w_hat_k(t, Y) of the linearized equation
/// dt w + i k u_s w - i k dY u_s int_0^Y w dy' - dYY w = 0.
struct FourierModeState {
    int k = 0;
    double t = 0.0;
    Grid1D grid;
    ComplexColumn w_hat;

    void validate() const;
};

/// Norm history of one mode evolution (L2 in Y at the stored times).
struct ModeTrajectory {
    int k = 0;
    std::vector<double> times;
    std::vector<double> norms;
    FourierModeState final_state;
    bool blew_up = false;
    double blowup_time = 0.0;
};

struct ModeBlowUp : std::runtime_error {
    ModeBlowUp(int k, double t, std::size_t step)
        : std::runtime_error("blow-up at step " + std::to_string(step) + ", t = " +
                             std::to_string(t) + ", k = " + std::to_string(k)),
          k(k), t(t), step(step) {}
    int k;
    double t;
    std::size_t step;
};

/// One IMEX step: Crank-Nicolson diffusion, Adams-Bashforth-2 transport and
/// nonlocal term (first step falls back to forward Euler). Dirichlet 0 at
/// both ends. If f_prev is supplied it must hold the explicit right-hand side
/// of the previous step; the current one is written to *f_out when non-null.
FourierModeState step_mode(const FourierModeState& state, const ShearProvider& shear, double dt,
                           const ComplexColumn* f_prev = nullptr, ComplexColumn* f_out = nullptr);

/// Evolve one mode over [t0, t1], recording L2 norms every store_every steps.
/// Blow-up truncates the trajectory and sets the flag instead of throwing.
ModeTrajectory solve_mode(int k, const ComplexColumn& w0, const ShearProvider& shear, double t0,
                          double t1, double dt, std::size_t store_every = 10);

struct GrowthRate {
    double sigma = 0.0;
    bool decayed = false;  // some norm in the window vanished or went non-finite
};

/// Least-squares slope of log ||w(t)|| over [t1, t2].
GrowthRate growth_rate(const ModeTrajectory& traj, double t1, double t2);

struct GrowthScanParams {
    double horizon = 2.0;
    double dt_max = 1e-3;
    double cfl = 0.2;                // dt <= cfl / (|k| sup|u_s|)
    double discard_fraction = 0.2;   // transient skipped before the fit
    std::size_t store_every = 10;
};

struct GrowthFitResult {
    std::vector<int> ks;
    std::vector<double> sigma;
    std::vector<bool> excluded;  // decayed-to-zero or blown up before the window
    double a = 0.0;              // sigma(k) = a sqrt(k) + b
    double b = 0.0;
    double r_squared = 0.0;
};

/// Wall-compatible default mode shape Y exp(-(Y-2)^2), unit L2 norm.
ComplexColumn default_mode_data(const Grid1D& grid);

/// Measure sigma(k) per mode around the frozen profile and fit a sqrt(k) + b.
GrowthFitResult growth_scan(const std::vector<int>& ks, const ShearProfile& profile,
                            const GrowthScanParams& params = {});

struct GronwallReport {
    double C = 0.0;  // admissibility constant
    int k = 0;
    double margin = 0.0;  // max_t ||w(t)|| / (e^{C|k|t} ||w(0)||)
    bool pass = false;    // margin <= 1.01
};

GronwallReport gronwall_check(const ModeTrajectory& traj, double C);

struct AmplificationParams {
    std::vector<double> shifts{0.0};
    std::vector<int> ks{8, 16, 32, 64};
    double alpha = 0.25;
    int m = 2;
    double horizon = 0.25;
    double dt_max = 5e-4;
    double cfl = 0.1;
    double shear_dt = 1e-2;  // snapshot stride of the heat-evolved shear
};

struct AmplificationCell {
    double shift = 0.0;
    int k = 0;
    double ratio = 0.0;
    bool truncated = false;  // blow-up; ratio is the last finite value
};

struct AmplificationTable {
    std::vector<AmplificationCell> cells;
};

/// Translated-shear amplification experiment: initial data normalized to
/// ||e^{alpha Y} w0||_{H^m(Y)} = 1, ratio = max_t (2D L2 of the mode pair).
AmplificationTable amplification_experiment(const ShearProfile& profile0,
                                            const AmplificationParams& params);

/// delta * |integral of N(u) phi| over the torus times K = [0, Y_max/2],
/// N(u) = -u dx u - v dY u with v = -int_0^Y dx u.
double nonlinear_residual(const Field2D& u_pert, double delta);

}  // namespace prandtl
