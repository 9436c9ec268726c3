#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "prandtl/field.hpp"
#include "prandtl/grid.hpp"
#include "prandtl/shear.hpp"

namespace prandtl {

/// eta in [0, 1-delta_eta] resolved uniformly (n_eta nodes), plus the
/// boundary node eta = 1 where the diffusion coefficient w^2 degenerates.
struct CroccoGrid {
    std::vector<double> eta_nodes;
    PeriodicGridX grid_x;
    double delta_eta = 0.0;
    std::size_t n_eta = 0;  // interior node count (excludes eta = 1)

    std::size_t size() const { return eta_nodes.size(); }
    double eta(std::size_t j) const { return eta_nodes[j]; }
};

/// delta_eta defaults to 1/(2 n_eta) when 0 is passed.
CroccoGrid build_crocco_grid(std::size_t n_eta, PeriodicGridX gx, double delta_eta = 0.0);

/// w(t, x, eta) = dy u / U on the Crocco grid, row-major in x.
struct CroccoState {
    double t = 0.0;
    CroccoGrid grid;
    std::vector<double> w;  // w[i * grid.size() + j]
    OuterFlow outer;

    CroccoState(CroccoGrid g, OuterFlow o)
        : grid(std::move(g)), w(grid.grid_x.n_x * grid.size(), 0.0), outer(std::move(o)) {}

    std::size_t nx() const { return grid.grid_x.n_x; }
    std::size_t neta() const { return grid.size(); }
    double& at(std::size_t i, std::size_t j) { return w[i * neta() + j]; }
    double at(std::size_t i, std::size_t j) const { return w[i * neta() + j]; }

    /// w = 0 exactly at eta = 1, w > 0 elsewhere.
    void validate() const;
};

struct CroccoCoefficients {
    std::vector<double> A, B;  // same layout as CroccoState::w
};

struct MonotoneBounds {
    double theta1 = 0.0, theta2 = 0.0;  // fitted rates theta1(1-eta) <= w <= theta2(1-eta)
    double theta0 = 0.0, C0 = 0.0;      // assumption (O) constants of the initial data
};

struct AssumptionOReport {
    bool satisfied = false;
    MonotoneBounds bounds;
    std::string violation;  // "not monotone at ..." / "ratio unbounded ..."
    double max_dy = 0.0, max_dx = 0.0, max_dxy = 0.0;
    double max_ratio_d2 = 0.0;  // sup |dyy u / dy u|
    double max_ratio_d3 = 0.0;  // sup |dyyy u * dy u / dyy u|
};

/// Verify assumption (O) on physical initial data: monotonicity in y and
/// theta0 <= dy u0 / (U - u0) <= C0, plus boundedness of the listed
/// derivatives and ratios.
AssumptionOReport check_assumption_O(const Field2D& u0, const OuterFlow& outer);

struct MonotoneBreakdown : std::runtime_error {
    MonotoneBreakdown(double t, double x, double eta)
        : std::runtime_error("monotonicity breakdown at t = " + std::to_string(t) + ", x = " +
                             std::to_string(x) + ", eta = " + std::to_string(eta)),
          t(t), x(x), eta(eta) {}
    double t, x, eta;
};

/// Forward Crocco map: eta = u/U, w(eta) = dy u / U at the preimage.
CroccoState to_crocco(const Field2D& u, const OuterFlow& outer, const CroccoGrid& grid,
                      double t = 0.0);

/// Inverse map y = int_0^{u/U} deta'/w, inverted onto y_grid; beyond the last
/// resolved y the profile extrapolates exponentially with the last-cell rate.
Field2D from_crocco(const CroccoState& state, const Grid1D& y_grid);

/// A = (eta^2-1) U_x + (eta-1) U_t/U, B = -eta U_x - U_t/U, evaluated at t.
CroccoCoefficients crocco_coeffs(const OuterFlow& outer, const CroccoGrid& grid, double t = 0.0);

/// One IMEX step of dt w + eta U dx w - A deta w - B w = w^2 detaeta w:
/// frozen-w^2 Crank-Nicolson diffusion per x-line, upwind explicit transport,
/// nonlinear Robin condition at eta = 0 via one Newton step on a ghost node.
CroccoState step_crocco(const CroccoState& state, double dt);

/// Transport-stable step bound 0.5 min(dx/sup(eta U), deta/sup|A|).
double crocco_cfl(const CroccoState& state);

struct BoundsReport {
    MonotoneBounds fitted;
    bool pass = false;          // theta1 > 0 over the whole run
    bool sandwich_ok = false;   // e^{-theta2 y} <= 1-u/U <= e^{-theta1 y} up to the tail
    double worst_violation = 0.0;
};

/// Fit the largest theta1 and smallest theta2 over all states (eta = 1
/// excluded) and check the physical-space sandwich on from_crocco output.
BoundsReport verify_bounds(const std::vector<CroccoState>& run, const MonotoneBounds& bounds0,
                           const Grid1D& y_grid, double slack = 1e-3);

/// u_x = u U_x/U + w U int_0^{u/U} w_x/w^2 deta', mapped to the physical grid.
Field2D reconstruct_ux(const CroccoState& state, const Grid1D& y_grid);

}  // namespace prandtl
