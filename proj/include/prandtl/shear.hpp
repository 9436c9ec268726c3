#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "prandtl/field.hpp"
#include "prandtl/grid.hpp"

namespace prandtl {

/// A shear layer u_s(t, Y) with far-field value U, plus cached Y-derivatives.
struct ShearProfile {
    double t = 0.0;
    Grid1D grid;
    std::vector<double> u_s;
    double U = 0.0;
    std::vector<double> du_s;   // dY u_s
    std::vector<double> d2u_s;  // dY^2 u_s

    void refresh_derivatives();
    void validate() const;
};

enum class ProfileKind { ErfMonotone, GdNonmonotone, CustomTable };

struct ProfileParams {
    double U = 1.0;
    double t0 = 1.0;     // erf: u_s = U erf(Y / (2 sqrt(t0)))
    double bump_c = 4.0; // gd: u_s = U(1 - e^-Y) + c Y^2 e^-Y
    std::vector<double> table_y;   // custom_table samples
    std::vector<double> table_u;
};

struct CriticalPoint {
    double location;
    double curvature;  // dY^2 u_s at the refined location
};

struct CriticalPointReport {
    std::vector<CriticalPoint> points;
    bool empty() const { return points.empty(); }
};

ShearProfile make_profile(ProfileKind kind, const ProfileParams& params, const Grid1D& grid);

/// Load custom_table samples from a two-column (Y, u_s) whitespace-separated
/// text file with '#' comments.
ProfileParams load_profile_table(const std::string& path);

/// Crank-Nicolson heat evolution dt u_s = dYY u_s with u_s(0)=0, u_s(Y_max)=U.
ShearProfile evolve_heat(const ShearProfile& profile, double t_target, double dt);

CriticalPointReport critical_points(const ShearProfile& profile);

/// Admissibility constant sup_Y |u_s| + int_0^inf Y |dY u_s|^2 dY.
double shear_admissibility(const ShearProfile& profile);

/// Outer Euler trace U(t, x) with derivatives and the Bernoulli pressure
/// gradient P_x = -(U_t + U U_x).
struct OuterFlow {
    PeriodicGridX grid_x;
    std::vector<double> times;             // sorted; one row per time
    std::vector<std::vector<double>> U;    // [time][x]
    std::vector<std::vector<double>> U_x;
    std::vector<std::vector<double>> U_t;
    std::vector<std::vector<double>> P_x;

    explicit OuterFlow(PeriodicGridX gx) : grid_x(gx) {}
    static OuterFlow constant(PeriodicGridX gx, double value);
    static OuterFlow steady(PeriodicGridX gx, const std::vector<double>& u_row);

    bool positive() const;
    /// Linear interpolation in t (clamped to the sampled range).
    void slice(double t, std::vector<double>& u, std::vector<double>& u_x,
               std::vector<double>& u_t) const;
};

OuterFlow bernoulli_pressure(PeriodicGridX gx, const std::vector<double>& times,
                             const std::vector<std::vector<double>>& u_samples);

/// Supplies u_s and dY u_s at arbitrary times during a mode evolution.
class ShearProvider {
public:
    virtual ~ShearProvider() = default;
    virtual const Grid1D& grid() const = 0;
    virtual void at(double t, std::vector<double>& u_s, std::vector<double>& du_s) const = 0;
    virtual double sup_speed() const = 0;  // sup over provided times of sup|u_s|
};

/// Frozen snapshot of a single profile.
class FrozenShear final : public ShearProvider {
public:
    explicit FrozenShear(ShearProfile profile);
    const Grid1D& grid() const override { return profile_.grid; }
    void at(double, std::vector<double>& u_s, std::vector<double>& du_s) const override;
    double sup_speed() const override;

private:
    ShearProfile profile_;
};

/// Heat-evolved shear layer, precomputed at a fixed stride and linearly
/// interpolated in time. Time origin may be shifted (translated layers).
class HeatEvolvedShear final : public ShearProvider {
public:
    HeatEvolvedShear(ShearProfile initial, double horizon, double dt, double shift = 0.0);
    const Grid1D& grid() const override { return snapshots_.front().grid; }
    void at(double t, std::vector<double>& u_s, std::vector<double>& du_s) const override;
    double sup_speed() const override;

private:
    std::vector<ShearProfile> snapshots_;
    double dt_;
    double shift_;
};

}  // namespace prandtl
