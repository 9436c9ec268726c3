#pragma once

#include <stdexcept>
#include <vector>

#include "prandtl/crocco.hpp"
#include "prandtl/field.hpp"

namespace prandtl {

struct StabilityFunctionalSpec {
    double beta = 2.5;  // (1-eta)^{-beta} weight exponent, must satisfy beta < 3
    double k_w = 8.0;   // proof-side exponential rate, echoed in reports only

    void validate() const {
        if (beta < 0.0 || beta >= 3.0)
            throw std::invalid_argument("StabilityFunctionalSpec: beta must lie in [0, 3)");
        if (k_w < 0.0) throw std::invalid_argument("StabilityFunctionalSpec: k_w must be >= 0");
    }
};

/// I = int over T x [0,1) of (|w1x - w2x|^2 + |w1 - w2|^2) / (1-eta)^beta,
/// trapezoid over the interior eta nodes (eta = 1 excluded).
double stability_functional(const CroccoState& w1, const CroccoState& w2,
                            const StabilityFunctionalSpec& spec);

struct FunctionalTrace {
    std::vector<double> times;
    std::vector<double> I;
    double C_hat = 0.0;       // log-linear fit of I(t)/I(0)
    bool identical = false;   // I(0) = 0: runs agree
    bool pass = false;        // I(t) <= 1.25 I(0) e^{C_hat t} throughout
};

FunctionalTrace track_functional(const std::vector<CroccoState>& run1,
                                 const std::vector<CroccoState>& run2,
                                 const std::vector<double>& times,
                                 const StabilityFunctionalSpec& spec);

struct DifferenceState {
    Field2D z;  // u1 - u2
    Field2D h;  // v1 - v2 = -int_0^y dx z
};

DifferenceState difference_fields(const Field2D& u1, const Field2D& u2);

/// Residual of the scaled energy identity
/// 1/2 d/dt ||zt||^2 + int [(k + dx u2)|zt|^2 + dy u2 ht zt + |dy zt|^2] = 0
/// with zt = e^{-kt} z; centered d/dt at interior sample times, normalized by
/// the largest participating term.
std::vector<double> energy_identity_residual(const std::vector<double>& times,
                                             const std::vector<DifferenceState>& z_run,
                                             const std::vector<Field2D>& u2_run, double k_exp);

struct ZxBoundReport {
    double ratio = 0.0;  // ||z_x||^2 / (||z||^2 + ||y z_y||^2 + I)
    double lhs = 0.0;
    double rhs = 0.0;
    double theta1 = 0.0, theta2 = 0.0;
    bool degenerate = false;  // 0/0
    bool skipped = false;     // theta condition (3-beta) theta2 <= theta1 unsatisfiable
    bool pass = false;
};

ZxBoundReport zx_bound_check(const DifferenceState& z, const CroccoState& w1,
                             const CroccoState& w2, const StabilityFunctionalSpec& spec);

/// R = sup_{t <= T} ||(u1-u2)(t)||_{H^1} / ||e^{alpha y}(u01-u02)||_{H^2}.
double stability_ratio(const std::vector<Field2D>& run1, const std::vector<Field2D>& run2,
                       const std::vector<double>& times, double alpha, double horizon);

}  // namespace prandtl
