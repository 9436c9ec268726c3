#include <doctest.h>

#include <cmath>

#include "prandtl/shear.hpp"

using namespace prandtl;

TEST_CASE("erf profile is monotone with the right endpoints") {
    const Grid1D grid = build_grid(20.0, 256);
    const ShearProfile p = make_profile(ProfileKind::ErfMonotone, {}, grid);
    CHECK(p.u_s.front() == 0.0);
    CHECK(p.u_s.back() == doctest::Approx(1.0).epsilon(1e-9));
    // strictly increasing until erf saturates to 1.0 in double precision
    for (std::size_t j = 1; j < p.u_s.size(); ++j) {
        CHECK(p.u_s[j] >= p.u_s[j - 1]);
        if (grid[j] < 8.0) CHECK(p.u_s[j] > p.u_s[j - 1]);
    }
}

TEST_CASE("default non-monotone profile has one non-degenerate critical point") {
    const Grid1D grid = build_grid(25.0, 320);
    const ShearProfile p = make_profile(ProfileKind::GdNonmonotone, {}, grid);
    const CriticalPointReport report = critical_points(p);
    // analytic root of dY u_s for c = 4: 4Y^2 - 8Y - 1 = 0, Y* = 1 + sqrt(1.25)
    REQUIRE(report.points.size() == 1);
    CHECK(report.points[0].location == doctest::Approx(1.0 + std::sqrt(1.25)).epsilon(1e-3));
    CHECK(std::abs(report.points[0].curvature) > 1e-3);
    CHECK(report.points[0].curvature < 0.0);
}

TEST_CASE("custom table reproduces its samples") {
    const Grid1D grid = build_grid(20.0, 128);
    ProfileParams params;
    params.U = 1.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        params.table_y.push_back(grid[j]);
        params.table_u.push_back(1.0 - std::exp(-grid[j]));
    }
    const ShearProfile p = make_profile(ProfileKind::CustomTable, params, grid);
    for (std::size_t j = 0; j < grid.size(); ++j)
        CHECK(p.u_s[j] == doctest::Approx(1.0 - std::exp(-grid[j])).epsilon(1e-12));
}

TEST_CASE("heat evolution matches the erf similarity solution") {
    const Grid1D grid = build_grid(20.0, 256);
    const ShearProfile p0 = make_profile(ProfileKind::ErfMonotone, {}, grid);
    const ShearProfile p1 = evolve_heat(p0, 1.0, 1e-3);
    double max_err = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j)
        max_err = std::max(max_err,
                           std::abs(p1.u_s[j] - std::erf(grid[j] / (2.0 * std::sqrt(2.0)))));
    CHECK(max_err <= 1e-3);
    CHECK(p1.t == doctest::Approx(1.0));
}

TEST_CASE("heat evolution trivia") {
    const Grid1D grid = build_grid(20.0, 128);
    const ShearProfile p0 = make_profile(ProfileKind::ErfMonotone, {}, grid);
    const ShearProfile same = evolve_heat(p0, p0.t, 1e-3);
    for (std::size_t j = 0; j < grid.size(); ++j) CHECK(same.u_s[j] == p0.u_s[j]);

    ShearProfile zero;
    zero.grid = grid;
    zero.U = 0.0;
    zero.u_s.assign(grid.size(), 0.0);
    zero.refresh_derivatives();
    const ShearProfile still_zero = evolve_heat(zero, 0.3, 1e-2);
    for (double v : still_zero.u_s) CHECK(v == 0.0);
}

TEST_CASE("heat evolution obeys the maximum principle and preserves monotonicity") {
    const Grid1D grid = build_grid(20.0, 128);
    const ShearProfile p0 = make_profile(ProfileKind::ErfMonotone, {}, grid);
    const ShearProfile p1 = evolve_heat(p0, 0.5, 1e-2);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        CHECK(p1.u_s[j] >= -1e-12);
        CHECK(p1.u_s[j] <= 1.0 + 1e-12);
        CHECK(p1.du_s[j] >= -1e-10);
    }
}

TEST_CASE("heat evolution composes as a semigroup") {
    const Grid1D grid = build_grid(20.0, 128);
    const ShearProfile p0 = make_profile(ProfileKind::ErfMonotone, {}, grid);
    const ShearProfile direct = evolve_heat(p0, 1.0, 1e-2);
    const ShearProfile composed = evolve_heat(evolve_heat(p0, 0.5, 1e-2), 1.0, 1e-2);
    for (std::size_t j = 0; j < grid.size(); ++j)
        CHECK(composed.u_s[j] == doctest::Approx(direct.u_s[j]).epsilon(1e-12));
}

TEST_CASE("critical points of a sine table") {
    const Grid1D grid = build_grid(M_PI, 129);
    ProfileParams params;
    params.U = std::sin(M_PI);  // table far-field value
    for (std::size_t j = 0; j < grid.size(); ++j) {
        params.table_y.push_back(grid[j]);
        params.table_u.push_back(std::sin(grid[j]));
    }
    ShearProfile p;
    p.grid = grid;
    p.U = 0.0;
    p.u_s = params.table_u;
    p.refresh_derivatives();
    const CriticalPointReport report = critical_points(p);
    REQUIRE(report.points.size() == 1);
    CHECK(report.points[0].location == doctest::Approx(M_PI / 2.0).epsilon(1e-3));
    CHECK(report.points[0].curvature == doctest::Approx(-1.0).epsilon(1e-2));
}

TEST_CASE("erf profile is empty of critical points") {
    const Grid1D grid = build_grid(20.0, 256);
    const ShearProfile p = make_profile(ProfileKind::ErfMonotone, {}, grid);
    CHECK(critical_points(p).empty());
}

TEST_CASE("shear admissibility constants") {
    const Grid1D grid = build_grid(20.0, 512);
    const ShearProfile erf_profile = make_profile(ProfileKind::ErfMonotone, {}, grid);
    CHECK(shear_admissibility(erf_profile) == doctest::Approx(1.0 + 1.0 / M_PI).epsilon(1e-3));

    ShearProfile expo;
    expo.grid = grid;
    expo.U = 1.0;
    expo.u_s.resize(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) expo.u_s[j] = 1.0 - std::exp(-grid[j]);
    expo.refresh_derivatives();
    CHECK(shear_admissibility(expo) == doctest::Approx(1.25).epsilon(1e-3));

    ShearProfile zero;
    zero.grid = grid;
    zero.U = 0.0;
    zero.u_s.assign(grid.size(), 0.0);
    zero.refresh_derivatives();
    CHECK(shear_admissibility(zero) == 0.0);
}

TEST_CASE("admissibility is stable under refinement") {
    double prev_change = 0.0, prev = 0.0;
    for (std::size_t n : {128, 256, 512}) {
        const Grid1D grid = build_grid(20.0, n);
        const double C = shear_admissibility(make_profile(ProfileKind::ErfMonotone, {}, grid));
        if (prev != 0.0) {
            const double change = std::abs(C - prev);
            if (prev_change != 0.0) CHECK(change <= 4.0 * prev_change);
            prev_change = change;
        }
        prev = C;
    }
}

TEST_CASE("bernoulli pressure gradients") {
    const PeriodicGridX gx(32);

    const OuterFlow constant = OuterFlow::constant(gx, 1.0);
    for (double v : constant.P_x.front()) CHECK(v == doctest::Approx(0.0).epsilon(1e-14));

    std::vector<double> row(gx.n_x);
    for (std::size_t i = 0; i < gx.n_x; ++i) row[i] = 1.0 + 0.1 * std::sin(gx.node(i));
    const OuterFlow steady = OuterFlow::steady(gx, row);
    for (std::size_t i = 0; i < gx.n_x; ++i) {
        const double expected = -(1.0 + 0.1 * std::sin(gx.node(i))) * 0.1 * std::cos(gx.node(i));
        CHECK(steady.P_x.front()[i] == doctest::Approx(expected).epsilon(1e-10));
    }

    // U(t) = 1 + 0.1 t, x-independent: P_x = -0.1
    std::vector<double> times{0.0, 0.5, 1.0};
    std::vector<std::vector<double>> samples;
    for (double t : times) samples.push_back(std::vector<double>(gx.n_x, 1.0 + 0.1 * t));
    const OuterFlow ramp = bernoulli_pressure(gx, times, samples);
    for (std::size_t i = 0; i < gx.n_x; ++i)
        CHECK(ramp.P_x[1][i] == doctest::Approx(-0.1).epsilon(1e-12));
}

TEST_CASE("profile table loading rejects garbage") {
    CHECK_THROWS(load_profile_table("/nonexistent/profile.txt"));
}
