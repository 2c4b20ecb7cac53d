#include <doctest.h>

#include <cmath>

#include "segreg/benchmarks.hpp"
#include "segreg/study.hpp"

using namespace segreg;

TEST_CASE("fit_order on synthetic data") {
    // exact quadratic decay
    auto slope = fit_order({{0.1, 1e-2}, {0.05, 2.5e-3}}, 0.0);
    REQUIRE(slope.has_value());
    CHECK(*slope == doctest::Approx(2.0).epsilon(1e-12));

    // exact linear decay
    slope = fit_order({{0.1, 1e-2}, {0.05, 5e-3}}, 0.0);
    REQUIRE(slope.has_value());
    CHECK(*slope == doctest::Approx(1.0).epsilon(1e-12));

    // three points, least squares: 1.9829 by the closed-form normal
    // equations (computed independently from the log-log data)
    slope = fit_order({{0.1, 1e-2}, {0.05, 2.6e-3}, {0.025, 6.4e-4}}, 0.0);
    REQUIRE(slope.has_value());
    CHECK(*slope == doctest::Approx(1.9829).epsilon(1e-3));

    // all points at the tolerance floor -> degenerate
    CHECK_FALSE(fit_order({{0.1, 1e-13}, {0.05, 2e-13}}, 1e-9).has_value());
    // fewer than two usable points -> degenerate
    CHECK_FALSE(fit_order({{0.1, 1e-2}, {0.05, 1e-13}}, 1e-9).has_value());
}

TEST_CASE("run_study input validation") {
    const ProblemSpec p = get_benchmark("all_zero", 2);
    CHECK_THROWS_WITH_AS(run_study(p, {8, 16}, {}), doctest::Contains("ladder too short"),
                         Error);
    CHECK_THROWS_WITH_AS(run_study(p, {16, 8, 32}, {}),
                         doctest::Contains("strictly increasing"), Error);

    const ProblemSpec ts = get_benchmark("three_sector");
    // no exact solution and no reference requested
    CHECK_THROWS_WITH_AS(run_study(ts, {4, 8, 16}, {}, false),
                         doctest::Contains("reference unavailable"), Error);
    // 4*max(ladder) = 48 is not divisible by 9
    CHECK_THROWS_WITH_AS(run_study(ts, {4, 9, 12}, {}, true),
                         doctest::Contains("incompatible ladder"), Error);
}

TEST_CASE("all_zero study is degenerate with zero errors") {
    const ProblemSpec p = get_benchmark("all_zero", 2);
    const ConvergenceReport rep = run_study(p, {4, 8, 16}, {});
    REQUIRE(rep.points.size() == 3);
    for (const auto& pt : rep.points) {
        for (double e : pt.err)
            CHECK(e == 0.0);
        CHECK(pt.bound == 0.0);
        CHECK(pt.bound_ok);
    }
    CHECK_FALSE(rep.fitted_order.has_value());
}

TEST_CASE("two_phase_flat study sits at the tolerance floor (degenerate order)") {
    const ProblemSpec p = get_benchmark("two_phase_flat");
    SolverConfig cfg;
    cfg.tol = 1e-10;
    const ConvergenceReport rep = run_study(p, {8, 16, 32}, cfg);
    for (const auto& pt : rep.points) {
        for (double e : pt.err)
            CHECK(e <= 10.0 * cfg.tol);
        CHECK(pt.bound_ok);
    }
    CHECK_FALSE(rep.fitted_order.has_value());
}

TEST_CASE("exp_smooth attains second order on a short ladder") {
    const ProblemSpec p = get_benchmark("exp_smooth");
    const ConvergenceReport rep = run_study(p, {8, 16, 32}, {});
    REQUIRE(rep.points.size() == 3);
    for (std::size_t k = 0; k + 1 < rep.points.size(); ++k) {
        const double ratio = rep.points[k].err[0] / rep.points[k + 1].err[0];
        CHECK(ratio > 3.5);
        CHECK(ratio < 4.5);
    }
    REQUIRE(rep.fitted_order.has_value());
    CHECK(*rep.fitted_order > 1.9);
    CHECK(*rep.fitted_order < 2.1);
    for (const auto& pt : rep.points)
        CHECK(pt.bound_ok);
}

TEST_CASE("Richardson restriction is exact on coinciding nodes") {
    const ProblemSpec p = get_benchmark("paraboloid");
    SolverConfig cfg;
    const RichardsonReference ref(p, 16, cfg);

    const MultiField coarse = ref.restrict_to(8);
    CHECK(coarse.grid.n == 8);
    for (int j = 0; j <= 8; ++j)
        for (int i = 0; i <= 8; ++i)
            CHECK(coarse.comp[0].at(i, j) == ref.fine().comp[0].at(2 * i, 2 * j));

    CHECK_THROWS_WITH_AS(ref.restrict_to(5), doctest::Contains("incompatible ladder"), Error);
}

TEST_CASE("reference-mode study of a problem with an exact solution stays consistent") {
    // exp_smooth against its own Richardson reference: errors must decay
    // at second order too (the reference is 16x finer).
    const ProblemSpec p = get_benchmark("exp_smooth");
    const ConvergenceReport rep = run_study(p, {4, 8, 16}, {}, true);
    CHECK(rep.reference_mode);
    CHECK(rep.n_ref == 64);
    CHECK(rep.points[0].err[0] > rep.points[1].err[0]);
    CHECK(rep.points[1].err[0] > rep.points[2].err[0]);
    REQUIRE(rep.fitted_order.has_value());
    CHECK(*rep.fitted_order > 1.5);
}
