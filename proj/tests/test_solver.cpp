#include <doctest.h>

#include <cmath>
#include <limits>

#include "segreg/benchmarks.hpp"
#include "segreg/solver.hpp"
#include "segreg/verify.hpp"

using namespace segreg;

namespace {

// State holding the exact solution sampled at the nodes.
MultiField exact_state(const ProblemSpec& p, const UniformGrid& g) {
    MultiField s;
    s.grid = g;
    for (int l = 0; l < p.m; ++l) {
        ScalarField f(g);
        for (int j = 0; j <= g.n; ++j)
            for (int i = 0; i <= g.n; ++i)
                f.at(i, j) = p.exact->u[l](g.x(i), g.y(j));
        s.comp.push_back(std::move(f));
    }
    return s;
}

double linf_between(const MultiField& a, const MultiField& b) {
    double d = 0.0;
    for (int l = 0; l < a.m(); ++l)
        for (std::size_t c = 0; c < a.grid.node_count(); ++c)
            d = std::max(d, std::abs(a.comp[l].values[c] - b.comp[l].values[c]));
    return d;
}

} // namespace

// Substitution oracle: the closed forms of two_phase_flat and paraboloid
// satisfy every equation of the discrete system, so they are exact
// discrete fixed points. This anchors all later error assertions.
TEST_CASE("exact nodal fields are discrete fixed points at N=8") {
    for (const char* name : {"two_phase_flat", "paraboloid"}) {
        const ProblemSpec p = get_benchmark(name);
        const UniformGrid g = make_grid(p.a, 8);
        const MultiField s = exact_state(p, g);
        INFO(name);
        CHECK(scheme_residual(s, p) <= 1e-13);
    }
}

TEST_CASE("init_state places traces on the boundary and zeros inside") {
    const ProblemSpec zero = get_benchmark("all_zero", 2);
    {
        const UniformGrid g = make_grid(1.0, 4);
        const MultiField s = init_state(zero, g);
        for (int l = 0; l < 2; ++l)
            for (double v : s.comp[l].values)
                CHECK(v == 0.0);
    }

    const ProblemSpec para = get_benchmark("paraboloid");
    {
        const UniformGrid g = make_grid(1.0, 2);
        const MultiField s = init_state(para, g);
        CHECK(s.comp[0].at(1, 1) == 0.0);
        CHECK(s.comp[0].at(0, 1) == 1.25);
        CHECK(s.comp[0].at(2, 1) == 2.25);
        CHECK(s.comp[0].at(1, 0) == 1.25);
        CHECK(s.comp[0].at(1, 2) == 2.25);
    }

    const ProblemSpec tp = get_benchmark("two_phase_flat");
    {
        const UniformGrid g = make_grid(1.0, 4);
        const MultiField s = init_state(tp, g);
        for (int i = 0; i <= 4; ++i)
            for (int j : {0, 4}) {
                const bool right = g.x(i) > 0.5;
                CHECK((s.comp[0].at(i, j) > 0.0) == right);
            }
    }
}

TEST_CASE("first Jacobi sweep on paraboloid N=2 reproduces the hand stencil") {
    const ProblemSpec p = get_benchmark("paraboloid");
    const UniformGrid g = make_grid(1.0, 2);
    MultiField s = init_state(p, g);
    const double change = sweep(s, p, Strategy::Jacobi);
    // boundary averages (1.25+2.25+1.25+2.25)/4 = 1.75; update 1.75 - h^2 = 1.5
    CHECK(change == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(s.comp[0].at(1, 1) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(s.comp[1].at(1, 1) == 0.0);
    CHECK(s.comp[0].at(1, 1) == doctest::Approx(p.exact->u[0](0.5, 0.5)).epsilon(1e-15));
}

TEST_CASE("all_zero converges in one sweep") {
    const ProblemSpec p = get_benchmark("all_zero", 3);
    const UniformGrid g = make_grid(1.0, 8);
    auto [state, rep] = solve(p, g, {});
    CHECK(rep.reason == StopReason::Converged);
    CHECK(rep.iterations == 1);
    CHECK(rep.final_change == 0.0);
    for (const auto& f : state.comp)
        for (double v : f.values)
            CHECK(v == 0.0);
}

TEST_CASE("scheme_residual at init equals the first sweep's worst update") {
    const ProblemSpec p = get_benchmark("paraboloid");
    const UniformGrid g = make_grid(1.0, 2);
    const MultiField s0 = init_state(p, g);
    CHECK(scheme_residual(s0, p) == doctest::Approx(1.5).epsilon(1e-15));

    const ProblemSpec zero = get_benchmark("all_zero", 2);
    const MultiField z0 = init_state(zero, make_grid(1.0, 6));
    CHECK(scheme_residual(z0, zero) == 0.0);
}

TEST_CASE("solved fixed-point benchmarks match the exact fields within 10 tol") {
    const double tol = 1e-10;
    for (const char* name : {"two_phase_flat", "paraboloid"}) {
        const ProblemSpec p = get_benchmark(name);
        const UniformGrid g = make_grid(p.a, 32);
        SolverConfig cfg;
        cfg.tol = tol;
        auto [state, rep] = solve(p, g, cfg);
        REQUIRE(rep.reason == StopReason::Converged);
        CHECK(rep.final_change <= tol);
        CHECK(scheme_residual(state, p) <= 4.0 * tol);
        const MultiField ex = exact_state(p, g);
        INFO(name);
        CHECK(linf_between(state, ex) <= 10.0 * tol);
    }
}

TEST_CASE("both strategies decrease the residual from init on exp_smooth") {
    const ProblemSpec p = get_benchmark("exp_smooth");
    const UniformGrid g = make_grid(1.0, 8);

    MultiField gs = init_state(p, g);
    MultiField jac = init_state(p, g);
    const double r0 = scheme_residual(gs, p);

    sweep(gs, p, Strategy::GaussSeidel);
    sweep(jac, p, Strategy::Jacobi);
    const double r_gs1 = scheme_residual(gs, p);
    const double r_jac1 = scheme_residual(jac, p);
    CHECK(r_gs1 < r0);
    CHECK(r_jac1 < r0);

    // intermediate states differ between the strategies
    CHECK(linf_between(gs, jac) > 0.0);

    sweep(gs, p, Strategy::GaussSeidel);
    sweep(jac, p, Strategy::Jacobi);
    CHECK(scheme_residual(gs, p) < r_gs1);
    CHECK(scheme_residual(jac, p) < r_jac1);
}

TEST_CASE("sweeps preserve nonnegativity and never touch the boundary") {
    const ProblemSpec p = get_benchmark("exp_smooth");
    const UniformGrid g = make_grid(1.0, 10);
    MultiField s = init_state(p, g);
    const MultiField before = s;

    for (int k = 0; k < 25; ++k)
        sweep(s, p, Strategy::GaussSeidel);

    for (const auto& f : s.comp)
        for (double v : f.values)
            CHECK(v >= 0.0);

    for (int l = 0; l < s.m(); ++l) {
        for (int i = 0; i <= g.n; ++i) {
            CHECK(s.comp[l].at(i, 0) == before.comp[l].at(i, 0));
            CHECK(s.comp[l].at(i, g.n) == before.comp[l].at(i, g.n));
        }
        for (int j = 0; j <= g.n; ++j) {
            CHECK(s.comp[l].at(0, j) == before.comp[l].at(0, j));
            CHECK(s.comp[l].at(g.n, j) == before.comp[l].at(g.n, j));
        }
    }
}

TEST_CASE("monotone start: first Gauss-Seidel sweep from zero init") {
    const ProblemSpec p = get_benchmark("paraboloid");
    const UniformGrid g = make_grid(1.0, 8);
    MultiField s = init_state(p, g);
    const double change = sweep(s, p, Strategy::GaussSeidel);
    double largest = 0.0;
    for (int l = 0; l < s.m(); ++l)
        for (int j = 1; j <= g.n - 1; ++j)
            for (int i = 1; i <= g.n - 1; ++i) {
                CHECK(s.comp[l].at(i, j) >= 0.0);
                largest = std::max(largest, s.comp[l].at(i, j));
            }
    CHECK(change == largest);
}

TEST_CASE("Jacobi and RedBlack are bitwise independent of worker count") {
    for (const char* name : {"paraboloid", "three_sector"}) {
        const ProblemSpec p = get_benchmark(name);
        const UniformGrid g = make_grid(p.a, 16);
        for (Strategy st : {Strategy::Jacobi, Strategy::RedBlack}) {
            MultiField s1 = init_state(p, g);
            MultiField s3 = init_state(p, g);
            for (int k = 0; k < 20; ++k) {
                const double c1 = sweep(s1, p, st, 1);
                const double c3 = sweep(s3, p, st, 3);
                CHECK(c1 == c3);
            }
            CHECK(linf_between(s1, s3) == 0.0);
        }
    }
}

TEST_CASE("converged strategies agree pairwise within 10 tol") {
    const double tol = 1e-10;
    const ProblemSpec p = get_benchmark("two_phase_flat");
    const UniformGrid g = make_grid(1.0, 16);
    MultiField states[3];
    int idx = 0;
    for (Strategy st : {Strategy::Jacobi, Strategy::GaussSeidel, Strategy::RedBlack}) {
        SolverConfig cfg;
        cfg.strategy = st;
        cfg.tol = tol;
        auto [state, rep] = solve(p, g, cfg);
        REQUIRE(rep.reason == StopReason::Converged);
        states[idx++] = std::move(state);
    }
    CHECK(linf_between(states[0], states[1]) <= 10.0 * tol);
    CHECK(linf_between(states[0], states[2]) <= 10.0 * tol);
    CHECK(linf_between(states[1], states[2]) <= 10.0 * tol);
}

TEST_CASE("max_iters is reported, not thrown") {
    const ProblemSpec p = get_benchmark("exp_smooth");
    const UniformGrid g = make_grid(1.0, 16);
    SolverConfig cfg;
    cfg.max_iters = 3;
    auto [state, rep] = solve(p, g, cfg);
    CHECK(rep.reason == StopReason::MaxIters);
    CHECK(rep.iterations == 3);
}

TEST_CASE("non-finite boundary data stops with numerical breakdown") {
    ProblemSpec p;
    p.m = 1;
    p.a = 1.0;
    p.dynamics.push_back(DynamicsSpec::zero());
    p.boundary = BoundarySpec(1);
    p.boundary.set_closed_form(0, [](double x, double) {
        return x > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 0.0;
    });
    const UniformGrid g = make_grid(1.0, 4);
    CHECK_THROWS_WITH_AS(solve(p, g, {}), doctest::Contains("numerical breakdown"), Error);
}
