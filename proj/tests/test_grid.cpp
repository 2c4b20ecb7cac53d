#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "segreg/grid.hpp"

using namespace segreg;

namespace {

ScalarField sample(const UniformGrid& g, double (*fn)(double, double)) {
    ScalarField f(g);
    for (int j = 0; j <= g.n; ++j)
        for (int i = 0; i <= g.n; ++i)
            f.at(i, j) = fn(g.x(i), g.y(j));
    return f;
}

} // namespace

TEST_CASE("make_grid basic shapes") {
    const UniformGrid g = make_grid(1.0, 4);
    CHECK(g.h == 0.25);
    CHECK(g.node_count() == 25);
    int interior = 0;
    for (int j = 0; j <= 4; ++j)
        for (int i = 0; i <= 4; ++i)
            interior += g.is_interior(i, j) ? 1 : 0;
    CHECK(interior == 9);
    CHECK(std::abs(g.h * g.n - g.a) <= std::numeric_limits<double>::epsilon() * g.a);

    const UniformGrid g2 = make_grid(2.0, 2);
    CHECK(g2.h == 1.0);
    CHECK(g2.is_interior(1, 1));
    CHECK_FALSE(g2.is_interior(0, 1));
    CHECK_FALSE(g2.is_interior(1, 2));
}

TEST_CASE("make_grid rejects degenerate input") {
    CHECK_THROWS_WITH_AS(make_grid(1.0, 1), doctest::Contains("degenerate mesh"), Error);
    CHECK_THROWS_WITH_AS(make_grid(0.0, 4), doctest::Contains("invalid domain"), Error);
    CHECK_THROWS_WITH_AS(make_grid(-1.0, 4), doctest::Contains("invalid domain"), Error);
}

TEST_CASE("neighbor_average on simple fields") {
    const UniformGrid g = make_grid(1.0, 4);

    ScalarField c(g, 3.25);
    CHECK(neighbor_average(c, 2, 2) == 3.25);

    const ScalarField lin = sample(g, [](double x, double) { return x; });
    for (int j = 1; j <= 3; ++j)
        for (int i = 1; i <= 3; ++i)
            CHECK(neighbor_average(lin, i, j) == doctest::Approx(g.x(i)).epsilon(1e-15));

    // f = x^2 at x=0.5, h=0.25: (0.0625 + 0.5625 + 0.25 + 0.25)/4
    const ScalarField sq = sample(g, [](double x, double) { return x * x; });
    CHECK(neighbor_average(sq, 2, 2) == doctest::Approx(0.28125).epsilon(1e-15));

    CHECK_THROWS_WITH_AS(neighbor_average(sq, 0, 2), doctest::Contains("stencil out of range"),
                         Error);
    CHECK_THROWS_WITH_AS(neighbor_average(sq, 2, 4), doctest::Contains("stencil out of range"),
                         Error);
}

TEST_CASE("apply_Lh on polynomials") {
    const UniformGrid g = make_grid(1.0, 4);

    ScalarField c(g, 7.0);
    CHECK(apply_Lh(c, 2, 2) == 0.0);

    const ScalarField quad = sample(g, [](double x, double y) { return x * x + y * y; });
    for (int j = 1; j <= 3; ++j)
        for (int i = 1; i <= 3; ++i)
            CHECK(apply_Lh(quad, i, j) == doctest::Approx(4.0).epsilon(1e-13));

    // f = x^4 at x=0.5, h=0.25: stencil value 3.125 (analytic 3.0 plus the
    // h^2/12 * f'''' truncation of 0.125).
    const ScalarField quart = sample(g, [](double x, double) { return x * x * x * x; });
    CHECK(apply_Lh(quart, 2, 2) == doctest::Approx(3.125).epsilon(1e-14));

    CHECK_THROWS_WITH_AS(apply_Lh(quart, 4, 2), doctest::Contains("stencil out of range"),
                         Error);
}

TEST_CASE("stencil identity L_h f = 4 (avg - f) / h^2") {
    std::mt19937 rng(20240521);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const UniformGrid g = make_grid(1.5, 9);
    ScalarField f(g);
    for (double& v : f.values)
        v = u(rng);

    const double ulp = std::numeric_limits<double>::epsilon();
    for (int j = 1; j <= g.n - 1; ++j) {
        for (int i = 1; i <= g.n - 1; ++i) {
            const double lhs = apply_Lh(f, i, j);
            const double rhs = 4.0 * (neighbor_average(f, i, j) - f.at(i, j)) / (g.h * g.h);
            const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
            CHECK(std::abs(lhs - rhs) <= 8.0 * ulp * scale);
        }
    }
}

TEST_CASE("apply_Lh is exact on random cubics") {
    std::mt19937 rng(7771);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const UniformGrid g = make_grid(1.0, 8);

    for (int trial = 0; trial < 20; ++trial) {
        // Random polynomial of total degree <= 3.
        double c[4][4] = {};
        for (int p = 0; p <= 3; ++p)
            for (int q = 0; p + q <= 3; ++q)
                c[p][q] = u(rng);
        const auto poly = [&](double x, double y) {
            double s = 0.0;
            for (int p = 0; p <= 3; ++p)
                for (int q = 0; p + q <= 3; ++q)
                    s += c[p][q] * std::pow(x, p) * std::pow(y, q);
            return s;
        };
        const auto lap = [&](double x, double y) {
            double s = 0.0;
            for (int p = 2; p <= 3; ++p)
                for (int q = 0; p + q <= 3; ++q)
                    s += c[p][q] * p * (p - 1) * std::pow(x, p - 2) * std::pow(y, q);
            for (int q = 2; q <= 3; ++q)
                for (int p = 0; p + q <= 3; ++p)
                    s += c[p][q] * q * (q - 1) * std::pow(x, p) * std::pow(y, q - 2);
            return s;
        };

        ScalarField f(g);
        for (int j = 0; j <= g.n; ++j)
            for (int i = 0; i <= g.n; ++i)
                f.at(i, j) = poly(g.x(i), g.y(j));

        for (int j = 1; j <= g.n - 1; ++j)
            for (int i = 1; i <= g.n - 1; ++i) {
                const double want = lap(g.x(i), g.y(j));
                CHECK(std::abs(apply_Lh(f, i, j) - want) <= 1e-10 * std::max(1.0, std::abs(want)));
            }
    }
}

TEST_CASE("neighbor_average preserves nonnegativity") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    const UniformGrid g = make_grid(1.0, 6);
    ScalarField f(g);
    for (double& v : f.values)
        v = u(rng);
    for (int j = 1; j <= g.n - 1; ++j)
        for (int i = 1; i <= g.n - 1; ++i)
            CHECK(neighbor_average(f, i, j) >= 0.0);
}
