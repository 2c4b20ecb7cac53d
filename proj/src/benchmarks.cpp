#include "segreg/benchmarks.hpp"

#include <cmath>

namespace segreg {

namespace {

constexpr double kPi = 3.14159265358979323846;

double pos(double v) { return v > 0.0 ? v : 0.0; }

ProblemSpec make_all_zero(int m) {
    ProblemSpec p;
    p.m = m;
    p.a = 1.0;
    p.name = "all_zero";
    p.description = "zero traces, f_l = 1; exact solution is identically 0 (any m)";
    for (int l = 0; l < m; ++l)
        p.dynamics.push_back(DynamicsSpec::constant(1.0));
    p.boundary = BoundarySpec(m);
    for (int l = 0; l < m; ++l)
        p.boundary.set_closed_form(l, [](double, double) { return 0.0; });
    ExactSolution ex;
    for (int l = 0; l < m; ++l) {
        ex.u.push_back([](double, double) { return 0.0; });
        ex.laplacian.push_back([](double, double) { return 0.0; });
    }
    p.exact = std::move(ex);
    return p;
}

ProblemSpec make_paraboloid() {
    ProblemSpec p;
    p.m = 2;
    p.a = 1.0;
    p.name = "paraboloid";
    p.description = "one-phase quadratic 1+x^2+y^2, exact discrete fixed point";
    p.dynamics.push_back(DynamicsSpec::constant(4.0));
    p.dynamics.push_back(DynamicsSpec::constant(1.0));
    p.boundary = BoundarySpec(2);
    p.boundary.set_closed_form(0, [](double x, double y) { return 1.0 + x * x + y * y; });
    p.boundary.set_closed_form(1, [](double, double) { return 0.0; });
    ExactSolution ex;
    ex.u.push_back([](double x, double y) { return 1.0 + x * x + y * y; });
    ex.u.push_back([](double, double) { return 0.0; });
    ex.laplacian.push_back([](double, double) { return 4.0; });
    ex.laplacian.push_back([](double, double) { return 0.0; });
    p.exact = std::move(ex);
    return p;
}

ProblemSpec make_exp_smooth() {
    ProblemSpec p;
    p.m = 2;
    p.a = 1.0;
    p.name = "exp_smooth";
    p.description = "one-phase smooth e^(x+y), order-2 convergence benchmark";
    p.dynamics.push_back(DynamicsSpec::spatial(
        [](double x, double y) { return 2.0 * std::exp(x + y); }));
    p.dynamics.push_back(DynamicsSpec::constant(1.0));
    p.boundary = BoundarySpec(2);
    p.boundary.set_closed_form(0, [](double x, double y) { return std::exp(x + y); });
    p.boundary.set_closed_form(1, [](double, double) { return 0.0; });
    ExactSolution ex;
    ex.u.push_back([](double x, double y) { return std::exp(x + y); });
    ex.u.push_back([](double, double) { return 0.0; });
    ex.laplacian.push_back([](double x, double y) { return 2.0 * std::exp(x + y); });
    ex.laplacian.push_back([](double, double) { return 0.0; });
    p.exact = std::move(ex);
    return p;
}

ProblemSpec make_two_phase_flat() {
    ProblemSpec p;
    const double c = 0.5;
    p.m = 2;
    p.a = 1.0;
    p.name = "two_phase_flat";
    p.description = "two phases split at x=0.5, exact discrete fixed point for even N";
    p.dynamics.push_back(DynamicsSpec::constant(2.0));
    p.dynamics.push_back(DynamicsSpec::constant(2.0));
    p.boundary = BoundarySpec(2);
    p.boundary.set_closed_form(0, [c](double x, double) { return pos(x - c) * pos(x - c); });
    p.boundary.set_closed_form(1, [c](double x, double) { return pos(c - x) * pos(c - x); });
    ExactSolution ex;
    ex.u.push_back([c](double x, double) { return pos(x - c) * pos(x - c); });
    ex.u.push_back([c](double x, double) { return pos(c - x) * pos(c - x); });
    ex.laplacian.push_back([c](double x, double) { return x > c ? 2.0 : 0.0; });
    ex.laplacian.push_back([c](double x, double) { return x < c ? 2.0 : 0.0; });
    p.exact = std::move(ex);
    return p;
}

// Angular distance wrapped to [-pi, pi].
double wrap_angle(double d) {
    while (d > kPi)
        d -= 2.0 * kPi;
    while (d < -kPi)
        d += 2.0 * kPi;
    return d;
}

double sector_trace(double x, double y, double theta_l) {
    const double cx = 0.5, cy = 0.5;
    const double dx = x - cx, dy = y - cy;
    const double r = std::sqrt(dx * dx + dy * dy);
    if (r == 0.0)
        return 0.0;
    const double theta = std::atan2(dy, dx);
    const double d = wrap_angle(theta - theta_l);
    return std::pow(r, 1.5) * std::max(std::cos(1.5 * d), 0.0);
}

ProblemSpec make_three_sector() {
    ProblemSpec p;
    p.m = 3;
    p.a = 1.0;
    p.name = "three_sector";
    p.description = "three harmonic sectors r^(3/2) about the center, f = 0 (no closed form)";
    for (int l = 0; l < 3; ++l)
        p.dynamics.push_back(DynamicsSpec::zero());
    p.boundary = BoundarySpec(3);
    for (int l = 0; l < 3; ++l) {
        const double theta_l = 2.0 * kPi * static_cast<double>(l + 1) / 3.0;
        p.boundary.set_closed_form(l, [theta_l](double x, double y) {
            return sector_trace(x, y, theta_l);
        });
    }
    return p;
}

ProblemSpec make_affine_growth() {
    ProblemSpec p;
    const double c = 0.5;
    p.m = 2;
    p.a = 1.0;
    p.name = "affine_growth";
    p.description = "two_phase_flat traces with f = 2 + s, exercises implicit updates";
    p.dynamics.push_back(DynamicsSpec::affine(2.0, 1.0));
    p.dynamics.push_back(DynamicsSpec::affine(2.0, 1.0));
    p.boundary = BoundarySpec(2);
    p.boundary.set_closed_form(0, [c](double x, double) { return pos(x - c) * pos(x - c); });
    p.boundary.set_closed_form(1, [c](double x, double) { return pos(c - x) * pos(c - x); });
    return p;
}

} // namespace

ProblemSpec get_benchmark(const std::string& name, int m_override) {
    if (name == "all_zero") {
        const int m = m_override > 0 ? m_override : 2;
        return make_all_zero(m);
    }

    ProblemSpec p;
    if (name == "paraboloid")
        p = make_paraboloid();
    else if (name == "exp_smooth")
        p = make_exp_smooth();
    else if (name == "two_phase_flat")
        p = make_two_phase_flat();
    else if (name == "three_sector")
        p = make_three_sector();
    else if (name == "affine_growth")
        p = make_affine_growth();
    else
        fail(ErrorKind::UnknownBenchmark, "no such benchmark: " + name);

    if (m_override > 0 && m_override != p.m)
        fail(ErrorKind::InvalidArgument,
             "benchmark " + name + " has fixed m=" + std::to_string(p.m));
    return p;
}

std::vector<std::string> benchmark_names() {
    return {"all_zero", "paraboloid", "exp_smooth",
            "two_phase_flat", "three_sector", "affine_growth"};
}

std::string benchmark_description(const std::string& name) {
    try {
        return get_benchmark(name).description;
    } catch (const Error&) {
        return "";
    }
}

} // namespace segreg
