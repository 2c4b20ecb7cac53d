#include "segreg/verify.hpp"

#include <algorithm>
#include <cmath>

namespace segreg {

ScalarField hat(const MultiField& state, int l) {
    if (l < 0 || l >= state.m())
        fail(ErrorKind::InvalidArgument, "bad component index " + std::to_string(l));
    ScalarField out(state.grid, 0.0);
    const std::size_t count = state.grid.node_count();
    for (std::size_t c = 0; c < count; ++c) {
        double v = state.comp[l].values[c];
        for (int p = 0; p < state.m(); ++p)
            if (p != l)
                v -= state.comp[p].values[c];
        out.values[c] = v;
    }
    return out;
}

double segregation_metric(const MultiField& state) {
    const int m = state.m();
    if (m <= 1)
        return 0.0;
    double metric = 0.0;
    const std::size_t count = state.grid.node_count();
    for (std::size_t c = 0; c < count; ++c) {
        double first = 0.0, second = 0.0;
        for (int l = 0; l < m; ++l) {
            const double v = state.comp[l].values[c];
            if (v > first) {
                second = first;
                first = v;
            } else if (v > second) {
                second = v;
            }
        }
        metric = std::max(metric, second);
    }
    return metric;
}

PropertyReport check_scheme_properties(const MultiField& state, const ProblemSpec& p,
                                       double theta) {
    const UniformGrid& g = state.grid;
    PropertyReport rep;
    rep.seg_metric = segregation_metric(state);

    for (int l = 0; l < state.m(); ++l) {
        const ScalarField hl = hat(state, l);
        for (int j = 1; j <= g.n - 1; ++j) {
            for (int i = 1; i <= g.n - 1; ++i) {
                const double u = state.comp[l].at(i, j);
                // f is defined for s >= 0 only; malformed states with
                // negative entries surface through nonneg_violation.
                const double d = apply_Lh(hl, i, j) -
                                 eval_f(p.dynamics[l], g.point(i, j), std::max(u, 0.0));
                rep.ineq_violation = std::max(rep.ineq_violation, d);
                if (u > theta)
                    rep.eq_violation = std::max(rep.eq_violation, std::abs(d));
            }
        }
    }

    const std::size_t count = g.node_count();
    for (int l = 0; l < state.m(); ++l)
        for (std::size_t c = 0; c < count; ++c)
            rep.nonneg_violation =
                std::max(rep.nonneg_violation, -state.comp[l].values[c]);
    rep.nonneg_violation = std::max(rep.nonneg_violation, 0.0);
    rep.ineq_violation = std::max(rep.ineq_violation, 0.0);

    for (int l = 0; l < state.m(); ++l) {
        const auto check = [&](int i, int j) {
            const double d =
                std::abs(state.comp[l].at(i, j) - p.boundary.eval(l, g, i, j));
            rep.boundary_violation = std::max(rep.boundary_violation, d);
        };
        for (int i = 0; i <= g.n; ++i) {
            check(i, 0);
            check(i, g.n);
        }
        for (int j = 1; j <= g.n - 1; ++j) {
            check(0, j);
            check(g.n, j);
        }
    }
    return rep;
}

double discrete_energy(const MultiField& state, const ProblemSpec& p) {
    const UniformGrid& g = state.grid;
    const double h = g.h;
    double energy = 0.0;
    for (int l = 0; l < state.m(); ++l) {
        const ScalarField& u = state.comp[l];
        for (int j = 0; j <= g.n - 1; ++j) {
            for (int i = 0; i <= g.n - 1; ++i) {
                const double u00 = u.at(i, j);
                const double gx = (u.at(i + 1, j) - u00) / h;
                const double gy = (u.at(i, j + 1) - u00) / h;
                energy += h * h * (0.5 * (gx * gx + gy * gy) +
                                   eval_F(p.dynamics[l], g.point(i, j), u00));
            }
        }
    }
    return energy;
}

std::vector<double> linf_error(const MultiField& state, const ProblemSpec& p) {
    if (!p.has_exact())
        fail(ErrorKind::Unavailable, "reference unavailable: problem has no exact solution");
    const UniformGrid& g = state.grid;
    std::vector<double> err(state.m(), 0.0);
    for (int l = 0; l < state.m(); ++l) {
        for (int j = 0; j <= g.n; ++j)
            for (int i = 0; i <= g.n; ++i)
                err[l] = std::max(err[l], std::abs(p.exact->u[l](g.x(i), g.y(j)) -
                                                   state.comp[l].at(i, j)));
    }
    return err;
}

double truncation_bound(const ProblemSpec& p, const UniformGrid& g) {
    if (!p.has_laplacians())
        fail(ErrorKind::Unavailable,
             "reference unavailable: problem has no exact solution with analytic Laplacians");
    double sum = 0.0;
    for (int l = 0; l < p.m; ++l) {
        ScalarField u(g, 0.0);
        for (int j = 0; j <= g.n; ++j)
            for (int i = 0; i <= g.n; ++i)
                u.at(i, j) = p.exact->u[l](g.x(i), g.y(j));
        double worst = 0.0;
        for (int j = 1; j <= g.n - 1; ++j)
            for (int i = 1; i <= g.n - 1; ++i)
                worst = std::max(worst, std::abs(apply_Lh(u, i, j) -
                                                 p.exact->laplacian[l](g.x(i), g.y(j))));
        sum += worst;
    }
    return g.a * g.a * sum;
}

} // namespace segreg
