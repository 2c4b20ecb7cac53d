#include "segreg/study.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "segreg/verify.hpp"

namespace segreg {

std::optional<double> fit_order(const std::vector<std::pair<double, double>>& h_err,
                                double floor_tol) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& [h, e] : h_err)
        if (e > floor_tol)
            pts.emplace_back(std::log(h), std::log(e));
    if (pts.size() < 2)
        return std::nullopt;

    double xm = 0.0, ym = 0.0;
    for (const auto& [x, y] : pts) {
        xm += x;
        ym += y;
    }
    xm /= pts.size();
    ym /= pts.size();
    double sxy = 0.0, sxx = 0.0;
    for (const auto& [x, y] : pts) {
        sxy += (x - xm) * (y - ym);
        sxx += (x - xm) * (x - xm);
    }
    if (sxx == 0.0)
        return std::nullopt;
    return sxy / sxx;
}

RichardsonReference::RichardsonReference(const ProblemSpec& p, int n_ref,
                                         const SolverConfig& cfg) {
    const UniformGrid g = make_grid(p.a, n_ref);
    fine_ = solve(p, g, cfg).first;
}

MultiField RichardsonReference::restrict_to(int n) const {
    const int nr = fine_.grid.n;
    if (n < 2 || nr % n != 0)
        fail(ErrorKind::InvalidArgument,
             "incompatible ladder: N=" + std::to_string(n) + " does not divide N_ref=" +
                 std::to_string(nr));
    const int step = nr / n;
    MultiField coarse;
    coarse.grid = make_grid(fine_.grid.a, n);
    for (int l = 0; l < fine_.m(); ++l) {
        ScalarField f(coarse.grid, 0.0);
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n; ++i)
                f.at(i, j) = fine_.comp[l].at(i * step, j * step);
        coarse.comp.push_back(std::move(f));
    }
    return coarse;
}

ConvergenceReport run_study(const ProblemSpec& p, const std::vector<int>& ladder,
                            const SolverConfig& cfg, bool use_reference) {
    if (ladder.size() < 3)
        fail(ErrorKind::InvalidArgument,
             "ladder too short: need at least 3 mesh sizes, got " +
                 std::to_string(ladder.size()));
    for (std::size_t k = 0; k + 1 < ladder.size(); ++k)
        if (ladder[k] >= ladder[k + 1])
            fail(ErrorKind::InvalidArgument, "ladder must be strictly increasing");

    const bool reference_mode = use_reference || !p.has_exact();
    if (reference_mode && !use_reference)
        fail(ErrorKind::Unavailable,
             "reference unavailable: no exact solution; request a Richardson reference");

    ConvergenceReport rep;
    rep.reference_mode = reference_mode;

    std::optional<RichardsonReference> ref;
    if (reference_mode) {
        rep.n_ref = 4 * ladder.back();
        for (int n : ladder)
            if (rep.n_ref % n != 0)
                fail(ErrorKind::InvalidArgument,
                     "incompatible ladder: N=" + std::to_string(n) +
                         " does not divide N_ref=" + std::to_string(rep.n_ref));
        ref.emplace(p, rep.n_ref, cfg);
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int n : ladder) {
        const UniformGrid g = make_grid(p.a, n);
        auto [state, solve_rep] = solve(p, g, cfg);

        LadderPoint pt;
        pt.n = n;
        pt.h = g.h;
        pt.iterations = solve_rep.iterations;
        if (reference_mode) {
            const MultiField coarse_ref = ref->restrict_to(n);
            pt.err.assign(state.m(), 0.0);
            for (int l = 0; l < state.m(); ++l)
                for (std::size_t c = 0; c < g.node_count(); ++c)
                    pt.err[l] = std::max(pt.err[l],
                                         std::abs(coarse_ref.comp[l].values[c] -
                                                  state.comp[l].values[c]));
            pt.bound = nan;
        } else {
            pt.err = linf_error(state, p);
            if (p.has_laplacians()) {
                pt.bound = truncation_bound(p, g);
                const double worst = *std::max_element(pt.err.begin(), pt.err.end());
                pt.bound_ok = worst <= pt.bound + 10.0 * cfg.tol;
            } else {
                pt.bound = nan;
            }
        }
        rep.points.push_back(std::move(pt));
    }

    std::vector<std::pair<double, double>> h_err;
    for (const auto& pt : rep.points)
        h_err.emplace_back(pt.h, *std::max_element(pt.err.begin(), pt.err.end()));
    rep.fitted_order = fit_order(h_err, 10.0 * cfg.tol);
    return rep;
}

} // namespace segreg
