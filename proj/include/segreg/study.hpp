#ifndef SEGREG_STUDY_HPP
#define SEGREG_STUDY_HPP

#include <optional>
#include <utility>
#include <vector>

#include "segreg/solver.hpp"

namespace segreg {

struct LadderPoint {
    int n = 0;
    double h = 0.0;
    std::vector<double> err;  // per component
    double bound = 0.0;       // truncation bound; NaN when unavailable
    bool bound_ok = false;    // err <= bound + 10 tol (exact mode only)
    long iterations = 0;
};

struct ConvergenceReport {
    std::vector<LadderPoint> points;
    std::optional<double> fitted_order; // nullopt -> degenerate (errors at tol floor)
    bool reference_mode = false;
    int n_ref = 0;
};

/// Least-squares slope of log(error) vs log(h), using only points with
/// error above floor_tol. Fewer than two such points -> degenerate.
std::optional<double> fit_order(const std::vector<std::pair<double, double>>& h_err,
                                double floor_tol);

/// Fine-grid converged solve used as an error surrogate when no closed
/// form exists. Restriction takes coinciding nodes only, so every coarse N
/// must divide n_ref.
class RichardsonReference {
public:
    RichardsonReference(const ProblemSpec& p, int n_ref, const SolverConfig& cfg);

    const MultiField& fine() const { return fine_; }
    int n_ref() const { return fine_.grid.n; }

    /// Restriction to the coarse grid with n subdivisions: coarse (i,j)
    /// maps to fine (i * n_ref/n, j * n_ref/n).
    MultiField restrict_to(int n) const;

private:
    MultiField fine_;
};

/// Solves the problem over the mesh ladder and reports per-N errors,
/// truncation bounds and the fitted order. With no exact solution a
/// Richardson reference at N_ref = 4 * max(ladder) is used (requires
/// use_reference = true); each ladder N must divide N_ref.
ConvergenceReport run_study(const ProblemSpec& p, const std::vector<int>& ladder,
                            const SolverConfig& cfg, bool use_reference = false);

} // namespace segreg

#endif
