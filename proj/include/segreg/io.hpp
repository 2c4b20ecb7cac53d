#ifndef SEGREG_IO_HPP
#define SEGREG_IO_HPP

#include <map>
#include <string>
#include <vector>

#include "segreg/dynamics.hpp"
#include "segreg/solver.hpp"
#include "segreg/study.hpp"
#include "segreg/verify.hpp"

namespace segreg {

/// Parsed run configuration. Document format: one `key = value` per line,
/// `#` starts a comment. Keys: benchmark, m, a, N, ladder, strategy, tol,
/// max_iters, out, format, dynamics.<l>.kind, dynamics.<l>.c,
/// dynamics.<l>.lambda, boundary.<l>.file (l is the 1-based component).
/// Unknown keys are fatal; all problems are reported together.
struct RunConfig {
    std::string benchmark;

    int m = 0;          // 0 = unset
    double a = 1.0;
    bool a_set = false;

    int n = 0;          // single mesh; 0 = unset
    std::vector<int> ladder;

    std::string strategy = "gauss_seidel"; // jacobi | gauss_seidel | red_black
    double tol = 1e-10;
    long max_iters = 0; // 0 = solver default
    std::string out;    // output directory; empty = no files

    std::vector<std::string> formats = {"csv"}; // subset of csv, json, pgm

    struct InlineDynamics {
        std::string kind = "zero"; // zero | constant | affine
        double c = 0.0;
        double lambda = 0.0;
    };
    std::map<int, InlineDynamics> dynamics;     // 1-based component
    std::map<int, std::string> boundary_files;  // 1-based component

    std::string base_dir; // directory of the config file; resolves relative paths
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

SolverConfig solver_config_from(const RunConfig& rc);

/// Builds and validates the problem a config describes: either a catalog
/// benchmark or an inline problem from the dynamics/boundary keys.
ProblemSpec problem_from_config(const RunConfig& rc);

// --- tables ---

/// Boundary trace CSV: header `side,k,value`, side in {S,E,N,W}, k = 0..N.
/// Missing entries default to 0; N is the largest k seen.
BoundaryTable load_boundary_csv(const std::string& path);

/// Nodal table CSV: header `i,j,value`; N is the largest index seen and
/// the table spans (0,a)^2 of the problem it is attached to.
NodalTable load_nodal_csv(const std::string& path, double a);

// --- fields ---

/// Field CSV: header `x,y,value`, row-major nodes, 17 significant digits
/// (lossless round trip).
void write_field_csv(const std::string& path, const ScalarField& f);
ScalarField read_field_csv(const std::string& path);

/// Loads u_1.csv .. u_m.csv from a directory into one state.
MultiField read_fields_dir(const std::string& dir, int m);

// --- results ---

/// Everything the run reports besides the raw fields.
struct RunDiagnostics {
    SolveReport solve;
    PropertyReport props;
    double residual = 0.0;
    double energy = 0.0;
    std::vector<double> err; // per component; empty when no exact solution
    double trunc_bound = 0.0; // NaN when unavailable
};

/// Post-solve diagnostics with theta = 100 * tol.
RunDiagnostics diagnose(const MultiField& state, const ProblemSpec& p,
                        const SolveReport& rep, double tol);

/// Deterministic textual report (excludes wall time, which varies per run).
std::string render_report(const ProblemSpec& p, const UniformGrid& g,
                          const RunConfig& rc, const RunDiagnostics& diag);

/// Writes the requested artifacts into rc.out (created if missing):
/// fields u_<l>.csv, report.txt (always), report.json, per-component PGMs
/// and the argmax ownership image. Returns the paths written.
std::vector<std::string> write_outputs(const MultiField& state, const ProblemSpec& p,
                                       const RunConfig& rc, const RunDiagnostics& diag);

/// Convergence table `N,h,err_1..err_m,bound,iters`, one row per ladder N.
void write_study_csv(const std::string& path, const ConvergenceReport& rep);

std::string render_study(const ConvergenceReport& rep);

/// Re-checks the stored fields of a finished run against the problem's
/// structural properties; `ok` uses the converged-state bounds
/// (segregation <= 10 tol, L_h violations <= 16 tol / h^2, exact
/// nonnegativity and boundary agreement).
struct VerifyResult {
    PropertyReport props;
    double residual = 0.0;
    bool ok = false;
    std::string text;
};
VerifyResult verify_stored_fields(const ProblemSpec& p, const std::string& dir, double tol);

// --- images ---

/// Binary 8-bit PGM (P5, maxval 255), 0 -> black, field max -> white.
void write_pgm(const std::string& path, const ScalarField& f);

/// Ownership image: each node colored by its argmax component (ties take
/// the lowest index, which by segregation only happens at value 0).
void write_ownership_pgm(const std::string& path, const MultiField& state);

} // namespace segreg

#endif
