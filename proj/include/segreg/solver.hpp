#ifndef SEGREG_SOLVER_HPP
#define SEGREG_SOLVER_HPP

#include <utility>
#include <vector>

#include "segreg/dynamics.hpp"
#include "segreg/grid.hpp"

namespace segreg {

/// m nonnegative nodal fields on one grid. Boundary nodes carry the
/// phi_l traces and are never written by sweeps.
struct MultiField {
    UniformGrid grid;
    std::vector<ScalarField> comp;

    int m() const { return static_cast<int>(comp.size()); }
};

enum class Strategy { Jacobi, GaussSeidel, RedBlack };

struct SolverConfig {
    Strategy strategy = Strategy::GaussSeidel;
    double tol = 1e-10;   // stopping tolerance on the sup-norm update
    long max_iters = 0;   // 0 -> 200 * N^2
    int log_every = 100;  // residual-history stride
    int workers = 1;      // Jacobi/RedBlack data-parallel lanes
};

enum class StopReason { Converged, MaxIters };

struct SolveReport {
    long iterations = 0;
    double final_change = 0.0;
    std::vector<std::pair<long, double>> history; // (sweep, max_change), strided
    StopReason reason = StopReason::MaxIters;
    double wall_seconds = 0.0;
};

/// Boundary nodes set to phi_l, interior to 0 for every component.
MultiField init_state(const ProblemSpec& p, const UniformGrid& g);

/// One full pass of pointwise updates over all interior nodes and
/// components; returns the sup-norm of the updates.
///   Jacobi      all drive terms read from the pre-sweep state.
///   GaussSeidel lexicographic node order, components 1..m, latest values.
///   RedBlack    two half-sweeps by node parity (even i+j first); within a
///               color, reads are pre-half-sweep. Deterministically
///               parallel over `workers` lanes.
double sweep(MultiField& state, const ProblemSpec& p, Strategy strategy, int workers = 1);

/// Iterates sweeps until the update norm is at most cfg.tol and a
/// contraction-rate certificate puts the remaining distance to the fixed
/// point below cfg.tol / 4, or until max_iters. NaN/Inf in the state stops
/// with "numerical breakdown".
std::pair<MultiField, SolveReport> solve(const ProblemSpec& p, const UniformGrid& g,
                                         const SolverConfig& cfg);

/// Sup-norm defect of the discrete system at the current state:
/// max over interior nodes and components of
///   |u_l(z) - max(-f_l(z, u_l(z)) h^2/4 + drive, 0)|.
double scheme_residual(const MultiField& state, const ProblemSpec& p);

} // namespace segreg

#endif
