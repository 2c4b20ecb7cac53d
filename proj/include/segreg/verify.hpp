#ifndef SEGREG_VERIFY_HPP
#define SEGREG_VERIFY_HPP

#include <vector>

#include "segreg/solver.hpp"

namespace segreg {

/// Structural diagnostics of a (near-)solution of the discrete system.
/// All entries are nonnegative; zero means the property holds exactly.
struct PropertyReport {
    double seg_metric = 0.0;         // largest second-largest nodal value
    double ineq_violation = 0.0;     // max (L_h hat_l - f_l)^+ over interior
    double eq_violation = 0.0;       // max |L_h hat_l - f_l| over {u_l > theta}
    double nonneg_violation = 0.0;   // max (-u)^+ over all nodes
    double boundary_violation = 0.0; // max |u_l - phi_l| on the boundary
};

/// The transform u_l - sum_{p != l} u_p as a nodal field (boundary included).
ScalarField hat(const MultiField& state, int l);

/// Max over nodes of the second-largest component value; 0 iff at most one
/// component is positive per node.
double segregation_metric(const MultiField& state);

/// Evaluates the discrete structural properties of the scheme at the given
/// state; theta is the activity threshold defining {u_l > 0} numerically.
PropertyReport check_scheme_properties(const MultiField& state, const ProblemSpec& p,
                                       double theta);

/// First-order quadrature of sum_l int( |grad u_l|^2 / 2 + F_l(z, u_l) ):
/// forward differences on each cell, F sampled at the lower-left corner.
double discrete_energy(const MultiField& state, const ProblemSpec& p);

/// Per-component max nodal |u_l - u_h^l| against the exact solution.
std::vector<double> linf_error(const MultiField& state, const ProblemSpec& p);

/// Right side of the error estimate with the constant 2 D_Omega = a^2:
///   a^2 * sum_l max over interior |L_h u_l(z) - Delta u_l(z)|,
/// sampling the exact solution nodally. Needs analytic Laplacians.
double truncation_bound(const ProblemSpec& p, const UniformGrid& g);

} // namespace segreg

#endif
