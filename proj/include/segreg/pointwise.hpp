#ifndef SEGREG_POINTWISE_HPP
#define SEGREG_POINTWISE_HPP

#include "segreg/dynamics.hpp"
#include "segreg/grid.hpp"

namespace segreg {

/// One node-component update of the scheme: find the unique s* >= 0 with
///   s* = max(-f(z, s*) h^2 / 4 + A, 0),
/// where A is the drive term (own neighbor average minus the others').
struct PointUpdate {
    double A = 0.0;
    double h = 0.0;
    const DynamicsSpec* dyn = nullptr;
    Point z;
};

/// Exact scalar solve: closed form for the catalog kinds, bisection
/// otherwise. Uniqueness holds because f is nondecreasing in s, so the
/// update map is nonincreasing and clamped at 0.
double solve_pointwise(const PointUpdate& pu);

/// Bisection on [0, max(A,0)] to absolute tolerance 1e-14 * max(1,|A|).
/// Independent of the closed forms; also the fallback for a general
/// nondecreasing f.
double solve_pointwise_bisect(const PointUpdate& pu);

} // namespace segreg

#endif
