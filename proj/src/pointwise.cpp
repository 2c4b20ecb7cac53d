#include "segreg/pointwise.hpp"

#include <algorithm>
#include <cmath>

namespace segreg {

double solve_pointwise(const PointUpdate& pu) {
    if (!pu.dyn)
        fail(ErrorKind::InvalidArgument, "point update without dynamics");
    const double q = pu.h * pu.h * 0.25;
    switch (pu.dyn->kind()) {
    case DynamicsKind::Zero:
        return std::max(pu.A, 0.0);
    case DynamicsKind::Constant:
    case DynamicsKind::Spatial: {
        const double f0 = pu.dyn->spatial_value(pu.z.x, pu.z.y);
        return std::max(pu.A - f0 * q, 0.0);
    }
    case DynamicsKind::AffineInS: {
        const double c = pu.dyn->spatial_value(pu.z.x, pu.z.y);
        return std::max((pu.A - c * q) / (1.0 + pu.dyn->lambda() * q), 0.0);
    }
    }
    return solve_pointwise_bisect(pu);
}

double solve_pointwise_bisect(const PointUpdate& pu) {
    if (!pu.dyn)
        fail(ErrorKind::InvalidArgument, "point update without dynamics");
    const double q = pu.h * pu.h * 0.25;
    const double hi0 = std::max(pu.A, 0.0);
    const double eps = 1e-14 * std::max(1.0, std::abs(pu.A));

    const auto g = [&](double s) {
        return std::max(-eval_f(*pu.dyn, pu.z, s) * q + pu.A, 0.0);
    };

    // Defensive monotonicity probe at the bracket ends; a decreasing f
    // breaks uniqueness of the fixed point.
    if (eval_f(*pu.dyn, pu.z, hi0) < eval_f(*pu.dyn, pu.z, 0.0) - 1e-12 * std::max(1.0, hi0))
        fail(ErrorKind::Validation, "monotonicity violated: f decreases in s");

    if (g(0.0) <= 0.0)
        return 0.0; // map pinned at the clamp
    double lo = 0.0, hi = hi0;
    // psi(s) = s - g(s) is increasing; psi(lo) <= 0 <= psi(hi).
    while (hi - lo > eps) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break; // interval at floating resolution
        if (mid - g(mid) >= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace segreg
