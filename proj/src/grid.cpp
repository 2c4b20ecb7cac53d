#include "segreg/grid.hpp"

#include <cmath>
#include <string>

namespace segreg {

UniformGrid make_grid(double a, int n) {
    if (!(a > 0.0) || !std::isfinite(a))
        fail(ErrorKind::InvalidArgument, "invalid domain: side length must be positive, got a=" + std::to_string(a));
    if (n < 2)
        fail(ErrorKind::InvalidArgument, "degenerate mesh: N must be >= 2, got N=" + std::to_string(n));
    UniformGrid g;
    g.a = a;
    g.n = n;
    g.h = a / static_cast<double>(n);
    return g;
}

namespace {

inline void require_interior(const UniformGrid& g, int i, int j) {
    if (!g.is_interior(i, j))
        fail(ErrorKind::InvalidArgument,
             "stencil out of range: node (" + std::to_string(i) + "," + std::to_string(j) +
                 ") is not interior");
}

} // namespace

double neighbor_average(const ScalarField& f, int i, int j) {
    require_interior(f.grid, i, j);
    const double* v = f.values.data();
    const std::size_t c = f.grid.index(i, j);
    const std::size_t stride = static_cast<std::size_t>(f.grid.n + 1);
    return (v[c - 1] + v[c + 1] + v[c - stride] + v[c + stride]) * 0.25;
}

double apply_Lh(const ScalarField& f, int i, int j) {
    require_interior(f.grid, i, j);
    const double* v = f.values.data();
    const std::size_t c = f.grid.index(i, j);
    const std::size_t stride = static_cast<std::size_t>(f.grid.n + 1);
    const double h = f.grid.h;
    return (v[c - 1] + v[c + 1] + v[c - stride] + v[c + stride] - 4.0 * v[c]) / (h * h);
}

} // namespace segreg
