#ifndef SEGREG_GRID_HPP
#define SEGREG_GRID_HPP

#include <cstddef>
#include <vector>

#include "segreg/error.hpp"

namespace segreg {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Uniform square mesh on (0,a)x(0,a) with N subdivisions per side.
/// Nodes are the (N+1)^2 lattice points (i,j) -> (i*h, j*h); the interior
/// is 1 <= i,j <= N-1 and everything else is boundary.
struct UniformGrid {
    double a = 1.0; // side length
    int n = 0;      // subdivisions per side
    double h = 0.0; // spacing a/n

    int points_per_side() const { return n + 1; }
    std::size_t node_count() const {
        return static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 1);
    }

    // Row-major flat index; x varies fastest.
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(n + 1) +
               static_cast<std::size_t>(i);
    }

    // Coordinates are recomputed from the index, never accumulated.
    double x(int i) const { return static_cast<double>(i) * h; }
    double y(int j) const { return static_cast<double>(j) * h; }
    Point point(int i, int j) const { return {x(i), y(j)}; }

    bool is_interior(int i, int j) const {
        return i >= 1 && i <= n - 1 && j >= 1 && j <= n - 1;
    }
    bool is_boundary(int i, int j) const { return !is_interior(i, j); }
};

/// Builds a grid; requires a > 0 and N >= 2 (at least one interior node).
UniformGrid make_grid(double a, int n);

/// Nodal values on one grid, row-major, length (N+1)^2.
struct ScalarField {
    ScalarField() = default;
    explicit ScalarField(const UniformGrid& g, double fill = 0.0)
        : grid(g), values(g.node_count(), fill) {}

    UniformGrid grid;
    std::vector<double> values;

    double& at(int i, int j) { return values[grid.index(i, j)]; }
    double at(int i, int j) const { return values[grid.index(i, j)]; }
};

/// Mean of the four stencil neighbors. Interior nodes only.
double neighbor_average(const ScalarField& f, int i, int j);

/// 5-point discrete Laplacian
///   (f(i-1,j) + f(i+1,j) - 4 f(i,j) + f(i,j-1) + f(i,j+1)) / h^2.
/// Interior nodes only. Satisfies L_h f = 4 (avg - f) / h^2 with
/// neighbor_average to machine precision.
double apply_Lh(const ScalarField& f, int i, int j);

} // namespace segreg

#endif
