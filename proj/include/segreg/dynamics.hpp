#ifndef SEGREG_DYNAMICS_HPP
#define SEGREG_DYNAMICS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "segreg/grid.hpp"

namespace segreg {

using SpatialFn = std::function<double(double x, double y)>;

/// Nodal samples of a spatial function on its own (a, n) lattice.
/// Evaluation off the sample lattice uses bilinear interpolation.
struct NodalTable {
    double a = 1.0;
    int n = 0;
    std::vector<double> values; // row-major, (n+1)^2

    double eval(double x, double y) const;
};

enum class DynamicsKind { Zero, Constant, Spatial, AffineInS };

/// Internal dynamics f(z,s) of one component, restricted to the parametric
/// forms whose monotonicity in s is checkable at construction:
///   Zero            f = 0
///   Constant        f = c,               c >= 0
///   Spatial         f = g(x,y),          g >= 0
///   AffineInS       f = c(x,y) + λ s,    c >= 0, λ >= 0
/// The Lipschitz constant in s is λ (0 for the s-independent kinds).
class DynamicsSpec {
public:
    static DynamicsSpec zero();
    static DynamicsSpec constant(double c);
    static DynamicsSpec spatial(SpatialFn g);
    static DynamicsSpec spatial(NodalTable table);
    static DynamicsSpec affine(double c, double lambda);
    static DynamicsSpec affine(SpatialFn c, double lambda);

    DynamicsKind kind() const { return kind_; }
    double lambda() const { return lambda_; }

    // Spatial part: the constant/sampled/closed-form c(z) (g(z) for Spatial).
    double spatial_value(double x, double y) const;

    friend double eval_f(const DynamicsSpec& d, Point z, double s);
    friend double eval_F(const DynamicsSpec& d, Point z, double s);

private:
    DynamicsSpec() = default;

    DynamicsKind kind_ = DynamicsKind::Zero;
    double c_ = 0.0; // Constant / affine constant part when not spatial
    double lambda_ = 0.0;
    SpatialFn fn_;                    // closed-form spatial part
    std::optional<NodalTable> table_; // sampled spatial part
};

/// f(z,s); requires s >= 0 (the iteration never queries negative densities).
double eval_f(const DynamicsSpec& d, Point z, double s);

/// Exact antiderivative F(z,s) = ∫_0^s f(z,v) dv.
double eval_F(const DynamicsSpec& d, Point z, double s);

/// Boundary trace sampled per side: side in {S,E,N,W}, k = 0..n along the
/// side. S and N are parameterized by i (x direction), E and W by j.
struct BoundaryTable {
    int n = 0;
    std::vector<double> south, east, north, west; // each length n+1

    double eval_side(int side, double t) const; // t in [0,1], linear interp
};

/// Per-component boundary data: closed form or per-node table.
/// Corner nodes are classified in the fixed order S, E, N, W.
class BoundarySpec {
public:
    BoundarySpec() = default;
    explicit BoundarySpec(int m) : comps_(m) {}

    void set_closed_form(int l, SpatialFn phi);
    void set_table(int l, BoundaryTable table);

    int components() const { return static_cast<int>(comps_.size()); }

    /// Value of phi_l at boundary node (i,j) of grid g.
    double eval(int l, const UniformGrid& g, int i, int j) const;

private:
    struct Entry {
        SpatialFn fn;
        std::optional<BoundaryTable> table;
    };
    std::vector<Entry> comps_;
};

/// Optional closed-form solution with analytic Laplacians per component.
struct ExactSolution {
    std::vector<SpatialFn> u;         // m components
    std::vector<SpatialFn> laplacian; // analytic Δu_l; empty if unavailable
};

/// The full problem data: component count, domain size, dynamics and
/// boundary specs, plus an optional exact solution for error studies.
struct ProblemSpec {
    int m = 0;
    double a = 1.0;
    std::vector<DynamicsSpec> dynamics;
    BoundarySpec boundary;
    std::optional<ExactSolution> exact;

    std::string name;        // catalog id, empty for inline problems
    std::string description; // one-line summary for listings

    bool has_exact() const { return exact.has_value(); }
    bool has_laplacians() const {
        return exact.has_value() && !exact->laplacian.empty();
    }
};

struct ValidationIssue {
    std::string check; // "boundary_disjoint", "phi_nonneg", ...
    int comp_a = -1;   // offending component (0-based), -1 if n/a
    int comp_b = -1;   // second component of an offending pair
    int i = -1, j = -1;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string summary() const;
};

/// Probes the scheme's hypotheses on a coarse mesh: pairwise-disjoint
/// boundary supports, nonnegative traces and f(.,0), and, when an exact
/// solution is present, segregation and trace agreement to 1e-12.
ValidationReport validate_problem(const ProblemSpec& p, int probe_n);

} // namespace segreg

#endif
