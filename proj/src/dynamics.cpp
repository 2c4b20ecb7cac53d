#include "segreg/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace segreg {

double NodalTable::eval(double x, double y) const {
    const double h = a / static_cast<double>(n);
    const auto idx = [&](int i, int j) {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(n + 1) +
               static_cast<std::size_t>(i);
    };
    double u = x / h;
    double v = y / h;
    int i0 = static_cast<int>(std::floor(u));
    int j0 = static_cast<int>(std::floor(v));
    i0 = std::clamp(i0, 0, n - 1);
    j0 = std::clamp(j0, 0, n - 1);
    double fu = std::clamp(u - i0, 0.0, 1.0);
    double fv = std::clamp(v - j0, 0.0, 1.0);
    const double v00 = values[idx(i0, j0)];
    const double v10 = values[idx(i0 + 1, j0)];
    const double v01 = values[idx(i0, j0 + 1)];
    const double v11 = values[idx(i0 + 1, j0 + 1)];
    return (1 - fu) * (1 - fv) * v00 + fu * (1 - fv) * v10 +
           (1 - fu) * fv * v01 + fu * fv * v11;
}

DynamicsSpec DynamicsSpec::zero() {
    DynamicsSpec d;
    d.kind_ = DynamicsKind::Zero;
    return d;
}

DynamicsSpec DynamicsSpec::constant(double c) {
    if (!(c >= 0.0) || !std::isfinite(c))
        fail(ErrorKind::Validation, "nonnegativity violated: constant dynamics need c >= 0, got c=" + std::to_string(c));
    DynamicsSpec d;
    d.kind_ = DynamicsKind::Constant;
    d.c_ = c;
    return d;
}

DynamicsSpec DynamicsSpec::spatial(SpatialFn g) {
    if (!g)
        fail(ErrorKind::InvalidArgument, "spatial dynamics need a function");
    DynamicsSpec d;
    d.kind_ = DynamicsKind::Spatial;
    d.fn_ = std::move(g);
    return d;
}

DynamicsSpec DynamicsSpec::spatial(NodalTable table) {
    if (table.n < 1 || table.values.size() !=
                           static_cast<std::size_t>(table.n + 1) * static_cast<std::size_t>(table.n + 1))
        fail(ErrorKind::InvalidArgument, "spatial table has wrong size");
    for (double v : table.values) {
        if (!std::isfinite(v))
            fail(ErrorKind::Validation, "spatial table contains a non-finite value");
        if (v < 0.0)
            fail(ErrorKind::Validation, "nonnegativity violated: spatial table contains a negative value");
    }
    DynamicsSpec d;
    d.kind_ = DynamicsKind::Spatial;
    d.table_ = std::move(table);
    return d;
}

DynamicsSpec DynamicsSpec::affine(double c, double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        fail(ErrorKind::Validation,
             "monotonicity violated: affine dynamics need lambda >= 0, got lambda=" + std::to_string(lambda));
    if (!(c >= 0.0) || !std::isfinite(c))
        fail(ErrorKind::Validation, "nonnegativity violated: affine dynamics need c >= 0, got c=" + std::to_string(c));
    DynamicsSpec d;
    d.kind_ = DynamicsKind::AffineInS;
    d.c_ = c;
    d.lambda_ = lambda;
    return d;
}

DynamicsSpec DynamicsSpec::affine(SpatialFn c, double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        fail(ErrorKind::Validation,
             "monotonicity violated: affine dynamics need lambda >= 0, got lambda=" + std::to_string(lambda));
    if (!c)
        fail(ErrorKind::InvalidArgument, "affine dynamics need a constant part");
    DynamicsSpec d;
    d.kind_ = DynamicsKind::AffineInS;
    d.fn_ = std::move(c);
    d.lambda_ = lambda;
    return d;
}

double DynamicsSpec::spatial_value(double x, double y) const {
    if (table_)
        return table_->eval(x, y);
    if (fn_)
        return fn_(x, y);
    return c_;
}

double eval_f(const DynamicsSpec& d, Point z, double s) {
    if (s < 0.0)
        fail(ErrorKind::InvalidArgument, "negative density query: s=" + std::to_string(s));
    switch (d.kind_) {
    case DynamicsKind::Zero:
        return 0.0;
    case DynamicsKind::Constant:
        return d.c_;
    case DynamicsKind::Spatial:
        return d.spatial_value(z.x, z.y);
    case DynamicsKind::AffineInS:
        return d.spatial_value(z.x, z.y) + d.lambda_ * s;
    }
    return 0.0;
}

double eval_F(const DynamicsSpec& d, Point z, double s) {
    if (s < 0.0)
        fail(ErrorKind::InvalidArgument, "negative density query: s=" + std::to_string(s));
    switch (d.kind_) {
    case DynamicsKind::Zero:
        return 0.0;
    case DynamicsKind::Constant:
        return d.c_ * s;
    case DynamicsKind::Spatial:
        return d.spatial_value(z.x, z.y) * s;
    case DynamicsKind::AffineInS:
        return d.spatial_value(z.x, z.y) * s + 0.5 * d.lambda_ * s * s;
    }
    return 0.0;
}

double BoundaryTable::eval_side(int side, double t) const {
    const std::vector<double>* arr = nullptr;
    switch (side) {
    case 0: arr = &south; break;
    case 1: arr = &east; break;
    case 2: arr = &north; break;
    case 3: arr = &west; break;
    default: fail(ErrorKind::InvalidArgument, "bad boundary side");
    }
    if (arr->empty())
        return 0.0;
    const double u = std::clamp(t, 0.0, 1.0) * n;
    int k = std::clamp(static_cast<int>(std::floor(u)), 0, n - 1);
    const double f = u - k;
    return (1.0 - f) * (*arr)[k] + f * (*arr)[k + 1];
}

void BoundarySpec::set_closed_form(int l, SpatialFn phi) {
    if (l < 0 || l >= components())
        fail(ErrorKind::InvalidArgument, "bad component index " + std::to_string(l));
    comps_[l].fn = std::move(phi);
    comps_[l].table.reset();
}

void BoundarySpec::set_table(int l, BoundaryTable table) {
    if (l < 0 || l >= components())
        fail(ErrorKind::InvalidArgument, "bad component index " + std::to_string(l));
    comps_[l].table = std::move(table);
    comps_[l].fn = nullptr;
}

double BoundarySpec::eval(int l, const UniformGrid& g, int i, int j) const {
    if (l < 0 || l >= components())
        fail(ErrorKind::InvalidArgument, "bad component index " + std::to_string(l));
    if (!g.is_boundary(i, j))
        fail(ErrorKind::InvalidArgument, "boundary trace queried at interior node");
    const Entry& e = comps_[l];
    if (e.table) {
        // Side classification order S, E, N, W fixes corner ownership.
        if (j == 0)
            return e.table->eval_side(0, static_cast<double>(i) / g.n);
        if (i == g.n)
            return e.table->eval_side(1, static_cast<double>(j) / g.n);
        if (j == g.n)
            return e.table->eval_side(2, static_cast<double>(i) / g.n);
        return e.table->eval_side(3, static_cast<double>(j) / g.n);
    }
    if (e.fn)
        return e.fn(g.x(i), g.y(j));
    return 0.0;
}

std::string ValidationReport::summary() const {
    if (issues.empty())
        return "valid";
    std::ostringstream os;
    os << issues.size() << " validation issue(s):";
    for (const auto& is : issues) {
        os << "\n  [" << is.check << "]";
        if (is.comp_a >= 0) {
            os << " component " << (is.comp_a + 1);
            if (is.comp_b >= 0)
                os << "/" << (is.comp_b + 1);
        }
        if (is.i >= 0)
            os << " at node (" << is.i << "," << is.j << ")";
        if (!is.detail.empty())
            os << ": " << is.detail;
    }
    return os.str();
}

namespace {

void for_each_boundary_node(const UniformGrid& g, const std::function<void(int, int)>& fn) {
    for (int i = 0; i <= g.n; ++i) {
        fn(i, 0);
        fn(i, g.n);
    }
    for (int j = 1; j <= g.n - 1; ++j) {
        fn(0, j);
        fn(g.n, j);
    }
}

} // namespace

ValidationReport validate_problem(const ProblemSpec& p, int probe_n) {
    ValidationReport rep;
    const double tol = 1e-12;

    if (p.m < 1) {
        rep.issues.push_back({"component_count", -1, -1, -1, -1, "m must be >= 1"});
        return rep;
    }
    if (static_cast<int>(p.dynamics.size()) != p.m)
        rep.issues.push_back({"dynamics_count", -1, -1, -1, -1,
                              "expected " + std::to_string(p.m) + " dynamics specs"});
    if (p.boundary.components() != p.m)
        rep.issues.push_back({"boundary_count", -1, -1, -1, -1,
                              "expected " + std::to_string(p.m) + " boundary traces"});
    if (!rep.ok())
        return rep;

    const UniformGrid g = make_grid(p.a, std::max(2, probe_n));

    // Dynamics: lambda >= 0 holds by construction; probe f(.,0) >= 0 at nodes.
    for (int l = 0; l < p.m; ++l) {
        for (int j = 0; j <= g.n; ++j) {
            for (int i = 0; i <= g.n; ++i) {
                const double f0 = eval_f(p.dynamics[l], g.point(i, j), 0.0);
                if (!std::isfinite(f0) || f0 < 0.0) {
                    rep.issues.push_back({"f_nonneg", l, -1, i, j,
                                          "f(z,0)=" + std::to_string(f0)});
                    goto next_component;
                }
            }
        }
    next_component:;
    }

    // Boundary traces: nonnegative, pairwise disjoint supports.
    for_each_boundary_node(g, [&](int i, int j) {
        std::vector<double> phi(p.m);
        for (int l = 0; l < p.m; ++l) {
            phi[l] = p.boundary.eval(l, g, i, j);
            if (!std::isfinite(phi[l]) || phi[l] < 0.0)
                rep.issues.push_back({"phi_nonneg", l, -1, i, j,
                                      "phi=" + std::to_string(phi[l])});
        }
        for (int a = 0; a < p.m; ++a)
            for (int b = a + 1; b < p.m; ++b)
                if (std::min(phi[a], phi[b]) > tol)
                    rep.issues.push_back({"boundary_disjoint", a, b, i, j,
                                          "min(phi)=" + std::to_string(std::min(phi[a], phi[b]))});
    });

    // Exact solution spot checks: segregation and trace agreement.
    if (p.exact) {
        if (static_cast<int>(p.exact->u.size()) != p.m) {
            rep.issues.push_back({"exact_count", -1, -1, -1, -1,
                                  "exact solution must have m components"});
            return rep;
        }
        for (int j = 0; j <= g.n; ++j) {
            for (int i = 0; i <= g.n; ++i) {
                std::vector<double> u(p.m);
                for (int l = 0; l < p.m; ++l)
                    u[l] = p.exact->u[l](g.x(i), g.y(j));
                for (int a = 0; a < p.m; ++a)
                    for (int b = a + 1; b < p.m; ++b)
                        if (std::abs(u[a] * u[b]) > tol)
                            rep.issues.push_back({"exact_segregated", a, b, i, j,
                                                  "u_a*u_b=" + std::to_string(u[a] * u[b])});
            }
        }
        for_each_boundary_node(g, [&](int i, int j) {
            for (int l = 0; l < p.m; ++l) {
                const double d = std::abs(p.exact->u[l](g.x(i), g.y(j)) -
                                          p.boundary.eval(l, g, i, j));
                if (d > tol)
                    rep.issues.push_back({"exact_trace", l, -1, i, j,
                                          "|u - phi|=" + std::to_string(d)});
            }
        });
    }

    return rep;
}

} // namespace segreg
