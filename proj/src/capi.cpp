#include "segreg/capi.h"

#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "segreg/benchmarks.hpp"
#include "segreg/io.hpp"

using namespace segreg;

namespace {

thread_local std::string t_last_error;

segreg_status status_from(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidArgument: return SEGREG_ERR_INVALID_ARGUMENT;
    case ErrorKind::Validation: return SEGREG_ERR_VALIDATION;
    case ErrorKind::UnknownBenchmark: return SEGREG_ERR_UNKNOWN_BENCHMARK;
    case ErrorKind::Unavailable: return SEGREG_ERR_UNAVAILABLE;
    case ErrorKind::Numerical: return SEGREG_ERR_NUMERICAL;
    case ErrorKind::Io: return SEGREG_ERR_IO;
    }
    return SEGREG_ERR_INVALID_ARGUMENT;
}

// Runs fn, translating exceptions into status codes + last-error text.
template <typename Fn>
segreg_status guarded(Fn&& fn) {
    try {
        t_last_error.clear();
        return fn();
    } catch (const Error& e) {
        t_last_error = e.what();
        return status_from(e.kind());
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return SEGREG_ERR_INVALID_ARGUMENT;
    } catch (...) {
        t_last_error = "unknown error";
        return SEGREG_ERR_INVALID_ARGUMENT;
    }
}

segreg_status copy_out(const std::string& s, char* buf, size_t cap) {
    if (!buf || cap == 0) {
        t_last_error = "output buffer required";
        return SEGREG_ERR_INVALID_ARGUMENT;
    }
    const size_t n = std::min(cap - 1, s.size());
    std::memcpy(buf, s.data(), n);
    buf[n] = '\0';
    return SEGREG_OK;
}

} // namespace

struct segreg_config {
    RunConfig rc;
};

struct segreg_problem {
    ProblemSpec spec;
};

struct segreg_solution {
    MultiField state;
    ProblemSpec problem;
    RunConfig rc;
    RunDiagnostics diag;
};

struct segreg_study {
    ConvergenceReport rep;
};

extern "C" {

const char* segreg_version(void) { return "0.1.0"; }

const char* segreg_last_error(void) { return t_last_error.c_str(); }

int segreg_benchmark_count(void) {
    return static_cast<int>(benchmark_names().size());
}

const char* segreg_benchmark_name(int index) {
    static thread_local std::string name;
    const auto names = benchmark_names();
    if (index < 0 || index >= static_cast<int>(names.size()))
        return nullptr;
    name = names[index];
    return name.c_str();
}

const char* segreg_benchmark_description(const char* name) {
    static thread_local std::string desc;
    if (!name)
        return nullptr;
    desc = benchmark_description(name);
    return desc.empty() ? nullptr : desc.c_str();
}

segreg_status segreg_config_parse_file(const char* path, segreg_config** out) {
    return guarded([&]() -> segreg_status {
        if (!path || !out)
            fail(ErrorKind::InvalidArgument, "path and out required");
        auto cfg = std::make_unique<segreg_config>();
        cfg->rc = parse_config_file(path);
        *out = cfg.release();
        return SEGREG_OK;
    });
}

segreg_status segreg_config_parse_string(const char* text, segreg_config** out) {
    return guarded([&]() -> segreg_status {
        if (!text || !out)
            fail(ErrorKind::InvalidArgument, "text and out required");
        auto cfg = std::make_unique<segreg_config>();
        cfg->rc = parse_config_text(text);
        *out = cfg.release();
        return SEGREG_OK;
    });
}

segreg_status segreg_config_set(segreg_config* cfg, const char* key, const char* value) {
    return guarded([&]() -> segreg_status {
        if (!cfg || !key || !value)
            fail(ErrorKind::InvalidArgument, "config, key and value required");
        // Re-parse a one-line document and merge the single key it sets.
        const std::string k(key);
        RunConfig one = parse_config_text(
            std::string("m = 1\n") + k + " = " + value + "\n"); // m satisfies the required-key check
        RunConfig& rc = cfg->rc;
        if (k == "benchmark") rc.benchmark = one.benchmark;
        else if (k == "m") rc.m = one.m;
        else if (k == "a") { rc.a = one.a; rc.a_set = true; }
        else if (k == "N") { rc.n = one.n; rc.ladder.clear(); }
        else if (k == "ladder") { rc.ladder = one.ladder; rc.n = 0; }
        else if (k == "strategy") rc.strategy = one.strategy;
        else if (k == "tol") rc.tol = one.tol;
        else if (k == "max_iters") rc.max_iters = one.max_iters;
        else if (k == "out") rc.out = one.out;
        else if (k == "format") rc.formats = one.formats;
        else
            fail(ErrorKind::InvalidArgument, "key '" + k + "' cannot be overridden");
        return SEGREG_OK;
    });
}

segreg_status segreg_config_get(const segreg_config* cfg, const char* key, char* buf,
                                size_t cap) {
    return guarded([&]() -> segreg_status {
        if (!cfg || !key)
            fail(ErrorKind::InvalidArgument, "config and key required");
        const std::string k(key);
        std::string v;
        if (k == "benchmark") v = cfg->rc.benchmark;
        else if (k == "out") v = cfg->rc.out;
        else if (k == "strategy") v = cfg->rc.strategy;
        else if (k == "format") {
            for (const auto& f : cfg->rc.formats)
                v += (v.empty() ? "" : ",") + f;
        } else
            fail(ErrorKind::InvalidArgument, "key '" + k + "' is not string-valued");
        return copy_out(v, buf, cap);
    });
}

void segreg_config_free(segreg_config* cfg) { delete cfg; }

segreg_status segreg_problem_from_benchmark(const char* name, int m, segreg_problem** out) {
    return guarded([&]() -> segreg_status {
        if (!name || !out)
            fail(ErrorKind::InvalidArgument, "name and out required");
        auto p = std::make_unique<segreg_problem>();
        p->spec = get_benchmark(name, m > 0 ? m : 0);
        *out = p.release();
        return SEGREG_OK;
    });
}

segreg_status segreg_problem_from_config(const segreg_config* cfg, segreg_problem** out) {
    return guarded([&]() -> segreg_status {
        if (!cfg || !out)
            fail(ErrorKind::InvalidArgument, "config and out required");
        auto p = std::make_unique<segreg_problem>();
        p->spec = problem_from_config(cfg->rc);
        *out = p.release();
        return SEGREG_OK;
    });
}

int segreg_problem_components(const segreg_problem* p) { return p ? p->spec.m : 0; }

int segreg_problem_has_exact(const segreg_problem* p) {
    return p && p->spec.has_exact() ? 1 : 0;
}

void segreg_problem_free(segreg_problem* p) { delete p; }

segreg_status segreg_solve(const segreg_problem* p, const segreg_config* cfg,
                           segreg_solution** out) {
    return guarded([&]() -> segreg_status {
        if (!p || !cfg || !out)
            fail(ErrorKind::InvalidArgument, "problem, config and out required");
        if (cfg->rc.n == 0)
            fail(ErrorKind::Validation, "solve needs a single mesh size (key N)");
        const UniformGrid g = make_grid(p->spec.a, cfg->rc.n);
        auto sol = std::make_unique<segreg_solution>();
        sol->problem = p->spec;
        sol->rc = cfg->rc;
        auto [state, rep] = solve(p->spec, g, solver_config_from(cfg->rc));
        sol->diag = diagnose(state, p->spec, rep, cfg->rc.tol);
        sol->state = std::move(state);
        *out = sol.release();
        return SEGREG_OK;
    });
}

int segreg_solution_converged(const segreg_solution* s) {
    return s && s->diag.solve.reason == StopReason::Converged ? 1 : 0;
}

long segreg_solution_iterations(const segreg_solution* s) {
    return s ? s->diag.solve.iterations : 0;
}

double segreg_solution_final_change(const segreg_solution* s) {
    return s ? s->diag.solve.final_change : 0.0;
}

double segreg_solution_residual(const segreg_solution* s) {
    return s ? s->diag.residual : 0.0;
}

double segreg_solution_segregation(const segreg_solution* s) {
    return s ? s->diag.props.seg_metric : 0.0;
}

double segreg_solution_energy(const segreg_solution* s) {
    return s ? s->diag.energy : 0.0;
}

double segreg_solution_wall_seconds(const segreg_solution* s) {
    return s ? s->diag.solve.wall_seconds : 0.0;
}

int segreg_solution_grid_n(const segreg_solution* s) { return s ? s->state.grid.n : 0; }

segreg_status segreg_solution_values(const segreg_solution* s, int component, double* buf,
                                     size_t len) {
    return guarded([&]() -> segreg_status {
        if (!s || !buf)
            fail(ErrorKind::InvalidArgument, "solution and buffer required");
        if (component < 1 || component > s->state.m())
            fail(ErrorKind::InvalidArgument, "bad component index " + std::to_string(component));
        const auto& v = s->state.comp[component - 1].values;
        if (len < v.size())
            fail(ErrorKind::InvalidArgument, "buffer too small: need " +
                                                 std::to_string(v.size()) + " entries");
        std::memcpy(buf, v.data(), v.size() * sizeof(double));
        return SEGREG_OK;
    });
}

segreg_status segreg_solution_linf_error(const segreg_solution* s, double* buf, size_t len) {
    return guarded([&]() -> segreg_status {
        if (!s || !buf)
            fail(ErrorKind::InvalidArgument, "solution and buffer required");
        if (s->diag.err.empty())
            fail(ErrorKind::Unavailable, "reference unavailable: problem has no exact solution");
        if (len < s->diag.err.size())
            fail(ErrorKind::InvalidArgument, "buffer too small");
        std::memcpy(buf, s->diag.err.data(), s->diag.err.size() * sizeof(double));
        return SEGREG_OK;
    });
}

segreg_status segreg_solution_report(const segreg_solution* s, char* buf, size_t cap) {
    return guarded([&]() -> segreg_status {
        if (!s)
            fail(ErrorKind::InvalidArgument, "solution required");
        return copy_out(render_report(s->problem, s->state.grid, s->rc, s->diag), buf, cap);
    });
}

segreg_status segreg_solution_write_outputs(const segreg_solution* s,
                                            const segreg_config* cfg) {
    return guarded([&]() -> segreg_status {
        if (!s || !cfg)
            fail(ErrorKind::InvalidArgument, "solution and config required");
        write_outputs(s->state, s->problem, cfg->rc, s->diag);
        return SEGREG_OK;
    });
}

void segreg_solution_free(segreg_solution* s) { delete s; }

segreg_status segreg_run_study(const segreg_problem* p, const segreg_config* cfg,
                               int use_reference, segreg_study** out) {
    return guarded([&]() -> segreg_status {
        if (!p || !cfg || !out)
            fail(ErrorKind::InvalidArgument, "problem, config and out required");
        if (cfg->rc.ladder.size() < 3)
            fail(ErrorKind::Validation, "ladder too short: need at least 3 mesh sizes");
        auto st = std::make_unique<segreg_study>();
        st->rep = run_study(p->spec, cfg->rc.ladder, solver_config_from(cfg->rc),
                            use_reference != 0);
        *out = st.release();
        return SEGREG_OK;
    });
}

int segreg_study_point_count(const segreg_study* s) {
    return s ? static_cast<int>(s->rep.points.size()) : 0;
}

segreg_status segreg_study_point(const segreg_study* s, int idx, int* n, double* h,
                                 double* bound, int* bound_ok, long* iters) {
    return guarded([&]() -> segreg_status {
        if (!s || idx < 0 || idx >= static_cast<int>(s->rep.points.size()))
            fail(ErrorKind::InvalidArgument, "bad study point index");
        const auto& pt = s->rep.points[idx];
        if (n) *n = pt.n;
        if (h) *h = pt.h;
        if (bound) *bound = pt.bound;
        if (bound_ok) *bound_ok = pt.bound_ok ? 1 : 0;
        if (iters) *iters = pt.iterations;
        return SEGREG_OK;
    });
}

segreg_status segreg_study_errors(const segreg_study* s, int idx, double* buf, size_t len) {
    return guarded([&]() -> segreg_status {
        if (!s || idx < 0 || idx >= static_cast<int>(s->rep.points.size()))
            fail(ErrorKind::InvalidArgument, "bad study point index");
        const auto& err = s->rep.points[idx].err;
        if (!buf || len < err.size())
            fail(ErrorKind::InvalidArgument, "buffer too small");
        std::memcpy(buf, err.data(), err.size() * sizeof(double));
        return SEGREG_OK;
    });
}

int segreg_study_fitted_order(const segreg_study* s, double* out) {
    if (!s || !s->rep.fitted_order)
        return 0;
    if (out)
        *out = *s->rep.fitted_order;
    return 1;
}

int segreg_study_reference_n(const segreg_study* s) { return s ? s->rep.n_ref : 0; }

segreg_status segreg_study_report(const segreg_study* s, char* buf, size_t cap) {
    return guarded([&]() -> segreg_status {
        if (!s)
            fail(ErrorKind::InvalidArgument, "study required");
        return copy_out(render_study(s->rep), buf, cap);
    });
}

segreg_status segreg_study_write_csv(const segreg_study* s, const char* path) {
    return guarded([&]() -> segreg_status {
        if (!s || !path)
            fail(ErrorKind::InvalidArgument, "study and path required");
        write_study_csv(path, s->rep);
        return SEGREG_OK;
    });
}

void segreg_study_free(segreg_study* s) { delete s; }

segreg_status segreg_verify_dir(const segreg_problem* p, const segreg_config* cfg,
                                const char* dir, char* buf, size_t cap) {
    return guarded([&]() -> segreg_status {
        if (!p || !cfg || !dir)
            fail(ErrorKind::InvalidArgument, "problem, config and dir required");
        const VerifyResult vr = verify_stored_fields(p->spec, dir, cfg->rc.tol);
        if (buf && cap > 0)
            copy_out(vr.text, buf, cap);
        if (!vr.ok) {
            t_last_error = "stored fields violate the scheme properties";
            return SEGREG_ERR_PROPERTY_VIOLATION;
        }
        return SEGREG_OK;
    });
}

} // extern "C"
