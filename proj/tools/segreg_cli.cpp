// Command-line front end for the segreg shared library. Talks to the
// solver exclusively through the C API in segreg/capi.h.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "segreg/capi.h"

namespace {

constexpr size_t kReportCap = 1 << 16;

int fail_with(segreg_status st) {
    std::fprintf(stderr, "error: %s\n", segreg_last_error());
    return st == SEGREG_ERR_PROPERTY_VIOLATION ? 3 : 1;
}

struct ConfigHandle {
    segreg_config* cfg = nullptr;
    ~ConfigHandle() { segreg_config_free(cfg); }
};

struct ProblemHandle {
    segreg_problem* p = nullptr;
    ~ProblemHandle() { segreg_problem_free(p); }
};

int load_config(const std::string& path,
                const std::vector<std::pair<std::string, std::string>>& overrides,
                ConfigHandle& out) {
    segreg_status st = segreg_config_parse_file(path.c_str(), &out.cfg);
    if (st != SEGREG_OK)
        return fail_with(st);
    for (const auto& [key, value] : overrides) {
        st = segreg_config_set(out.cfg, key.c_str(), value.c_str());
        if (st != SEGREG_OK)
            return fail_with(st);
    }
    return 0;
}

std::string config_str(const segreg_config* cfg, const char* key) {
    char buf[4096] = {0};
    if (segreg_config_get(cfg, key, buf, sizeof(buf)) != SEGREG_OK)
        return "";
    return buf;
}

int run_solve(const std::string& config_path,
              const std::vector<std::pair<std::string, std::string>>& overrides) {
    ConfigHandle cfg;
    if (int rc = load_config(config_path, overrides, cfg))
        return rc;

    ProblemHandle prob;
    segreg_status st = segreg_problem_from_config(cfg.cfg, &prob.p);
    if (st != SEGREG_OK)
        return fail_with(st);

    segreg_solution* sol = nullptr;
    st = segreg_solve(prob.p, cfg.cfg, &sol);
    if (st != SEGREG_OK)
        return fail_with(st);

    std::string report(kReportCap, '\0');
    if (segreg_solution_report(sol, report.data(), report.size()) == SEGREG_OK)
        std::fputs(report.c_str(), stdout);
    std::printf("wall_seconds: %.3f\n", segreg_solution_wall_seconds(sol));

    int rc = 0;
    if (!config_str(cfg.cfg, "out").empty()) {
        st = segreg_solution_write_outputs(sol, cfg.cfg);
        if (st != SEGREG_OK)
            rc = fail_with(st);
    }
    if (rc == 0 && !segreg_solution_converged(sol)) {
        std::fprintf(stderr, "error: iteration hit max_iters before converging\n");
        rc = 2;
    }
    segreg_solution_free(sol);
    return rc;
}

int run_study(const std::string& config_path,
              const std::vector<std::pair<std::string, std::string>>& overrides,
              bool use_reference) {
    ConfigHandle cfg;
    if (int rc = load_config(config_path, overrides, cfg))
        return rc;

    ProblemHandle prob;
    segreg_status st = segreg_problem_from_config(cfg.cfg, &prob.p);
    if (st != SEGREG_OK)
        return fail_with(st);

    segreg_study* study = nullptr;
    st = segreg_run_study(prob.p, cfg.cfg, use_reference ? 1 : 0, &study);
    if (st != SEGREG_OK)
        return fail_with(st);

    std::string report(kReportCap, '\0');
    if (segreg_study_report(study, report.data(), report.size()) == SEGREG_OK)
        std::fputs(report.c_str(), stdout);

    int rc = 0;
    const std::string out = config_str(cfg.cfg, "out");
    if (!out.empty()) {
        const std::string path = out + "/study.csv";
        st = segreg_study_write_csv(study, path.c_str());
        if (st != SEGREG_OK)
            rc = fail_with(st);
        else
            std::printf("wrote %s\n", path.c_str());
    }
    segreg_study_free(study);
    return rc;
}

int run_verify(const std::string& config_path, const std::string& field_dir) {
    ConfigHandle cfg;
    if (int rc = load_config(config_path, {}, cfg))
        return rc;

    ProblemHandle prob;
    segreg_status st = segreg_problem_from_config(cfg.cfg, &prob.p);
    if (st != SEGREG_OK)
        return fail_with(st);

    std::string report(kReportCap, '\0');
    st = segreg_verify_dir(prob.p, cfg.cfg, field_dir.c_str(), report.data(), report.size());
    std::fputs(report.c_str(), stdout);
    if (st == SEGREG_ERR_PROPERTY_VIOLATION)
        return fail_with(st);
    if (st != SEGREG_OK)
        return fail_with(st);
    return 0;
}

int run_bench_list() {
    const int count = segreg_benchmark_count();
    for (int i = 0; i < count; ++i) {
        const char* name = segreg_benchmark_name(i);
        const char* desc = name ? segreg_benchmark_description(name) : nullptr;
        std::printf("%-16s %s\n", name ? name : "?", desc ? desc : "");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"steady states of spatial-segregation reaction-diffusion systems"};
    app.require_subcommand(1);

    std::string config_path, field_dir, n_arg, tol_arg, strategy_arg, out_arg, format_arg,
        ladder_arg;
    bool use_reference = false;

    CLI::App* solve = app.add_subcommand("solve", "solve one mesh and report diagnostics");
    solve->add_option("--config", config_path, "config file")->required();
    solve->add_option("--N", n_arg, "mesh subdivisions per side");
    solve->add_option("--tol", tol_arg, "stopping tolerance");
    solve->add_option("--strategy", strategy_arg, "jacobi|gauss_seidel|red_black");
    solve->add_option("--out", out_arg, "output directory");
    solve->add_option("--format", format_arg, "comma list of csv,json,pgm");

    CLI::App* study = app.add_subcommand("study", "convergence order over a mesh ladder");
    study->add_option("--config", config_path, "config file")->required();
    study->add_option("--ladder", ladder_arg, "comma list of mesh sizes");
    study->add_flag("--reference", use_reference,
                    "compare against a fine Richardson reference instead of the exact solution");

    CLI::App* verify = app.add_subcommand("verify", "re-check stored fields");
    verify->add_option("--config", config_path, "config file")->required();
    verify->add_option("--field-dir", field_dir, "directory with u_<l>.csv files")->required();

    CLI::App* bench = app.add_subcommand("bench", "benchmark catalog");
    CLI::App* bench_list = bench->add_subcommand("list", "list catalog problems");

    CLI11_PARSE(app, argc, argv);

    std::vector<std::pair<std::string, std::string>> overrides;
    if (!n_arg.empty()) overrides.emplace_back("N", n_arg);
    if (!tol_arg.empty()) overrides.emplace_back("tol", tol_arg);
    if (!strategy_arg.empty()) overrides.emplace_back("strategy", strategy_arg);
    if (!out_arg.empty()) overrides.emplace_back("out", out_arg);
    if (!format_arg.empty()) overrides.emplace_back("format", format_arg);
    if (!ladder_arg.empty()) overrides.emplace_back("ladder", ladder_arg);

    if (solve->parsed())
        return run_solve(config_path, overrides);
    if (study->parsed())
        return run_study(config_path, overrides, use_reference);
    if (verify->parsed())
        return run_verify(config_path, field_dir);
    if (bench->parsed()) {
        if (bench_list->parsed())
            return run_bench_list();
        std::fprintf(stderr, "error: bench needs a subcommand (list)\n");
        return 1;
    }
    return 1;
}
