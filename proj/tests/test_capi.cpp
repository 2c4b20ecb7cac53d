// Exercises the shared-library surface exactly as an external consumer
// would: through segreg/capi.h only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "segreg/capi.h"

namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const char* tag) {
    const fs::path dir = fs::temp_directory_path() / (std::string("segreg_capi_") + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("version and catalog enumeration") {
    CHECK(std::strlen(segreg_version()) > 0);
    REQUIRE(segreg_benchmark_count() == 6);
    for (int i = 0; i < segreg_benchmark_count(); ++i) {
        const char* name = segreg_benchmark_name(i);
        REQUIRE(name != nullptr);
        CHECK(segreg_benchmark_description(name) != nullptr);
    }
    CHECK(segreg_benchmark_name(99) == nullptr);
    CHECK(segreg_benchmark_description("nope") == nullptr);
}

TEST_CASE("error paths set status codes and messages") {
    segreg_problem* p = nullptr;
    CHECK(segreg_problem_from_benchmark("nope", 0, &p) == SEGREG_ERR_UNKNOWN_BENCHMARK);
    CHECK(std::string(segreg_last_error()).find("no such benchmark") != std::string::npos);

    segreg_config* cfg = nullptr;
    CHECK(segreg_config_parse_string("benchmark = all_zero\nN = 4\nladder = 4,8\n", &cfg) ==
          SEGREG_ERR_VALIDATION);
    CHECK(segreg_config_parse_file("/does/not/exist.cfg", &cfg) == SEGREG_ERR_IO);
}

TEST_CASE("solve, inspect and write through the C API") {
    segreg_config* cfg = nullptr;
    REQUIRE(segreg_config_parse_string("benchmark = paraboloid\nN = 16\nformat = csv,json\n",
                                       &cfg) == SEGREG_OK);
    REQUIRE(segreg_config_set(cfg, "N", "32") == SEGREG_OK);

    segreg_problem* prob = nullptr;
    REQUIRE(segreg_problem_from_config(cfg, &prob) == SEGREG_OK);
    CHECK(segreg_problem_components(prob) == 2);
    CHECK(segreg_problem_has_exact(prob) == 1);

    segreg_solution* sol = nullptr;
    REQUIRE(segreg_solve(prob, cfg, &sol) == SEGREG_OK);
    CHECK(segreg_solution_converged(sol) == 1);
    CHECK(segreg_solution_grid_n(sol) == 32);
    CHECK(segreg_solution_iterations(sol) > 0);
    CHECK(segreg_solution_residual(sol) <= 4e-10);
    CHECK(segreg_solution_segregation(sol) <= 1e-9);
    CHECK(segreg_solution_wall_seconds(sol) >= 0.0);
    CHECK(std::abs(segreg_solution_energy(sol) - 8.0) < 0.5);

    double err[2] = {};
    REQUIRE(segreg_solution_linf_error(sol, err, 2) == SEGREG_OK);
    CHECK(err[0] <= 1e-9);
    CHECK(err[1] <= 1e-9);

    std::vector<double> values(33 * 33);
    REQUIRE(segreg_solution_values(sol, 1, values.data(), values.size()) == SEGREG_OK);
    // center node (16,16) carries 1 + 0.5^2 + 0.5^2
    CHECK(std::abs(values[16 * 33 + 16] - 1.5) <= 1e-9);
    CHECK(segreg_solution_values(sol, 3, values.data(), values.size()) ==
          SEGREG_ERR_INVALID_ARGUMENT);
    CHECK(segreg_solution_values(sol, 1, values.data(), 10) == SEGREG_ERR_INVALID_ARGUMENT);

    char report[8192];
    REQUIRE(segreg_solution_report(sol, report, sizeof(report)) == SEGREG_OK);
    CHECK(std::string(report).find("stop: converged") != std::string::npos);

    const fs::path dir = temp_dir("solve");
    REQUIRE(segreg_config_set(cfg, "out", dir.string().c_str()) == SEGREG_OK);
    REQUIRE(segreg_solution_write_outputs(sol, cfg) == SEGREG_OK);
    CHECK(fs::exists(dir / "u_1.csv"));
    CHECK(fs::exists(dir / "report.json"));

    // verify the stored fields through the same surface
    char verify_report[8192];
    CHECK(segreg_verify_dir(prob, cfg, dir.string().c_str(), verify_report,
                            sizeof(verify_report)) == SEGREG_OK);
    CHECK(std::string(verify_report).find("properties: ok") != std::string::npos);

    segreg_solution_free(sol);
    segreg_problem_free(prob);
    segreg_config_free(cfg);
}

TEST_CASE("study through the C API") {
    segreg_config* cfg = nullptr;
    REQUIRE(segreg_config_parse_string("benchmark = exp_smooth\nladder = 8,16,32\n", &cfg) ==
            SEGREG_OK);
    segreg_problem* prob = nullptr;
    REQUIRE(segreg_problem_from_config(cfg, &prob) == SEGREG_OK);

    segreg_study* study = nullptr;
    REQUIRE(segreg_run_study(prob, cfg, 0, &study) == SEGREG_OK);
    REQUIRE(segreg_study_point_count(study) == 3);

    int n = 0;
    double h = 0.0, bound = 0.0;
    int bound_ok = 0;
    long iters = 0;
    REQUIRE(segreg_study_point(study, 2, &n, &h, &bound, &bound_ok, &iters) == SEGREG_OK);
    CHECK(n == 32);
    CHECK(h == doctest::Approx(1.0 / 32).epsilon(1e-15));
    CHECK(bound_ok == 1);
    CHECK(iters > 0);

    double err[2] = {};
    REQUIRE(segreg_study_errors(study, 2, err, 2) == SEGREG_OK);
    CHECK(err[0] > 0.0);
    CHECK(err[0] <= bound + 1e-9);

    double order = 0.0;
    REQUIRE(segreg_study_fitted_order(study, &order) == 1);
    CHECK(order > 1.9);
    CHECK(order < 2.1);
    CHECK(segreg_study_reference_n(study) == 0);

    const fs::path dir = temp_dir("study");
    REQUIRE(segreg_study_write_csv(study, (dir / "study.csv").string().c_str()) == SEGREG_OK);
    CHECK(fs::exists(dir / "study.csv"));

    segreg_study_free(study);
    segreg_problem_free(prob);
    segreg_config_free(cfg);

    // degenerate order: every error at the tolerance floor
    REQUIRE(segreg_config_parse_string("benchmark = all_zero\nm = 2\nladder = 4,8,16\n",
                                       &cfg) == SEGREG_OK);
    REQUIRE(segreg_problem_from_config(cfg, &prob) == SEGREG_OK);
    REQUIRE(segreg_run_study(prob, cfg, 0, &study) == SEGREG_OK);
    CHECK(segreg_study_fitted_order(study, &order) == 0);
    segreg_study_free(study);
    segreg_problem_free(prob);
    segreg_config_free(cfg);
}
