#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "cst/cst.h"

namespace fs = std::filesystem;

namespace {

const char* kConfig = "shape=semicircle\nmu=60\nkappa=2.5\ngamma1=1\nsigma1_inf=1\nsigma2_inf=0\nN=12\n";

}  // namespace

TEST_CASE("parse, solve and sample through the C interface")
{
    cst_config* cfg = nullptr;
    REQUIRE(cst_config_parse(kConfig, &cfg) == CST_OK);
    cst_solution* sol = nullptr;
    REQUIRE(cst_solve(cfg, &sol) == CST_OK);
    CHECK(cst_solution_degree(sol) == 12);
    CHECK(cst_solution_condition(sol) > 1.0);

    cst_face_sample p{}, m{};
    REQUIRE(cst_solution_face(sol, 1.0, CST_SIDE_PLUS, &p) == CST_OK);
    REQUIRE(cst_solution_face(sol, 1.0, CST_SIDE_MINUS, &m) == CST_OK);
    CHECK(std::isfinite(p.sigma_n));
    CHECK(p.sigma_n != m.sigma_n);

    std::vector<double> g1(13), g2(13);
    CHECK(cst_solution_coefficients(sol, g1.data(), g2.data(), 13) == CST_OK);
    CHECK(cst_solution_coefficients(sol, g1.data(), g2.data(), 5) == CST_ERR_ARGUMENT);

    CHECK(cst_solution_face(sol, 0.0, CST_SIDE_PLUS, &p) == CST_ERR_SOLVE);
    CHECK(std::string(cst_last_error()).find("inside") != std::string::npos);

    cst_solution_free(sol);
    cst_config_free(cfg);
}

TEST_CASE("configuration errors map to the config status")
{
    cst_config* cfg = nullptr;
    CHECK(cst_config_parse("shape=semicircle\n", &cfg) == CST_ERR_CONFIG);
    CHECK(cfg == nullptr);
    CHECK(std::string(cst_last_error()).find("mu") != std::string::npos);

    REQUIRE(cst_config_parse(kConfig, &cfg) == CST_OK);
    CHECK(cst_config_set(cfg, "curvature", "abc") == CST_ERR_CONFIG);
    CHECK(cst_config_set(cfg, "N", "16") == CST_OK);
    CHECK(std::string(cst_config_echo(cfg)).find("N=16") != std::string::npos);
    CHECK(cst_config_parse(nullptr, &cfg) == CST_ERR_ARGUMENT);
    cst_config_free(cfg);
}

TEST_CASE("run writes artifacts into the output directory")
{
    const fs::path dir = fs::temp_directory_path() / "cst_capi_run";
    fs::remove_all(dir);
    cst_config* cfg = nullptr;
    REQUIRE(cst_config_parse(kConfig, &cfg) == CST_OK);
    CHECK(cst_run(cfg, dir.string().c_str(), CST_RUN_QUIET) == CST_OK);
    CHECK(fs::exists(dir / "face_fields.csv"));
    CHECK(fs::exists(dir / "config_effective.txt"));
    CHECK(!fs::exists(dir / "error.log"));
    cst_config_free(cfg);
    fs::remove_all(dir);
}
