#include <doctest.h>

#include <string>

#include "cst/config.hpp"
#include "cst/errors.hpp"

using namespace cst;

namespace {

const char* kSemicircle =
    "shape = semicircle\n"
    "mu = 60\n"
    "kappa = 2.5   # Kolosov constant\n"
    "gamma1 = 1\n"
    "sigma1_inf = 1; sigma2_inf = 0\n"
    "N = 20\n";

std::string error_of(const std::string& text)
{
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("full semicircle configuration")
{
    const RunConfig c = parse_config(kSemicircle);
    CHECK(c.shape == "semicircle");
    CHECK(c.mu == 60.0);
    CHECK(c.material().kappa == 2.5);
    CHECK(c.gamma1 == 1.0);
    CHECK(c.solver.N == 20);
    CHECK(c.mode == RunMode::Solve);
    CHECK(c.curve()->length() == doctest::Approx(3.141592653589793));
}

TEST_CASE("Poisson ratio in plane strain gives kappa = 3 - 4 nu")
{
    const RunConfig c = parse_config(
        "shape=semicircle\nmu=60\ngamma1=1\nsigma1_inf=1\nsigma2_inf=0\nnu=0.125, mode=plane_strain\n");
    CHECK(c.material().kappa == doctest::Approx(2.5));
    CHECK(c.plane_mode == PlaneMode::Strain);
}

TEST_CASE("empty text lists every missing mandatory key")
{
    const std::string e = error_of("");
    for (const char* k : {"shape", "mu", "sigma1_inf", "sigma2_inf", "gamma1", "nu|kappa"})
        CHECK(e.find(k) != std::string::npos);
}

TEST_CASE("errors name the key and the line")
{
    const std::string base = kSemicircle;
    std::string e = error_of(base + "colour = red\n");
    CHECK(e.find("colour") != std::string::npos);
    CHECK(e.find("line 7") != std::string::npos);

    e = error_of("shape=arc\ncurvature=1.5\nmu=60\nkappa=2.5\ngamma1=1\nsigma1_inf=1\nsigma2_inf=0\n");
    CHECK(e.find("curvature") != std::string::npos);
    CHECK(e.find("line 2") != std::string::npos);

    CHECK(error_of(base + "N = 20\n").find("duplicate") != std::string::npos);
    CHECK(error_of(base + "N = twenty\n").find("N") != std::string::npos);
    CHECK(!error_of(base + "mode = fast\n").empty());
    CHECK(!error_of(base + "nu = 0.3\n").empty());
    CHECK(!error_of(base + "fit_window = 0.1, 0.05\n").empty());
}

TEST_CASE("lists, run mode and overrides")
{
    const std::string base = kSemicircle;
    const RunConfig c = parse_config(base + "mode = sweep-gamma\ngamma_grid = 0.5, 0.25,0.1 ,0.05\n");
    CHECK(c.mode == RunMode::SweepGamma);
    CHECK(c.gamma_grid == std::vector<double>{0.5, 0.25, 0.1, 0.05});
    const RunConfig d = parse_config(base + "mode = sweep-gamma\n", {{"mode", "convergence"}, {"N", "16"}});
    CHECK(d.mode == RunMode::Convergence);
    CHECK(d.solver.N == 16);
}

TEST_CASE("echo re-parses to the same configuration")
{
    const std::string base = kSemicircle;
    const RunConfig c = parse_config(base + "alpha = 0.3\nfit_window = 0.01, 0.1\nquadrature = uniform\n");
    const RunConfig d = parse_config(c.echo());
    CHECK(d.echo() == c.echo());
    CHECK(d.alpha == 0.3);
    CHECK(d.window.hi == 0.1);
    CHECK(d.solver.quadrature == QuadratureKind::Uniform);
}
