#include <doctest.h>

#include <cmath>
#include <random>

#include "cst/errors.hpp"
#include "cst/postprocess.hpp"

using namespace cst;

namespace {

Problem semicircle_problem(double s1, double s2, double gamma1 = 1.0)
{
    return Problem{make_semicircle(), Material::from_kappa(60, 2.5), FarFieldLoad::make(s1, s2, 0.0), gamma1};
}

}  // namespace

TEST_CASE("log fit recovers synthetic coefficients")
{
    std::vector<double> s, v;
    for (int i = 0; i < 20; ++i) {
        s.push_back(0.001 * std::pow(1.3, i));
        v.push_back(-2.5 * std::log(s.back()) + 0.75);
    }
    const LogFit f = fit_log_coefficient(s, v);
    CHECK(f.A == doctest::Approx(-2.5).epsilon(1e-12));
    CHECK(f.c == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(f.rms < 1e-12);

    std::mt19937 rng(1);
    std::normal_distribution<double> n(0, 0.01);
    for (double& x : v) x += n(rng);
    const LogFit g = fit_log_coefficient(s, v);
    CHECK(g.A == doctest::Approx(-2.5).epsilon(0.01));
    CHECK(g.rms == doctest::Approx(0.01).epsilon(0.5));
}

TEST_CASE("log fit input validation")
{
    CHECK_THROWS(fit_log_coefficient({1, 2, 3}, {1, 2, 3}));
    CHECK_THROWS(fit_log_coefficient(std::vector<double>(10, 0.5), std::vector<double>(10, 1.0)));
    std::vector<double> s{-1, 1, 2, 3, 4, 5, 6, 7};
    CHECK_THROWS(fit_log_coefficient(s, s));
}

TEST_CASE("opening profile starts and ends closed")
{
    const Solution sol = solve_problem(semicircle_problem(1.0, 0.0), SolverOptions{});
    const OpeningProfile op = opening_profile(sol, 101);
    REQUIRE(op.samples.size() == 101);
    const double scale = std::max(op.max_opening, -op.min_opening);
    CHECK(scale > 0.0);
    CHECK(std::abs(op.samples.front().jump) == 0.0);
    CHECK(std::abs(op.samples.back().jump) < 1e-8 * scale);
    CHECK(op.max_opening >= op.min_opening);
}

TEST_CASE("opening of the zero density vanishes")
{
    const auto c = make_semicircle();
    const Density zero(c->length(), std::vector<cplx>(5, 0.0));
    const OpeningProfile op = opening_profile(zero, *c, Material::from_kappa(60, 2.5), 33);
    for (const auto& s : op.samples) CHECK(s.delta == 0.0);
}

TEST_CASE("sweep rows are independent of order and thread count")
{
    SweepSettings st;
    st.threads = 3;
    SolverOptions opt;
    opt.N = 12;
    const auto rows = sweep_gamma(semicircle_problem(1.0, 0.0), opt, {1.0, 0.5, 1.0}, st);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].ok);
    CHECK(rows[0].A1 == rows[2].A1);
    CHECK(rows[0].A2 == rows[2].A2);
    CHECK(rows[0].max_traction == rows[2].max_traction);
    st.threads = 1;
    const auto serial = sweep_gamma(semicircle_problem(1.0, 0.0), opt, {1.0, 0.5, 1.0}, st);
    CHECK(serial[1].max_opening == rows[1].max_opening);
}

TEST_CASE("sweep grids are validated")
{
    CHECK_THROWS_AS(sweep_curvature(semicircle_problem(1, 0), SolverOptions{}, {0.5, 1.2}, SweepSettings{}),
                    DomainError);
    CHECK_THROWS_AS(sweep_gamma(semicircle_problem(1, 0), SolverOptions{}, {-1.0}, SweepSettings{}), DomainError);
}

TEST_CASE("fit windows are validated")
{
    const Solution sol = solve_problem(semicircle_problem(1.0, 0.0), SolverOptions{});
    FitWindow w;
    w.hi = 0.3;
    CHECK_THROWS(tip_fit(sol, FieldId::TauN, 0, Side::Plus, w));
    CHECK(tip_fits(sol, FitWindow{}).size() == 24);
}

TEST_CASE("convergence study reports a zero self-difference for the largest N")
{
    const auto res = convergence_study(semicircle_problem(1.0, 0.0), SolverOptions{}, {10, 14}, 101, 1);
    REQUIRE(res.rows.size() == 2);
    CHECK(res.rows[1].sup_diff == 0.0);
    CHECK(res.rows[0].sup_diff > 0.0);
    CHECK(res.grid.size() == 101);
}

TEST_CASE("opening slope is -g' t' / (2 i mu)")
{
    const Solution sol = solve_problem(semicircle_problem(0.4, 1.0), SolverOptions{});
    const OpeningProfile op = opening_profile(sol, 4001);
    const auto& c = *sol.problem().curve;
    const double mu = sol.problem().material.mu;
    double scale = 0.0, worst = 0.0;
    for (std::size_t i = 1; i + 1 < op.samples.size(); ++i) {
        const auto& a = op.samples[i - 1];
        const auto& b = op.samples[i + 1];
        const double s = op.samples[i].s;
        const cplx fd = (b.jump - a.jump) / (b.s - a.s);
        const cplx exact = -sol.density()(s) * c.deriv(1, s) / (2.0 * cplx(0, 1) * mu);
        scale = std::max(scale, std::abs(exact));
        worst = std::max(worst, std::abs(fd - exact));
    }
    CHECK(worst < 1e-4 * scale);
}
