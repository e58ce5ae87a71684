#include <doctest.h>

#include <cmath>
#include <random>

#include "cst/errors.hpp"
#include "cst/solver.hpp"

using namespace cst;

namespace {

Problem semicircle_problem(double s1, double s2, double gamma1 = 1.0)
{
    return Problem{make_semicircle(), Material::from_kappa(60, 2.5), FarFieldLoad::make(s1, s2, 0.0), gamma1};
}

Density random_density(double l, int n, std::mt19937& rng)
{
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<double> a(n + 1), b(n + 1);
    for (int k = 0; k <= n; ++k) {
        a[k] = u(rng) / (k + 1);
        b[k] = u(rng) / (k + 1);
    }
    return Density::from_taylor(l, a, b);
}

}  // namespace

TEST_CASE("Taylor and Chebyshev representations round-trip")
{
    std::mt19937 rng(3);
    const Density d = random_density(2.5, 9, rng);
    std::vector<double> a, b;
    d.taylor(a, b);
    const Density e = Density::from_taylor(2.5, a, b);
    for (double s = 0; s <= 2.5; s += 0.25) {
        CHECK(std::abs(d(s) - e(s)) < 1e-13);
        cplx sum = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) sum += cplx(a[k], b[k]) * std::pow(s - 1.25, (double)k);
        CHECK(std::abs(sum - d(s)) < 1e-12);
    }
}

TEST_CASE("density derivatives match finite differences")
{
    std::mt19937 rng(5);
    const Density d = random_density(3.0, 8, rng);
    const double h = 1e-5;
    for (double s : {0.4, 1.5, 2.7}) {
        cplx a[5], p[5], m[5];
        d.derivs(s, 4, a);
        d.derivs(s + h, 4, p);
        d.derivs(s - h, 4, m);
        for (int k = 1; k <= 4; ++k) CHECK(std::abs((p[k - 1] - m[k - 1]) / (2 * h) - a[k]) < 1e-6 * (1 + std::abs(a[k])));
    }
}

TEST_CASE("closure satisfies both surface-tension identities")
{
    std::mt19937 rng(11);
    for (double c : {1.0, 0.4}) {
        const auto curve = make_circular_arc(c);
        const double mu = 60, gamma1 = 1.3, l = curve->length();
        const Closure cl{curve.get(), gamma1 / (4 * mu)};
        const Density d = random_density(l, 10, rng);
        const cplx I(0, 1);
        for (double s : {0.1 * l, 0.5 * l, 0.83 * l}) {
            cplx g[5], q[3];
            d.derivs(s, 4, g);
            closure_q(cl, s, g, 2, q);
            const double k0 = curve->kappa0(s);
            // bracket [k0 (g' - conj g') + i (g'' + conj g'')] and its derivatives
            auto br = [&](int m) { return k0 * (g[m] - std::conj(g[m])) + I * (g[m + 1] + std::conj(g[m + 1])); };
            for (int m = 0; m <= 1; ++m) {
                CHECK(std::abs((q[m] + std::conj(q[m])) + I * gamma1 / (4 * mu) * k0 * br(m)) < 1e-12);
                CHECK(std::abs((q[m] - std::conj(q[m])) - gamma1 / (4 * mu) * br(m + 1)) < 1e-12);
            }
        }
    }
}

TEST_CASE("closure from Taylor coefficients equals the closure from the density")
{
    std::mt19937 rng(13);
    const auto curve = make_semicircle();
    const Material mat = Material::from_kappa(60, 2.5);
    const Closure cl{curve.get(), 1.0 / (4 * 60.0)};
    for (int r = 0; r < 10; ++r) {
        const Density d = random_density(curve->length(), 12, rng);
        DensityCoefficients co;
        d.taylor(co.g1, co.g2);
        for (double s : {0.3, 1.6, 2.9}) {
            const auto [re2, im2] = q_from_coefficients(*curve, mat, 1.0, co, s);
            const cplx q = sample_point(d, cl, s).q[0];
            CHECK(std::abs(re2 - 2 * q.real()) < 1e-10);
            CHECK(std::abs(im2 + 2 * q.imag()) < 1e-10);
        }
    }
}

TEST_CASE("dense solve: identity, singular matrix")
{
    LinearSystem sys;
    sys.A = Eigen::MatrixXd::Identity(6, 6);
    sys.b = Eigen::VectorXd::LinSpaced(6, 1, 6);
    CHECK((solve(sys) - sys.b).norm() == 0.0);
    CHECK(sys.condition_estimate == doctest::Approx(1.0));
    LinearSystem bad = sys;
    bad.A(3, 3) = 0.0;
    CHECK_THROWS_AS(solve(bad), SolveError);
}

TEST_CASE("zero load gives the null solution")
{
    for (double c : {1.0, 0.5}) {
        const Problem pb{make_circular_arc(c), Material::from_kappa(60, 2.5), FarFieldLoad::make(0, 0, 0), 1.0};
        const Solution sol = solve_problem(pb, SolverOptions{});
        const auto co = sol.coefficients();
        for (std::size_t k = 0; k < co.g1.size(); ++k) {
            CHECK(std::abs(co.g1[k]) <= 1e-10);
            CHECK(std::abs(co.g2[k]) <= 1e-10);
        }
    }
}

TEST_CASE("solution is linear in the load")
{
    const Solution a = solve_problem(semicircle_problem(1.0, 0.0), SolverOptions{});
    const Solution b = solve_problem(semicircle_problem(0.0, 1.0), SolverOptions{});
    const Solution ab = solve_problem(semicircle_problem(2.0, -1.5), SolverOptions{});
    const double scale = max_abs_gprime(a.density()) + max_abs_gprime(b.density());
    for (double s = 0; s <= a.length(); s += 0.2)
        CHECK(std::abs(ab.density()(s) - (2.0 * a.density()(s) - 1.5 * b.density()(s))) < 1e-9 * scale);
}

TEST_CASE("single-valuedness and imposed tip conditions hold after a solve")
{
    const Solution sol = solve_problem(semicircle_problem(1.0, 0.0), SolverOptions{});
    CHECK(single_valuedness_residual(sol) <= 1e-8);
    for (double r : end_condition_residuals(sol)) CHECK(std::abs(r) < 1e-10);
}

TEST_CASE("collocated tip conditions shrink with N")
{
    SolverOptions opt;
    opt.end_conditions = EndConditions::Builtin;
    double prev = INFINITY;
    for (int N : {12, 20, 30}) {
        opt.N = N;
        const Solution sol = solve_problem(semicircle_problem(1.0, 0.0), opt);
        double worst = 0.0;
        for (double r : end_condition_residuals(sol)) worst = std::max(worst, std::abs(r));
        CHECK(worst < prev);
        prev = worst;
    }
}

TEST_CASE("field evaluation rejects tips and quadrature nodes")
{
    SolverOptions opt;
    opt.quadrature = QuadratureKind::Uniform;
    const Solution sol = solve_problem(semicircle_problem(1.0, 0.0), opt);
    CHECK_THROWS_AS(sol.face(0.0, Side::Plus), EvaluationError);
    CHECK_THROWS_AS(sol.face(sol.length() / 2, Side::Plus), EvaluationError);
    CHECK_NOTHROW(sol.face(sol.length() * 0.41, Side::Minus));
}

TEST_CASE("invalid solver options")
{
    SolverOptions opt;
    opt.N = 2;
    CHECK_THROWS_AS(assemble(semicircle_problem(1, 0), opt), AssemblyError);
}

TEST_CASE("repeated solves are bitwise identical")
{
    SolverOptions opt;
    opt.threads = 3;
    const Solution a = solve_problem(semicircle_problem(1.0, 0.3), opt);
    opt.threads = 1;
    const Solution b = solve_problem(semicircle_problem(1.0, 0.3), opt);
    CHECK(a.density().cheb() == b.density().cheb());
}
