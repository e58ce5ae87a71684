#include <doctest.h>

#include <cmath>
#include <vector>

#include "cst/quadrature.hpp"

using namespace cst;

namespace {

// phi(s) = s^3 with derivatives, laid out for PvInput
struct Cubic {
    static cplx d(int m, double s)
    {
        switch (m) {
        case 0: return s * s * s;
        case 1: return 3 * s * s;
        case 2: return 6 * s;
        default: return 6.0;
        }
    }
};

cplx pv_cubic(const Quadrature& q, double s0, int der)
{
    std::vector<cplx> nodes(q.nodes.size() * 3);
    for (std::size_t k = 0; k < q.nodes.size(); ++k)
        for (int m = 0; m < 3; ++m) nodes[3 * k + m] = Cubic::d(m, q.nodes[k]);
    cplx a[3], z[3], e[3];
    for (int m = 0; m < 3; ++m) {
        a[m] = Cubic::d(m, s0);
        z[m] = Cubic::d(m, 0.0);
        e[m] = Cubic::d(m, q.l);
    }
    return cauchy_pv(q, PvInput{nodes.data(), 3, a, z, e}, s0, der);
}

// PV int_0^l s^3/(s - s0) ds
double exact_cubic(double l, double s0)
{
    return l * l * l / 3 + s0 * l * l / 2 + s0 * s0 * l + s0 * s0 * s0 * std::log((l - s0) / s0);
}

// Uniform-rule estimate of PV int_0^1 s/(s - 0.5) ds at the collocation point nearest 0.5
double uniform_rule_error(int N)
{
    const Quadrature q = Quadrature::uniform(1.0, N);
    const auto sj = collocation_points(1.0, N);
    double s0 = sj[0];
    for (double s : sj)
        if (std::abs(s - 0.5) < std::abs(s0 - 0.5)) s0 = s;
    std::vector<cplx> v(q.nodes.begin(), q.nodes.end());
    const double exact = 1.0 + s0 * std::log((1.0 - s0) / s0);
    return std::abs(cauchy_pv(q, PvInput{v.data(), 1, nullptr, nullptr, nullptr}, s0, 0).real() - exact);
}

}  // namespace

TEST_CASE("Gauss-Legendre is exact through degree 2n-1")
{
    const Quadrature q = Quadrature::gauss(2.0, 10);
    double sum = 0, m19 = 0;
    for (std::size_t k = 0; k < q.nodes.size(); ++k) {
        sum += q.weights[k];
        m19 += q.weights[k] * std::pow(q.nodes[k], 19);
    }
    CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(m19 == doctest::Approx(std::pow(2.0, 20) / 20).epsilon(1e-13));
}

TEST_CASE("uniform rule layout")
{
    const Quadrature q = Quadrature::uniform(3.0, 6);
    REQUIRE(q.nodes.size() == 7);
    CHECK(q.nodes.front() == 0.0);
    CHECK(q.nodes.back() == 3.0);
    CHECK(q.weights[3] == doctest::Approx(3.0 / 7));
    const auto sj = collocation_points(3.0, 6);
    CHECK(sj.front() == doctest::Approx(0.25));
    CHECK(sj.back() == doctest::Approx(2.75));
    CHECK(q.node_hit(1.5) == 3);
    CHECK(q.node_hit(1.25) == -1);
}

TEST_CASE("singularity-subtracted Cauchy integral of a cubic")
{
    const Quadrature q = Quadrature::gauss(2.0, 40);
    for (double s0 : {0.13, 0.77, 1.5}) {
        CHECK(std::abs(pv_cubic(q, s0, 0) - exact_cubic(2.0, s0)) < 1e-12);
        const double h = 1e-4;
        const double d1 = (exact_cubic(2.0, s0 + h) - exact_cubic(2.0, s0 - h)) / (2 * h);
        const double d2 =
            (exact_cubic(2.0, s0 + h) - 2 * exact_cubic(2.0, s0) + exact_cubic(2.0, s0 - h)) / (h * h);
        CHECK(std::abs(pv_cubic(q, s0, 1) - d1) < 1e-7 * (1 + std::abs(d1)));
        CHECK(std::abs(pv_cubic(q, s0, 2) - d2) < 1e-4 * (1 + std::abs(d2)));
    }
}

TEST_CASE("uniform rule reproduces PV int s/(s-1/2) with decreasing error")
{
    const double e8 = uniform_rule_error(8), e16 = uniform_rule_error(16), e30 = uniform_rule_error(30);
    CHECK(e30 <= 0.05);
    CHECK(e16 < e8);
    CHECK(e30 < e16);
}
