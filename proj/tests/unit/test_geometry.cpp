#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cst/errors.hpp"
#include "cst/geometry.hpp"

using namespace cst;
using std::numbers::pi;

namespace {

// central difference of deriv(n-1) against deriv(n)
double fd_mismatch(const CrackCurve& c, int n, double s)
{
    const double h = 1e-5;
    const cplx fd = (c.deriv(n - 1, s + h) - c.deriv(n - 1, s - h)) / (2 * h);
    return std::abs(fd - c.deriv(n, s));
}

}  // namespace

TEST_CASE("semicircle endpoints, length and unit speed")
{
    const auto c = make_semicircle();
    CHECK(c->length() == doctest::Approx(pi));
    CHECK(std::abs(c->deriv(0, 0.0) - cplx(1, 0)) < 1e-15);
    CHECK(std::abs(c->deriv(0, pi) - cplx(-1, 0)) < 1e-15);
    for (double s = 0; s <= pi; s += 0.1) {
        CHECK(std::abs(c->deriv(1, s)) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(c->kappa0(s) == doctest::Approx(1.0));
        CHECK(c->kappa0_prime(s) == 0.0);
        CHECK(c->deriv(0, s).imag() >= -1e-15);
    }
}

TEST_CASE("arc of curvature 1/2 passes through both endpoints")
{
    const auto c = make_circular_arc(0.5);
    CHECK(c->length() == doctest::Approx(2 * pi / 3));
    CHECK(std::abs(c->deriv(0, 0.0) - cplx(1, 0)) < 1e-14);
    CHECK(std::abs(c->deriv(0, c->length()) - cplx(-1, 0)) < 1e-14);
    CHECK(c->deriv(0, c->length() / 2).imag() > 0.0);
    for (double s = 0; s <= c->length(); s += 0.05) {
        CHECK(std::abs(c->deriv(1, s)) == doctest::Approx(1.0).epsilon(1e-14));
        const auto d = c->eval(s);
        CHECK(curvature_from_derivs(d.t1, d.t2) == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("curvature 1 arc coincides with the semicircle")
{
    const auto a = make_circular_arc(1.0);
    const auto b = make_semicircle();
    for (double s = 0; s <= pi; s += 0.3)
        for (int n = 0; n <= 4; ++n) CHECK(std::abs(a->deriv(n, s) - b->deriv(n, s)) < 1e-14);
}

TEST_CASE("higher derivatives agree with finite differences")
{
    for (const auto& c : {make_semicircle(), make_circular_arc(0.3), make_straight(2.0)}) {
        for (int n = 1; n <= 6; ++n)
            for (double f : {0.1, 0.45, 0.9}) CHECK(fd_mismatch(*c, n, f * c->length()) < 1e-8);
    }
}

TEST_CASE("straight crack is the segment [0, L] with zero curvature")
{
    const auto c = make_straight(2.0);
    CHECK(c->shape() == Shape::Straight);
    CHECK(c->deriv(0, 0.7) == cplx(0.7, 0));
    CHECK(c->deriv(1, 0.7) == cplx(1, 0));
    CHECK(c->deriv(2, 0.7) == cplx(0, 0));
    CHECK(c->kappa0(0.3) == 0.0);
}

TEST_CASE("out-of-range geometry is rejected")
{
    CHECK_THROWS_AS(make_circular_arc(0.0), DomainError);
    CHECK_THROWS_AS(make_circular_arc(1.5), DomainError);
    CHECK_THROWS_AS(make_circular_arc(-0.2), DomainError);
    CHECK_THROWS_AS(make_straight(0.0), DomainError);
}
