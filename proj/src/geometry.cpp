#include "cst/geometry.hpp"

#include <climits>
#include <cmath>
#include <numbers>
#include <string>

#include "cst/errors.hpp"

namespace cst {

CrackCurve::Derivs CrackCurve::eval(double s) const
{
    return {deriv(0, s), deriv(1, s), deriv(2, s), deriv(3, s), deriv(4, s)};
}

double curvature_from_derivs(cplx t1, cplx t2)
{
    return t2.imag() * t1.real() - t2.real() * t1.imag();
}

namespace {

class Arc final : public CrackCurve {
public:
    explicit Arc(double curvature) : k_(curvature), r_(1.0 / curvature)
    {
        if (curvature == 1.0) {
            // exact semicircle t = e^{is}
            half_ = std::numbers::pi / 2;
            center_ = 0.0;
            phi0_ = 0.0;
        } else {
            half_ = std::asin(curvature);
            center_ = cplx(0.0, -r_ * std::cos(half_));
            phi0_ = std::numbers::pi / 2 - half_;
        }
        l_ = 2.0 * r_ * half_;
    }

    double length() const override { return l_; }
    Shape shape() const override { return Shape::Arc; }
    int max_order() const override { return INT_MAX; }

    cplx deriv(int n, double s) const override
    {
        cplx e = std::polar(1.0, phi0_ + s * k_);
        if (n == 0) return center_ + r_ * e;
        // t^(n) = R (i/R)^n e^{i(phi0 + s/R)}
        const double m = r_ * std::pow(k_, n);
        cplx f;
        switch (n % 4) {  // i^n without complex pow round-off
        case 0: f = m; break;
        case 1: f = cplx(0.0, m); break;
        case 2: f = -m; break;
        default: f = cplx(0.0, -m); break;
        }
        return f * e;
    }

    double kappa0_deriv(int n, double) const override { return n == 0 ? k_ : 0.0; }

private:
    double k_, r_, half_ = 0.0, l_ = 0.0, phi0_ = 0.0;
    cplx center_;
};

class Straight final : public CrackCurve {
public:
    explicit Straight(double length) : l_(length) {}

    double length() const override { return l_; }
    Shape shape() const override { return Shape::Straight; }
    int max_order() const override { return INT_MAX; }

    cplx deriv(int n, double s) const override
    {
        if (n == 0) return s;
        return n == 1 ? 1.0 : 0.0;
    }

    double kappa0_deriv(int, double) const override { return 0.0; }

private:
    double l_;
};

}  // namespace

CurvePtr make_semicircle() { return std::make_shared<Arc>(1.0); }

CurvePtr make_circular_arc(double curvature)
{
    if (!(curvature > 0.0) || curvature > 1.0)
        throw DomainError("arc curvature must lie in (0, 1], got " + std::to_string(curvature) +
                          " (use a straight crack for zero curvature)");
    return std::make_shared<Arc>(curvature);
}

CurvePtr make_straight(double length)
{
    if (!(length > 0.0) || !std::isfinite(length))
        throw DomainError("straight crack length must be positive, got " + std::to_string(length));
    return std::make_shared<Straight>(length);
}

}  // namespace cst
