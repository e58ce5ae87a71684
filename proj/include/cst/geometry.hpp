#pragma once

#include <complex>
#include <memory>

namespace cst {

using cplx = std::complex<double>;

enum class Shape { Arc, Straight };

// Smooth crack curve parametrized by arc length s in [0, l].
class CrackCurve {
public:
    virtual ~CrackCurve() = default;

    virtual double length() const = 0;
    virtual Shape shape() const = 0;

    // n-th derivative of t(s); n = 0 is the position.
    virtual cplx deriv(int n, double s) const = 0;

    // Highest n accepted by deriv().
    virtual int max_order() const = 0;

    // n-th derivative of the signed curvature.
    virtual double kappa0_deriv(int n, double s) const = 0;

    double kappa0(double s) const { return kappa0_deriv(0, s); }
    double kappa0_prime(double s) const { return kappa0_deriv(1, s); }

    struct Derivs {
        cplx t, t1, t2, t3, t4;
    };
    Derivs eval(double s) const;
};

using CurvePtr = std::shared_ptr<const CrackCurve>;

// t(s) = e^{is}, s in [0, pi].
CurvePtr make_semicircle();

// Counterclockwise arc of radius 1/curvature from z = +1 to z = -1 through
// the upper half plane. Requires 0 < curvature <= 1.
CurvePtr make_circular_arc(double curvature);

// t(s) = s, s in [0, length].
CurvePtr make_straight(double length);

// x2'' x1' - x1'' x2' for a unit-speed curve.
double curvature_from_derivs(cplx t1, cplx t2);

}  // namespace cst
