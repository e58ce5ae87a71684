#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <utility>
#include <vector>

#include "cst/fields.hpp"
#include "cst/geometry.hpp"
#include "cst/kernels.hpp"
#include "cst/quadrature.hpp"

namespace cst {

enum class EndConditions {
    Imposed,  // tip conditions replace the collocation rows nearest the tips
    Builtin   // collocation only
};

struct SolverOptions {
    int N = 20;
    QuadratureKind quadrature = QuadratureKind::Gauss;
    int quad_nodes = 200;
    EndConditions end_conditions = EndConditions::Imposed;
    bool row_scaling = true;
    double kernel_diag_eps = 2e-2;  // fraction of the crack length; series path below it
    int threads = 0;                // 0 = hardware concurrency
};

struct Problem {
    CurvePtr curve;
    Material material;
    FarFieldLoad load;
    double gamma1 = 0.0;
};

// g'(s) = sum_k c_k T_k(2s/l - 1)
class Density {
public:
    Density() = default;
    Density(double l, std::vector<cplx> cheb);

    // From coefficients of sum (g1_k + i g2_k)(s - l/2)^k.
    static Density from_taylor(double l, const std::vector<double>& g1, const std::vector<double>& g2);
    void taylor(std::vector<double>& g1, std::vector<double>& g2) const;

    cplx operator()(double s) const;
    // out[m] = m-th derivative of g' at s, m = 0..maxd
    void derivs(double s, int maxd, cplx* out) const;

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    double length() const { return l_; }
    const std::vector<cplx>& cheb() const { return c_; }

private:
    double l_ = 1.0;
    std::vector<cplx> c_;
};

// Surface-tension closure expressing q through g'.
struct Closure {
    const CrackCurve* curve;
    double c;  // gamma1 / (4 mu)
};

// q^(m)(s), m = 0..nd, from g'^(m)(s), m = 0..nd+2.
void closure_q(const Closure& cl, double s, const cplx* g, int nd, cplx* q);

PointSamples sample_point(const Density& d, const Closure& cl, double s);

struct DensityCoefficients {
    std::vector<double> g1, g2;
};

// (q + conj q, i(q - conj q)) at s.
std::pair<double, double> q_from_coefficients(const CrackCurve& curve, const Material& mat, double gamma1,
                                              const DensityCoefficients& coeffs, double s);

struct LinearSystem {
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    double condition_estimate = 0.0;
    int N = 0;
};

LinearSystem assemble(const Problem& pb, const SolverOptions& opt);

// Dense LU solve with residual and conditioning checks. Records the
// 1-norm condition number in sys.condition_estimate.
Eigen::VectorXd solve(LinearSystem& sys);

class Solution {
public:
    Solution(Problem pb, SolverOptions opt, Density g, double cond);

    const Problem& problem() const { return pb_; }
    const SolverOptions& options() const { return opt_; }
    const Density& density() const { return g_; }
    double condition_estimate() const { return cond_; }
    double length() const { return pb_.curve->length(); }

    DensityCoefficients coefficients() const;
    cplx q(double s) const;

    // Face traction and displacement derivatives at an interior point.
    FaceFieldSample face(double s0, Side side) const;

    // The mean-face linear parts (for diagnostics and tests).
    LinearFields linear(double s0, int nder) const;

private:
    Problem pb_;
    SolverOptions opt_;
    Density g_;
    double cond_;
    Quadrature quad_;
    KernelSet ks_;
    std::vector<PointSamples> nodes_;
    PointSamples at0_, atl_;
};

Solution solve_problem(const Problem& pb, const SolverOptions& opt);

// Tip-condition combinations at s = 0 and s = l normalized by max|g'|:
// for curved cracks the two bracketed tip conditions, for straight cracks
// (g' - conj g') and (g'' - conj g'') as imaginary parts.
std::array<double, 4> end_condition_residuals(const Solution& sol);

// |int g' t' ds| / (max|g'| l)
double single_valuedness_residual(const Solution& sol);

// max |g'| on a uniform grid of n points
double max_abs_gprime(const Density& g, int n = 401);

}  // namespace cst
