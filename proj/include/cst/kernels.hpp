#pragma once

#include <array>
#include <complex>
#include <utility>
#include <vector>

#include "cst/geometry.hpp"
#include "cst/quadrature.hpp"

namespace cst {

struct Material;
struct FarFieldLoad;

// A kernel value with its first and second partial derivatives in s0.
struct KernelJet {
    cplx v, d, dd;
};

using KernelQuad = std::array<KernelJet, 4>;

// Regular kernels k1..k4 of the curvilinear crack system.
class KernelSet {
public:
    KernelSet(CurvePtr curve, double kappa, double diag_eps_rel = 2e-2);

    // j in 1..4
    cplx kernel(int j, double s, double s0) const;
    std::pair<cplx, cplx> kernel_derivatives(int j, double s, double s0) const;

    // All four kernels and their s0-derivatives at (s, s0).
    KernelQuad jets(double s, double s0) const;

    // Kernels for every quadrature node at fixed s0.
    void row(double s0, const std::vector<double>& nodes, std::vector<KernelQuad>& out) const;

    double diag_eps() const { return eps_; }
    int series_order() const { return order_; }
    const CrackCurve& curve() const { return *curve_; }
    double kappa() const { return kappa_; }

    // Exposed for testing both evaluation paths away from their default range.
    KernelQuad jets_direct(double s, double s0) const;
    KernelQuad jets_series(double s, double s0) const;

private:
    CurvePtr curve_;
    double kappa_;
    double eps_;
    int order_;
};

// The regular operator M1(g', q)(s0) with g' and q sampled at the nodes of
// `quad`. Includes the (kappa+1) f(s0) term.
cplx m1_operator(const KernelSet& ks, const Material& mat, const FarFieldLoad& load, double gamma1,
                 const Quadrature& quad, const std::vector<cplx>& gprime, const std::vector<cplx>& q,
                 double s0);

}  // namespace cst
