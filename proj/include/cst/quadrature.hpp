#pragma once

#include <complex>
#include <vector>

namespace cst {

using cplx = std::complex<double>;

enum class QuadratureKind {
    Gauss,  // Gauss-Legendre with singularity subtraction for Cauchy integrals
    Uniform  // nodes l*k/N, constant weight l/(N+1), plain sums
};

struct Quadrature {
    QuadratureKind kind = QuadratureKind::Gauss;
    double l = 1.0;
    std::vector<double> nodes;
    std::vector<double> weights;

    static Quadrature gauss(double l, int n);
    static Quadrature uniform(double l, int N);

    // Index of a node equal to s0 (within round-off), or -1.
    int node_hit(double s0) const;
};

// Nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// Collocation points s_j = (2j-1) l / (2N), j = 1..N.
std::vector<double> collocation_points(double l, int N);

// Values of a density and its derivatives needed by the Cauchy integrals.
//   at_nodes[k][m]  m-th derivative at node k
//   at_s0[m], at_0[m], at_l[m]  same at s0 and at both ends
// Returns d^der/ds0^der of PV int_0^l phi(s)/(s - s0) ds for der = 0, 1, 2.
struct PvInput {
    const cplx* at_nodes;  // row-major, stride `stride`
    int stride;
    const cplx* at_s0;
    const cplx* at_0;
    const cplx* at_l;
};
cplx cauchy_pv(const Quadrature& q, const PvInput& in, double s0, int der);

}  // namespace cst
