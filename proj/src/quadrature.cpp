#include "cst/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cst {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w)
{
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 1; k <= n; ++k) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
}

Quadrature Quadrature::gauss(double l, int n)
{
    Quadrature q;
    q.kind = QuadratureKind::Gauss;
    q.l = l;
    gauss_legendre(n, q.nodes, q.weights);
    for (int k = 0; k < n; ++k) {
        q.nodes[k] = 0.5 * l * (q.nodes[k] + 1.0);
        q.weights[k] *= 0.5 * l;
    }
    return q;
}

Quadrature Quadrature::uniform(double l, int N)
{
    Quadrature q;
    q.kind = QuadratureKind::Uniform;
    q.l = l;
    q.nodes.resize(N + 1);
    q.weights.assign(N + 1, l / (N + 1));
    for (int k = 0; k <= N; ++k) q.nodes[k] = l * k / N;
    return q;
}

int Quadrature::node_hit(double s0) const
{
    const double tol = 1e-14 * l;
    for (std::size_t k = 0; k < nodes.size(); ++k)
        if (std::abs(nodes[k] - s0) <= tol) return static_cast<int>(k);
    return -1;
}

std::vector<double> collocation_points(double l, int N)
{
    std::vector<double> s(N);
    for (int j = 1; j <= N; ++j) s[j - 1] = (2.0 * j - 1.0) * l / (2.0 * N);
    return s;
}

cplx cauchy_pv(const Quadrature& q, const PvInput& in, double s0, int der)
{
    const double l = q.l;
    const std::size_t n = q.nodes.size();
    cplx v = 0.0;
    if (q.kind == QuadratureKind::Uniform) {
        // derivative of the discrete sum, kernel 1/(s - s0)^(der+1)
        const double fact = der == 2 ? 2.0 : 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double h = q.nodes[k] - s0;
            v += q.weights[k] * in.at_nodes[k * in.stride] / std::pow(h, der + 1);
        }
        return fact * v;
    }
    // subtract phi^(der)(s0), integrate the remainder, add the log term
    const cplx p0 = in.at_s0[der];
    for (std::size_t k = 0; k < n; ++k)
        v += q.weights[k] * (in.at_nodes[k * in.stride + der] - p0) / (q.nodes[k] - s0);
    v += p0 * std::log((l - s0) / s0);
    // integration by parts moves the s0-derivatives onto the density
    if (der >= 1) v += -in.at_l[der - 1] / (l - s0) - in.at_0[der - 1] / s0;
    if (der >= 2) v += -in.at_l[0] / ((l - s0) * (l - s0)) + in.at_0[0] / (s0 * s0);
    return v;
}

}  // namespace cst
