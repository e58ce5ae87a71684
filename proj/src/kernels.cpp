#include "cst/kernels.hpp"

#include <climits>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cst/errors.hpp"
#include "cst/fields.hpp"

namespace cst {

namespace {

// Second-order forward jet in s0.
struct J {
    cplx v, d, dd;
};

J operator+(J a, J b) { return {a.v + b.v, a.d + b.d, a.dd + b.dd}; }
J operator-(J a, J b) { return {a.v - b.v, a.d - b.d, a.dd - b.dd}; }
J operator*(double c, J a) { return {c * a.v, c * a.d, c * a.dd}; }
J operator*(J a, J b)
{
    return {a.v * b.v, a.d * b.v + a.v * b.d, a.dd * b.v + 2.0 * a.d * b.d + a.v * b.dd};
}
J operator/(J a, J b)
{
    J q;
    q.v = a.v / b.v;
    q.d = (a.d - q.v * b.d) / b.v;
    q.dd = (a.dd - 2.0 * q.d * b.d - q.v * b.dd) / b.v;
    return q;
}
J conj(J a) { return {std::conj(a.v), std::conj(a.d), std::conj(a.dd)}; }
J cnst(cplx c) { return {c, 0.0, 0.0}; }

// Truncated power series in h with real h, so conjugation acts on coefficients.
constexpr int kMaxTerms = 12;
struct S {
    int n = 0;
    std::array<cplx, kMaxTerms> c{};
};

S mul(const S& a, const S& b)
{
    S r;
    r.n = a.n;
    for (int i = 0; i < r.n; ++i)
        for (int k = 0; k <= i; ++k) r.c[i] += a.c[k] * b.c[i - k];
    return r;
}
S inv(const S& a)
{
    S r;
    r.n = a.n;
    r.c[0] = 1.0 / a.c[0];
    for (int i = 1; i < r.n; ++i) {
        cplx acc = 0.0;
        for (int k = 1; k <= i; ++k) acc += a.c[k] * r.c[i - k];
        r.c[i] = -acc * r.c[0];
    }
    return r;
}
S add(const S& a, const S& b, double sb = 1.0)
{
    S r = a;
    for (int i = 0; i < r.n; ++i) r.c[i] += sb * b.c[i];
    return r;
}
S scale(const S& a, cplx f)
{
    S r = a;
    for (int i = 0; i < r.n; ++i) r.c[i] *= f;
    return r;
}
S sconj(const S& a)
{
    S r = a;
    for (int i = 0; i < r.n; ++i) r.c[i] = std::conj(r.c[i]);
    return r;
}
S one(int n)
{
    S r;
    r.n = n;
    r.c[0] = 1.0;
    return r;
}

// Bracket series b(h) with b(0) = 0; returns the jet of b(h)/h in s0 = s - h.
KernelJet shifted_jet(const S& b, double h)
{
    // K(h) = sum_m b_{m+1} h^m ; d/ds0 = -d/dh
    KernelJet k{0.0, 0.0, 0.0};
    const int m_max = b.n - 2;
    for (int m = m_max; m >= 0; --m) k.v = k.v * h + b.c[m + 1];
    for (int m = m_max; m >= 1; --m) k.d = k.d * h + double(m) * b.c[m + 1];
    for (int m = m_max; m >= 2; --m) k.dd = k.dd * h + double(m) * (m - 1) * b.c[m + 1];
    k.d = -k.d;
    return k;
}

}  // namespace

KernelSet::KernelSet(CurvePtr curve, double kappa, double diag_eps_rel)
    : curve_(std::move(curve)), kappa_(kappa)
{
    if (!curve_) throw std::invalid_argument("KernelSet: null curve");
    if (!(diag_eps_rel >= 0.0)) throw DomainError("kernel_diag_eps must be non-negative");
    eps_ = diag_eps_rel * curve_->length();
    const int mo = curve_->max_order();
    order_ = mo >= 10 ? 8 : std::max(1, mo - 2);
}

KernelQuad KernelSet::jets_direct(double s, double s0) const
{
    const CrackCurve& c = *curve_;
    const J a = cnst(c.deriv(0, s));
    const J ap = cnst(c.deriv(1, s));
    const cplx b1 = c.deriv(1, s0), b2 = c.deriv(2, s0), b3 = c.deriv(3, s0);
    const J b{c.deriv(0, s0), b1, b2};
    const J bp{b1, b2, b3};
    const J h{s - s0, -1.0, 0.0};

    const J D = a - b;
    const J Dc = conj(D);
    const J rho = conj(bp) / bp;
    const J ih = cnst(1.0) / h;
    const J A = ap / D;
    const J Bc = (ap / Dc) * rho;

    // grouped so every bracket cancels exactly on a straight line
    const J k1 = (A - ih) + (Bc - ih);
    const J k2 = (conj(ap) / Dc) * (cnst(1.0) - (D / Dc) * rho);
    const J k3 = (kappa_ - 1.0) * (ih - Bc) + (A - Bc);
    const J k4 = (kappa_ - 1.0) * (A - ih) + (A - Bc);

    KernelQuad out;
    const J* ks[4] = {&k1, &k2, &k3, &k4};
    for (int j = 0; j < 4; ++j) out[j] = {ks[j]->v, ks[j]->d, ks[j]->dd};
    return out;
}

KernelQuad KernelSet::jets_series(double s, double s0) const
{
    // Expand about the fixed point s with h = s - s0, D = h P(h).
    const CrackCurve& c = *curve_;
    const int n = order_ + 2;
    const double h = s - s0;
    S P, Bp;
    P.n = Bp.n = n;
    double fact = 1.0;  // m!
    for (int m = 0; m < n; ++m) {
        if (m > 0) fact *= m;
        const cplx tm = c.deriv(m + 1, s);
        const double sg = (m % 2 == 0) ? 1.0 : -1.0;
        Bp.c[m] = sg * tm / fact;
        P.c[m] = sg * tm / (fact * (m + 1));
    }
    const cplx ap = c.deriv(1, s);
    const S rho = mul(sconj(Bp), inv(Bp));
    const S A = scale(inv(P), ap);                // h a'/D
    const S Bc = mul(scale(inv(sconj(P)), ap), rho);  // h (a'/conj D) rho
    const S I = one(n);

    const S b1 = add(add(A, I, -1.0), add(Bc, I, -1.0));
    const S b2 = mul(scale(inv(sconj(P)), std::conj(ap)), add(I, mul(mul(P, inv(sconj(P))), rho), -1.0));
    const S b3 = add(scale(add(I, Bc, -1.0), kappa_ - 1.0), add(A, Bc, -1.0));
    const S b4 = add(scale(add(A, I, -1.0), kappa_ - 1.0), add(A, Bc, -1.0));

    return {shifted_jet(b1, h), shifted_jet(b2, h), shifted_jet(b3, h), shifted_jet(b4, h)};
}

KernelQuad KernelSet::jets(double s, double s0) const
{
    if (std::abs(s - s0) < eps_ || s == s0) return jets_series(s, s0);
    return jets_direct(s, s0);
}

cplx KernelSet::kernel(int j, double s, double s0) const
{
    if (j < 1 || j > 4) throw std::out_of_range("kernel index must be 1..4");
    return jets(s, s0)[j - 1].v;
}

std::pair<cplx, cplx> KernelSet::kernel_derivatives(int j, double s, double s0) const
{
    if (j < 1 || j > 4) throw std::out_of_range("kernel index must be 1..4");
    const KernelJet k = jets(s, s0)[j - 1];
    return {k.d, k.dd};
}

void KernelSet::row(double s0, const std::vector<double>& nodes, std::vector<KernelQuad>& out) const
{
    out.resize(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) out[k] = jets(nodes[k], s0);
}

cplx m1_operator(const KernelSet& ks, const Material& mat, const FarFieldLoad& load, double gamma1,
                 const Quadrature& quad, const std::vector<cplx>& gp, const std::vector<cplx>& q, double s0)
{
    const std::size_t n = quad.nodes.size();
    if (gp.size() != n || q.size() != n)
        throw std::invalid_argument("m1_operator: density samples must match the quadrature nodes");
    if (quad.node_hit(s0) >= 0) throw EvaluationError("m1_operator: s0 coincides with a quadrature node");
    const CrackCurve& c = ks.curve();
    const double kap = mat.kappa;
    const double mu = mat.mu;
    const double k0 = c.kappa0(s0);
    const double k0p = c.kappa0_prime(s0);
    const double pi = std::numbers::pi;
    const cplx I(0.0, 1.0);

    // integrals over k_j, k_{j,2}, k_{j,22}
    cplx b1 = 0.0, b2g = 0.0, b2q = 0.0, b3 = 0.0, b4g = 0.0, b4q = 0.0;
    std::vector<KernelQuad> K;
    ks.row(s0, quad.nodes, K);
    for (std::size_t k = 0; k < n; ++k) {
        const double w = quad.weights[k];
        const cplx g = gp[k], gc = std::conj(gp[k]), qq = q[k], qc = std::conj(q[k]);
        const KernelQuad& kk = K[k];
        b1 += w * (kk[0].v * g + kk[1].v * gc - 2.0 * I * kk[2].v * qq + 2.0 * I * kk[1].v * qc);
        b2g += w * (kk[3].v * g - kk[1].v * gc);
        b2q += w * (kap * kk[0].v * qq + kk[1].v * qc);
        b3 += w * (I * kk[3].d * g - I * kk[1].d * gc + 2.0 * kap * kk[0].d * qq + 2.0 * kk[1].d * qc);
        b4g += w * (kk[3].dd * g - kk[1].dd * gc);
        b4q += w * (kap * kk[0].dd * qq + kk[1].dd * qc);
    }
    cplx m = -b1 / (2.0 * pi);
    m -= gamma1 / (2.0 * mu) * cplx(k0 * k0, k0p) * std::real(b2g / (2.0 * pi) + b2q / (pi * I));
    m -= gamma1 / (4.0 * pi * mu) * k0 * b3;
    m += I * gamma1 / (2.0 * mu) * std::imag(b4g / (2.0 * pi) + b4q / (pi * I));
    m += (kap + 1.0) * rhs_f(c, mat, load, gamma1, s0);
    return m;
}

}  // namespace cst
