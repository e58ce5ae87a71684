#include "cst/fields.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cst/errors.hpp"

namespace cst {

static_assert(sizeof(PointSamples) == 6 * sizeof(cplx), "PointSamples must be six packed values");

Material Material::from_nu(double mu, double nu, PlaneMode mode)
{
    if (!(mu > 0.0)) throw DomainError("shear modulus must be positive");
    if (!(nu >= 0.0 && nu < 0.5)) throw DomainError("Poisson ratio must lie in [0, 0.5)");
    Material m;
    m.mu = mu;
    m.mode = mode;
    m.nu = nu;
    m.kappa = mode == PlaneMode::Strain ? 3.0 - 4.0 * nu : (3.0 - nu) / (1.0 + nu);
    return m;
}

Material Material::from_kappa(double mu, double kappa, PlaneMode mode)
{
    if (!(mu > 0.0)) throw DomainError("shear modulus must be positive");
    if (!(kappa > 1.0 && kappa <= 3.0)) throw DomainError("Kolosov constant must lie in (1, 3]");
    Material m;
    m.mu = mu;
    m.kappa = kappa;
    m.mode = mode;
    return m;
}

std::pair<cplx, cplx> far_field_potentials(double sigma1, double sigma2, double alpha)
{
    const cplx G = (sigma1 + sigma2) / 4.0;
    const cplx Gp = (sigma2 - sigma1) * std::polar(1.0, -2.0 * alpha) / 2.0;
    return {G, Gp};
}

FarFieldLoad FarFieldLoad::make(double sigma1, double sigma2, double alpha)
{
    FarFieldLoad f;
    f.sigma1 = sigma1;
    f.sigma2 = sigma2;
    f.alpha = alpha;
    std::tie(f.Gamma, f.GammaPrime) = far_field_potentials(sigma1, sigma2, alpha);
    return f;
}

MCoefficients m_coefficients(const CrackCurve& c, double g1, double s)
{
    const cplx t1 = c.deriv(1, s), t2 = c.deriv(2, s), t3 = c.deriv(3, s);
    const double k0 = c.kappa0(s), k0p = c.kappa0_prime(s);
    const cplx I(0.0, 1.0);
    MCoefficients m;
    m.m1 = -0.5 * g1 * (std::conj(t3) + 2.0 * I * std::conj(t2) * k0 + 3.0 * I * std::conj(t1) * k0p +
                        3.0 * std::conj(t1) * k0 * k0);
    m.m2 = 0.5 * g1 * (t3 - 4.0 * I * t2 * k0 - 3.0 * I * t1 * k0p - 3.0 * t1 * k0 * k0);
    m.m3 = -2.0 * I * g1 * std::conj(t1) * k0;
    m.m4 = -I * g1 * t1 * k0;
    return m;
}

cplx rhs_f(const CrackCurve& c, const Material& mat, const FarFieldLoad& load, double g1, double s0)
{
    const cplx G = load.Gamma, Gp = load.GammaPrime;
    const cplx t1 = c.deriv(1, s0), t2 = c.deriv(2, s0), t3 = c.deriv(3, s0);
    const cplx a = mat.kappa * G - std::conj(G);
    // C^(n) = (kappa G - conj G) t^(n+1) - conj(G' t^(n+1)): far-field part of 2 mu du/ds
    const cplx C0 = a * t1 - std::conj(Gp * t1);
    const cplx C1 = a * t2 - std::conj(Gp * t2);
    const cplx C2 = a * t3 - std::conj(Gp * t3);
    const MCoefficients m = m_coefficients(c, g1, s0);
    const cplx I(0.0, 1.0);
    const cplx surf = m.m1 * C0 + m.m2 * std::conj(C0) + m.m3 * C1 + m.m4 * std::conj(C1) +
                      I * g1 * std::imag(std::conj(t1) * C2);
    return surf / (2.0 * mat.mu) - 2.0 * G.real() - std::conj(Gp * t1 * t1);
}

LinearFields linear_fields(const OperatorContext& ctx, const std::vector<KernelQuad>& K,
                           const std::vector<PointSamples>& nodes, const PointSamples& at_s0,
                           const PointSamples& at_0, const PointSamples& at_l, double s0, int nder)
{
    const Quadrature& q = *ctx.quad;
    const double kap = ctx.kappa;
    const std::size_t n = q.nodes.size();
    const cplx I(0.0, 1.0);
    const double pre = 1.0 / (2.0 * std::numbers::pi * (kap + 1.0));

    // Cauchy integrals of g' and q with their s0-derivatives
    const int stride = static_cast<int>(sizeof(PointSamples) / sizeof(cplx));
    const cplx* base = nodes.empty() ? nullptr : reinterpret_cast<const cplx*>(nodes.data());
    PvInput pg{base, stride, at_s0.g.data(), at_0.g.data(), at_l.g.data()};
    PvInput pq{base ? base + 3 : nullptr, stride, at_s0.q.data(), at_0.q.data(), at_l.q.data()};

    // regular integrals: sum w K(phi) for each kernel derivative order
    std::array<std::array<cplx, 4>, 3> Rg{}, Rgc{}, Rq{}, Rqc{};
    for (std::size_t k = 0; k < n; ++k) {
        const double w = q.weights[k];
        const cplx g = nodes[k].g[0], qq = nodes[k].q[0];
        const cplx gc = std::conj(g), qc = std::conj(qq);
        for (int d = 0; d <= nder; ++d) {
            for (int j = 0; j < 4; ++j) {
                const cplx kv = d == 0 ? K[k][j].v : (d == 1 ? K[k][j].d : K[k][j].dd);
                Rg[d][j] += w * kv * g;
                Rgc[d][j] += w * kv * gc;
                Rq[d][j] += w * kv * qq;
                Rqc[d][j] += w * kv * qc;
            }
        }
    }

    LinearFields out;
    const cplx PVg0 = cauchy_pv(q, pg, s0, 0);
    const cplx PVq0 = cauchy_pv(q, pq, s0, 0);
    out.S = pre * (2.0 * PVg0 + Rg[0][0] + Rgc[0][1] - 2.0 * I * (-(kap - 1.0) * PVq0 + Rq[0][2]) +
                   2.0 * I * Rqc[0][1]);
    for (int d = 0; d <= nder; ++d) {
        const cplx PVg = d == 0 ? PVg0 : cauchy_pv(q, pg, s0, d);
        const cplx PVq = d == 0 ? PVq0 : cauchy_pv(q, pq, s0, d);
        out.Om[d] = pre * ((kap - 1.0) * PVg + Rg[d][3] - Rgc[d][1] -
                           2.0 * I * (2.0 * kap * PVq + kap * Rq[d][0]) - 2.0 * I * Rqc[d][1]);
    }
    return out;
}

cplx boundary_expression(const CrackCurve& c, const Material& mat, double g1, const LinearFields& lf,
                         double s0)
{
    const double k0 = c.kappa0(s0), k0p = c.kappa0_prime(s0);
    const double B = k0 * lf.Om[0].real() - lf.Om[1].imag();
    const double Bp = k0p * lf.Om[0].real() + k0 * lf.Om[1].real() - lf.Om[2].imag();
    return (mat.kappa + 1.0) * (lf.S + g1 / (2.0 * mat.mu) * cplx(k0 * B, Bp));
}

FaceFieldSample face_sample(const CrackCurve& c, const Material& mat, const FarFieldLoad& load,
                            const LinearFields& lf, cplx g_s0, cplx q_s0, double s0, Side side)
{
    const double sg = side == Side::Plus ? 1.0 : -1.0;
    const cplx t1 = c.deriv(1, s0);
    const cplx G = load.Gamma, Gp = load.GammaPrime;
    const cplx trac = lf.S + sg * q_s0 + 2.0 * G.real() + std::conj(Gp * t1 * t1);
    const cplx Om = lf.Om[0] + sg * cplx(0.0, 0.5) * g_s0;
    const cplx C = (mat.kappa * G - std::conj(G)) * t1 - std::conj(Gp * t1);
    const cplx du = (t1 * Om + C) / (2.0 * mat.mu);
    const cplx loc = std::conj(t1) * du;

    FaceFieldSample f;
    f.s = s0;
    f.side = side;
    f.sigma_n = trac.real();
    f.tau_n = trac.imag();
    f.du1_ds = du.real();
    f.du2_ds = du.imag();
    f.dut_ds = loc.real();
    f.dun_ds = loc.imag();
    return f;
}

}  // namespace cst
