#pragma once

#include <array>
#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "cst/geometry.hpp"
#include "cst/kernels.hpp"
#include "cst/quadrature.hpp"

namespace cst {

enum class PlaneMode { Strain, Stress };

struct Material {
    double mu = 1.0;
    double kappa = 2.0;
    PlaneMode mode = PlaneMode::Strain;
    std::optional<double> nu;

    static Material from_nu(double mu, double nu, PlaneMode mode);
    static Material from_kappa(double mu, double kappa, PlaneMode mode = PlaneMode::Strain);
};

struct FarFieldLoad {
    double sigma1 = 0.0, sigma2 = 0.0, alpha = 0.0;
    cplx Gamma, GammaPrime;

    static FarFieldLoad make(double sigma1, double sigma2, double alpha);
};

// (Gamma, Gamma') of the uniform far field.
std::pair<cplx, cplx> far_field_potentials(double sigma1, double sigma2, double alpha);

struct MCoefficients {
    cplx m1, m2, m3, m4;
};

MCoefficients m_coefficients(const CrackCurve& curve, double gamma1, double s);

// Right-hand side f(s0) of the surface-tension boundary condition.
cplx rhs_f(const CrackCurve& curve, const Material& mat, const FarFieldLoad& load, double gamma1,
           double s0);

enum class Side { Plus, Minus };

struct FaceFieldSample {
    double s = 0.0;
    Side side = Side::Plus;
    double sigma_n = 0.0, tau_n = 0.0;
    double du1_ds = 0.0, du2_ds = 0.0;  // global components
    double dut_ds = 0.0, dun_ds = 0.0;  // along t' and along the left normal i t'
};

// Derivatives 0..2 of g' and of q at one point.
struct PointSamples {
    std::array<cplx, 3> g{};
    std::array<cplx, 3> q{};
};

// Density-dependent parts at s0: S is the mean face traction, Om[m] the
// m-th s0-derivative of the mean Omega.
struct LinearFields {
    cplx S;
    std::array<cplx, 3> Om{};
};

struct OperatorContext {
    const Quadrature* quad;
    double kappa;
};

LinearFields linear_fields(const OperatorContext& ctx, const std::vector<KernelQuad>& K,
                           const std::vector<PointSamples>& at_nodes, const PointSamples& at_s0,
                           const PointSamples& at_0, const PointSamples& at_l, double s0, int nder);

// Assembled boundary-condition expression at s0 (left side of row j) from
// the linear fields, i.e. (kappa+1)[S + (gamma1/2mu)(k0 B + i B')].
cplx boundary_expression(const CrackCurve& curve, const Material& mat, double gamma1,
                         const LinearFields& lf, double s0);

// Face sample from the linear fields plus local density values.
FaceFieldSample face_sample(const CrackCurve& curve, const Material& mat, const FarFieldLoad& load,
                            const LinearFields& lf, cplx gprime_s0, cplx q_s0, double s0, Side side);

}  // namespace cst
