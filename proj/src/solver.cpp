#include "cst/solver.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "cst/errors.hpp"
#include "parallel.hpp"

namespace cst {

namespace {

constexpr int kMaxDeriv = 4;  // q'' needs g' through its fourth derivative

// T_k^(m)(x) for k = 0..n, m = 0..kMaxDeriv; out[k][m]
void cheb_derivs(int n, double x, std::vector<std::array<double, kMaxDeriv + 1>>& out)
{
    out.assign(n + 1, {});
    out[0][0] = 1.0;
    if (n == 0) return;
    out[1][0] = x;
    out[1][1] = 1.0;
    for (int k = 1; k < n; ++k)
        for (int m = 0; m <= kMaxDeriv; ++m)
            out[k + 1][m] = 2.0 * x * out[k][m] + (m > 0 ? 2.0 * m * out[k][m - 1] : 0.0) - out[k - 1][m];
}

double binom(int n, int k)
{
    static const double t[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
    return t[n][k];
}

// Values of basis column `col` (T_k or i T_k) and derivatives at s.
struct BasisTable {
    int N;
    double l;
    // per point: (N+1) x (kMaxDeriv+1), already scaled by (2/l)^m
    std::vector<std::array<double, kMaxDeriv + 1>> at(double s) const
    {
        std::vector<std::array<double, kMaxDeriv + 1>> v;
        cheb_derivs(N, 2.0 * s / l - 1.0, v);
        for (auto& row : v) {
            double f = 1.0;
            for (int m = 0; m <= kMaxDeriv; ++m, f *= 2.0 / l) row[m] *= f;
        }
        return v;
    }
};

// Samples of every basis column at one point.
std::vector<PointSamples> column_samples(const BasisTable& bt, const Closure& cl, double s)
{
    const auto v = bt.at(s);
    const int ncol = 2 * (bt.N + 1);
    std::vector<PointSamples> out(ncol);
    for (int col = 0; col < ncol; ++col) {
        const int k = col % (bt.N + 1);
        const cplx z = col <= bt.N ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
        cplx g[kMaxDeriv + 1];
        for (int m = 0; m <= kMaxDeriv; ++m) g[m] = z * v[k][m];
        cplx q[3];
        closure_q(cl, s, g, 2, q);
        for (int m = 0; m < 3; ++m) {
            out[col].g[m] = g[m];
            out[col].q[m] = q[m];
        }
    }
    return out;
}

Quadrature make_quadrature(double l, const SolverOptions& opt)
{
    return opt.quadrature == QuadratureKind::Uniform ? Quadrature::uniform(l, opt.N)
                                                   : Quadrature::gauss(l, opt.quad_nodes);
}

void check_options(const SolverOptions& opt)
{
    if (opt.N < 4) throw AssemblyError("N must be at least 4");
    if (opt.quadrature == QuadratureKind::Gauss && opt.quad_nodes < 8)
        throw AssemblyError("quad_nodes must be at least 8");
}

// Tip combinations: -(kappa-1) Im g' + 4 kappa Re q  and  Re g' - (kappa-1) Im q
std::pair<double, double> tip_rows(double kap, const PointSamples& p)
{
    return {-(kap - 1.0) * p.g[0].imag() + 4.0 * kap * p.q[0].real(),
            p.g[0].real() - (kap - 1.0) * p.q[0].imag()};
}

}  // namespace

Density::Density(double l, std::vector<cplx> cheb) : l_(l), c_(std::move(cheb)) {}

Density Density::from_taylor(double l, const std::vector<double>& g1, const std::vector<double>& g2)
{
    if (g1.size() != g2.size() || g1.empty())
        throw std::invalid_argument("Taylor coefficient vectors must be non-empty and of equal length");
    const int n = static_cast<int>(g1.size()) - 1;
    // x^j in Chebyshev form, x = 2p/l, p = s - l/2
    std::vector<cplx> c(n + 1, 0.0);
    std::vector<double> xp(n + 2, 0.0);  // Chebyshev coefficients of x^j
    xp[0] = 1.0;
    double scale = 1.0;  // (l/2)^j
    for (int j = 0; j <= n; ++j) {
        const cplx a(g1[j], g2[j]);
        for (int k = 0; k <= j; ++k) c[k] += a * scale * xp[k];
        // multiply by x: x T_0 = T_1, x T_k = (T_{k-1} + T_{k+1}) / 2
        std::vector<double> nx(n + 2, 0.0);
        for (int k = 0; k <= j; ++k) {
            if (xp[k] == 0.0) continue;
            if (k == 0) {
                nx[1] += xp[0];
            } else {
                nx[k - 1] += 0.5 * xp[k];
                nx[k + 1] += 0.5 * xp[k];
            }
        }
        xp = nx;
        scale *= l / 2.0;
    }
    return Density(l, c);
}

void Density::taylor(std::vector<double>& g1, std::vector<double>& g2) const
{
    const int n = degree();
    // monomial coefficients (in x) of T_k
    std::vector<std::vector<double>> T(n + 1, std::vector<double>(n + 1, 0.0));
    T[0][0] = 1.0;
    if (n >= 1) T[1][1] = 1.0;
    for (int k = 1; k < n; ++k)
        for (int j = 0; j <= n; ++j)
            T[k + 1][j] = (j > 0 ? 2.0 * T[k][j - 1] : 0.0) - T[k - 1][j];
    g1.assign(n + 1, 0.0);
    g2.assign(n + 1, 0.0);
    for (int j = 0; j <= n; ++j) {
        cplx a = 0.0;
        for (int k = j; k <= n; ++k) a += c_[k] * T[k][j];
        a *= std::pow(2.0 / l_, j);
        g1[j] = a.real();
        g2[j] = a.imag();
    }
}

cplx Density::operator()(double s) const
{
    cplx v;
    derivs(s, 0, &v);
    return v;
}

void Density::derivs(double s, int maxd, cplx* out) const
{
    if (maxd > kMaxDeriv) throw std::invalid_argument("Density::derivs: order too high");
    std::vector<std::array<double, kMaxDeriv + 1>> T;
    cheb_derivs(degree(), 2.0 * s / l_ - 1.0, T);
    double f = 1.0;
    for (int m = 0; m <= maxd; ++m, f *= 2.0 / l_) {
        cplx acc = 0.0;
        for (int k = 0; k <= degree(); ++k) acc += c_[k] * T[k][m];
        out[m] = f * acc;
    }
}

void closure_q(const Closure& cl, double s, const cplx* g, int nd, cplx* q)
{
    // X = Re g'' + k0 Im g' ; q = c (k0 X + i X')
    double k0[4];
    for (int i = 0; i <= nd + 1; ++i) k0[i] = cl.curve->kappa0_deriv(i, s);
    double X[4];
    for (int n = 0; n <= nd + 1; ++n) {
        double x = g[n + 1].real();
        for (int i = 0; i <= n; ++i) x += binom(n, i) * k0[i] * g[n - i].imag();
        X[n] = x;
    }
    for (int m = 0; m <= nd; ++m) {
        double re = 0.0;
        for (int i = 0; i <= m; ++i) re += binom(m, i) * k0[i] * X[m - i];
        q[m] = cl.c * cplx(re, X[m + 1]);
    }
}

PointSamples sample_point(const Density& d, const Closure& cl, double s)
{
    cplx g[kMaxDeriv + 1], q[3];
    d.derivs(s, kMaxDeriv, g);
    closure_q(cl, s, g, 2, q);
    PointSamples p;
    for (int m = 0; m < 3; ++m) {
        p.g[m] = g[m];
        p.q[m] = q[m];
    }
    return p;
}

std::pair<double, double> q_from_coefficients(const CrackCurve& curve, const Material& mat, double gamma1,
                                              const DensityCoefficients& co, double s)
{
    // coefficient sums of the Taylor representation, term by term
    const double p = s - curve.length() / 2.0;
    const double k0 = curve.kappa0(s), k0p = curve.kappa0_prime(s);
    const double pre = gamma1 / (2.0 * mat.mu);
    auto pw = [p](int e) { return e < 0 ? 0.0 : std::pow(p, e); };
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < co.g1.size(); ++i) {
        const int k = static_cast<int>(i);
        re += k * co.g1[i] * pw(k - 1) + co.g2[i] * k0 * pw(k);
        im += k * (k - 1) * co.g1[i] * pw(k - 2) + co.g2[i] * (k * k0 * pw(k - 1) + k0p * pw(k));
    }
    return {pre * k0 * re, -pre * im};
}

LinearSystem assemble(const Problem& pb, const SolverOptions& opt)
{
    check_options(opt);
    const CrackCurve& c = *pb.curve;
    const double l = c.length();
    const int N = opt.N;
    const int ncol = 2 * N + 2;
    const double kap = pb.material.kappa;
    const Quadrature quad = make_quadrature(l, opt);
    const KernelSet ks(pb.curve, kap, opt.kernel_diag_eps);
    const Closure cl{&c, pb.gamma1 / (4.0 * pb.material.mu)};
    const BasisTable bt{N, l};
    const std::vector<double> sj = collocation_points(l, N);

    for (double s0 : sj)
        if (quad.node_hit(s0) >= 0) throw AssemblyError("collocation point coincides with a quadrature node");

    // basis samples at nodes, stored per column
    const std::size_t nn = quad.nodes.size();
    std::vector<std::vector<PointSamples>> nodecol(ncol, std::vector<PointSamples>(nn));
    for (std::size_t k = 0; k < nn; ++k) {
        const auto v = column_samples(bt, cl, quad.nodes[k]);
        for (int col = 0; col < ncol; ++col) nodecol[col][k] = v[col];
    }
    const auto at0 = column_samples(bt, cl, 0.0);
    const auto atl = column_samples(bt, cl, l);

    LinearSystem sys;
    sys.N = N;
    sys.A = Eigen::MatrixXd::Zero(ncol, ncol);
    sys.b = Eigen::VectorXd::Zero(ncol);
    const OperatorContext ctx{&quad, kap};

    detail::parallel_for(N, opt.threads, [&](int j) {
        const double s0 = sj[j];
        std::vector<KernelQuad> K;
        ks.row(s0, quad.nodes, K);
        const auto ats = column_samples(bt, cl, s0);
        for (int col = 0; col < ncol; ++col) {
            const LinearFields lf = linear_fields(ctx, K, nodecol[col], ats[col], at0[col], atl[col], s0, 2);
            const cplx E = boundary_expression(c, pb.material, pb.gamma1, lf, s0);
            sys.A(j, col) = E.real();
            sys.A(N + j, col) = E.imag();
        }
        const cplx F = (kap + 1.0) * rhs_f(c, pb.material, pb.load, pb.gamma1, s0);
        sys.b(j) = F.real();
        sys.b(N + j) = F.imag();
    });

    // single-valuedness: int g' t' ds = 0
    const Quadrature sv = Quadrature::gauss(l, std::max(64, 2 * N + 40));
    for (std::size_t k = 0; k < sv.nodes.size(); ++k) {
        const auto v = bt.at(sv.nodes[k]);
        const cplx tp = c.deriv(1, sv.nodes[k]);
        for (int col = 0; col < ncol; ++col) {
            const int kk = col % (N + 1);
            const cplx z = col <= N ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
            const cplx val = sv.weights[k] * z * v[kk][0] * tp;
            sys.A(2 * N, col) += val.real();
            sys.A(2 * N + 1, col) += val.imag();
        }
    }

    if (opt.end_conditions == EndConditions::Imposed) {
        const int rows[4] = {0, N - 1, N, 2 * N - 1};
        for (int col = 0; col < ncol; ++col) {
            const auto [a0, b0] = tip_rows(kap, at0[col]);
            const auto [al, bl] = tip_rows(kap, atl[col]);
            sys.A(rows[0], col) = a0;
            sys.A(rows[1], col) = al;
            sys.A(rows[2], col) = b0;
            sys.A(rows[3], col) = bl;
        }
        for (int r : rows) sys.b(r) = 0.0;
    }

    if (!sys.A.allFinite() || !sys.b.allFinite())
        throw AssemblyError("non-finite matrix or right-hand side entries (geometry evaluation failed)");

    if (opt.row_scaling) {
        for (int r = 0; r < ncol; ++r) {
            const double m = sys.A.row(r).cwiseAbs().maxCoeff();
            if (m > 0.0) {
                sys.A.row(r) /= m;
                sys.b(r) /= m;
            }
        }
    }
    return sys;
}

Eigen::VectorXd solve(LinearSystem& sys)
{
    const Eigen::Index n = sys.A.rows();
    if (n == 0 || sys.A.cols() != n || sys.b.size() != n) throw SolveError("inconsistent system dimensions");
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.A);
    const Eigen::MatrixXd inv = lu.inverse();
    const double anorm = sys.A.cwiseAbs().colwise().sum().maxCoeff();
    const double inorm = inv.cwiseAbs().colwise().sum().maxCoeff();
    double cond = anorm * inorm;
    if (!std::isfinite(cond)) cond = std::numeric_limits<double>::infinity();
    sys.condition_estimate = cond;
    if (cond > 1e14) {
        std::ostringstream os;
        os << "matrix is singular or ill-conditioned (condition estimate " << cond
           << "); the parameters may lie on the discrete spectrum of the Fredholm operator, where the "
              "solution is not unique";
        throw SolveError(os.str());
    }
    Eigen::VectorXd x = lu.solve(sys.b);
    const double res = (sys.A * x - sys.b).cwiseAbs().maxCoeff();
    const double ainf = sys.A.cwiseAbs().rowwise().sum().maxCoeff();
    const double tol = 1e-10 * (ainf * x.cwiseAbs().maxCoeff() + sys.b.cwiseAbs().maxCoeff());
    if (!(res <= tol)) {
        std::ostringstream os;
        os << "residual check failed: |Ax-b| = " << res << " exceeds " << tol;
        throw SolveError(os.str());
    }
    return x;
}

Solution::Solution(Problem pb, SolverOptions opt, Density g, double cond)
    : pb_(std::move(pb)),
      opt_(opt),
      g_(std::move(g)),
      cond_(cond),
      quad_(make_quadrature(pb_.curve->length(), opt_)),
      ks_(pb_.curve, pb_.material.kappa, opt_.kernel_diag_eps)
{
    const Closure cl{pb_.curve.get(), pb_.gamma1 / (4.0 * pb_.material.mu)};
    nodes_.resize(quad_.nodes.size());
    for (std::size_t k = 0; k < nodes_.size(); ++k) nodes_[k] = sample_point(g_, cl, quad_.nodes[k]);
    at0_ = sample_point(g_, cl, 0.0);
    atl_ = sample_point(g_, cl, length());
}

DensityCoefficients Solution::coefficients() const
{
    DensityCoefficients d;
    g_.taylor(d.g1, d.g2);
    return d;
}

cplx Solution::q(double s) const
{
    const Closure cl{pb_.curve.get(), pb_.gamma1 / (4.0 * pb_.material.mu)};
    return sample_point(g_, cl, s).q[0];
}

LinearFields Solution::linear(double s0, int nder) const
{
    const double l = length();
    if (!(s0 > 0.0 && s0 < l)) throw EvaluationError("field point must lie strictly inside (0, l)");
    if (quad_.node_hit(s0) >= 0) throw EvaluationError("field point coincides with a quadrature node");
    const Closure cl{pb_.curve.get(), pb_.gamma1 / (4.0 * pb_.material.mu)};
    std::vector<KernelQuad> K;
    ks_.row(s0, quad_.nodes, K);
    const OperatorContext ctx{&quad_, pb_.material.kappa};
    return linear_fields(ctx, K, nodes_, sample_point(g_, cl, s0), at0_, atl_, s0, nder);
}

FaceFieldSample Solution::face(double s0, Side side) const
{
    const LinearFields lf = linear(s0, 0);
    const Closure cl{pb_.curve.get(), pb_.gamma1 / (4.0 * pb_.material.mu)};
    const PointSamples p = sample_point(g_, cl, s0);
    return face_sample(*pb_.curve, pb_.material, pb_.load, lf, p.g[0], p.q[0], s0, side);
}

Solution solve_problem(const Problem& pb, const SolverOptions& opt)
{
    LinearSystem sys = assemble(pb, opt);
    const Eigen::VectorXd x = solve(sys);
    const int N = opt.N;
    std::vector<cplx> c(N + 1);
    for (int k = 0; k <= N; ++k) c[k] = cplx(x(k), x(N + 1 + k));
    return Solution(pb, opt, Density(pb.curve->length(), std::move(c)), sys.condition_estimate);
}

double max_abs_gprime(const Density& g, int n)
{
    double m = 0.0;
    for (int i = 0; i < n; ++i) m = std::max(m, std::abs(g(g.length() * i / (n - 1))));
    return m;
}

std::array<double, 4> end_condition_residuals(const Solution& sol)
{
    const double scale = max_abs_gprime(sol.density());
    if (scale == 0.0) return {0.0, 0.0, 0.0, 0.0};
    const Problem& pb = sol.problem();
    const Closure cl{pb.curve.get(), pb.gamma1 / (4.0 * pb.material.mu)};
    const PointSamples p0 = sample_point(sol.density(), cl, 0.0);
    const PointSamples pl = sample_point(sol.density(), cl, sol.length());
    if (pb.curve->shape() == Shape::Straight) {
        // g' - conj g' = 2i Im g', likewise for g''
        return {2.0 * p0.g[0].imag() / scale, 2.0 * p0.g[1].imag() / scale, 2.0 * pl.g[0].imag() / scale,
                2.0 * pl.g[1].imag() / scale};
    }
    const double kap = pb.material.kappa;
    const auto [a0, b0] = tip_rows(kap, p0);
    const auto [al, bl] = tip_rows(kap, pl);
    return {a0 / scale, b0 / scale, al / scale, bl / scale};
}

double single_valuedness_residual(const Solution& sol)
{
    const double l = sol.length();
    const Quadrature sv = Quadrature::gauss(l, std::max(64, 2 * sol.density().degree() + 40));
    cplx acc = 0.0;
    for (std::size_t k = 0; k < sv.nodes.size(); ++k)
        acc += sv.weights[k] * sol.density()(sv.nodes[k]) * sol.problem().curve->deriv(1, sv.nodes[k]);
    const double scale = max_abs_gprime(sol.density()) * l;
    return scale > 0.0 ? std::abs(acc) / scale : std::abs(acc);
}

}  // namespace cst
