#include "cst/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cst/errors.hpp"
#include "parallel.hpp"

namespace cst {

OpeningProfile opening_profile(const Density& g, const CrackCurve& c, const Material& mat, int n)
{
    if (n < 2) throw std::invalid_argument("opening profile needs at least two samples");
    const double l = c.length();
    std::vector<double> x, w;
    gauss_legendre(8, x, w);
    const cplx fac = -1.0 / cplx(0.0, 2.0 * mat.mu);  // d(jump)/ds = -g' t' / (2 i mu)

    OpeningProfile p;
    p.samples.resize(n);
    cplx jump = 0.0;
    for (int i = 0; i < n; ++i) {
        const double s = l * i / (n - 1);
        if (i > 0) {
            const double a = l * (i - 1) / (n - 1);
            for (std::size_t k = 0; k < x.size(); ++k) {
                const double t = a + 0.5 * (s - a) * (x[k] + 1.0);
                jump += 0.5 * (s - a) * w[k] * fac * g(t) * c.deriv(1, t);
            }
        }
        OpeningSample& o = p.samples[i];
        o.s = s;
        o.jump = jump;
        o.delta = std::imag(std::conj(c.deriv(1, s)) * jump);
    }
    p.max_opening = p.samples[0].delta;
    p.min_opening = p.samples[0].delta;
    for (const auto& o : p.samples) {
        p.max_opening = std::max(p.max_opening, o.delta);
        p.min_opening = std::min(p.min_opening, o.delta);
    }
    return p;
}

OpeningProfile opening_profile(const Solution& sol, int n)
{
    return opening_profile(sol.density(), *sol.problem().curve, sol.problem().material, n);
}

const char* field_name(FieldId f)
{
    switch (f) {
    case FieldId::SigmaN: return "sigma_n";
    case FieldId::TauN: return "tau_n";
    case FieldId::Du1: return "du1_ds";
    case FieldId::Du2: return "du2_ds";
    case FieldId::DuT: return "dut_ds";
    case FieldId::DuN: return "dun_ds";
    }
    return "?";
}

double field_value(const FaceFieldSample& f, FieldId id)
{
    switch (id) {
    case FieldId::SigmaN: return f.sigma_n;
    case FieldId::TauN: return f.tau_n;
    case FieldId::Du1: return f.du1_ds;
    case FieldId::Du2: return f.du2_ds;
    case FieldId::DuT: return f.dut_ds;
    case FieldId::DuN: return f.dun_ds;
    }
    return 0.0;
}

LogFit fit_log_coefficient(const std::vector<double>& s, const std::vector<double>& v)
{
    if (s.size() != v.size()) throw std::invalid_argument("log fit: sample arrays differ in length");
    if (s.size() < 8) throw std::invalid_argument("log fit needs at least 8 samples");
    const std::size_t n = s.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(s[i] > 0.0)) throw std::invalid_argument("log fit needs positive arc lengths");
        mx += std::log(s[i]);
        my += v[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = std::log(s[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (v[i] - my);
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("log fit needs distinct arc lengths");
    LogFit f;
    f.A = sxy / sxx;
    f.c = my - f.A * mx;
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = v[i] - (f.A * std::log(s[i]) + f.c);
        r2 += r * r;
    }
    f.rms = std::sqrt(r2 / n);
    f.s_min = *std::min_element(s.begin(), s.end());
    f.s_max = *std::max_element(s.begin(), s.end());
    return f;
}

namespace {

void check_window(const FitWindow& w)
{
    if (!(w.lo > 0.0 && w.lo < w.hi && w.hi < 0.25))
        throw std::invalid_argument("fit window must satisfy 0 < lo < hi < 1/4 (fractions of l)");
    if (w.samples < 8) throw std::invalid_argument("fit window needs at least 8 samples");
}

std::vector<double> window_points(double l, const FitWindow& w)
{
    std::vector<double> d(w.samples);
    const double a = std::log(w.lo * l), b = std::log(w.hi * l);
    for (int i = 0; i < w.samples; ++i) d[i] = std::exp(a + (b - a) * i / (w.samples - 1));
    return d;
}

}  // namespace

LogFit tip_fit(const Solution& sol, FieldId field, int tip, Side side, const FitWindow& w)
{
    check_window(w);
    const double l = sol.length();
    const std::vector<double> d = window_points(l, w);
    std::vector<double> v(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double s = tip == 0 ? d[i] : l - d[i];
        v[i] = field_value(sol.face(s, side), field);
    }
    LogFit f = fit_log_coefficient(d, v);
    f.field = field;
    f.tip = tip;
    f.side = side;
    return f;
}

std::vector<LogFit> tip_fits(const Solution& sol, const FitWindow& w)
{
    check_window(w);
    const double l = sol.length();
    const std::vector<double> d = window_points(l, w);
    const FieldId ids[] = {FieldId::SigmaN, FieldId::TauN, FieldId::Du1, FieldId::Du2, FieldId::DuT, FieldId::DuN};
    std::vector<LogFit> out;
    for (int tip = 0; tip < 2; ++tip) {
        for (Side side : {Side::Plus, Side::Minus}) {
            std::vector<FaceFieldSample> f(d.size());
            for (std::size_t i = 0; i < d.size(); ++i) f[i] = sol.face(tip == 0 ? d[i] : l - d[i], side);
            for (FieldId id : ids) {
                std::vector<double> v(d.size());
                for (std::size_t i = 0; i < d.size(); ++i) v[i] = field_value(f[i], id);
                LogFit fit = fit_log_coefficient(d, v);
                fit.field = id;
                fit.tip = tip;
                fit.side = side;
                out.push_back(fit);
            }
        }
    }
    return out;
}

double max_face_traction(const Solution& sol)
{
    double m = 0.0;
    for (double s : collocation_points(sol.length(), sol.options().N))
        for (Side side : {Side::Plus, Side::Minus}) {
            const FaceFieldSample f = sol.face(s, side);
            m = std::max(m, std::hypot(f.sigma_n, f.tau_n));
        }
    return m;
}

namespace {

void fill_row(SweepRow& r, const Solution& sol, const SweepSettings& st)
{
    r.A1 = tip_fit(sol, FieldId::Du1, 0, Side::Plus, st.window).A;
    r.A2 = tip_fit(sol, FieldId::TauN, 0, Side::Plus, st.window).A;
    r.A1_l = tip_fit(sol, FieldId::Du1, 1, Side::Plus, st.window).A;
    r.A2_l = tip_fit(sol, FieldId::TauN, 1, Side::Plus, st.window).A;
    const OpeningProfile op = opening_profile(sol, st.opening_samples);
    r.max_opening = op.max_opening;
    r.min_opening = op.min_opening;
    r.max_traction = max_face_traction(sol);
    r.condition = sol.condition_estimate();
    // midpoint nudged off any node of the uniform rule (nodes l k/N include l/2 for even N)
    double mid = 0.5 * sol.length();
    if (sol.options().quadrature == QuadratureKind::Uniform) mid += 0.25 * sol.length() / sol.options().N;
    const FaceFieldSample p = sol.face(mid, Side::Plus), m = sol.face(mid, Side::Minus);
    r.sigma_mid_plus = p.sigma_n;
    r.tau_mid_plus = p.tau_n;
    r.sigma_mid_minus = m.sigma_n;
    r.tau_mid_minus = m.tau_n;
    r.ok = true;
}

template <class MakeProblem>
std::vector<SweepRow> sweep(const std::vector<double>& grid, const SolverOptions& opt, const SweepSettings& st,
                            MakeProblem make)
{
    std::vector<SweepRow> rows(grid.size());
    SolverOptions inner = opt;
    inner.threads = 1;
    detail::parallel_for(static_cast<int>(grid.size()), st.threads, [&](int i) {
        SweepRow& r = rows[i];
        r.param = grid[i];
        try {
            const Solution sol = solve_problem(make(grid[i]), inner);
            fill_row(r, sol, st);
        } catch (const std::exception& e) {
            r.ok = false;
            r.error = e.what();
        }
    });
    return rows;
}

}  // namespace

std::vector<SweepRow> sweep_gamma(const Problem& base, const SolverOptions& opt, const std::vector<double>& grid,
                                  const SweepSettings& st)
{
    for (double g : grid)
        if (!(g > 0.0)) throw DomainError("gamma1 sweep grid must be positive");
    return sweep(grid, opt, st, [&](double g) {
        Problem p = base;
        p.gamma1 = g;
        return p;
    });
}

std::vector<SweepRow> sweep_curvature(const Problem& base, const SolverOptions& opt,
                                      const std::vector<double>& grid, const SweepSettings& st)
{
    for (double k : grid)
        if (!(k > 0.0 && k <= 1.0)) throw DomainError("curvature sweep grid must lie in (0, 1]");
    return sweep(grid, opt, st, [&](double k) {
        Problem p = base;
        p.curve = make_circular_arc(k);
        return p;
    });
}

ConvergenceResult convergence_study(const Problem& base, const SolverOptions& opt, const std::vector<int>& Ns,
                                    int n_grid, int threads)
{
    if (Ns.size() < 2) throw std::invalid_argument("convergence study needs at least two N values");
    for (std::size_t i = 1; i < Ns.size(); ++i)
        if (Ns[i] < Ns[i - 1]) throw std::invalid_argument("convergence N list must be ascending");
    ConvergenceResult res;
    const double l = base.curve->length();
    res.grid.resize(n_grid);
    for (int i = 0; i < n_grid; ++i) res.grid[i] = l * i / (n_grid - 1);
    res.rows.resize(Ns.size());
    res.gprime.resize(Ns.size());
    detail::parallel_for(static_cast<int>(Ns.size()), threads, [&](int i) {
        ConvergenceRow& r = res.rows[i];
        r.N = Ns[i];
        try {
            SolverOptions o = opt;
            o.N = Ns[i];
            o.threads = 1;
            const Solution sol = solve_problem(base, o);
            auto& g = res.gprime[i];
            g.resize(n_grid);
            for (int k = 0; k < n_grid; ++k) g[k] = sol.density()(res.grid[k]);
            r.ok = true;
        } catch (const std::exception& e) {
            r.error = e.what();
        }
    });
    const std::size_t ref = Ns.size() - 1;
    for (std::size_t i = 0; i < Ns.size(); ++i) {
        ConvergenceRow& r = res.rows[i];
        if (!r.ok) continue;
        for (const cplx& v : res.gprime[i]) r.max_abs = std::max(r.max_abs, std::abs(v));
        if (!res.rows[ref].ok) {
            r.sup_diff = std::nan("");
            continue;
        }
        double d = 0.0;
        for (int k = 0; k < n_grid; ++k) d = std::max(d, std::abs(res.gprime[i][k] - res.gprime[ref][k]));
        r.sup_diff = d;
    }
    return res;
}

}  // namespace cst
