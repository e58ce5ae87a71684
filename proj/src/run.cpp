#include "cst/run.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "cst/errors.hpp"
#include "cst/postprocess.hpp"

namespace cst {

namespace fs = std::filesystem;

namespace {

constexpr const char* kEchoFile = "config_effective.txt";
constexpr const char* kErrorFile = "error.log";

std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

using Artifacts = std::map<std::string, std::string>;

// Everything a run may produce; stale copies are removed before each run.
constexpr const char* kArtifactNames[] = {"g_prime.csv",     "face_fields.csv",     "opening.csv",
                                          "log_fits.csv",    "coefficients.csv",    "summary.txt",
                                          "sweep_gamma.csv", "sweep_curvature.csv", "convergence.csv",
                                          "system_dump.txt", kErrorFile};

void remove_stale(const fs::path& dir)
{
    std::error_code ec;
    for (const char* n : kArtifactNames) fs::remove(dir / n, ec);
}

std::string side_name(Side s) { return s == Side::Plus ? "plus" : "minus"; }

std::string gprime_csv(const std::vector<std::pair<int, const std::vector<cplx>*>>& runs,
                       const std::vector<double>& grid)
{
    std::ostringstream os;
    os << "N,s,re_gprime,im_gprime\n";
    for (const auto& [N, g] : runs)
        for (std::size_t k = 0; k < grid.size(); ++k)
            os << N << "," << num(grid[k]) << "," << num((*g)[k].real()) << "," << num((*g)[k].imag()) << "\n";
    return os.str();
}

std::string dump_system(const LinearSystem& sys)
{
    std::ostringstream os;
    os << "# rows: Re at collocation points, Im at collocation points, Re/Im single-valuedness\n";
    os << "# columns: Chebyshev coefficients on [0,l] of Re g' (0..N) then Im g' (0..N)\n";
    os << "# N " << sys.N << " condition_estimate " << num(sys.condition_estimate) << "\n";
    for (Eigen::Index r = 0; r < sys.A.rows(); ++r) {
        for (Eigen::Index c = 0; c < sys.A.cols(); ++c) os << num(sys.A(r, c)) << " ";
        os << "| " << num(sys.b(r)) << "\n";
    }
    return os.str();
}

void solve_mode(const RunConfig& cfg, const RunFlags& flags, Artifacts& art, std::ostream& sum)
{
    const Problem pb = cfg.problem();
    LinearSystem sys = assemble(pb, cfg.solver);
    const Eigen::VectorXd x = solve(sys);
    if (flags.dump_system) art["system_dump.txt"] = dump_system(sys);
    const int N = cfg.solver.N;
    std::vector<cplx> c(N + 1);
    for (int k = 0; k <= N; ++k) c[k] = cplx(x(k), x(N + 1 + k));
    const Solution sol(pb, cfg.solver, Density(pb.curve->length(), c), sys.condition_estimate);
    const double l = sol.length();

    std::vector<double> grid(401);
    std::vector<cplx> g(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        grid[k] = l * k / (grid.size() - 1);
        g[k] = sol.density()(grid[k]);
    }
    art["g_prime.csv"] = gprime_csv({{N, &g}}, grid);

    {
        std::ostringstream os;
        os << "k,g1,g2\n";
        const DensityCoefficients co = sol.coefficients();
        for (int k = 0; k <= N; ++k) os << k << "," << num(co.g1[k]) << "," << num(co.g2[k]) << "\n";
        art["coefficients.csv"] = os.str();
    }
    {
        std::ostringstream os;
        os << "s,side,sigma_n,tau_n,du1_ds,du2_ds,dut_ds,dun_ds\n";
        const int n = cfg.face_samples;
        for (int i = 0; i < n; ++i) {
            const double s = l * (i + 0.5) / n;
            for (Side side : {Side::Plus, Side::Minus}) {
                const FaceFieldSample f = sol.face(s, side);
                os << num(s) << "," << side_name(side) << "," << num(f.sigma_n) << "," << num(f.tau_n) << ","
                   << num(f.du1_ds) << "," << num(f.du2_ds) << "," << num(f.dut_ds) << "," << num(f.dun_ds)
                   << "\n";
            }
        }
        art["face_fields.csv"] = os.str();
    }
    const OpeningProfile op = opening_profile(sol, cfg.opening_samples);
    {
        std::ostringstream os;
        os << "s,jump_u1,jump_u2,delta\n";
        for (const auto& o : op.samples)
            os << num(o.s) << "," << num(o.jump.real()) << "," << num(o.jump.imag()) << "," << num(o.delta) << "\n";
        art["opening.csv"] = os.str();
    }
    const std::vector<LogFit> fits = tip_fits(sol, cfg.window);
    {
        std::ostringstream os;
        os << "tip,side,field,A,c,rms,s_min,s_max\n";
        for (const auto& f : fits)
            os << (f.tip == 0 ? "0" : "l") << "," << side_name(f.side) << "," << field_name(f.field) << ","
               << num(f.A) << "," << num(f.c) << "," << num(f.rms) << "," << num(f.s_min) << "," << num(f.s_max)
               << "\n";
        art["log_fits.csv"] = os.str();
    }

    const auto ec = end_condition_residuals(sol);
    sum << "shape " << cfg.shape << ", N " << N << ", length " << num(l) << "\n";
    sum << "condition estimate " << num(sol.condition_estimate()) << "\n";
    sum << (pb.curve->shape() == Shape::Straight ? "straight-crack tip residuals" : "tip-condition residuals")
        << " (s=0: " << num(ec[0]) << ", " << num(ec[1]) << "; s=l: " << num(ec[2]) << ", " << num(ec[3])
        << ")\n";
    sum << "single-valuedness residual " << num(single_valuedness_residual(sol)) << "\n";
    for (const auto& f : fits)
        if (f.tip == 0 && f.side == Side::Plus && (f.field == FieldId::Du1 || f.field == FieldId::TauN))
            sum << (f.field == FieldId::Du1 ? "A1" : "A2") << " (s=0, plus face) " << num(f.A) << " rms "
                << num(f.rms) << "\n";
    sum << "opening max " << num(op.max_opening) << " min " << num(op.min_opening) << "\n";
    if (cfg.gamma1 == 0.0) sum << "note: gamma1=0 is the classical limit; results are non-convergent at the tips\n";
}

std::string sweep_csv(const char* param, const std::vector<SweepRow>& rows)
{
    std::ostringstream os;
    os << param
       << ",status,A1,A2,A1_l,A2_l,max_opening,min_opening,max_traction,sigma_mid_plus,tau_mid_plus,"
          "sigma_mid_minus,tau_mid_minus,condition,error\n";
    for (const auto& r : rows) {
        os << num(r.param) << "," << (r.ok ? "ok" : "failed");
        for (double v : {r.A1, r.A2, r.A1_l, r.A2_l, r.max_opening, r.min_opening, r.max_traction, r.sigma_mid_plus,
                         r.tau_mid_plus, r.sigma_mid_minus, r.tau_mid_minus, r.condition})
            os << "," << (r.ok ? num(v) : "nan");
        std::string e = r.error;
        for (char& ch : e)
            if (ch == ',' || ch == '\n') ch = ';';
        os << "," << e << "\n";
    }
    return os.str();
}

void check_sweep(const std::vector<SweepRow>& rows)
{
    for (const auto& r : rows)
        if (r.ok) return;
    throw SolveError("every sweep point failed; first error: " + (rows.empty() ? std::string() : rows[0].error));
}

void summarize_sweep(const char* name, const std::vector<SweepRow>& rows, std::ostream& sum)
{
    for (const auto& r : rows) {
        sum << name << " " << num(r.param) << ": ";
        if (r.ok)
            sum << "A1 " << num(r.A1) << " A2 " << num(r.A2) << " opening [" << num(r.min_opening) << ", "
                << num(r.max_opening) << "]\n";
        else
            sum << "failed: " << r.error << "\n";
    }
}

void dump_base(const RunConfig& cfg, Artifacts& art)
{
    LinearSystem sys = assemble(cfg.problem(), cfg.solver);
    solve(sys);
    art["system_dump.txt"] = dump_system(sys);
}

int code_for(const std::exception& e)
{
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const DomainError*>(&e)) return kExitConfig;
    if (dynamic_cast<const AssemblyError*>(&e)) return kExitAssembly;
    return kExitSolve;
}

bool write_file(const fs::path& p, const std::string& content)
{
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    f << content;
    return static_cast<bool>(f);
}

}  // namespace

int write_error(const std::string& out_dir, const std::string& echo, const std::string& message, int code)
{
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) return kExitIo;
    remove_stale(out_dir);
    if (!echo.empty()) write_file(fs::path(out_dir) / kEchoFile, echo);
    write_file(fs::path(out_dir) / kErrorFile, message + "\n");
    return code;
}

int run(const RunConfig& cfg, const std::string& out_dir, const RunFlags& flags, std::ostream& log)
{
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        log << "error: cannot create output directory " << out_dir << ": " << ec.message() << "\n";
        return kExitIo;
    }
    const std::string echo = cfg.echo();
    if (!write_file(fs::path(out_dir) / kEchoFile, echo)) {
        log << "error: cannot write to " << out_dir << "\n";
        return kExitIo;
    }
    remove_stale(out_dir);

    Artifacts art;
    std::ostringstream sum;
    try {
        switch (cfg.mode) {
        case RunMode::Solve: solve_mode(cfg, flags, art, sum); break;
        case RunMode::SweepGamma: {
            if (flags.dump_system) dump_base(cfg, art);
            const SweepSettings st{cfg.window, cfg.opening_samples, cfg.solver.threads};
            const auto rows = sweep_gamma(cfg.problem(), cfg.solver, cfg.gamma_grid, st);
            check_sweep(rows);
            art["sweep_gamma.csv"] = sweep_csv("gamma1", rows);
            summarize_sweep("gamma1", rows, sum);
            break;
        }
        case RunMode::SweepCurvature: {
            if (flags.dump_system) dump_base(cfg, art);
            const SweepSettings st{cfg.window, cfg.opening_samples, cfg.solver.threads};
            const auto rows = sweep_curvature(cfg.problem(), cfg.solver, cfg.curvature_grid, st);
            check_sweep(rows);
            art["sweep_curvature.csv"] = sweep_csv("kappa0", rows);
            summarize_sweep("kappa0", rows, sum);
            break;
        }
        case RunMode::Convergence: {
            if (flags.dump_system) dump_base(cfg, art);
            const ConvergenceResult res =
                convergence_study(cfg.problem(), cfg.solver, cfg.n_list, 401, cfg.solver.threads);
            if (!res.rows.back().ok) throw SolveError("largest-N solve failed: " + res.rows.back().error);
            std::ostringstream os;
            os << "N,status,sup_diff,max_abs_gprime,error\n";
            std::vector<std::pair<int, const std::vector<cplx>*>> runs;
            for (std::size_t i = 0; i < res.rows.size(); ++i) {
                const auto& r = res.rows[i];
                std::string e = r.error;
                for (char& ch : e)
                    if (ch == ',' || ch == '\n') ch = ';';
                os << r.N << "," << (r.ok ? "ok" : "failed") << "," << (r.ok ? num(r.sup_diff) : "nan") << ","
                   << (r.ok ? num(r.max_abs) : "nan") << "," << e << "\n";
                if (r.ok) runs.emplace_back(r.N, &res.gprime[i]);
                sum << "N " << r.N << ": " << (r.ok ? "sup-difference " + num(r.sup_diff) : "failed: " + r.error)
                    << "\n";
            }
            art["convergence.csv"] = os.str();
            art["g_prime.csv"] = gprime_csv(runs, res.grid);
            break;
        }
        }
    } catch (const std::exception& e) {
        const int code = code_for(e);
        write_error(out_dir, echo, e.what(), code);
        log << "error: " << e.what() << "\n";
        return code;
    }

    art["summary.txt"] = sum.str();
    std::vector<fs::path> written;
    for (const auto& [name, content] : art) {
        const fs::path p = fs::path(out_dir) / name;
        if (!write_file(p, content)) {
            for (const auto& w : written) fs::remove(w, ec);
            fs::remove(p, ec);
            write_error(out_dir, echo, "cannot write " + p.string(), kExitIo);
            log << "error: cannot write " << p.string() << "\n";
            return kExitIo;
        }
        written.push_back(p);
    }
    if (!flags.quiet) log << sum.str();
    return kExitOk;
}

}  // namespace cst
