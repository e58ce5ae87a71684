#pragma once

#include <string>
#include <vector>

#include "cst/fields.hpp"
#include "cst/solver.hpp"

namespace cst {

struct OpeningSample {
    double s = 0.0;
    cplx jump;           // (u1 + i u2)^+ - (u1 + i u2)^-
    double delta = 0.0;  // jump projected on the left normal i t'
};

struct OpeningProfile {
    std::vector<OpeningSample> samples;
    double max_opening = 0.0;
    double min_opening = 0.0;
};

OpeningProfile opening_profile(const Density& g, const CrackCurve& curve, const Material& mat, int n_samples);
OpeningProfile opening_profile(const Solution& sol, int n_samples);

enum class FieldId { SigmaN, TauN, Du1, Du2, DuT, DuN };
const char* field_name(FieldId f);
double field_value(const FaceFieldSample& f, FieldId id);

struct LogFit {
    double A = 0.0;
    double c = 0.0;
    double rms = 0.0;
    double s_min = 0.0, s_max = 0.0;
    FieldId field = FieldId::SigmaN;
    int tip = 0;  // 0: s = 0, 1: s = l
    Side side = Side::Plus;
};

// Least-squares fit value = A ln s + c.
LogFit fit_log_coefficient(const std::vector<double>& s, const std::vector<double>& v);

// Window as fractions of the crack length, measured from the tip.
struct FitWindow {
    double lo = 1.0 / 200.0;
    double hi = 1.0 / 20.0;
    int samples = 32;
};

LogFit tip_fit(const Solution& sol, FieldId field, int tip, Side side, const FitWindow& w);

// All fields, both tips, both faces.
std::vector<LogFit> tip_fits(const Solution& sol, const FitWindow& w);

// Max |sigma_n + i tau_n| over both faces at the collocation points.
double max_face_traction(const Solution& sol);

struct SweepRow {
    double param = 0.0;  // gamma1 or curvature
    bool ok = false;
    std::string error;
    double A1 = 0.0, A2 = 0.0;      // du1/ds and tau_n at s = 0, plus face
    double A1_l = 0.0, A2_l = 0.0;  // same at s = l
    double max_opening = 0.0, min_opening = 0.0;
    double max_traction = 0.0;
    double condition = 0.0;
    // plus/minus face fields at s = l/2
    double sigma_mid_plus = 0.0, tau_mid_plus = 0.0, sigma_mid_minus = 0.0, tau_mid_minus = 0.0;
};

struct SweepSettings {
    FitWindow window;
    int opening_samples = 201;
    int threads = 0;
};

std::vector<SweepRow> sweep_gamma(const Problem& base, const SolverOptions& opt, const std::vector<double>& grid,
                                  const SweepSettings& st);

// Arcs through z = -1 and z = +1 for each curvature in (0, 1].
std::vector<SweepRow> sweep_curvature(const Problem& base, const SolverOptions& opt,
                                      const std::vector<double>& grid, const SweepSettings& st);

struct ConvergenceRow {
    int N = 0;
    bool ok = false;
    std::string error;
    double sup_diff = 0.0;  // against the largest N
    double max_abs = 0.0;
};

struct ConvergenceResult {
    std::vector<ConvergenceRow> rows;
    std::vector<double> grid;
    std::vector<std::vector<cplx>> gprime;  // per N, on grid (empty on failure)
};

ConvergenceResult convergence_study(const Problem& base, const SolverOptions& opt, const std::vector<int>& Ns,
                                    int n_grid = 401, int threads = 0);

}  // namespace cst
