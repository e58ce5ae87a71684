#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cst/postprocess.hpp"
#include "cst/solver.hpp"

namespace cst {

enum class RunMode { Solve, SweepGamma, SweepCurvature, Convergence };

const char* run_mode_name(RunMode m);

struct RunConfig {
    std::string shape;  // semicircle | arc | straight
    double curvature = 1.0;
    double length = 2.0;

    double mu = 0.0;
    std::optional<double> nu;
    std::optional<double> kappa;
    PlaneMode plane_mode = PlaneMode::Strain;

    double sigma1 = 0.0, sigma2 = 0.0, alpha = 0.0;
    double gamma1 = 0.0;

    RunMode mode = RunMode::Solve;
    SolverOptions solver;

    std::vector<double> gamma_grid{0.5, 1.0, 2.0};
    std::vector<double> curvature_grid{0.25, 0.5, 1.0};
    std::vector<int> n_list{16, 20, 30};
    FitWindow window;
    int face_samples = 200;
    int opening_samples = 201;

    Material material() const;
    CurvePtr curve() const;
    Problem problem() const;

    // Effective configuration, one key=value per line, fixed key order.
    std::string echo() const;
};

// key=value lines (or ';'-separated entries); '#' starts a comment.
// Throws ConfigError naming the key and line.
RunConfig parse_config(const std::string& text);

// Re-parses `text` with `key` forced to `value` (used for command-line overrides).
RunConfig parse_config(const std::string& text, const std::vector<std::pair<std::string, std::string>>& overrides);

}  // namespace cst
