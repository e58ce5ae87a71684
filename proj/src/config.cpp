#include "cst/config.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "cst/errors.hpp"

namespace cst {

const char* run_mode_name(RunMode m)
{
    switch (m) {
    case RunMode::Solve: return "solve";
    case RunMode::SweepGamma: return "sweep-gamma";
    case RunMode::SweepCurvature: return "sweep-curvature";
    case RunMode::Convergence: return "convergence";
    }
    return "?";
}

namespace {

struct Entry {
    std::string value;
    int line = 0;
};

const std::set<std::string> kKeys = {
    "shape",        "curvature",     "length",          "mu",          "nu",          "kappa",
    "mode",         "sigma1_inf",    "sigma2_inf",      "alpha",       "gamma1",      "N",
    "quadrature",   "quad_nodes",    "end_conditions",  "row_scaling", "kernel_diag_eps",
    "threads",      "gamma_grid",    "curvature_grid",  "N_list",      "fit_window",  "fit_samples",
    "face_samples", "opening_samples"};

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

bool is_material_mode(const std::string& v) { return v == "plane_strain" || v == "plane_stress"; }
bool is_run_mode(const std::string& v)
{
    return v == "solve" || v == "sweep-gamma" || v == "sweep-curvature" || v == "convergence";
}

double to_double(const std::string& key, const Entry& e)
{
    const std::string v = trim(e.value);
    std::size_t pos = 0;
    double d = 0.0;
    try {
        d = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError(key, e.line, "expected a number, got '" + v + "'");
    }
    if (pos != v.size() || !std::isfinite(d)) throw ConfigError(key, e.line, "expected a number, got '" + v + "'");
    return d;
}

int to_int(const std::string& key, const Entry& e)
{
    const std::string v = trim(e.value);
    std::size_t pos = 0;
    long d = 0;
    try {
        d = std::stol(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError(key, e.line, "expected an integer, got '" + v + "'");
    }
    if (pos != v.size()) throw ConfigError(key, e.line, "expected an integer, got '" + v + "'");
    return static_cast<int>(d);
}

std::vector<std::string> split_list(const std::string& v)
{
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

std::vector<double> to_doubles(const std::string& key, const Entry& e)
{
    std::vector<double> out;
    for (const auto& it : split_list(e.value)) out.push_back(to_double(key, {it, e.line}));
    if (out.empty()) throw ConfigError(key, e.line, "expected a comma-separated list of numbers");
    return out;
}

struct Raw {
    std::map<std::string, Entry> kv;
    std::optional<Entry> material_mode, run_mode;
};

void add_entry(Raw& raw, const std::string& key, const std::string& value, int line, bool override_ok)
{
    if (!kKeys.count(key)) throw ConfigError(key, line, "unknown key");
    if (key == "mode") {
        if (is_material_mode(value)) {
            if (raw.material_mode && !override_ok) throw ConfigError(key, line, "material mode given twice");
            raw.material_mode = Entry{value, line};
        } else if (is_run_mode(value)) {
            if (raw.run_mode && !override_ok) throw ConfigError(key, line, "run mode given twice");
            raw.run_mode = Entry{value, line};
        } else {
            throw ConfigError(key, line,
                              "expected plane_strain, plane_stress, solve, sweep-gamma, sweep-curvature or "
                              "convergence, got '" + value + "'");
        }
        return;
    }
    if (raw.kv.count(key) && !override_ok) throw ConfigError(key, line, "duplicate key");
    raw.kv[key] = Entry{value, line};
}

Raw lex(const std::string& text)
{
    Raw raw;
    std::istringstream in(text);
    std::string ln;
    int lineno = 0;
    while (std::getline(in, ln)) {
        ++lineno;
        const auto hash = ln.find('#');
        if (hash != std::string::npos) ln.erase(hash);
        // entries are separated by ';' or ','; a comma piece without '=' continues a list value
        std::vector<std::string> items;
        std::stringstream parts(ln);
        std::string seg;
        while (std::getline(parts, seg, ';')) {
            std::stringstream pieces(seg);
            std::string piece;
            bool first = true;
            while (std::getline(pieces, piece, ',')) {
                if (!first && piece.find('=') == std::string::npos && !items.empty())
                    items.back() += "," + piece;
                else
                    items.push_back(piece);
                first = false;
            }
        }
        for (std::string item : items) {
            item = trim(item);
            if (item.empty()) continue;
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw ConfigError("", lineno, "expected key=value, got '" + item + "'");
            const std::string key = trim(item.substr(0, eq));
            const std::string value = trim(item.substr(eq + 1));
            if (key.empty()) throw ConfigError("", lineno, "empty key");
            if (value.empty()) throw ConfigError(key, lineno, "empty value");
            add_entry(raw, key, value, lineno, false);
        }
    }
    return raw;
}

RunConfig build(const Raw& raw)
{
    RunConfig c;
    auto has = [&](const char* k) { return raw.kv.count(k) > 0; };
    auto get = [&](const char* k) -> const Entry& { return raw.kv.at(k); };

    std::vector<std::string> missing;
    for (const char* k : {"shape", "mu", "sigma1_inf", "sigma2_inf", "gamma1"})
        if (!has(k)) missing.push_back(k);
    if (!has("nu") && !has("kappa")) missing.push_back("nu|kappa");
    if (has("shape")) {
        const std::string sh = get("shape").value;
        if (sh == "arc" && !has("curvature")) missing.push_back("curvature");
        if (sh == "straight" && !has("length")) missing.push_back("length");
    }
    if (!missing.empty()) {
        std::string m = "missing mandatory keys:";
        for (const auto& k : missing) m += " " + k;
        throw ConfigError("", 0, m);
    }

    c.shape = get("shape").value;
    if (c.shape != "semicircle" && c.shape != "arc" && c.shape != "straight")
        throw ConfigError("shape", get("shape").line, "expected semicircle, arc or straight");
    if (has("curvature")) {
        c.curvature = to_double("curvature", get("curvature"));
        if (!(c.curvature > 0.0 && c.curvature <= 1.0))
            throw ConfigError("curvature", get("curvature").line, "must lie in (0, 1]");
    }
    if (has("length")) {
        c.length = to_double("length", get("length"));
        if (!(c.length > 0.0)) throw ConfigError("length", get("length").line, "must be positive");
    }

    c.mu = to_double("mu", get("mu"));
    if (!(c.mu > 0.0)) throw ConfigError("mu", get("mu").line, "must be positive");
    if (raw.material_mode)
        c.plane_mode = raw.material_mode->value == "plane_stress" ? PlaneMode::Stress : PlaneMode::Strain;
    if (has("nu") && has("kappa"))
        throw ConfigError("kappa", get("kappa").line, "give either nu or kappa, not both");
    if (has("nu")) {
        c.nu = to_double("nu", get("nu"));
        if (!(*c.nu >= 0.0 && *c.nu < 0.5)) throw ConfigError("nu", get("nu").line, "must lie in [0, 0.5)");
    } else {
        c.kappa = to_double("kappa", get("kappa"));
        if (!(*c.kappa > 1.0 && *c.kappa <= 3.0))
            throw ConfigError("kappa", get("kappa").line, "must lie in (1, 3]");
    }

    c.sigma1 = to_double("sigma1_inf", get("sigma1_inf"));
    c.sigma2 = to_double("sigma2_inf", get("sigma2_inf"));
    if (has("alpha")) c.alpha = to_double("alpha", get("alpha"));
    c.gamma1 = to_double("gamma1", get("gamma1"));
    if (!(c.gamma1 >= 0.0)) throw ConfigError("gamma1", get("gamma1").line, "must be non-negative");

    if (raw.run_mode) {
        const std::string& v = raw.run_mode->value;
        c.mode = v == "solve"             ? RunMode::Solve
                 : v == "sweep-gamma"     ? RunMode::SweepGamma
                 : v == "sweep-curvature" ? RunMode::SweepCurvature
                                          : RunMode::Convergence;
    }

    SolverOptions& o = c.solver;
    if (has("N")) {
        o.N = to_int("N", get("N"));
        if (o.N < 4) throw ConfigError("N", get("N").line, "must be at least 4");
    }
    if (has("quadrature")) {
        const std::string& v = get("quadrature").value;
        if (v == "gauss") o.quadrature = QuadratureKind::Gauss;
        else if (v == "uniform") o.quadrature = QuadratureKind::Uniform;
        else throw ConfigError("quadrature", get("quadrature").line, "expected gauss or uniform");
    }
    if (has("quad_nodes")) {
        o.quad_nodes = to_int("quad_nodes", get("quad_nodes"));
        if (o.quad_nodes < 8) throw ConfigError("quad_nodes", get("quad_nodes").line, "must be at least 8");
    }
    if (has("end_conditions")) {
        const std::string& v = get("end_conditions").value;
        if (v == "imposed") o.end_conditions = EndConditions::Imposed;
        else if (v == "builtin") o.end_conditions = EndConditions::Builtin;
        else throw ConfigError("end_conditions", get("end_conditions").line, "expected imposed or builtin");
    }
    if (has("row_scaling")) {
        const std::string& v = get("row_scaling").value;
        if (v == "on") o.row_scaling = true;
        else if (v == "off") o.row_scaling = false;
        else throw ConfigError("row_scaling", get("row_scaling").line, "expected on or off");
    }
    if (has("kernel_diag_eps")) {
        o.kernel_diag_eps = to_double("kernel_diag_eps", get("kernel_diag_eps"));
        if (!(o.kernel_diag_eps >= 0.0 && o.kernel_diag_eps < 0.5))
            throw ConfigError("kernel_diag_eps", get("kernel_diag_eps").line, "must lie in [0, 0.5)");
    }
    if (has("threads")) {
        o.threads = to_int("threads", get("threads"));
        if (o.threads < 0) throw ConfigError("threads", get("threads").line, "must be non-negative");
    }

    if (has("gamma_grid")) {
        c.gamma_grid = to_doubles("gamma_grid", get("gamma_grid"));
        for (double g : c.gamma_grid)
            if (!(g > 0.0)) throw ConfigError("gamma_grid", get("gamma_grid").line, "values must be positive");
    }
    if (has("curvature_grid")) {
        c.curvature_grid = to_doubles("curvature_grid", get("curvature_grid"));
        for (double k : c.curvature_grid)
            if (!(k > 0.0 && k <= 1.0))
                throw ConfigError("curvature_grid", get("curvature_grid").line, "values must lie in (0, 1]");
    }
    if (has("N_list")) {
        const Entry& e = get("N_list");
        c.n_list.clear();
        for (const auto& it : split_list(e.value)) c.n_list.push_back(to_int("N_list", {it, e.line}));
        if (c.n_list.size() < 2) throw ConfigError("N_list", e.line, "needs at least two values");
        for (std::size_t i = 0; i < c.n_list.size(); ++i) {
            if (c.n_list[i] < 4) throw ConfigError("N_list", e.line, "values must be at least 4");
            if (i > 0 && c.n_list[i] < c.n_list[i - 1]) throw ConfigError("N_list", e.line, "must be ascending");
        }
    }
    if (has("fit_window")) {
        const auto w = to_doubles("fit_window", get("fit_window"));
        if (w.size() != 2 || !(w[0] > 0.0 && w[0] < w[1] && w[1] < 0.25))
            throw ConfigError("fit_window", get("fit_window").line,
                              "expected lo,hi with 0 < lo < hi < 0.25 (fractions of l)");
        c.window.lo = w[0];
        c.window.hi = w[1];
    }
    if (has("fit_samples")) {
        c.window.samples = to_int("fit_samples", get("fit_samples"));
        if (c.window.samples < 8) throw ConfigError("fit_samples", get("fit_samples").line, "must be at least 8");
    }
    if (has("face_samples")) {
        c.face_samples = to_int("face_samples", get("face_samples"));
        if (c.face_samples < 1) throw ConfigError("face_samples", get("face_samples").line, "must be positive");
    }
    if (has("opening_samples")) {
        c.opening_samples = to_int("opening_samples", get("opening_samples"));
        if (c.opening_samples < 2)
            throw ConfigError("opening_samples", get("opening_samples").line, "must be at least 2");
    }
    return c;
}

std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

RunConfig parse_config(const std::string& text) { return build(lex(text)); }

RunConfig parse_config(const std::string& text, const std::vector<std::pair<std::string, std::string>>& overrides)
{
    Raw raw = lex(text);
    for (const auto& [k, v] : overrides) add_entry(raw, k, v, 0, true);
    return build(raw);
}

Material RunConfig::material() const
{
    return nu ? Material::from_nu(mu, *nu, plane_mode) : Material::from_kappa(mu, *kappa, plane_mode);
}

CurvePtr RunConfig::curve() const
{
    if (shape == "semicircle") return make_semicircle();
    if (shape == "arc") return make_circular_arc(curvature);
    return make_straight(length);
}

Problem RunConfig::problem() const
{
    return Problem{curve(), material(), FarFieldLoad::make(sigma1, sigma2, alpha), gamma1};
}

std::string RunConfig::echo() const
{
    std::ostringstream os;
    auto list = [](const auto& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
        return s;
    };
    os << "shape=" << shape << "\n";
    if (shape == "arc") os << "curvature=" << num(curvature) << "\n";
    if (shape == "straight") os << "length=" << num(length) << "\n";
    os << "mu=" << num(mu) << "\n";
    if (nu) os << "nu=" << num(*nu) << "\n";
    if (kappa) os << "kappa=" << num(*kappa) << "\n";
    os << "mode=" << (plane_mode == PlaneMode::Strain ? "plane_strain" : "plane_stress") << "\n";
    os << "# effective kappa " << num(material().kappa) << "\n";
    os << "sigma1_inf=" << num(sigma1) << "\n";
    os << "sigma2_inf=" << num(sigma2) << "\n";
    os << "alpha=" << num(alpha) << "\n";
    os << "gamma1=" << num(gamma1) << "\n";
    os << "mode=" << run_mode_name(mode) << "\n";
    os << "N=" << solver.N << "\n";
    os << "quadrature=" << (solver.quadrature == QuadratureKind::Gauss ? "gauss" : "uniform") << "\n";
    os << "quad_nodes=" << solver.quad_nodes << "\n";
    os << "end_conditions=" << (solver.end_conditions == EndConditions::Imposed ? "imposed" : "builtin") << "\n";
    os << "row_scaling=" << (solver.row_scaling ? "on" : "off") << "\n";
    os << "kernel_diag_eps=" << num(solver.kernel_diag_eps) << "\n";
    os << "threads=" << solver.threads << "\n";
    os << "gamma_grid=" << list(gamma_grid) << "\n";
    os << "curvature_grid=" << list(curvature_grid) << "\n";
    std::string nl;
    for (std::size_t i = 0; i < n_list.size(); ++i) nl += (i ? "," : "") + std::to_string(n_list[i]);
    os << "N_list=" << nl << "\n";
    os << "fit_window=" << num(window.lo) << "," << num(window.hi) << "\n";
    os << "fit_samples=" << window.samples << "\n";
    os << "face_samples=" << face_samples << "\n";
    os << "opening_samples=" << opening_samples << "\n";
    return os.str();
}

}  // namespace cst
