#include "cst/cst.h"

#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cst/config.hpp"
#include "cst/errors.hpp"
#include "cst/run.hpp"

struct cst_config {
    std::string text;
    std::vector<std::pair<std::string, std::string>> overrides;
    cst::RunConfig cfg;
    std::string echo;
};

struct cst_solution {
    std::unique_ptr<cst::Solution> sol;
};

namespace {

thread_local std::string g_last_error;

cst_status fail(cst_status code, const std::string& msg)
{
    g_last_error = msg;
    return code;
}

cst_status map_exception()
{
    try {
        throw;
    } catch (const cst::ConfigError& e) {
        return fail(CST_ERR_CONFIG, e.what());
    } catch (const cst::DomainError& e) {
        return fail(CST_ERR_CONFIG, e.what());
    } catch (const cst::AssemblyError& e) {
        return fail(CST_ERR_ASSEMBLY, e.what());
    } catch (const std::bad_alloc&) {
        return fail(CST_ERR_SOLVE, "out of memory");
    } catch (const std::exception& e) {
        return fail(CST_ERR_SOLVE, e.what());
    } catch (...) {
        return fail(CST_ERR_SOLVE, "unknown error");
    }
}

}  // namespace

extern "C" {

const char* cst_last_error(void) { return g_last_error.c_str(); }

const char* cst_version(void) { return "1.0.0"; }

cst_status cst_config_parse(const char* text, cst_config** out)
{
    if (!text || !out) return fail(CST_ERR_ARGUMENT, "null argument");
    *out = nullptr;
    try {
        auto c = std::make_unique<cst_config>();
        c->text = text;
        c->cfg = cst::parse_config(c->text);
        *out = c.release();
        g_last_error.clear();
        return CST_OK;
    } catch (...) {
        return map_exception();
    }
}

cst_status cst_config_set(cst_config* cfg, const char* key, const char* value)
{
    if (!cfg || !key || !value) return fail(CST_ERR_ARGUMENT, "null argument");
    try {
        auto ov = cfg->overrides;
        ov.emplace_back(key, value);
        cfg->cfg = cst::parse_config(cfg->text, ov);
        cfg->overrides = std::move(ov);
        g_last_error.clear();
        return CST_OK;
    } catch (...) {
        return map_exception();
    }
}

const char* cst_config_echo(cst_config* cfg)
{
    if (!cfg) return "";
    cfg->echo = cfg->cfg.echo();
    return cfg->echo.c_str();
}

void cst_config_free(cst_config* cfg) { delete cfg; }

cst_status cst_run(const cst_config* cfg, const char* out_dir, int flags)
{
    if (!cfg || !out_dir) return fail(CST_ERR_ARGUMENT, "null argument");
    try {
        cst::RunFlags rf;
        rf.dump_system = (flags & CST_RUN_DUMP_SYSTEM) != 0;
        rf.quiet = (flags & CST_RUN_QUIET) != 0;
        std::ostringstream log;
        const int code = cst::run(cfg->cfg, out_dir, rf, log);
        if (code != 0) return fail(static_cast<cst_status>(code), log.str());
        if (!rf.quiet) std::cout << log.str();
        g_last_error.clear();
        return CST_OK;
    } catch (...) {
        return map_exception();
    }
}

cst_status cst_write_error(const char* out_dir, const char* config_text, const char* message, cst_status code)
{
    if (!out_dir || !message) return fail(CST_ERR_ARGUMENT, "null argument");
    try {
        const int rc = cst::write_error(out_dir, config_text ? config_text : "", message, static_cast<int>(code));
        return static_cast<cst_status>(rc);
    } catch (...) {
        return map_exception();
    }
}

cst_status cst_solve(const cst_config* cfg, cst_solution** out)
{
    if (!cfg || !out) return fail(CST_ERR_ARGUMENT, "null argument");
    *out = nullptr;
    try {
        auto s = std::make_unique<cst_solution>();
        s->sol = std::make_unique<cst::Solution>(cst::solve_problem(cfg->cfg.problem(), cfg->cfg.solver));
        *out = s.release();
        g_last_error.clear();
        return CST_OK;
    } catch (...) {
        return map_exception();
    }
}

cst_status cst_solution_face(const cst_solution* sol, double s, cst_side side, cst_face_sample* out)
{
    if (!sol || !out) return fail(CST_ERR_ARGUMENT, "null argument");
    try {
        const auto f = sol->sol->face(s, side == CST_SIDE_PLUS ? cst::Side::Plus : cst::Side::Minus);
        *out = {f.sigma_n, f.tau_n, f.du1_ds, f.du2_ds, f.dut_ds, f.dun_ds};
        return CST_OK;
    } catch (...) {
        return map_exception();
    }
}

cst_status cst_solution_coefficients(const cst_solution* sol, double* g1, double* g2, int capacity)
{
    if (!sol || !g1 || !g2) return fail(CST_ERR_ARGUMENT, "null argument");
    const auto c = sol->sol->coefficients();
    if (capacity < static_cast<int>(c.g1.size())) return fail(CST_ERR_ARGUMENT, "buffer too small");
    for (std::size_t k = 0; k < c.g1.size(); ++k) {
        g1[k] = c.g1[k];
        g2[k] = c.g2[k];
    }
    return CST_OK;
}

int cst_solution_degree(const cst_solution* sol) { return sol ? sol->sol->density().degree() : -1; }

double cst_solution_condition(const cst_solution* sol) { return sol ? sol->sol->condition_estimate() : 0.0; }

void cst_solution_free(cst_solution* sol) { delete sol; }

}  // extern "C"
