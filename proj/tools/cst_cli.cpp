#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "cst/cst.h"

int main(int argc, char** argv)
{
    CLI::App app{"Curved crack with curvature-dependent surface tension"};
    std::string config_path, out_dir, mode;
    bool dump = false, quiet = false;
    app.add_option("--config", config_path, "key=value configuration file")->required()->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory")->required();
    app.add_option("--mode", mode, "run mode (overrides the file)")
        ->check(CLI::IsMember({"solve", "sweep-gamma", "sweep-curvature", "convergence"}));
    app.add_flag("--dump-system", dump, "write the assembled matrix and right-hand side");
    app.add_flag("--quiet", quiet, "suppress the run summary");
    app.set_version_flag("--version", std::string(cst_version()));
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : CST_ERR_CONFIG;
    }

    std::ifstream in(config_path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    if (!in) {
        std::fprintf(stderr, "error: cannot read %s\n", config_path.c_str());
        return CST_ERR_IO;
    }
    const std::string text = buf.str();

    cst_config* cfg = nullptr;
    cst_status st = cst_config_parse(text.c_str(), &cfg);
    if (st == CST_OK && !mode.empty()) st = cst_config_set(cfg, "mode", mode.c_str());
    if (st != CST_OK) {
        const std::string msg = cst_last_error();
        std::fprintf(stderr, "error: %s\n", msg.c_str());
        cst_write_error(out_dir.c_str(), text.c_str(), msg.c_str(), st);
        cst_config_free(cfg);
        return st;
    }

    const int flags = (dump ? CST_RUN_DUMP_SYSTEM : 0) | (quiet ? CST_RUN_QUIET : 0);
    st = cst_run(cfg, out_dir.c_str(), flags);
    if (st != CST_OK) std::fprintf(stderr, "%s", cst_last_error());
    cst_config_free(cfg);
    return st;
}
