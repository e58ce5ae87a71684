#pragma once

#include <ostream>
#include <string>

#include "cst/config.hpp"

namespace cst {

enum ExitCode { kExitOk = 0, kExitIo = 1, kExitConfig = 2, kExitAssembly = 3, kExitSolve = 4 };

struct RunFlags {
    bool dump_system = false;
    bool quiet = false;
};

// Executes the configured pipeline and writes its CSV artifacts into
// out_dir. On failure only the configuration echo and error.log are left.
// The run summary goes to `log` unless quiet.
int run(const RunConfig& cfg, const std::string& out_dir, const RunFlags& flags, std::ostream& log);

// Writes only the echo and an error log (used when the config itself fails).
int write_error(const std::string& out_dir, const std::string& echo, const std::string& message, int code);

}  // namespace cst
