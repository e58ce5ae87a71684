#include "cst/errors.hpp"

namespace cst {

namespace {
std::string config_message(const std::string& key, int line, const std::string& what)
{
    std::string m = what;
    if (!key.empty()) m = "key '" + key + "': " + m;
    if (line > 0) m = "line " + std::to_string(line) + ": " + m;
    return m;
}
}  // namespace

ConfigError::ConfigError(const std::string& key, int line, const std::string& what)
    : Error(config_message(key, line, what)), key_(key), line_(line)
{
}

}  // namespace cst
