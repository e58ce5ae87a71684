#pragma once

#include <stdexcept>
#include <string>

namespace cst {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid geometric or material parameters.
class DomainError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    ConfigError(const std::string& key, int line, const std::string& what);
    const std::string& key() const { return key_; }
    int line() const { return line_; }

private:
    std::string key_;
    int line_;
};

class AssemblyError : public Error {
public:
    using Error::Error;
};

class SolveError : public Error {
public:
    using Error::Error;
};

// Field evaluated where a singular kernel would be hit.
class EvaluationError : public Error {
public:
    using Error::Error;
};

}  // namespace cst
