#pragma once

#include <stdexcept>
#include <string>

namespace qoc1d {

/// Iterative solver did not reach its tolerance within the iteration cap.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double last_residual)
        : std::runtime_error(what), last_residual_(last_residual) {}

    double last_residual() const { return last_residual_; }

private:
    double last_residual_;
};

/// A numerical self-check failed (e.g. an expectation value with a large
/// imaginary residue).
class NumericalError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A requested object would exceed a configured size cap.
class CapacityError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid configuration; carries the dotted path of the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, std::string path)
        : std::runtime_error(what + " (at \"" + path + "\")"), path_(std::move(path)) {}

    const std::string& path() const { return path_; }

private:
    std::string path_;
};

class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qoc1d
