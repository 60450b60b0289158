#pragma once

#include <stdexcept>
#include <string>

namespace geolab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shapes or lengths that do not agree with the grid they claim to live on.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// Non-finite samples or malformed numeric content.
class DataError : public Error {
public:
    using Error::Error;
};

/// Input outside the domain of an operation (e.g. a conjugate of a
/// non-convex sequence, an empty boundary plane).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A potential or obstacle that fails its admissibility checks.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Configuration text or flags that cannot be turned into a RunConfig.
class ConfigError : public Error {
public:
    ConfigError(const std::string& what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Fixed-point iteration that did not reach its tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, long iterations, double last_update)
        : Error(what), iterations_(iterations), last_update_(last_update) {}

    long iterations() const noexcept { return iterations_; }
    double last_update() const noexcept { return last_update_; }

private:
    long iterations_;
    double last_update_;
};

} // namespace geolab
