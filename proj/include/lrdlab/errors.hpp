#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lrdlab {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent configuration (process specs, experiment setup).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// An adaptive numerical procedure exhausted its budget.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// A table does not cover the lag a computation needs.
class CoverageError : public Error {
public:
    CoverageError(const std::string& what, std::size_t required_lag)
        : Error(what), required_lag_(required_lag) {}

    [[nodiscard]] std::size_t required_lag() const noexcept { return required_lag_; }

private:
    std::size_t required_lag_;
};

}  // namespace lrdlab
