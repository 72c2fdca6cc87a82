#pragma once

#include <stdexcept>
#include <string>

namespace wgcool {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The pump frequency does not exceed the fundamental threshold.
class NonPropagatingPump : public Error {
public:
    using Error::Error;
};

/// An integral could not reach its tolerance within the evaluation budget.
class QuadratureFailure : public Error {
public:
    using Error::Error;
};

/// Analytic and finite-difference friction coefficients disagree.
class DerivativeMismatch : public Error {
public:
    using Error::Error;
};

/// The total force keeps its sign up to the velocity cap.
class NoSignChange : public Error {
public:
    using Error::Error;
};

/// A power-law fit was handed a value whose logarithm is undefined.
class NonPositiveValue : public Error {
public:
    using Error::Error;
};

/// Invalid configuration document. `key()` is the dotted path of the offender.
class ConfigError : public Error {
public:
    ConfigError(std::string key, const std::string& what)
        : Error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

    [[nodiscard]] const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

}  // namespace wgcool
