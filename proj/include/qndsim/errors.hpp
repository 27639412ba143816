#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>

namespace qnd {

/// Base class for every error raised by the simulator.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied value lies outside the operation's domain.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A state violates a structural invariant (shape mismatch, lost normalization).
class InvalidState : public Error {
public:
    using Error::Error;
};

/// Projection onto a measurement outcome whose probability is numerically zero.
class ImpossibleOutcome : public Error {
public:
    using Error::Error;
};

/// The requested quantity is undefined for this configuration (e.g. unequal samples).
class UnsupportedConfiguration : public Error {
public:
    using Error::Error;
};

/// Invalid run configuration. `field()` names the offending flag or key.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& message)
        : Error(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class IoError : public Error {
public:
    IoError(std::filesystem::path path, const std::string& message)
        : Error(path.string() + ": " + message), path_(std::move(path)) {}

    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace qnd
