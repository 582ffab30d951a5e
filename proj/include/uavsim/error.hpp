#pragma once

#include <stdexcept>
#include <string>

namespace uavsim {

enum class ErrorCode {
    InvalidArgument,
    ContractViolation,
    IntegrationFailure,
    Configuration,
    Io,
};

// Base for every error raised by the library. The C API maps `code()` onto
// its status enum.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& what) : Error(ErrorCode::InvalidArgument, what) {}
};

struct ContractViolation : Error {
    explicit ContractViolation(const std::string& what) : Error(ErrorCode::ContractViolation, what) {}
};

struct IntegrationFailure : Error {
    explicit IntegrationFailure(const std::string& what) : Error(ErrorCode::IntegrationFailure, what) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(ErrorCode::Configuration, what) {}
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error(ErrorCode::Io, what) {}
};

}  // namespace uavsim
