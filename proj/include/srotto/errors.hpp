// errors.hpp: Exception types shared by all modules

#pragma once

#include <stdexcept>
#include <string>

namespace srotto {

// Each error maps onto one CLI exit code (see exit_code()).
enum class ErrorKind {
    InvalidArgument,
    RepresentationMismatch,
    ResourceLimit,
    InvalidState,
    Integrity,
    Stiffness,
    InsufficientData,
    UndefinedTemperature,
    FitInfeasible,
    Config,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

// 2 config error, 3 numerical-integrity error, 4 resource-limit error.
int exit_code(ErrorKind kind) noexcept;

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what)
{
    throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what)
{
    if (!cond) {
        throw Error(kind, what);
    }
}

} // namespace srotto
