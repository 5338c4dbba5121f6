// errors.cpp: Error kind names and exit-code mapping

#include "srotto/errors.hpp"

namespace srotto {

const char* to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::RepresentationMismatch: return "representation_mismatch";
    case ErrorKind::ResourceLimit: return "resource_limit";
    case ErrorKind::InvalidState: return "invalid_state";
    case ErrorKind::Integrity: return "integrity";
    case ErrorKind::Stiffness: return "stiffness";
    case ErrorKind::InsufficientData: return "insufficient_data";
    case ErrorKind::UndefinedTemperature: return "undefined_temperature";
    case ErrorKind::FitInfeasible: return "fit_infeasible";
    case ErrorKind::Config: return "config";
    }
    return "unknown";
}

int exit_code(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::Config:
    case ErrorKind::InvalidArgument:
    case ErrorKind::RepresentationMismatch:
    case ErrorKind::InsufficientData:
        return 2;
    case ErrorKind::ResourceLimit:
        return 4;
    case ErrorKind::InvalidState:
    case ErrorKind::Integrity:
    case ErrorKind::Stiffness:
    case ErrorKind::UndefinedTemperature:
    case ErrorKind::FitInfeasible:
        return 3;
    }
    return 3;
}

} // namespace srotto
