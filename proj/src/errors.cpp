#include "nashatom/errors.hpp"

namespace nashatom {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidInput: return "InvalidInput";
        case ErrorCode::DegenerateLayout: return "DegenerateLayout";
        case ErrorCode::UndefinedRadius: return "UndefinedRadius";
        case ErrorCode::InvalidAgent: return "InvalidAgent";
        case ErrorCode::InvalidProfile: return "InvalidProfile";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::InvalidSet: return "InvalidSet";
        case ErrorCode::NotIndependent: return "NotIndependent";
        case ErrorCode::InvalidState: return "InvalidState";
        case ErrorCode::IntegrationFailure: return "IntegrationFailure";
        case ErrorCode::ConstraintViolation: return "ConstraintViolation";
        case ErrorCode::IncompatibleRuns: return "IncompatibleRuns";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace nashatom
