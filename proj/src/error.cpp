#include "polyrad/error.hpp"

namespace polyrad {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::MalformedProblem: return "MalformedProblem";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NegativeScale: return "NegativeScale";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::NotFullDimensional: return "NotFullDimensional";
    case ErrorCode::ZeroDirection: return "ZeroDirection";
    case ErrorCode::CenterOutside: return "CenterOutside";
    case ErrorCode::IterationLimit: return "IterationLimit";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::CNotSymmetric: return "CNotSymmetric";
    case ErrorCode::RepresentationRequired: return "RepresentationRequired";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

void raise(ErrorCode code, const std::string& what)
{
    throw Error(code, std::string(to_string(code)) + ": " + what);
}

}  // namespace polyrad
