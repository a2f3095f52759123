#include "netid/error.hpp"

#include <sstream>

namespace netid {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Validation: return "ValidationError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::DegenerateData: return "DegenerateData";
    case ErrorKind::RankSelectionFailed: return "RankSelectionFailed";
    case ErrorKind::SingularPartition: return "SingularPartition";
    case ErrorKind::NotNetworkConsistent: return "NotNetworkConsistent";
    case ErrorKind::RankDropAfterRounding: return "RankDropAfterRounding";
    case ErrorKind::InputRankDeficient: return "InputRankDeficient";
    case ErrorKind::NotGraphic: return "NotGraphic";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::CoefficientNotUnit: return "CoefficientNotUnit";
    case ErrorKind::SignConflict: return "SignConflict";
    case ErrorKind::LabelMismatch: return "LabelMismatch";
    case ErrorKind::InfeasibleShape: return "InfeasibleShape";
    case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

namespace {

std::string with_line(std::size_t line, const std::string& message)
{
    if (line == 0)
        return message;
    return "line " + std::to_string(line) + ": " + message;
}

} // namespace

ParseError::ParseError(std::size_t line, const std::string& message)
    : Error(ErrorKind::Parse, with_line(line, message)), line_(line)
{
}

NotNetworkConsistentError::NotNetworkConsistentError(double max_deviation, std::ptrdiff_t row,
                                                     std::ptrdiff_t edge)
    : Error(ErrorKind::NotNetworkConsistent,
            [&] {
                std::ostringstream os;
                os << "cut-set entries deviate from {-1,0,+1} by up to " << max_deviation
                   << " (row " << row << ", edge " << edge << ")";
                return os.str();
            }()),
      max_deviation_(max_deviation), row_(row), edge_(edge)
{
}

CoefficientNotUnitError::CoefficientNotUnitError(std::ptrdiff_t row, std::ptrdiff_t edge,
                                                 double beta)
    : Error(ErrorKind::CoefficientNotUnit,
            [&] {
                std::ostringstream os;
                os << "regression coefficient " << beta << " for edge " << edge << " in row "
                   << row << " is not close to +-1";
                return os.str();
            }()),
      row_(row), edge_(edge), beta_(beta)
{
}

SignConflictError::SignConflictError(std::ptrdiff_t edge)
    : Error(ErrorKind::SignConflict,
            "sign propagation demands both orientations for edge " + std::to_string(edge)),
      edge_(edge)
{
}

} // namespace netid
