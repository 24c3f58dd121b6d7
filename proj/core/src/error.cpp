#include "qdf/error.hpp"

namespace qdf {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::WeightUndefined: return "WeightUndefined";
    case ErrorCode::UnboundedSupport: return "UnboundedSupport";
    case ErrorCode::IndexOverflow: return "IndexOverflow";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::NotQuasidiagonalAlongFamily: return "NotQuasidiagonalAlongFamily";
    case ErrorCode::SelectorOutOfRange: return "SelectorOutOfRange";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::RankStall: return "RankStall";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::NonOrthogonalRanges: return "NonOrthogonalRanges";
    case ErrorCode::NonHermitianCompression: return "NonHermitianCompression";
    case ErrorCode::DegreeExceedsWindow: return "DegreeExceedsWindow";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "UnknownError";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace qdf
