#include "qbsf/error.hpp"

namespace qbsf {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnboundSymbol: return "UnboundSymbol";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::InconsistentArity: return "InconsistentArity";
    case ErrorCode::LimitExceeded: return "LimitExceeded";
    case ErrorCode::InvalidPath: return "InvalidPath";
    case ErrorCode::CaptureDetected: return "CaptureDetected";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UndeclaredVariable: return "UndeclaredVariable";
    case ErrorCode::HeaderMismatch: return "HeaderMismatch";
    case ErrorCode::NotPrenex: return "NotPrenex";
    case ErrorCode::NotSplittable: return "NotSplittable";
    case ErrorCode::NotCNF: return "NotCNF";
    case ErrorCode::NotPropositionalPrefix: return "NotPropositionalPrefix";
    case ErrorCode::WidthTooSmall: return "WidthTooSmall";
    case ErrorCode::ArityShrink: return "ArityShrink";
    case ErrorCode::QuantifierTypeMismatch: return "QuantifierTypeMismatch";
    case ErrorCode::NotAdjacent: return "NotAdjacent";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::Timeout: return "Timeout";
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::WindowOverflow: return "WindowOverflow";
    case ErrorCode::InvalidMachine: return "InvalidMachine";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::StateSpaceExceeded: return "StateSpaceExceeded";
    case ErrorCode::WidthMismatch: return "WidthMismatch";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(to_string(code)) + ": " + what);
}

}  // namespace qbsf
