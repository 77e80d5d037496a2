#include "ncclab/error.hpp"

namespace ncclab {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::MixedFields: return "MixedFields";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::NotPrime: return "NotPrime";
    case Errc::NoSuchRoot: return "NoSuchRoot";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::DuplicatePoint: return "DuplicatePoint";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::NonAdaptivityViolation: return "NonAdaptivityViolation";
    case Errc::Unanswerable: return "Unanswerable";
    case Errc::NotAPermutation: return "NotAPermutation";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::AdaptiveDSRejected: return "AdaptiveDSRejected";
    case Errc::MissingMessage: return "MissingMessage";
    case Errc::InconsistentInput: return "InconsistentInput";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::DegenerateSize: return "DegenerateSize";
    case Errc::CyclicNetwork: return "CyclicNetwork";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::EmptyCodebook: return "EmptyCodebook";
    case Errc::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case Errc::Unbounded: return "Unbounded";
    case Errc::Infeasible: return "Infeasible";
    case Errc::WidthMismatch: return "WidthMismatch";
    case Errc::InvalidCut: return "InvalidCut";
    case Errc::UnsupportedWidth: return "UnsupportedWidth";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace ncclab
