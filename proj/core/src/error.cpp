#include "wmeans/error.hpp"

namespace wmeans {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::AllWeightsZero: return "AllWeightsZero";
    case ErrorCode::EntryOutOfDomain: return "EntryOutOfDomain";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::MismatchedEntries: return "MismatchedEntries";
    case ErrorCode::InvalidDomain: return "InvalidDomain";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownFunction: return "UnknownFunction";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::StencilOutsideDomain: return "StencilOutsideDomain";
    case ErrorCode::DerivativeMismatch: return "DerivativeMismatch";
    case ErrorCode::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorCode::GeneratorNotMonotone: return "GeneratorNotMonotone";
    case ErrorCode::SolverFailure: return "SolverFailure";
    case ErrorCode::VanishingFirstDerivative: return "VanishingFirstDerivative";
    case ErrorCode::Diverged: return "Diverged";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::KernelEvaluationError: return "KernelEvaluationError";
    case ErrorCode::AmbiguousClassification: return "AmbiguousClassification";
    case ErrorCode::NotNormalizable: return "NotNormalizable";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::AllEvaluationsFailed: return "AllEvaluationsFailed";
    case ErrorCode::EmptyAdmissibleSet: return "EmptyAdmissibleSet";
    case ErrorCode::SignPropertyViolated: return "SignPropertyViolated";
    case ErrorCode::NotConverged: return "NotConverged";
  }
  return "Unknown";
}

}  // namespace wmeans
