#include "lauricella/errors.hpp"

namespace lauricella {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParameterPole: return "ParameterPole";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::StencilOutOfDomain: return "StencilOutOfDomain";
    case ErrorCode::UncertifiedDatum: return "UncertifiedDatum";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
  }
  return "Unknown";
}

}  // namespace lauricella
