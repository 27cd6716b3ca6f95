#include "ssde/error.hpp"

namespace ssde {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::Domain: return "DomainError";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::InvalidFunction: return "InvalidFunction";
    case Errc::Tiling: return "TilingError";
    case Errc::ShiftMismatch: return "ShiftMismatch";
    case Errc::DegenerateMap: return "DegenerateMap";
    case Errc::ShearNotSupported: return "ShearNotSupported";
    case Errc::DomainMismatch: return "DomainMismatch";
    case Errc::ArgumentOutOfRange: return "ArgumentOutOfRange";
    case Errc::NotExact: return "NotExact";
    case Errc::LConditionViolated: return "LConditionViolated";
    case Errc::NotContractive: return "NotContractive";
    case Errc::NoAdmissibleA: return "NoAdmissibleA";
    case Errc::InitialIntegralMismatch: return "InitialIntegralMismatch";
    case Errc::Ordering: return "OrderingError";
    case Errc::NonConvergent: return "NonConvergent";
    case Errc::Parse: return "ParseError";
  }
  return "Error";
}

}  // namespace ssde
