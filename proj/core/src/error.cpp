#include "varest/error.hpp"

namespace varest {

std::string_view to_string(ErrorKind kind)
{
  switch (kind) {
    case ErrorKind::TooShort: return "TooShort";
    case ErrorKind::SumNotZero: return "SumNotZero";
    case ErrorKind::NormNotOne: return "NormNotOne";
    case ErrorKind::DegenerateEndpoint: return "DegenerateEndpoint";
    case ErrorKind::UnknownKind: return "UnknownKind";
    case ErrorKind::NonPositiveOrder: return "NonPositiveOrder";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::InsufficientSupport: return "InsufficientSupport";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::TooFewObservations: return "TooFewObservations";
    case ErrorKind::InvalidSample: return "InvalidSample";
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::AllCandidatesFailed: return "AllCandidatesFailed";
    case ErrorKind::BadScenario: return "BadScenario";
    case ErrorKind::ExcessiveFailures: return "ExcessiveFailures";
    case ErrorKind::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

} // namespace varest
