#include "rybsign/error.hpp"

namespace rybsign {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidShares: return "InvalidShares";
    case ErrorCode::InvalidElasticities: return "InvalidElasticities";
    case ErrorCode::Indeterminate: return "Indeterminate";
    case ErrorCode::RatioUndefined: return "RatioUndefined";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::DegenerateIntensity: return "DegenerateIntensity";
    case ErrorCode::PointAUndefined: return "PointAUndefined";
    case ErrorCode::PointBUndefined: return "PointBUndefined";
    case ErrorCode::NotStrongRybczynski: return "NotStrongRybczynski";
    case ErrorCode::Boundary: return "Boundary";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::NoEquilibrium: return "NoEquilibrium";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::SamplerExhausted: return "SamplerExhausted";
    case ErrorCode::DataError: return "DataError";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace rybsign
