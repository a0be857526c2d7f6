#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rybsign {

enum class ErrorCode {
  InvalidShares,
  InvalidElasticities,
  Indeterminate,
  RatioUndefined,
  SingularSystem,
  NotApplicable,
  DegenerateIntensity,
  PointAUndefined,
  PointBUndefined,
  NotStrongRybczynski,
  Boundary,
  EmptySet,
  NoEquilibrium,
  Infeasible,
  SamplerExhausted,
  DataError,
  ParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rybsign
