#pragma once

// Seeded oracle batches that check the sign patterns, the linear
// comparative statics and the subregion refinements on sampled economies.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rybsign/oracle.hpp"
#include "rybsign/report.hpp"

namespace rybsign {

struct ValidationOptions {
  std::uint64_t seed = 42;
  int n = 1000;
  /// Constraints of the main batch; quadrant IV by default.
  oracle::SamplerConstraints constraints = [] {
    oracle::SamplerConstraints c;
    c.quadrant_iv = true;
    return c;
  }();
  /// Random mixed shocks tried per economy when looking for triple (+, +, -).
  int segment_shock_attempts = 400;
  double fd_step = 1e-6;
  double shock_size = 0.01;
};

struct InvariantFamily {
  std::string name;
  int checked = 0;
  int passed = 0;
  std::optional<double> worst;      // largest residual seen
  std::optional<double> tolerance;  // bound on `worst`
  bool informational = false;       // reported, never fails the batch
  std::string detail;

  bool ok() const {
    if (informational) return true;
    return passed == checked && (!worst || !tolerance || *worst <= *tolerance);
  }
};

/// Strip prediction (rows P1, P2, P3, none) against the operational
/// subregion (columns P1, P2, P3).
struct StripMap {
  std::array<std::array<int, 3>, 4> counts{};
  int agree = 0;
  int total = 0;
  double agreement_rate() const { return total ? double(agree) / total : 0.0; }
};

struct ValidationSummary {
  ValidationOptions options;
  int economies = 0;
  long long rejections = 0;
  std::array<int, 3> subregion_counts{};  // P1, P2, P3
  int boundary = 0;
  int not_strong = 0;
  int wider_batch_economies = 0;  // size of the wider-premise batch
  std::vector<InvariantFamily> families;
  StripMap strip;

  bool passed() const;
  const InvariantFamily* family(const std::string& name) const;
};

namespace family {
inline constexpr const char* kSignPattern = "sign pattern matches the subregion";
inline constexpr const char* kStrongColumns = "land column (+,-), capital column (-,+)";
inline constexpr const char* kSegment = "EWS-ratio vector on segment AB";
inline constexpr const char* kSegmentChain = "segment inequality chain";
inline constexpr const char* kTriples = "a_i0' triples in {A, B, C, D}";
inline constexpr const char* kOracle = "hat algebra matches finite differences";
inline constexpr const char* kOracleRybczynski = "Rybczynski matrix matches finite differences";
inline constexpr const char* kRowSums = "Rybczynski row sums equal one";
inline constexpr const char* kReciprocity = "reciprocity theta_j r_ji = theta_i s_ij";
inline constexpr const char* kConditionsSound = "real-wage conditions imply P2 (price shocks)";
inline constexpr const char* kMixedRefinement = "refined subregion set contains the subregion (mixed shocks)";
}  // namespace family

/// Runs the batch; single-threaded and deterministic in `options`. Throws
/// std::invalid_argument when n < 1 and lets SamplerExhausted propagate.
ValidationSummary run_validation(const ValidationOptions& options);

Report validation_report(const ValidationSummary& summary);

}  // namespace rybsign
