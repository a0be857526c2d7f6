#pragma once

// Report on a single economy: shares, intensity ranking, EWS-ratio vector,
// subregion and the Rybczynski and Stolper-Samuelson matrices.

#include <optional>

#include "rybsign/oracle.hpp"
#include "rybsign/report.hpp"

namespace rybsign {

/// `snapshot` is given when the economy came from solving a GL document.
Report economy_report(const Economy& economy,
                      const std::optional<oracle::EquilibriumSnapshot>& snapshot = std::nullopt);

}  // namespace rybsign
