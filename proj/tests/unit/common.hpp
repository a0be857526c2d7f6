#pragma once

// Shared economies for the unit suites.

#include <filesystem>
#include <string>

#include "rybsign/model_core.hpp"

namespace testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(RYBSIGN_FIXTURE_DIR) / name;
}

inline std::filesystem::path dataset() { return std::filesystem::path(RYBSIGN_DATASET_DIR); }

/// Hand-made T > L > K economy with land and capital complements in both sectors.
inline rybsign::DistributiveShares sample_theta() {
  return rybsign::DistributiveShares({{{0.22, 0.06}, {0.27, 0.70}, {0.51, 0.24}}});
}

inline rybsign::ElasticityTensor sample_off_diagonal() {
  rybsign::ElasticityTensor off{};
  auto set = [&](int j, int i, int h, double v) { off[j][i][h] = off[j][h][i] = v; };
  set(0, 0, 1, -0.5);
  set(0, 0, 2, 0.8);
  set(0, 1, 2, 0.6);
  set(1, 0, 1, -0.1);
  set(1, 0, 2, 0.4);
  set(1, 1, 2, 0.5);
  return off;
}

inline rybsign::Economy sample_economy() {
  const auto theta = sample_theta();
  return rybsign::Economy::from_shares(
      theta, {0.7, 0.3}, rybsign::AllenMatrix::from_off_diagonal(theta, sample_off_diagonal()));
}

}  // namespace testing
