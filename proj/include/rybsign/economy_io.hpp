#pragma once

// Plain-text key-value documents for economies and oracle fixtures.
//
//   [distributive]   theta_T1 ... theta_L2
//   [income]         theta_1, theta_2 (theta_T, theta_K, theta_L optional)
//   [allen.sector1]  sigma1_TK, sigma1_TL, sigma1_KL (own terms optional)
//   [allen.sector2]  sigma2_...
//   [gl]             b1_TT ... b2_LL (upper triangle), p_1, p_2, v_T, v_K, v_L
//
// Omitted own elasticities are filled from cost-share homogeneity.

#include <filesystem>
#include <optional>
#include <string>

#include "rybsign/model_core.hpp"
#include "rybsign/oracle.hpp"

namespace rybsign::io {

struct EconomyDocument {
  std::optional<Economy> economy;
  std::optional<oracle::GLEconomy> gl;
};

/// Parses a document; throws ParseError on syntax errors, missing keys or
/// non-numeric values, and the model_core errors on invalid shares.
EconomyDocument parse_document(const std::string& text);
EconomyDocument load_document(const std::filesystem::path& path);

/// Economy from a document that must contain one.
Economy load_economy(const std::filesystem::path& path);

std::string write_economy(const Economy& economy);
std::string write_gl(const oracle::GLEconomy& gl);

/// Shortest text that reads back to the same double.
std::string format_number(double v);

}  // namespace rybsign::io
