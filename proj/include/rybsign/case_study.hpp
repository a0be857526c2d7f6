#pragma once

// Thailand 1920-1927 inference chain: factor-price data, intensity ranking,
// admissible sign triples, segment placement, subregion set and the
// implications for relative output, export share and migration.

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rybsign/classification.hpp"
#include "rybsign/histdata.hpp"
#include "rybsign/report.hpp"

namespace rybsign {

struct MigrationPeriod {
  std::string first_label;
  std::string last_label;
};

struct CaseStudyConfig {
  std::filesystem::path dataset_dir;
  histdata::Period period{1920, 1927};
  /// Known distributive shares of the exportable sector (T, K, L).
  PerFactor<double> theta_sector1{0.22, 0.27, 0.51};
  /// Assumed exportable income shares; each one calibrates sector-2 shares
  /// to the estimated lambda_T1 and lambda_L1.
  std::vector<double> assumed_theta1{0.6, 0.7, 0.8};
  MiddleIntensity middle_intensity = MiddleIntensity::Exportable;
  /// Percent overrides of the data-derived P, X, Z.
  std::optional<double> override_p, override_x, override_z;
  /// Overrides of the yield-derived land input-coefficient signs.
  std::optional<Sign> override_a_t1, override_a_t2;
  std::vector<MigrationPeriod> migration_periods;  // default: period and 1900-1930

  /// Reads an INI document with sections [case], [shares], [scenarios],
  /// [override]; unspecified fields keep their defaults.
  static CaseStudyConfig load(const std::filesystem::path& path);
};

/// Parses "+", "-", "0" or "?".
Sign parse_sign(const std::string& text);

struct Premise {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct ShareScenario {
  double theta1 = 0.0;
  PerFactor<double> theta_sector2{};
  PerFactor<double> lambda_sector1{};  // implied lambda_T1, lambda_K1, lambda_L1
  std::optional<IntensityRanking> ranking;
  std::optional<OrderingVerdict> ordering;
  std::string error;  // when the scenario cannot be built
};

struct MigrationSummary {
  histdata::MigrationTotals skinner;
  histdata::MigrationTotals syb;
  std::string first_label;
  std::string last_label;
  std::vector<histdata::MigrationRatio> ratios;
};

struct Verdict {
  CaseStudyConfig config;
  histdata::FactorPriceChanges prices;
  PerFactor<bool> price_overridden{};  // P, X, Z
  DeflatedChanges dc;
  histdata::LambdaEstimates lambda;
  std::vector<ShareScenario> scenarios;
  std::vector<Premise> premises;
  std::optional<std::string> halted_at;

  std::set<TripleLetter> triples_full;
  std::set<TripleLetter> triples_narrowed;
  histdata::YieldTrend rice_trend;
  histdata::YieldTrend cotton_trend;
  Sign a_t1 = Sign::Unknown;
  Sign a_t2 = Sign::Unknown;
  Sign a_t0 = Sign::Unknown;
  PerFactor<Sign> a0_signs{Sign::Unknown, Sign::Unknown, Sign::Unknown};

  std::optional<SegmentEstimate> segment;
  bool quadrant_iv = false;
  std::optional<SubregionRefinement> refinement;
  SubregionSet subregions = SubregionSet::all();
  SignPattern pattern;
  PerFactor<Sign> relative_output{};
  std::string share_implication;
  MigrationSummary migration;
  std::vector<std::string> explanations;

  bool ok() const { return !halted_at.has_value(); }
};

/// Runs the chain on the datasets in `config.dataset_dir`. Premise failures
/// stop the chain and are recorded in `halted_at`; data problems throw.
Verdict run_case_study(const CaseStudyConfig& config);

/// Sector-2 shares that reproduce lambda_T1 and lambda_L1 given theta_1;
/// throws InvalidShares when no positive solution exists.
PerFactor<double> calibrate_sector2(const PerFactor<double>& theta_sector1, double theta1,
                                    double lambda_t1, double lambda_l1);

/// Sign of r_1i - r_2i from a sign pattern: (+)-(-) is +, (-)-(+) is -,
/// anything else is Unknown.
Sign relative_output_sign(const SignPattern& pattern, Factor i);

Report verdict_report(const Verdict& verdict);

}  // namespace rybsign
