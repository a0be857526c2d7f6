#pragma once

// Historical series for the Thailand case study: loading of tagged data
// files, deflated factor-price changes, yield trends, allocation-share
// estimates and the Chinese migration aggregates.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rybsign/sign.hpp"

namespace rybsign::histdata {

inline constexpr double kKgPerPicul = 60.48;
inline constexpr double kRaiPerHectare = 6.25;

inline double picul_to_kg(double picul) { return picul * kKgPerPicul; }
inline double rai_to_hectare(double rai) { return rai / kRaiPerHectare; }

enum class Provenance { Published, Reconstructed };
std::string_view to_string(Provenance p);

/// Calendar year ("1927"), fiscal span ("1920-1921", "1920-21") or a
/// partial year ("1906 (1/4yr.)", "1940 (3/4yr.)"). Fiscal years start in
/// April; the join year is the starting calendar year.
struct YearLabel {
  std::string text;
  int start_year = 0;
  int end_year = 0;
  int sort_key = 0;  // months since year 0 at the start of the period

  static YearLabel parse(const std::string& text);
  bool operator==(const YearLabel& o) const { return sort_key == o.sort_key; }
};

/// Header block and records of one bundled file.
struct DataFile {
  std::filesystem::path path;
  std::string name;
  std::string unit;
  Provenance provenance = Provenance::Published;
  std::string source;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> records;

  /// Index of `column`; throws DataError if absent.
  std::size_t column(const std::string& column) const;
};

/// Reads a comma-separated file with `# key: value` headers. Throws
/// DataError when the name, unit, provenance or columns header is missing,
/// the provenance is not a known tag, or a record has the wrong width.
DataFile read_data_file(const std::filesystem::path& path);

struct SeriesRow {
  YearLabel label;
  std::optional<double> value;  // empty for an explicit gap ("NA")
};

class SeriesTable {
 public:
  SeriesTable(std::string name, std::string unit, Provenance provenance, std::string source,
              std::vector<SeriesRow> rows);

  const std::string& name() const { return name_; }
  const std::string& unit() const { return unit_; }
  Provenance provenance() const { return provenance_; }
  const std::string& source() const { return source_; }
  const std::vector<SeriesRow>& rows() const { return rows_; }

  /// Row whose join year is `year`; nullptr if none.
  const SeriesRow* find_year(int year) const;
  const SeriesRow* find_label(const std::string& label) const;
  /// Value at `year`; throws DataError on a missing row or gap.
  double value_at(int year) const;

 private:
  std::string name_;
  std::string unit_;
  Provenance provenance_;
  std::string source_;
  std::vector<SeriesRow> rows_;
};

struct SeriesSchema {
  std::string unit;               // required unit; empty accepts any
  std::string column = "value";   // value column
};

/// Throws DataError on an empty file, malformed values, labels that are not
/// strictly increasing, or a unit different from the schema's.
SeriesTable load_series(const std::filesystem::path& path, const SeriesSchema& schema);

struct Period {
  int start = 1920;
  int end = 1927;

  /// "1920:1927".
  static Period parse(const std::string& text);
  std::string to_string() const;
};

struct PeriodChange {
  std::string quantity;  // "P", "X", ...
  std::string formula;
  int start_year = 0;
  int end_year = 0;
  double start_level = 0.0;
  double end_level = 0.0;
  double percent = 0.0;
};

/// Percent change of num/den between the period endpoints, on levels.
PeriodChange ratio_change(const std::string& quantity, const std::string& formula,
                          const SeriesTable& num, const SeriesTable& den, Period period);

/// Year-by-year num/den on the years both series cover, times `scale`.
SeriesTable ratio_series(const std::string& name, const std::string& unit, const SeriesTable& num,
                         const SeriesTable& den, double scale = 1.0);

struct FactorPriceChanges {
  PeriodChange p;  // kg of white shirting per picul of rice
  PeriodChange x;  // land price in rice
  PeriodChange z;  // wage in rice
  double z_plus_p = 0.0;  // w_L* - p_2*, additive in percent points
};

FactorPriceChanges compute_factor_price_changes(const SeriesTable& wage,
                                                const SeriesTable& rice_price,
                                                const SeriesTable& land_price,
                                                const SeriesTable& shirting_price, Period period);

/// Centered 3-year moving average; empty where the window is incomplete.
std::vector<std::optional<double>> centered_moving_average(
    const std::vector<std::optional<double>>& values);

enum class TrendMethod { MovingAverage, RawEndpoints };

struct YieldTrend {
  std::string crop;
  TrendMethod method = TrendMethod::MovingAverage;
  Period period;
  double start_yield = 0.0;  // kg/rai
  double end_yield = 0.0;
  Sign trend = Sign::Unknown;
  Sign a_t_hat = Sign::Unknown;  // the land input coefficient moves against yield
};

/// Yield in kg/rai from production in piculs and area in rai. Throws
/// DataError when an endpoint (or its moving-average window) is missing.
YieldTrend yield_trend_sign(const std::string& crop, const SeriesTable& production,
                            const SeriesTable& area, Period period,
                            TrendMethod method = TrendMethod::MovingAverage);

/// Yield series in kg/rai over the years both tables share.
SeriesTable yield_series(const std::string& crop, const SeriesTable& production,
                         const SeriesTable& area);

enum class CropClass { Exportable, Importable };

struct CropArea {
  std::string crop;
  double area = 0.0;  // rai
  CropClass crop_class = CropClass::Exportable;
  std::string reference_year;
};

struct LaborForce {
  double agriculture = 0.0;
  double total = 0.0;
};

/// Throws DataError on an unclassified crop.
std::vector<CropArea> load_crop_areas(const std::filesystem::path& path);
LaborForce load_labor_force(const std::filesystem::path& path);

struct LambdaEstimates {
  double exportable_area = 0.0;
  double total_area = 0.0;
  double lambda_t1 = 0.0;
  double agricultural_labor = 0.0;
  double total_labor = 0.0;
  double lambda_l1 = 0.0;
};

LambdaEstimates lambda_estimates(const std::vector<CropArea>& crops, const LaborForce& labor);

struct MigrationRow {
  YearLabel label;
  double arrivals = 0.0;
  double departures = 0.0;
  double net = 0.0;
};

struct MigrationTable {
  std::string name;
  std::string unit;
  std::vector<MigrationRow> rows;

  /// Largest |arrivals - departures - net| over the rows.
  double max_net_deviation() const;
};

/// Reads `<prefix>arrivals`, `<prefix>departures`, `<prefix>net_arrivals`.
MigrationTable load_migration(const std::filesystem::path& path, const std::string& prefix = "");

struct MigrationTotals {
  double arrivals = 0.0;
  double departures = 0.0;
  double net = 0.0;
};

/// Sums over the rows from `first` to `last` inclusive; throws DataError for
/// labels not in the table.
MigrationTotals migration_totals(const MigrationTable& table, const std::string& first,
                                 const std::string& last);

struct MigrationRatio {
  std::string first_label;
  std::string last_label;
  double net = 0.0;  // in the table's unit
  int population_start_year = 0;
  int population_end_year = 0;
  double population_start = 0.0;
  double population_end = 0.0;
  double growth = 0.0;
  double percent = 0.0;  // net / growth * 100
};

/// Net arrivals over [first, last] as a share of population growth between
/// the first label's start year and the last label's end year. Both tables
/// must share a unit.
MigrationRatio migration_analysis(const MigrationTable& migration, const SeriesTable& population,
                                  const std::string& first, const std::string& last);

struct PrintedPeriodTotal {
  std::string first_label;
  std::string last_label;
  double total = 0.0;
};

std::vector<PrintedPeriodTotal> load_period_totals(const std::filesystem::path& path);

/// Figure-style series for plotting: one row per year, value and an
/// optional centered moving average.
struct PlotSeries {
  std::string name;
  std::string unit;
  Provenance provenance = Provenance::Published;
  std::vector<int> years;
  std::vector<std::optional<double>> values;
  std::vector<std::optional<double>> moving_average;  // empty when not computed
};

/// "year,value[,ma3]" with "NA" for gaps.
std::string to_csv(const PlotSeries& series);

/// All bundled tables of the case study.
struct Dataset {
  std::filesystem::path dir;
  SeriesTable rice_price;
  SeriesTable wage;
  SeriesTable land_price;
  SeriesTable shirting_price;
  SeriesTable rice_production;
  SeriesTable rice_area;
  SeriesTable cotton_production;
  SeriesTable cotton_area;
  std::vector<CropArea> crops;
  LaborForce labor;
  MigrationTable skinner_annual;
  MigrationTable skinner_comparison;
  MigrationTable syb_comparison;
  std::vector<PrintedPeriodTotal> skinner_period_totals;
  SeriesTable population;
};

/// Loads the bundled files from `dir`; throws DataError naming the file.
Dataset load_dataset(const std::filesystem::path& dir);

/// Real wage in rice, land price in rice, terms of trade, and rice and
/// cotton yields with their moving averages.
std::vector<PlotSeries> figure_series(const Dataset& data);

/// RYBSIGN_DATA_DIR if set, otherwise the compiled-in default.
std::filesystem::path default_dataset_dir();

}  // namespace rybsign::histdata
