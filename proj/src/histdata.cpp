#include "rybsign/histdata.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include <fmt/format.h>

#include "rybsign/error.hpp"

#ifndef RYBSIGN_DEFAULT_DATA_DIR
#define RYBSIGN_DEFAULT_DATA_DIR "data/thailand"
#endif

namespace rybsign::histdata {

namespace {

[[noreturn]] void data_error(const std::filesystem::path& path, const std::string& what) {
  throw Error(ErrorCode::DataError, path.filename().string() + ": " + what);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) out.push_back(trim(cell));
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::optional<double> parse_number(const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

bool is_gap(const std::string& text) { return text == "NA" || text.empty(); }

double require_number(const DataFile& f, const std::string& text, const std::string& what) {
  const auto v = parse_number(text);
  if (!v) data_error(f.path, "malformed " + what + " '" + text + "'");
  return *v;
}

void check_increasing(const std::filesystem::path& path, const std::vector<YearLabel>& labels) {
  for (std::size_t k = 1; k < labels.size(); ++k)
    if (labels[k].sort_key <= labels[k - 1].sort_key)
      data_error(path, "year labels not strictly increasing at '" + labels[k].text + "'");
}

const MigrationRow& find_migration_row(const MigrationTable& table, const std::string& label,
                                       std::size_t* index) {
  const YearLabel want = YearLabel::parse(label);
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    if (table.rows[k].label == want) {
      *index = k;
      return table.rows[k];
    }
  }
  throw Error(ErrorCode::DataError, table.name + ": no row labelled '" + label + "'");
}

}  // namespace

std::string_view to_string(Provenance p) {
  return p == Provenance::Published ? "published" : "reconstructed";
}

// --- labels -------------------------------------------------------------------

YearLabel YearLabel::parse(const std::string& raw) {
  static const std::regex calendar(R"(^(\d{4})$)");
  static const std::regex fiscal(R"(^(\d{4})\s*-\s*(\d{2}|\d{4})$)");
  static const std::regex partial(R"(^(\d{4})\s*\((1/4|3/4)\s*yr\.?\)$)");
  const std::string text = trim(raw);
  std::smatch m;
  YearLabel out;
  out.text = text;
  if (std::regex_match(text, m, calendar)) {
    out.start_year = out.end_year = std::stoi(m[1]);
    out.sort_key = 12 * out.start_year;
  } else if (std::regex_match(text, m, fiscal)) {
    out.start_year = std::stoi(m[1]);
    const std::string tail = m[2];
    out.end_year = tail.size() == 4 ? std::stoi(tail) : out.start_year / 100 * 100 + std::stoi(tail);
    if (out.end_year != out.start_year + 1)
      throw Error(ErrorCode::ParseError, "fiscal label must span one year: '" + text + "'");
    out.sort_key = 12 * out.start_year + 3;
  } else if (std::regex_match(text, m, partial)) {
    out.start_year = out.end_year = std::stoi(m[1]);
    // January-March precedes the April start of the fiscal year.
    out.sort_key = 12 * out.start_year + (m[2] == "1/4" ? 0 : 3);
  } else {
    throw Error(ErrorCode::ParseError, "unrecognised year label '" + text + "'");
  }
  return out;
}

Period Period::parse(const std::string& text) {
  static const std::regex re(R"(^\s*(\d{4})\s*:\s*(\d{4})\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re))
    throw Error(ErrorCode::ParseError, "period must look like START:END, got '" + text + "'");
  Period p{std::stoi(m[1]), std::stoi(m[2])};
  if (p.end <= p.start) throw Error(ErrorCode::ParseError, "period end must follow its start");
  return p;
}

std::string Period::to_string() const {
  return std::to_string(start) + "-" + std::to_string(end);
}

// --- files --------------------------------------------------------------------

std::size_t DataFile::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) data_error(path, "no column '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

DataFile read_data_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) data_error(path, "cannot open file");
  DataFile f;
  f.path = path;
  std::map<std::string, std::string> header;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      const auto colon = t.find(':');
      if (colon == std::string::npos) continue;
      header[trim(t.substr(1, colon - 1))] = trim(t.substr(colon + 1));
      continue;
    }
    f.records.push_back(split(t, ','));
  }
  for (const char* key : {"name", "unit", "provenance", "columns"})
    if (!header.count(key) || header[key].empty())
      data_error(path, std::string("missing '# ") + key + ":' header");
  f.name = header["name"];
  f.unit = header["unit"];
  f.source = header.count("source") ? header["source"] : "";
  const std::string prov = header["provenance"];
  if (prov == "published")
    f.provenance = Provenance::Published;
  else if (prov == "reconstructed")
    f.provenance = Provenance::Reconstructed;
  else
    data_error(path, "unknown provenance tag '" + prov + "'");
  f.columns = split(header["columns"], ',');
  if (f.records.empty()) data_error(path, "no records");
  for (const auto& r : f.records)
    if (r.size() != f.columns.size())
      data_error(path, "record '" + r.front() + "' has " + std::to_string(r.size()) +
                           " fields, expected " + std::to_string(f.columns.size()));
  return f;
}

// --- series -------------------------------------------------------------------

SeriesTable::SeriesTable(std::string name, std::string unit, Provenance provenance,
                         std::string source, std::vector<SeriesRow> rows)
    : name_(std::move(name)),
      unit_(std::move(unit)),
      provenance_(provenance),
      source_(std::move(source)),
      rows_(std::move(rows)) {}

const SeriesRow* SeriesTable::find_year(int year) const {
  for (const auto& r : rows_)
    if (r.label.start_year == year) return &r;
  return nullptr;
}

const SeriesRow* SeriesTable::find_label(const std::string& label) const {
  const YearLabel want = YearLabel::parse(label);
  for (const auto& r : rows_)
    if (r.label == want) return &r;
  return nullptr;
}

double SeriesTable::value_at(int year) const {
  const SeriesRow* r = find_year(year);
  if (!r) throw Error(ErrorCode::DataError, name_ + ": no value for " + std::to_string(year));
  if (!r->value) throw Error(ErrorCode::DataError, name_ + ": gap at " + std::to_string(year));
  return *r->value;
}

SeriesTable load_series(const std::filesystem::path& path, const SeriesSchema& schema) {
  const DataFile f = read_data_file(path);
  if (!schema.unit.empty() && f.unit != schema.unit)
    data_error(path, "unit '" + f.unit + "' does not match expected '" + schema.unit + "'");
  const std::size_t label_col = f.column("year_label");
  const std::size_t value_col = f.column(schema.column);
  std::vector<SeriesRow> rows;
  std::vector<YearLabel> labels;
  for (const auto& r : f.records) {
    SeriesRow row;
    try {
      row.label = YearLabel::parse(r[label_col]);
    } catch (const Error& e) {
      data_error(path, e.what());
    }
    if (!is_gap(r[value_col])) row.value = require_number(f, r[value_col], "value");
    labels.push_back(row.label);
    rows.push_back(std::move(row));
  }
  check_increasing(path, labels);
  return SeriesTable(f.name, f.unit, f.provenance, f.source, std::move(rows));
}

PeriodChange ratio_change(const std::string& quantity, const std::string& formula,
                          const SeriesTable& num, const SeriesTable& den, Period period) {
  PeriodChange c;
  c.quantity = quantity;
  c.formula = formula;
  c.start_year = period.start;
  c.end_year = period.end;
  c.start_level = num.value_at(period.start) / den.value_at(period.start);
  c.end_level = num.value_at(period.end) / den.value_at(period.end);
  c.percent = (c.end_level / c.start_level - 1.0) * 100.0;
  return c;
}

SeriesTable ratio_series(const std::string& name, const std::string& unit, const SeriesTable& num,
                         const SeriesTable& den, double scale) {
  std::vector<SeriesRow> rows;
  for (const auto& r : num.rows()) {
    const SeriesRow* d = den.find_year(r.label.start_year);
    if (!d) continue;
    SeriesRow row{r.label, std::nullopt};
    if (r.value && d->value && *d->value != 0.0) row.value = scale * *r.value / *d->value;
    rows.push_back(row);
  }
  return SeriesTable(name, unit, std::max(num.provenance(), den.provenance()),
                     num.name() + " / " + den.name(), std::move(rows));
}

FactorPriceChanges compute_factor_price_changes(const SeriesTable& wage,
                                                const SeriesTable& rice_price,
                                                const SeriesTable& land_price,
                                                const SeriesTable& shirting_price, Period period) {
  FactorPriceChanges out;
  // baht/picul over baht/kg is kg of shirting per picul of rice.
  out.p = ratio_change("P", "rice price / white shirting price (kg per picul)", rice_price,
                       shirting_price, period);
  out.x = ratio_change("X", "land price / rice price", land_price, rice_price, period);
  out.z = ratio_change("Z", "wage / rice price", wage, rice_price, period);
  out.z_plus_p = out.z.percent + out.p.percent;
  return out;
}

// --- yields -------------------------------------------------------------------

std::vector<std::optional<double>> centered_moving_average(
    const std::vector<std::optional<double>>& values) {
  std::vector<std::optional<double>> out(values.size());
  for (std::size_t k = 1; k + 1 < values.size(); ++k)
    if (values[k - 1] && values[k] && values[k + 1])
      out[k] = (*values[k - 1] + *values[k] + *values[k + 1]) / 3.0;
  return out;
}

SeriesTable yield_series(const std::string& crop, const SeriesTable& production,
                         const SeriesTable& area) {
  std::vector<SeriesRow> rows;
  for (const auto& r : production.rows()) {
    const SeriesRow* a = area.find_year(r.label.start_year);
    if (!a) continue;
    SeriesRow row{r.label, std::nullopt};
    if (r.value && a->value && *a->value > 0.0) row.value = picul_to_kg(*r.value) / *a->value;
    rows.push_back(row);
  }
  return SeriesTable(crop + " yield", "kg/rai",
                     std::max(production.provenance(), area.provenance()),
                     "production (picul x 60.48 kg) / area sown (rai)", std::move(rows));
}

YieldTrend yield_trend_sign(const std::string& crop, const SeriesTable& production,
                            const SeriesTable& area, Period period, TrendMethod method) {
  const SeriesTable yields = yield_series(crop, production, area);
  YieldTrend t;
  t.crop = crop;
  t.method = method;
  t.period = period;

  std::map<int, std::optional<double>> by_year;
  for (const auto& r : yields.rows()) by_year[r.label.start_year] = r.value;
  auto at = [&](int year) -> std::optional<double> {
    const auto it = by_year.find(year);
    return it == by_year.end() ? std::nullopt : it->second;
  };
  auto level = [&](int year) {
    if (method == TrendMethod::RawEndpoints) {
      const auto v = at(year);
      if (!v) throw Error(ErrorCode::DataError, crop + " yield missing for " + std::to_string(year));
      return *v;
    }
    const auto ma = centered_moving_average({at(year - 1), at(year), at(year + 1)})[1];
    if (!ma)
      throw Error(ErrorCode::DataError,
                  crop + " yield lacks a full 3-year window around " + std::to_string(year));
    return *ma;
  };
  t.start_yield = level(period.start);
  t.end_yield = level(period.end);
  // Relative threshold so the sign does not depend on the unit of yield.
  t.trend = sign_of((t.end_yield - t.start_yield) / t.start_yield);
  t.a_t_hat = negate(t.trend);
  return t;
}

// --- allocation shares --------------------------------------------------------

std::vector<CropArea> load_crop_areas(const std::filesystem::path& path) {
  const DataFile f = read_data_file(path);
  const std::size_t crop = f.column("crop"), area = f.column("area_sown"),
                    cls = f.column("class"), year = f.column("reference_year");
  std::vector<CropArea> out;
  for (const auto& r : f.records) {
    CropArea c;
    c.crop = r[crop];
    c.area = require_number(f, r[area], "area");
    if (r[cls] == "E")
      c.crop_class = CropClass::Exportable;
    else if (r[cls] == "I")
      c.crop_class = CropClass::Importable;
    else
      data_error(path, "crop '" + c.crop + "' is not classified as E or I");
    c.reference_year = r[year];
    out.push_back(c);
  }
  return out;
}

LaborForce load_labor_force(const std::filesystem::path& path) {
  const DataFile f = read_data_file(path);
  const std::size_t group = f.column("group"), persons = f.column("persons");
  std::optional<double> agriculture, total;
  for (const auto& r : f.records) {
    if (r[group] == "agriculture") agriculture = require_number(f, r[persons], "count");
    if (r[group] == "total") total = require_number(f, r[persons], "count");
  }
  if (!agriculture || !total) data_error(path, "needs 'agriculture' and 'total' rows");
  return {*agriculture, *total};
}

LambdaEstimates lambda_estimates(const std::vector<CropArea>& crops, const LaborForce& labor) {
  LambdaEstimates out;
  for (const auto& c : crops) {
    out.total_area += c.area;
    if (c.crop_class == CropClass::Exportable) out.exportable_area += c.area;
  }
  if (!(out.total_area > 0.0) || !(labor.total > 0.0))
    throw Error(ErrorCode::DataError, "allocation-share estimates need positive totals");
  out.lambda_t1 = out.exportable_area / out.total_area;
  out.agricultural_labor = labor.agriculture;
  out.total_labor = labor.total;
  out.lambda_l1 = labor.agriculture / labor.total;
  return out;
}

// --- migration ----------------------------------------------------------------

double MigrationTable::max_net_deviation() const {
  double dev = 0.0;
  for (const auto& r : rows) dev = std::max(dev, std::abs(r.arrivals - r.departures - r.net));
  return dev;
}

MigrationTable load_migration(const std::filesystem::path& path, const std::string& prefix) {
  const DataFile f = read_data_file(path);
  const std::size_t label = f.column("year_label"), arr = f.column(prefix + "arrivals"),
                    dep = f.column(prefix + "departures"), net = f.column(prefix + "net_arrivals");
  MigrationTable t;
  t.name = f.name;
  t.unit = f.unit;
  std::vector<YearLabel> labels;
  for (const auto& r : f.records) {
    MigrationRow row;
    try {
      row.label = YearLabel::parse(r[label]);
    } catch (const Error& e) {
      data_error(path, e.what());
    }
    row.arrivals = require_number(f, r[arr], "arrivals");
    row.departures = require_number(f, r[dep], "departures");
    row.net = require_number(f, r[net], "net arrivals");
    labels.push_back(row.label);
    t.rows.push_back(row);
  }
  check_increasing(path, labels);
  return t;
}

MigrationTotals migration_totals(const MigrationTable& table, const std::string& first,
                                 const std::string& last) {
  std::size_t lo = 0, hi = 0;
  find_migration_row(table, first, &lo);
  find_migration_row(table, last, &hi);
  if (hi < lo) throw Error(ErrorCode::DataError, "period '" + first + "' to '" + last + "' is empty");
  MigrationTotals out;
  for (std::size_t k = lo; k <= hi; ++k) {
    out.arrivals += table.rows[k].arrivals;
    out.departures += table.rows[k].departures;
    out.net += table.rows[k].net;
  }
  return out;
}

MigrationRatio migration_analysis(const MigrationTable& migration, const SeriesTable& population,
                                  const std::string& first, const std::string& last) {
  if (migration.unit != population.unit())
    throw Error(ErrorCode::DataError, "migration unit '" + migration.unit +
                                          "' differs from population unit '" + population.unit() +
                                          "'");
  MigrationRatio out;
  out.first_label = first;
  out.last_label = last;
  out.net = migration_totals(migration, first, last).net;
  out.population_start_year = YearLabel::parse(first).start_year;
  out.population_end_year = YearLabel::parse(last).end_year;
  out.population_start = population.value_at(out.population_start_year);
  out.population_end = population.value_at(out.population_end_year);
  out.growth = out.population_end - out.population_start;
  if (out.growth == 0.0) throw Error(ErrorCode::DataError, "no population growth over the period");
  out.percent = out.net / out.growth * 100.0;
  return out;
}

std::vector<PrintedPeriodTotal> load_period_totals(const std::filesystem::path& path) {
  const DataFile f = read_data_file(path);
  const std::size_t first = f.column("first_label"), last = f.column("last_label"),
                    total = f.column("total_net_arrivals");
  std::vector<PrintedPeriodTotal> out;
  for (const auto& r : f.records)
    out.push_back({r[first], r[last], require_number(f, r[total], "total")});
  return out;
}

// --- dataset ------------------------------------------------------------------

Dataset load_dataset(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw Error(ErrorCode::DataError, "dataset directory '" + dir.string() + "' not found");
  auto series = [&](const char* file, const char* unit, const char* column = "value") {
    return load_series(dir / file, {unit, column});
  };
  return Dataset{
      dir,
      series("rice_price.csv", "baht/picul"),
      series("coolie_wage.csv", "baht/day"),
      series("land_price.csv", "baht/rai"),
      series("white_shirting_price.csv", "baht/kg"),
      series("rice_production.csv", "picul"),
      series("rice_area.csv", "rai"),
      series("cotton_production.csv", "picul"),
      series("cotton_area.csv", "rai"),
      load_crop_areas(dir / "crop_area_1927.csv"),
      load_labor_force(dir / "labor_force_1929.csv"),
      load_migration(dir / "chinese_migration_skinner_1900_1955.csv"),
      load_migration(dir / "chinese_migration_comparison_1918_1935.csv", "skinner_"),
      load_migration(dir / "chinese_migration_comparison_1918_1935.csv", "syb_"),
      load_period_totals(dir / "chinese_migration_skinner_period_totals.csv"),
      series("population_1900_1950.csv", "thousands of persons", "kobayashi"),
  };
}

std::filesystem::path default_dataset_dir() {
  if (const char* env = std::getenv("RYBSIGN_DATA_DIR"); env && *env) return env;
  return RYBSIGN_DEFAULT_DATA_DIR;
}

std::string to_csv(const PlotSeries& series) {
  const bool ma = !series.moving_average.empty();
  std::string out = ma ? "year,value,ma3\n" : "year,value\n";
  auto cell = [](const std::optional<double>& v) { return v ? fmt::format("{}", *v) : std::string("NA"); };
  for (std::size_t k = 0; k < series.years.size(); ++k) {
    out += fmt::format("{},{}", series.years[k], cell(series.values[k]));
    if (ma) out += "," + cell(series.moving_average[k]);
    out += "\n";
  }
  return out;
}

std::vector<PlotSeries> figure_series(const Dataset& data) {
  auto plot = [](const SeriesTable& t, bool with_ma) {
    PlotSeries p{t.name(), t.unit(), t.provenance(), {}, {}, {}};
    for (const auto& r : t.rows()) {
      p.years.push_back(r.label.start_year);
      p.values.push_back(r.value);
    }
    if (with_ma) p.moving_average = centered_moving_average(p.values);
    return p;
  };
  return {
      plot(ratio_series("real wage in rice", "kg/day", data.wage, data.rice_price, kKgPerPicul), false),
      plot(ratio_series("land price in rice", "kg/rai", data.land_price, data.rice_price, kKgPerPicul),
           false),
      plot(ratio_series("terms of trade", "kg of white shirting per picul of rice", data.rice_price,
                        data.shirting_price),
           false),
      plot(yield_series("rice", data.rice_production, data.rice_area), true),
      plot(yield_series("cotton", data.cotton_production, data.cotton_area), true),
  };
}

}  // namespace rybsign::histdata
