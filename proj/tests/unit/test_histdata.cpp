#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>

#include "common.hpp"
#include "rybsign/error.hpp"
#include "rybsign/histdata.hpp"

using namespace rybsign;
using namespace rybsign::histdata;
using doctest::Approx;

namespace {

// Scratch file removed at scope exit.
struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name, const std::string& text)
      : path(std::filesystem::temp_directory_path() / ("rybsign_test_" + name)) {
    std::ofstream(path) << text;
  }
  ~TempFile() { std::filesystem::remove(path); }
};

std::string header(const std::string& provenance = "published") {
  return "# name: test series\n# unit: baht\n# provenance: " + provenance +
         "\n# columns: year_label,value\n";
}

std::string data_error(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DataError);
    return e.what();
  }
  FAIL("no DataError thrown");
  return {};
}

const Dataset& bundled() {
  static const Dataset d = load_dataset(testing::dataset());
  return d;
}

}  // namespace

TEST_CASE("year labels") {
  const YearLabel cal = YearLabel::parse("1927");
  CHECK(cal.start_year == 1927);
  CHECK(cal.end_year == 1927);
  CHECK(cal.sort_key == 12 * 1927);
  const YearLabel fiscal = YearLabel::parse("1920-1921");
  CHECK(fiscal.start_year == 1920);
  CHECK(fiscal.end_year == 1921);
  CHECK(fiscal.sort_key == 12 * 1920 + 3);
  CHECK(YearLabel::parse("1920-21") == fiscal);
  CHECK(YearLabel::parse("1940 (3/4yr.)").sort_key == 12 * 1940 + 3);
  CHECK(YearLabel::parse("1906 (1/4yr.)").sort_key == 12 * 1906);
  CHECK_THROWS_AS(YearLabel::parse("nineteen"), Error);
}

TEST_CASE("unit conversions") {
  CHECK(picul_to_kg(1.0) == 60.48);
  CHECK(rai_to_hectare(6.25) == 1.0);
}

TEST_CASE("loader rejects malformed files") {
  SUBCASE("empty file") {
    TempFile f("empty.csv", "");
    data_error([&] { load_series(f.path, {}); });
  }
  SUBCASE("header only") {
    TempFile f("header_only.csv", header());
    CHECK(data_error([&] { load_series(f.path, {}); }).find("no records") != std::string::npos);
  }
  SUBCASE("missing provenance") {
    TempFile f("no_prov.csv", "# name: x\n# unit: baht\n# columns: year_label,value\n1920,1\n");
    CHECK(data_error([&] { load_series(f.path, {}); }).find("provenance") != std::string::npos);
  }
  SUBCASE("unknown provenance") {
    TempFile f("bad_prov.csv", header("guessed") + "1920,1\n");
    data_error([&] { load_series(f.path, {}); });
  }
  SUBCASE("duplicate year") {
    TempFile f("dup.csv", header() + "1920,1\n1920,2\n");
    data_error([&] { load_series(f.path, {}); });
  }
  SUBCASE("malformed number") {
    TempFile f("num.csv", header() + "1920,1.2.3\n");
    data_error([&] { load_series(f.path, {}); });
  }
  SUBCASE("wrong unit") {
    TempFile f("unit.csv", header() + "1920,1\n");
    data_error([&] { load_series(f.path, {"baht/picul", "value"}); });
  }
  SUBCASE("wrong record width") {
    TempFile f("width.csv", header() + "1920,1,2\n");
    data_error([&] { load_series(f.path, {}); });
  }
  SUBCASE("missing file") { data_error([] { load_series("/nonexistent/file.csv", {}); }); }
}

TEST_CASE("explicit gaps") {
  TempFile f("gap.csv", header() + "1920,1\n1921,NA\n1922,3\n");
  const SeriesTable t = load_series(f.path, {});
  CHECK(t.rows().size() == 3);
  CHECK_FALSE(t.rows()[1].value.has_value());
  CHECK(t.value_at(1922) == 3.0);
  data_error([&] { t.value_at(1921); });
  data_error([&] { t.value_at(1930); });
}

TEST_CASE("periods") {
  const Period p = Period::parse("1927:1936");
  CHECK(p.start == 1927);
  CHECK(p.end == 1936);
  CHECK(p.to_string() == "1927-1936");
  CHECK_THROWS_AS(Period::parse("1927-1936"), Error);
  CHECK_THROWS_AS(Period::parse("1930:1920"), Error);
}

TEST_CASE("centered moving average") {
  const std::vector<std::optional<double>> lin{1.0, 2.0, 3.0, 4.0, 5.0};
  const auto ma = centered_moving_average(lin);
  CHECK_FALSE(ma.front().has_value());
  CHECK_FALSE(ma.back().has_value());
  for (std::size_t k = 1; k + 1 < lin.size(); ++k) CHECK(*ma[k] == Approx(*lin[k]));

  // Reversing the input reverses the output.
  const std::vector<std::optional<double>> v{3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0};
  std::vector<std::optional<double>> rev(v.rbegin(), v.rend());
  const auto a = centered_moving_average(v), b = centered_moving_average(rev);
  for (std::size_t k = 0; k < v.size(); ++k) {
    REQUIRE(a[k].has_value() == b[v.size() - 1 - k].has_value());
    if (a[k]) CHECK(*a[k] == Approx(*b[v.size() - 1 - k]));
  }
  // A gap blanks its neighbours.
  const auto g = centered_moving_average({1.0, std::nullopt, 3.0, 4.0, 5.0});
  CHECK_FALSE(g[1].has_value());
  CHECK_FALSE(g[2].has_value());
  CHECK(*g[3] == Approx(4.0));
}

TEST_CASE("factor-price changes over 1920-1927") {
  const Dataset& d = bundled();
  const FactorPriceChanges fp = compute_factor_price_changes(d.wage, d.rice_price, d.land_price,
                                                             d.shirting_price, Period{1920, 1927});
  CHECK(fp.p.percent == Approx(176.6).epsilon(0.1 / 176.6));
  CHECK(fp.x.percent == Approx(22.1).epsilon(0.1 / 22.1));
  CHECK(fp.z.percent == Approx(-12.5).epsilon(0.1 / 12.5));
  CHECK(fp.z_plus_p == Approx(164.1).epsilon(0.1 / 164.1));
  CHECK(fp.z_plus_p == fp.z.percent + fp.p.percent);
  data_error([&] {
    compute_factor_price_changes(d.wage, d.rice_price, d.land_price, d.shirting_price, Period{1920, 1928});
  });
}

TEST_CASE("allocation shares from crop areas and the labor force") {
  const LambdaEstimates l = lambda_estimates(bundled().crops, bundled().labor);
  CHECK(l.lambda_t1 == Approx(0.895).epsilon(0.001 / 0.895));
  CHECK(l.lambda_l1 == Approx(0.831).epsilon(0.001 / 0.831));
  CHECK(l.lambda_t1 == l.exportable_area / l.total_area);
}

TEST_CASE("yield trends by period") {
  const Dataset& d = bundled();
  auto rice = [&](Period p) { return yield_trend_sign("rice", d.rice_production, d.rice_area, p).a_t_hat; };
  auto cotton = [&](Period p) {
    return yield_trend_sign("cotton", d.cotton_production, d.cotton_area, p).a_t_hat;
  };
  CHECK(rice({1920, 1927}) == Sign::Positive);
  CHECK(rice({1927, 1929}) == Sign::Positive);
  CHECK(rice({1929, 1932}) == Sign::Negative);
  CHECK(rice({1932, 1936}) == Sign::Positive);
  CHECK(cotton({1920, 1927}) == Sign::Positive);
  CHECK(cotton({1927, 1936}) == Sign::Negative);
  const YieldTrend t = yield_trend_sign("cotton", d.cotton_production, d.cotton_area, {1920, 1927});
  CHECK(t.start_yield == Approx(110.0));
  CHECK(t.end_yield == Approx(90.0));
}

TEST_CASE("migration totals and shares of population growth") {
  const Dataset& d = bundled();
  const auto& rows = d.skinner_comparison.rows;
  const MigrationTotals sk = migration_totals(d.skinner_comparison, rows.front().label.text, rows.back().label.text);
  const MigrationTotals syb = migration_totals(d.syb_comparison, rows.front().label.text, rows.back().label.text);
  CHECK(sk.arrivals == 1448700.0);
  CHECK(sk.departures == 940700.0);
  CHECK(sk.net == 508000.0);
  CHECK(syb.net == 437738.0);
  CHECK(sk.net - syb.net == 70262.0);

  const MigrationRatio a = migration_analysis(d.skinner_annual, d.population, "1920-1921", "1926-1927");
  CHECK(a.net == Approx(236.2));
  CHECK(a.population_start_year == 1920);
  CHECK(a.population_end_year == 1927);
  CHECK(a.percent == Approx(15.2).epsilon(0.1 / 15.2));
  const MigrationRatio b = migration_analysis(d.skinner_annual, d.population, "1900", "1929-1930");
  CHECK(b.net == Approx(740.0));
  CHECK(b.percent == Approx(13.0).epsilon(0.1 / 13.0));

  for (const auto& t : d.skinner_period_totals)
    CHECK(migration_totals(d.skinner_annual, t.first_label, t.last_label).net == Approx(t.total).epsilon(1e-9));
  CHECK(d.skinner_annual.max_net_deviation() < 1e-9);
  data_error([&] { migration_totals(d.skinner_annual, "1800", "1900"); });
}

TEST_CASE("figure series") {
  const auto series = figure_series(bundled());
  REQUIRE(series.size() == 5);
  CHECK(series[2].name == "terms of trade");
  CHECK(series[2].values.front().has_value());
  CHECK(series[3].moving_average.size() == series[3].values.size());
  const std::string csv = to_csv(series[3]);
  CHECK(csv.rfind("year,value,ma3\n", 0) == 0);
  CHECK(csv.find("NA") != std::string::npos);  // MA blank at the ends
}

TEST_CASE("dataset directory") {
  CHECK(std::filesystem::exists(default_dataset_dir()));
  data_error([] { load_dataset("/nonexistent"); });
}
