// rybsign: case study, single-economy analysis, oracle validation, data
// pipeline and plot export.
//
// Exit codes: 0 success, 1 usage error, 2 premise failure, 3 data error,
// 4 validation failure.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "rybsign/analysis.hpp"
#include "rybsign/case_study.hpp"
#include "rybsign/economy_io.hpp"
#include "rybsign/error.hpp"
#include "rybsign/histdata.hpp"
#include "rybsign/validation.hpp"

namespace fs = std::filesystem;
using namespace rybsign;

namespace {

enum Exit { kOk = 0, kUsage = 1, kPremise = 2, kData = 3, kValidation = 4 };

struct Output {
  std::string format = "text";
  std::string out;
};

void add_output_flags(CLI::App* app, Output& o) {
  app->add_option("--format", o.format, "text or structured")
      ->check(CLI::IsMember({"text", "structured"}));
  app->add_option("--out", o.out, "write the report to PATH instead of stdout");
}

void emit(const Report& report, const Output& o) {
  const std::string text =
      o.format == "structured" ? report.to_json().dump(2) + "\n" : report.to_text();
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw Error(ErrorCode::DataError, "cannot write '" + o.out + "'");
  f << text;
}

fs::path dataset_dir(const std::string& flag) {
  return flag.empty() ? histdata::default_dataset_dir() : fs::path(flag);
}

int data_command(const std::string& dir_flag, const std::string& period_text, const Output& o) {
  const histdata::Period period = histdata::Period::parse(period_text);
  const histdata::Dataset d = histdata::load_dataset(dataset_dir(dir_flag));
  Report r("Data pipeline, " + period.to_string());

  const std::string prices = "Factor prices and terms of trade";
  const auto fp =
      histdata::compute_factor_price_changes(d.wage, d.rice_price, d.land_price, d.shirting_price, period);
  for (const auto* c : {&fp.p, &fp.x, &fp.z})
    r.add(prices, {c->quantity, c->percent, percent_text(c->percent), tag::kReconstructed,
                   fmt::format("{}: {} -> {}", c->formula, number_text(c->start_level),
                               number_text(c->end_level))});
  r.add(prices, {"Z + P", fp.z_plus_p, percent_text(fp.z_plus_p), tag::kComputed, "additive"});

  const std::string alloc = "Allocation shares";
  const auto lam = histdata::lambda_estimates(d.crops, d.labor);
  r.add(alloc, {"lambda_T1", lam.lambda_t1, fmt::format("{:.4f}", lam.lambda_t1), tag::kComputed,
                fmt::format("{:.0f} / {:.0f} rai", lam.exportable_area, lam.total_area)});
  r.add(alloc, {"lambda_L1", lam.lambda_l1, fmt::format("{:.4f}", lam.lambda_l1), tag::kComputed,
                fmt::format("{:.0f} / {:.0f} persons", lam.agricultural_labor, lam.total_labor)});

  const std::string yields = "Yield trends";
  for (auto method : {histdata::TrendMethod::MovingAverage, histdata::TrendMethod::RawEndpoints}) {
    const char* how = method == histdata::TrendMethod::MovingAverage ? "3-year MA" : "raw endpoints";
    for (const auto& [crop, prod, area] :
         {std::tuple{"rice", &d.rice_production, &d.rice_area},
          std::tuple{"cotton", &d.cotton_production, &d.cotton_area}}) {
      try {
        const auto t = histdata::yield_trend_sign(crop, *prod, *area, period, method);
        r.add(yields, {fmt::format("{} ({})", crop, how), std::string(symbol(t.trend)),
                       fmt::format("{:.2f} -> {:.2f} kg/rai, trend {}, a_T* {}", t.start_yield,
                                   t.end_yield, symbol(t.trend), symbol(t.a_t_hat)),
                       tag::kReconstructed, "yield = production / area"});
      } catch (const Error& e) {
        r.note(yields, fmt::format("{} ({}): {}", crop, how, e.what()));
      }
    }
  }

  const std::string mig = "Chinese migration";
  const auto& rows = d.skinner_comparison.rows;
  const std::string first = rows.front().label.text, last = rows.back().label.text;
  const auto sk = histdata::migration_totals(d.skinner_comparison, first, last);
  const auto syb = histdata::migration_totals(d.syb_comparison, first, last);
  r.add(mig, {"Skinner net " + first + " to " + last, sk.net, fmt::format("{:.0f}", sk.net),
              tag::kComputed, "sum of published rows"});
  r.add(mig, {"SYB net " + first + " to " + last, syb.net, fmt::format("{:.0f}", syb.net),
              tag::kComputed, "sum of published rows"});
  for (const auto& t : d.skinner_period_totals) {
    const auto mt = histdata::migration_totals(d.skinner_annual, t.first_label, t.last_label);
    r.add(mig, {fmt::format("period {} to {}", t.first_label, t.last_label), mt.net,
                fmt::format("{:.1f} (printed {:.1f})", mt.net, t.total), tag::kComputed,
                "sum of annual net arrivals, thousands"});
  }
  r.add(mig, {"net identity deviation", d.skinner_annual.max_net_deviation(),
              fmt::format("{:.1e}", d.skinner_annual.max_net_deviation()), tag::kComputed,
              "max |arrivals - departures - net|"});
  emit(r, o);
  return kOk;
}

int export_plot(const std::string& dir_flag, const Output& o) {
  const histdata::Dataset d = histdata::load_dataset(dataset_dir(dir_flag));
  const auto series = histdata::figure_series(d);
  if (o.format == "structured") {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& s : series) {
      nlohmann::ordered_json j;
      j["name"] = s.name;
      j["unit"] = s.unit;
      j["provenance"] = std::string(histdata::to_string(s.provenance));
      j["years"] = s.years;
      auto column = [](const std::vector<std::optional<double>>& v) {
        nlohmann::ordered_json a = nlohmann::ordered_json::array();
        for (const auto& x : v) a.push_back(x ? nlohmann::ordered_json(*x) : nullptr);
        return a;
      };
      j["values"] = column(s.values);
      if (!s.moving_average.empty()) j["ma3"] = column(s.moving_average);
      doc.push_back(std::move(j));
    }
    const std::string text = doc.dump(2) + "\n";
    if (o.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(o.out);
      if (!f) throw Error(ErrorCode::DataError, "cannot write '" + o.out + "'");
      f << text;
    }
    return kOk;
  }
  const fs::path dir = o.out.empty() ? fs::path("plots") : fs::path(o.out);
  fs::create_directories(dir);
  for (const auto& s : series) {
    std::string file = s.name;
    for (char& c : file)
      if (c == ' ') c = '_';
    const fs::path path = dir / (file + ".csv");
    std::ofstream f(path);
    if (!f) throw Error(ErrorCode::DataError, "cannot write '" + path.string() + "'");
    f << fmt::format("# name: {}\n# unit: {}\n# provenance: {}\n", s.name, s.unit,
                     histdata::to_string(s.provenance))
      << histdata::to_csv(s);
    std::cout << path.string() << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rybczynski sign patterns in a three-factor, two-good economy"};
  app.require_subcommand(1);

  // case-study
  auto* cs = app.add_subcommand("case-study", "Thailand 1920-1927 inference chain");
  std::string config_path, cs_dir, cs_period;
  Output cs_out;
  cs->add_option("--config", config_path, "INI file with [case], [shares], [scenarios], [override]")
      ->check(CLI::ExistingFile);
  cs->add_option("--dataset-dir", cs_dir, "directory of the bundled CSV files");
  cs->add_option("--period", cs_period, "START:END");
  add_output_flags(cs, cs_out);

  // analyze
  auto* an = app.add_subcommand("analyze", "EWS report and sign matrices for one economy file");
  std::string economy_path;
  Output an_out;
  an->add_option("economy", economy_path, "INI economy or [gl] document")->required();
  add_output_flags(an, an_out);

  // validate
  auto* va = app.add_subcommand("validate", "seeded oracle validation batch");
  std::uint64_t seed = 42;
  int n = 1000;
  bool any_quadrant = false, all_substitutes = false;
  std::string middle;
  Output va_out;
  va->add_option("--seed", seed, "batch seed");
  va->add_option("--n", n, "number of economies");
  va->add_flag("--any-quadrant", any_quadrant, "drop the quadrant IV constraint");
  va->add_flag("--all-substitutes", all_substitutes, "non-negative off-diagonal GL coefficients");
  va->add_option("--middle", middle, "require the middle factor used intensively in this good")
      ->check(CLI::IsMember({"exportable", "importable"}));
  add_output_flags(va, va_out);

  // data
  auto* da = app.add_subcommand("data", "data pipeline computations only");
  std::string da_dir, da_period = "1920:1927";
  Output da_out;
  da->add_option("--dataset-dir", da_dir, "directory of the bundled CSV files");
  da->add_option("--period", da_period, "START:END");
  add_output_flags(da, da_out);

  // export-plot
  auto* ep = app.add_subcommand("export-plot", "figure-style series as CSV files");
  std::string ep_dir;
  Output ep_out;
  ep->add_option("--dataset-dir", ep_dir, "directory of the bundled CSV files");
  add_output_flags(ep, ep_out);
  ep_out.format = "text";

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*cs) {
      CaseStudyConfig config = config_path.empty() ? CaseStudyConfig{} : CaseStudyConfig::load(config_path);
      if (!cs_dir.empty())
        config.dataset_dir = cs_dir;
      else if (config.dataset_dir.empty())
        config.dataset_dir = histdata::default_dataset_dir();
      if (!cs_period.empty()) config.period = histdata::Period::parse(cs_period);
      const Verdict v = run_case_study(config);
      emit(verdict_report(v), cs_out);
      if (!v.ok()) {
        std::cerr << "premise failed: " << *v.halted_at << "\n";
        return kPremise;
      }
      return kOk;
    }
    if (*an) {
      const io::EconomyDocument doc = io::load_document(economy_path);
      if (doc.economy) {
        emit(economy_report(*doc.economy), an_out);
      } else {
        const auto snap = oracle::solve_equilibrium(*doc.gl);
        emit(economy_report(snap.economy, snap), an_out);
      }
      return kOk;
    }
    if (*va) {
      if (n < 1) {
        std::cerr << "usage error: --n must be at least 1\n";
        return kUsage;
      }
      ValidationOptions opts;
      opts.seed = seed;
      opts.n = n;
      opts.constraints.quadrant_iv = !any_quadrant;
      if (all_substitutes) opts.constraints.form = oracle::CoefficientForm::AllSubstitutes;
      if (middle == "exportable") opts.constraints.middle_intensity = MiddleIntensity::Exportable;
      if (middle == "importable") opts.constraints.middle_intensity = MiddleIntensity::Importable;
      const ValidationSummary s = run_validation(opts);
      emit(validation_report(s), va_out);
      return s.passed() ? kOk : kValidation;
    }
    if (*da) return data_command(da_dir, da_period, da_out);
    if (*ep) return export_plot(ep_dir, ep_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::SamplerExhausted ? kValidation : kData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  }
  return kUsage;
}
