#include "rybsign/case_study.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <algorithm>
#include <fstream>
#include <sstream>

#include "rybsign/error.hpp"

namespace rybsign {

namespace {

namespace pt = boost::property_tree;

std::string letters_text(const std::set<TripleLetter>& set) {
  std::string out = "{";
  for (TripleLetter l : set) {
    if (out.size() > 1) out += ", ";
    out += letter_char(l);
  }
  return out + "}";
}

std::string triple_text(const PerFactor<Sign>& s) {
  return fmt::format("({}, {}, {})", symbol(s[0]), symbol(s[1]), symbol(s[2]));
}

std::string sign_str(Sign s) { return std::string(symbol(s)); }

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size())
    throw Error(ErrorCode::ParseError, what + " is not a number: '" + text + "'");
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

// Fiscal labels covering a calendar period, e.g. 1920-1927 -> 1920-1921 .. 1926-1927.
MigrationPeriod fiscal_cover(const histdata::Period& p) {
  return {fmt::format("{}-{}", p.start, p.start + 1), fmt::format("{}-{}", p.end - 1, p.end)};
}

void add_premise(Verdict& v, const std::string& name, bool holds, const std::string& detail) {
  v.premises.push_back({name, holds, detail});
  if (!holds && !v.halted_at) v.halted_at = name;
}

}  // namespace

Sign parse_sign(const std::string& text) {
  const std::string t = trim(text);
  if (t == "+") return Sign::Positive;
  if (t == "-") return Sign::Negative;
  if (t == "0") return Sign::Zero;
  if (t == "?") return Sign::Unknown;
  throw Error(ErrorCode::ParseError, "sign must be one of + - 0 ?, got '" + text + "'");
}

CaseStudyConfig CaseStudyConfig::load(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw Error(ErrorCode::DataError, "cannot open '" + path.string() + "'");
  // '#' comment lines are accepted alongside the INI reader's ';'.
  std::ostringstream cleaned;
  std::string line;
  while (std::getline(file, line)) {
    const auto first = line.find_first_not_of(" \t");
    if (first != std::string::npos && line[first] == '#') continue;
    cleaned << line << '\n';
  }
  pt::ptree root;
  std::istringstream src(cleaned.str());
  try {
    pt::ini_parser::read_ini(src, root);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::ParseError,
                e.message() + " at line " + std::to_string(e.line()) + " of " + path.string());
  }
  CaseStudyConfig c;
  auto get = [&](const char* sec, const char* key) -> std::optional<std::string> {
    const auto s = root.get_child_optional(pt::ptree::path_type(sec, '/'));
    if (!s) return std::nullopt;
    const auto v = s->get_optional<std::string>(pt::ptree::path_type(key, '/'));
    if (!v) return std::nullopt;
    return trim(*v);
  };
  if (auto v = get("case", "period")) c.period = histdata::Period::parse(*v);
  if (auto v = get("case", "dataset_dir")) {
    c.dataset_dir = *v;
    if (c.dataset_dir.is_relative()) c.dataset_dir = path.parent_path() / c.dataset_dir;
  }
  if (auto v = get("case", "middle_intensity")) {
    if (*v == "exportable")
      c.middle_intensity = MiddleIntensity::Exportable;
    else if (*v == "importable")
      c.middle_intensity = MiddleIntensity::Importable;
    else
      throw Error(ErrorCode::ParseError, "middle_intensity must be exportable or importable");
  }
  for (Factor i : kFactors) {
    const std::string key = "theta_" + std::string(symbol(i)) + "1";
    if (auto v = get("shares", key.c_str())) c.theta_sector1[idx(i)] = parse_double(*v, key);
  }
  if (auto v = get("scenarios", "theta_1")) {
    c.assumed_theta1.clear();
    std::stringstream ss(*v);
    std::string item;
    while (std::getline(ss, item, ',')) c.assumed_theta1.push_back(parse_double(trim(item), "theta_1"));
    if (c.assumed_theta1.empty()) throw Error(ErrorCode::ParseError, "no theta_1 scenarios");
  }
  if (auto v = get("override", "P")) c.override_p = parse_double(*v, "override P");
  if (auto v = get("override", "X")) c.override_x = parse_double(*v, "override X");
  if (auto v = get("override", "Z")) c.override_z = parse_double(*v, "override Z");
  if (auto v = get("override", "a_T1_sign")) c.override_a_t1 = parse_sign(*v);
  if (auto v = get("override", "a_T2_sign")) c.override_a_t2 = parse_sign(*v);
  return c;
}

PerFactor<double> calibrate_sector2(const PerFactor<double>& theta_sector1, double theta1,
                                    double lambda_t1, double lambda_l1) {
  if (!(theta1 > 0.0 && theta1 < 1.0))
    throw Error(ErrorCode::InvalidShares, "assumed theta_1 must lie in (0, 1)");
  const double theta2 = 1.0 - theta1;
  // lambda_i1 = theta_1 theta_i1 / (theta_1 theta_i1 + theta_2 theta_i2)
  auto solve = [&](Factor i, double lambda) {
    return theta1 * theta_sector1[idx(i)] * (1.0 - lambda) / (theta2 * lambda);
  };
  PerFactor<double> out{};
  out[idx(Factor::Land)] = solve(Factor::Land, lambda_t1);
  out[idx(Factor::Labor)] = solve(Factor::Labor, lambda_l1);
  out[idx(Factor::Capital)] = 1.0 - out[idx(Factor::Land)] - out[idx(Factor::Labor)];
  for (double v : out)
    if (!(v > 0.0))
      throw Error(ErrorCode::InvalidShares,
                  fmt::format("theta_1 = {} leaves no positive sector-2 shares", theta1));
  return out;
}

Sign relative_output_sign(const SignPattern& pattern, Factor i) {
  const Sign r1 = pattern(Good::Exportable, i);
  const Sign r2 = pattern(Good::Importable, i);
  if (r1 == Sign::Positive && (r2 == Sign::Negative || r2 == Sign::Zero)) return Sign::Positive;
  if (r1 == Sign::Negative && (r2 == Sign::Positive || r2 == Sign::Zero)) return Sign::Negative;
  if (r1 == Sign::Zero && is_strict(r2)) return negate(r2);
  if (r1 == Sign::Zero && r2 == Sign::Zero) return Sign::Zero;
  return Sign::Unknown;
}

Verdict run_case_study(const CaseStudyConfig& config) {
  Verdict v;
  v.config = config;
  if (v.config.migration_periods.empty())
    v.config.migration_periods = {fiscal_cover(config.period), {"1900", "1929-1930"}};
  const histdata::Dataset data = histdata::load_dataset(config.dataset_dir);

  // Factor prices and terms of trade.
  v.prices = histdata::compute_factor_price_changes(data.wage, data.rice_price, data.land_price,
                                                    data.shirting_price, config.period);
  if (config.override_p) v.prices.p.percent = *config.override_p;
  if (config.override_x) v.prices.x.percent = *config.override_x;
  if (config.override_z) v.prices.z.percent = *config.override_z;
  v.price_overridden = {config.override_p.has_value(), config.override_x.has_value(),
                        config.override_z.has_value()};
  v.prices.z_plus_p = v.prices.z.percent + v.prices.p.percent;
  v.dc = DeflatedChanges::from_deflated(v.prices.p.percent, v.prices.x.percent, std::nullopt,
                                        v.prices.z.percent);
  add_premise(v, "terms of trade rise (P > 0)", sign_of(v.dc.p) == Sign::Positive,
              "P = " + percent_text(v.dc.p));
  if (!v.ok()) return v;

  // Allocation shares and the intensity ranking under each share scenario.
  v.lambda = histdata::lambda_estimates(data.crops, data.labor);
  add_premise(v, "land more concentrated in the exportable sector than labor (lambda_T1 > lambda_L1)",
              v.lambda.lambda_t1 > v.lambda.lambda_l1,
              fmt::format("lambda_T1 = {:.4f}, lambda_L1 = {:.4f}", v.lambda.lambda_t1,
                          v.lambda.lambda_l1));
  if (!v.ok()) return v;

  std::optional<IntensityRanking> ranking;
  std::optional<DistributiveShares> reference_theta;
  std::optional<IncomeShares> reference_income;
  bool ranking_ok = true, middle_ok = true;
  for (double theta1 : config.assumed_theta1) {
    ShareScenario s;
    s.theta1 = theta1;
    try {
      s.theta_sector2 = calibrate_sector2(config.theta_sector1, theta1, v.lambda.lambda_t1,
                                          v.lambda.lambda_l1);
      FactorByGood theta{};
      for (Factor i : kFactors)
        theta[idx(i)] = {config.theta_sector1[idx(i)], s.theta_sector2[idx(i)]};
      const DistributiveShares dist(theta);
      const AllocationResult alloc = derive_allocation(dist, {theta1, 1.0 - theta1});
      for (Factor i : kFactors) s.lambda_sector1[idx(i)] = alloc.allocation(i, Good::Exportable);
      s.ranking = intensity_ranking(dist);
      s.ordering = check_sufficient_ordering(v.dc, theta[0][0], theta[0][1]);
      ranking_ok = ranking_ok && s.ranking->is_land_labor_capital();
      middle_ok = middle_ok && s.ranking->middle_intensity == config.middle_intensity;
      if (!ranking) {
        ranking = s.ranking;
        reference_theta = dist;
        reference_income = alloc.income;
      }
    } catch (const Error& e) {
      s.error = e.what();
    }
    v.scenarios.push_back(std::move(s));
  }
  add_premise(v, "a share scenario calibrates to the allocation estimates", ranking.has_value(),
              fmt::format("{} of {} scenarios valid",
                          std::count_if(v.scenarios.begin(), v.scenarios.end(),
                                        [](const ShareScenario& s) { return s.error.empty(); }),
                          v.scenarios.size()));
  if (!v.ok()) return v;
  add_premise(v, "factor intensity ranking T > L > K", ranking_ok,
              "theta_i1/theta_i2 ordering in every valid scenario: " + ranking->to_string());
  if (!v.ok()) return v;
  add_premise(v, "middle-factor intensity matches the assumed case", middle_ok,
              config.middle_intensity == MiddleIntensity::Exportable ? "theta_L1 > theta_L2"
                                                                     : "theta_L1 < theta_L2");
  if (!v.ok()) return v;

  // Factor-price-change ranking.
  const OrderingVerdict& ordering = *v.scenarios.front().ordering;
  add_premise(v, "factor-price-change ranking X > Z > Y", ordering.ranking, ordering.reason);
  if (!v.ok()) return v;
  v.triples_full = admissible_triples(*ranking, v.dc);

  // Land input coefficients from yield trends.
  v.rice_trend = histdata::yield_trend_sign("rice", data.rice_production, data.rice_area,
                                            config.period);
  v.cotton_trend = histdata::yield_trend_sign("cotton", data.cotton_production, data.cotton_area,
                                              config.period);
  v.a_t1 = config.override_a_t1.value_or(v.rice_trend.a_t_hat);
  v.a_t2 = config.override_a_t2.value_or(v.cotton_trend.a_t_hat);
  v.a_t0 = aggregate_a0_signs({PerGood<Sign>{v.a_t1, v.a_t2},
                               PerGood<Sign>{Sign::Unknown, Sign::Unknown},
                               PerGood<Sign>{Sign::Unknown, Sign::Unknown}})[idx(Factor::Land)];
  v.triples_narrowed =
      admissible_triples(*ranking, v.dc, {v.a_t0, Sign::Unknown, Sign::Unknown});
  if (v.triples_narrowed.size() == 1) v.a0_signs = triple_signs(*v.triples_narrowed.begin());

  const bool triple_c = v.triples_narrowed == std::set<TripleLetter>{TripleLetter::C};
  if (triple_c) {
    PerFactor<Estimate> a0{};
    for (Factor i : kFactors) a0[idx(i)] = Estimate::sign_only(v.a0_signs[idx(i)]);
    v.segment = segment_estimate(v.dc, *reference_income, a0);
    v.quadrant_iv = v.segment->quadrant_iv;
  } else {
    v.explanations.push_back(fmt::format(
        "a_T1* = {} and a_T2* = {} give a_T0' = {}, so the admissible triples are {}; the "
        "triple (+, +, -) that places both segment endpoints in quadrant IV is not established",
        symbol(v.a_t1), symbol(v.a_t2), symbol(v.a_t0), letters_text(v.triples_narrowed)));
  }

  if (v.quadrant_iv) {
    v.refinement = refine_subregions(v.dc, *reference_theta, *reference_income);
    v.subregions = v.refinement->subregions;
    if (v.refinement->b_inside_strip == Condition::Unknown && v.subregions.size() == 2)
      v.explanations.push_back(
          "point A lies in P2 (w_L* - p_1* < 0 and w_L* - p_2* > 0); the position of point B "
          "needs a_K0'/a_T0' magnitudes, which the data do not give, so P1 stays possible and "
          "P3 is excluded");
  } else {
    v.subregions = SubregionSet::all();
    v.explanations.push_back(
        "without the quadrant IV placement every subregion stays possible; the sign matrix "
        "below is conditional on extreme factors being economy-wide complements");
  }
  v.pattern = subregion_pattern(v.subregions);
  for (Factor i : kFactors) v.relative_output[idx(i)] = relative_output_sign(v.pattern, i);

  const Sign labor = v.relative_output[idx(Factor::Labor)];
  v.share_implication =
      labor == Sign::Unknown
          ? "theta_1* = theta_2 [P + (X_1* - X_2*)]: the labor stock's effect on X_1* - X_2* is "
            "indeterminate, so labor growth need not have raised the exportable sector's income "
            "share"
          : fmt::format("theta_1* = theta_2 [P + (X_1* - X_2*)]: labor growth moves the "
                        "exportable sector's income share with sign {}",
                        symbol(labor));

  // Migration aggregates.
  const auto& cmp = data.skinner_comparison.rows;
  v.migration.first_label = cmp.front().label.text;
  v.migration.last_label = cmp.back().label.text;
  v.migration.skinner = histdata::migration_totals(data.skinner_comparison, v.migration.first_label,
                                                   v.migration.last_label);
  v.migration.syb = histdata::migration_totals(data.syb_comparison, v.migration.first_label,
                                               v.migration.last_label);
  for (const auto& mp : v.config.migration_periods)
    v.migration.ratios.push_back(histdata::migration_analysis(
        data.skinner_annual, data.population, mp.first_label, mp.last_label));
  return v;
}

// --- report -------------------------------------------------------------------

Report verdict_report(const Verdict& v) {
  Report r("Rybczynski sign patterns, Thailand " + v.config.period.to_string());
  using nlohmann::ordered_json;
  auto num = [](double x) { return ordered_json(x); };

  const std::string prices = "Factor prices and terms of trade";
  const char* pquantity[] = {"P", "X", "Z"};
  const histdata::PeriodChange* changes[] = {&v.prices.p, &v.prices.x, &v.prices.z};
  const char* names[] = {"P = p_1* - p_2*", "X = w_T* - p_1*", "Z = w_L* - p_1*"};
  for (int k = 0; k < 3; ++k) {
    const auto& c = *changes[k];
    r.add(prices, {names[k], num(c.percent), percent_text(c.percent),
                   v.price_overridden[k] ? tag::kConfigured : tag::kReconstructed,
                   v.price_overridden[k] ? std::string("override of ") + pquantity[k]
                                         : "percent change of " + c.formula + ", " +
                                               v.config.period.to_string()});
  }
  r.add(prices, {"w_L* - p_2* = Z + P", num(v.prices.z_plus_p), percent_text(v.prices.z_plus_p),
                 tag::kComputed, "additive first-order combination"});
  const std::string alloc = "Allocation shares";
  if (v.lambda.total_area > 0.0) {
    r.add(alloc, {"exportable area (rai)", num(v.lambda.exportable_area),
                  fmt::format("{:.0f}", v.lambda.exportable_area), tag::kComputed,
                  "sum of published areas of crops classed exportable"});
    r.add(alloc, {"total area (rai)", num(v.lambda.total_area),
                  fmt::format("{:.0f}", v.lambda.total_area), tag::kComputed, "sum of published crop areas"});
    r.add(alloc, {"lambda_T1", num(v.lambda.lambda_t1), fmt::format("{:.4f}", v.lambda.lambda_t1),
                  tag::kComputed, "exportable area / total area"});
    r.add(alloc, {"lambda_L1", num(v.lambda.lambda_l1), fmt::format("{:.4f}", v.lambda.lambda_l1),
                  tag::kComputed, "agricultural labor / total labor"});
    r.add(alloc, {"lambda_K1 ordering", "lambda_L1 > lambda_K1", "", tag::kAssumed,
                  "no capital data; exportable sector taken as capital-light"});
  }

  const std::string shares = "Share scenarios";
  for (const auto& s : v.scenarios) {
    const std::string pre = fmt::format("theta_1 = {}: ", number_text(s.theta1));
    if (!s.error.empty()) {
      r.add(shares, {pre + "error", s.error, "", tag::kAssumed, "sector-2 calibration"});
      continue;
    }
    ordered_json t2 = ordered_json::array({s.theta_sector2[0], s.theta_sector2[1], s.theta_sector2[2]});
    r.add(shares, {pre + "(theta_T2, theta_K2, theta_L2)", t2,
                   fmt::format("({:.4f}, {:.4f}, {:.4f})", s.theta_sector2[0], s.theta_sector2[1],
                               s.theta_sector2[2]),
                   tag::kAssumed, "calibrated to lambda_T1, lambda_L1 given theta_1"});
    r.add(shares, {pre + "lambda_K1", num(s.lambda_sector1[1]),
                   fmt::format("{:.4f}", s.lambda_sector1[1]), tag::kComputed,
                   "lambda_i1 = theta_1 theta_i1 / theta_i"});
    r.add(shares, {pre + "intensity ranking", s.ranking->to_string(), "", tag::kComputed,
                   "theta_i1/theta_i2 ordering"});
    r.add(shares, {pre + "Line Y / Line Z intersection", num(s.ordering->line_intersection),
                   percent_text(s.ordering->line_intersection), tag::kComputed,
                   "-theta_T1/(theta_T1 - theta_T2) P"});
  }

  const std::string prem = "Premises";
  for (const auto& p : v.premises)
    r.add(prem, {p.name, p.holds ? "holds" : "fails", "", tag::kComputed, p.detail});
  if (v.halted_at) {
    r.set_status("halted: premise failed: " + *v.halted_at);
    r.note(prem, "chain stopped at: " + *v.halted_at);
    return r;
  }

  const std::string coef = "Land input coefficients";
  for (const auto* t : {&v.rice_trend, &v.cotton_trend}) {
    const std::string relation = "centered 3-year moving-average yield, kg/rai (picul = 60.48 kg)";
    r.add(coef, {t->crop + " yield " + std::to_string(t->period.start), num(t->start_yield),
                 fmt::format("{:.2f}", t->start_yield), tag::kReconstructed, relation});
    r.add(coef, {t->crop + " yield " + std::to_string(t->period.end), num(t->end_yield),
                 fmt::format("{:.2f}", t->end_yield), tag::kReconstructed, relation});
  }
  r.add(coef, {"a_T1*", sign_str(v.a_t1), "", v.config.override_a_t1 ? tag::kConfigured : tag::kComputed,
               v.config.override_a_t1 ? "override" : "minus the sign of the rice yield trend"});
  r.add(coef, {"a_T2*", sign_str(v.a_t2), "", v.config.override_a_t2 ? tag::kConfigured : tag::kComputed,
               v.config.override_a_t2 ? "override" : "minus the sign of the cotton yield trend"});
  r.add(coef, {"a_T0'", sign_str(v.a_t0), "", tag::kComputed, "a_T0' = sum_j lambda_Tj a_Tj*"});

  const std::string triples = "Admissible sign triples (a_T0', a_K0', a_L0')";
  r.add(triples, {"under P > 0 and X > Z > Y", letters_text(v.triples_full), "", tag::kComputed,
                  "A (-,+,-), B (-,+,+), C (+,+,-), D (-,-,+)"});
  r.add(triples, {"given a_T0'", letters_text(v.triples_narrowed), "", tag::kComputed,
                  "letters consistent with the known a_T0' sign"});
  r.add(triples, {"triple", triple_text(v.a0_signs), "", tag::kComputed,
                  v.triples_narrowed.size() == 1 ? "single admissible letter" : "not unique"});

  const std::string seg = "EWS-ratio vector";
  if (v.segment) {
    auto point = [](const PlanePoint& p) {
      return fmt::format("({}, {})", symbol(p.s_prime.sign), symbol(p.u_prime.sign));
    };
    r.add(seg, {"point A", point(v.segment->point_a), "", tag::kComputed,
                "(-W_TL/W_KL, -theta_L W_LT/(theta_K W_KT))"});
    r.add(seg, {"point B", point(v.segment->point_b), "", tag::kComputed,
                "(theta_KT a_K0'/a_T0', a_K0'/a_L0')"});
  }
  r.add(seg, {"quadrant IV", v.quadrant_iv ? "yes" : "not established", "", tag::kComputed,
              "both endpoints of segment AB in quadrant IV"});
  r.add(seg, {"extreme factors T and K", v.quadrant_iv ? "economy-wide complements" : "undetermined",
              "", tag::kComputed, "g_KT < 0"});

  const std::string sub = "Subregions";
  if (v.refinement) {
    r.add(sub, {"w_L* - p_2* > 0", std::string(to_string(v.refinement->labor_above_importable)), "",
                tag::kComputed, "point A left of theta_K2/theta_T2"});
    r.add(sub, {"w_L* - p_1* < 0", std::string(to_string(v.refinement->labor_below_exportable)), "",
                tag::kComputed, "point A right of theta_K1/theta_T1"});
    r.add(sub, {"theta_KT a_K0'/a_T0' < theta_K2/theta_T2",
                std::string(to_string(v.refinement->b_inside_strip)), "", tag::kComputed,
                "point B left of theta_K2/theta_T2"});
  }
  r.add(sub, {"subregion set", v.subregions.to_string(), "", tag::kComputed,
              v.refinement ? "refinement of {P1, P2, P3}" : "no refinement"});
  for (const auto& e : v.explanations) r.note(sub, e);

  const std::string rs = "Rybczynski signs sign[X_j*/V_i*]";
  for (Good j : kGoods) {
    for (Factor i : kFactors) {
      const std::string why = i == Factor::Labor ? "labor column of the subregion set's patterns"
                                                 : "strong Rybczynski result in quadrant IV";
      r.add(rs, {fmt::format("X_{}*/V_{}*", symbol(j), symbol(i)), sign_str(v.pattern(j, i)), "",
                 tag::kComputed, why});
    }
  }
  if (!v.quadrant_iv) r.note(rs, "conditional on quadrant IV");

  const std::string rel = "Relative output effects X_1*/V_i* - X_2*/V_i*";
  for (Factor i : kFactors) {
    const Sign s = v.relative_output[idx(i)];
    r.add(rel, {std::string(symbol(i)), s == Sign::Unknown ? "indeterminate" : sign_str(s), "",
                tag::kComputed, "difference of the column signs"});
  }
  if (!v.quadrant_iv) r.note(rel, "conditional on quadrant IV");

  const std::string share = "Exportable income share";
  r.add(share, {"implication", v.share_implication, "", tag::kComputed,
                "theta_1* = theta_2 [(p_1* - p_2*) + (X_1* - X_2*)]"});

  const std::string mig = "Chinese migration";
  const auto& m = v.migration;
  const std::string span = m.first_label + " to " + m.last_label;
  r.add(mig, {"Skinner arrivals " + span, num(m.skinner.arrivals),
              fmt::format("{:.0f}", m.skinner.arrivals), tag::kComputed, "sum of published annual rows"});
  r.add(mig, {"Skinner departures " + span, num(m.skinner.departures),
              fmt::format("{:.0f}", m.skinner.departures), tag::kComputed, "sum of published annual rows"});
  r.add(mig, {"Skinner net arrivals " + span, num(m.skinner.net),
              fmt::format("{:.0f}", m.skinner.net), tag::kComputed, "sum of published annual rows"});
  r.add(mig, {"SYB net arrivals " + span, num(m.syb.net), fmt::format("{:.0f}", m.syb.net),
              tag::kComputed, "sum of published annual rows"});
  r.add(mig, {"difference of net arrivals", num(m.skinner.net - m.syb.net),
              fmt::format("{:.0f}", m.skinner.net - m.syb.net), tag::kComputed, "Skinner - SYB"});
  for (const auto& ratio : m.ratios) {
    const std::string pre = ratio.first_label + " to " + ratio.last_label;
    r.add(mig, {pre + " net arrivals (thousands)", num(ratio.net), fmt::format("{:.1f}", ratio.net),
                tag::kComputed, "sum of published annual net arrivals"});
    r.add(mig,
          {fmt::format("population growth {}-{} (thousands)", ratio.population_start_year,
                       ratio.population_end_year),
           num(ratio.growth), fmt::format("{:.0f}", ratio.growth), tag::kComputed,
           fmt::format("{:.0f} - {:.0f}", ratio.population_end, ratio.population_start)});
    r.add(mig, {pre + " share of growth", num(ratio.percent), fmt::format("{:.1f}%", ratio.percent),
                tag::kComputed, "net arrivals / population growth"});
  }
  return r;
}

}  // namespace rybsign
