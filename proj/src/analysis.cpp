#include "rybsign/analysis.hpp"

#include <fmt/format.h>

#include "rybsign/classification.hpp"
#include "rybsign/error.hpp"

namespace rybsign {

namespace {

std::string name2(Factor i, Factor h) { return fmt::format("{}{}", symbol(i), symbol(h)); }

}  // namespace

Report economy_report(const Economy& e, const std::optional<oracle::EquilibriumSnapshot>& snapshot) {
  Report r("Economy analysis");
  const char* given = snapshot ? tag::kComputed : tag::kConfigured;

  if (snapshot) {
    const std::string eq = "Equilibrium";
    for (Factor i : kFactors)
      r.add(eq, {fmt::format("w_{}", symbol(i)), snapshot->w[idx(i)], "", tag::kComputed,
                 "Newton solve of zero profit and full employment"});
    for (Good j : kGoods)
      r.add(eq, {fmt::format("X_{}", symbol(j)), snapshot->x[idx(j)], "", tag::kComputed,
                 "Newton solve of zero profit and full employment"});
    r.add(eq, {"max residual", std::max(snapshot->max_profit_residual, snapshot->max_market_residual),
               fmt::format("{:.2e}", std::max(snapshot->max_profit_residual,
                                              snapshot->max_market_residual)),
               tag::kComputed, "relative, over all equations"});
  }

  const std::string shares = "Shares";
  for (Factor i : kFactors)
    for (Good j : kGoods)
      r.add(shares, {fmt::format("theta_{}{}", symbol(i), symbol(j)), e.distributive()(i, j), "",
                     given, "distributive share"});
  for (Good j : kGoods)
    r.add(shares, {fmt::format("theta_{}", symbol(j)), e.income().good(j), "", given,
                   "income share of good"});
  for (Factor i : kFactors)
    for (Good j : kGoods)
      r.add(shares, {fmt::format("lambda_{}{}", symbol(i), symbol(j)), e.allocation()(i, j), "",
                     tag::kComputed, "(theta_j/theta_i) theta_ij"});

  const std::string rank = "Intensity ranking";
  const IntensityRanking ranking = intensity_ranking(e.distributive());
  r.add(rank, {"ranking", ranking.to_string(), "", tag::kComputed, "theta_i1/theta_i2 ordering"});
  for (Factor i : kFactors)
    r.add(rank, {fmt::format("theta_{0}1/theta_{0}2", symbol(i)), ranking.ratios[idx(i)], "",
                 tag::kComputed, "intensity ratio"});
  r.add(rank, {"middle factor", std::string(symbol(ranking.middle())), "", tag::kComputed,
               ranking.middle_intensity == MiddleIntensity::Exportable ? "used intensively in good 1"
                                                                       : "used intensively in good 2"});

  const std::string ews_name = "Economy-wide substitution";
  const EwsComponents g = ews_components(e);
  for (auto [i, h] : {std::pair{Factor::Labor, Factor::Capital}, std::pair{Factor::Labor, Factor::Land},
                      std::pair{Factor::Capital, Factor::Land}})
    r.add(ews_name, {"g_" + name2(i, h), g(i, h), "", tag::kComputed,
                     "sum_j lambda_ij epsilon^j_ih"});
  try {
    const EwsReport rep = ews(e);
    r.add(ews_name, {"S'", rep.ratio.s_prime, "", tag::kComputed, "g_LK / g_LT"});
    r.add(ews_name, {"U'", rep.ratio.u_prime, "", tag::kComputed, "g_KT / g_LT"});
    for (const auto& l : rep.labels)
      r.add(ews_name, {name2(l.first, l.second), std::string(to_string(l.relation)), "",
                       tag::kComputed, "sign of g"});
    r.add(ews_name, {"quadrant IV", rep.ratio.in_quadrant_iv() ? "yes" : "no", "", tag::kComputed,
                     "S' > 0 and U' < 0"});
  } catch (const Error& err) {
    r.note(ews_name, err.what());
  }

  const std::string sub = "Subregion";
  try {
    r.add(sub, {"subregion", std::string(to_string(subregion_of(e))), "", tag::kComputed,
                "labor column of the Rybczynski signs"});
  } catch (const Error& err) {
    r.note(sub, err.what());
  }

  const std::string ryb = "Rybczynski matrix X_j*/V_i*";
  const RybczynskiMatrix rm = rybczynski_matrix(e);
  for (Good j : kGoods)
    for (Factor i : kFactors)
      r.add(ryb, {fmt::format("X_{}*/V_{}*", symbol(j), symbol(i)), rm(j, i),
                  fmt::format("{:+.6g}", rm(j, i)), tag::kComputed, "linear system"});
  const std::string ss = "Stolper-Samuelson matrix w_i*/p_j*";
  const StolperSamuelsonMatrix sm = stolper_samuelson_matrix(e);
  for (Factor i : kFactors)
    for (Good j : kGoods)
      r.add(ss, {fmt::format("w_{}*/p_{}*", symbol(i), symbol(j)), sm(i, j),
                 fmt::format("{:+.6g}", sm(i, j)), tag::kComputed, "linear system"});
  const ReciprocityReport rec = reciprocity_check(e);
  r.add(ss, {"reciprocity deviation", rec.deviation, fmt::format("{:.2e}", rec.deviation),
             tag::kComputed, "max |theta_j X_j*/V_i* - theta_i w_i*/p_j*|"});
  return r;
}

}  // namespace rybsign
