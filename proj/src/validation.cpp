#include "rybsign/validation.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <random>
#include <stdexcept>

#include "rybsign/classification.hpp"
#include "rybsign/error.hpp"

namespace rybsign {

namespace {

std::uint64_t economy_seed(std::uint64_t seed, int k, std::uint64_t batch) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(batch)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (std::uint64_t(out[0]) << 32) | out[1];
}

struct Tally {
  InvariantFamily f;
  explicit Tally(std::string name, std::optional<double> tol = std::nullopt) {
    f.name = std::move(name);
    f.tolerance = tol;
  }
  void check(bool ok) {
    ++f.checked;
    if (ok) ++f.passed;
  }
  void residual(double r) {
    f.worst = std::max(f.worst.value_or(0.0), r);
    check(!f.tolerance || r <= *f.tolerance);
  }
};

PerFactor<Sign> signs_of(const PerFactor<double>& v) {
  return {sign_of(v[0]), sign_of(v[1]), sign_of(v[2])};
}

}  // namespace

bool ValidationSummary::passed() const {
  return std::all_of(families.begin(), families.end(),
                     [](const InvariantFamily& f) { return f.ok(); });
}

const InvariantFamily* ValidationSummary::family(const std::string& name) const {
  for (const auto& f : families)
    if (f.name == name) return &f;
  return nullptr;
}

ValidationSummary run_validation(const ValidationOptions& options) {
  if (options.n < 1) throw std::invalid_argument("the number of economies must be at least 1");
  ValidationSummary out;
  out.options = options;

  Tally pattern_tally(family::kSignPattern), strong(family::kStrongColumns);
  Tally segment(family::kSegment, 1e-6), chain(family::kSegmentChain);
  Tally triples(family::kTriples);
  Tally fd(family::kOracle, 1e-4), fd_r(family::kOracleRybczynski, 1e-4);
  Tally rows(family::kRowSums, 1e-8), recip(family::kReciprocity, 1e-8);
  Tally sound(family::kConditionsSound), mixed(family::kMixedRefinement);
  mixed.f.informational = true;
  int conditions_hold = 0, p2_total = 0;

  const double s = options.shock_size;
  for (int k = 0; k < options.n; ++k) {
    const auto sample = oracle::sample_admissible(economy_seed(options.seed, k, 1), options.constraints);
    out.rejections += sample.rejections;
    ++out.economies;
    const Economy& e = sample.snapshot.economy;
    const ComparativeStatics cs(e);
    const RybczynskiMatrix r = rybczynski_matrix(e);
    std::mt19937_64 rng(economy_seed(options.seed, k, 2));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    // Identities of the linear system.
    for (Good j : kGoods) rows.residual(std::abs(r(j, Factor::Land) + r(j, Factor::Capital) +
                                                 r(j, Factor::Labor) - 1.0));
    recip.residual(reciprocity_check(e).deviation);

    // Finite-difference oracle on a random 1% shock and on the endowment columns.
    ShockVector shock;
    for (auto& p : shock.p_hat) p = s * unit(rng);
    for (auto& v : shock.v_hat) v = s * unit(rng);
    const ResponseBundle lin = cs.solve(shock);
    const oracle::FdResponse num = oracle::fd_response(sample.gl, shock, options.fd_step);
    double diff = 0.0, scale = 0.0;
    for (int i = 0; i < 3; ++i) {
      diff = std::max(diff, std::abs(lin.w_hat[i] - num.w_hat[i]));
      scale = std::max(scale, std::abs(lin.w_hat[i]));
    }
    for (int j = 0; j < 2; ++j) {
      diff = std::max(diff, std::abs(lin.x_hat[j] - num.x_hat[j]));
      scale = std::max(scale, std::abs(lin.x_hat[j]));
    }
    fd.residual(diff / scale);
    const RybczynskiMatrix rfd = oracle::fd_rybczynski(sample.gl, options.fd_step);
    double rdiff = 0.0, rscale = 0.0;
    for (Good j : kGoods)
      for (Factor i : kFactors) {
        rdiff = std::max(rdiff, std::abs(r(j, i) - rfd(j, i)));
        rscale = std::max(rscale, std::abs(r(j, i)));
      }
    fd_r.residual(rdiff / rscale);

    // Sign pattern against the operational subregion.
    std::optional<Subregion> sub;
    try {
      sub = subregion_of(e);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::Boundary)
        ++out.boundary;
      else if (err.code() == ErrorCode::NotStrongRybczynski)
        ++out.not_strong;
      else
        throw;
    }
    if (!sub) continue;
    ++out.subregion_counts[static_cast<int>(*sub)];
    const SignPattern pattern = sign_pattern(r);
    pattern_tally.check(pattern == subregion_pattern({*sub}));
    strong.check(pattern(Good::Exportable, Factor::Land) == Sign::Positive &&
                 pattern(Good::Importable, Factor::Land) == Sign::Negative &&
                 pattern(Good::Exportable, Factor::Capital) == Sign::Negative &&
                 pattern(Good::Importable, Factor::Capital) == Sign::Positive);

    // Strip prediction from S' alone.
    const EwsRatioVector ratio = ews(e).ratio;
    const auto strip = strip_subregion(ratio.s_prime, e.distributive());
    ++out.strip.counts[strip ? static_cast<int>(*strip) : 3][static_cast<int>(*sub)];
    ++out.strip.total;
    if (strip && *strip == *sub) ++out.strip.agree;

    // Real-wage conditions under a pure terms-of-trade rise.
    const ShockVector price = ShockVector::prices(s, 0.0);
    const ResponseBundle pr = cs.solve(price);
    const DeflatedChanges pdc = deflated_changes(pr.w_hat, price.p_hat, e.income());
    const SubregionRefinement pc = refine_subregions(pdc, e.distributive(), e.income());
    const bool both = pc.labor_above_importable == Condition::Holds &&
                      pc.labor_below_exportable == Condition::Holds;
    if (both) {
      ++conditions_hold;
      sound.check(*sub == Subregion::P2);
    }
    if (*sub == Subregion::P2) ++p2_total;

    // Segment AB under mixed shocks reaching triple (+, +, -).
    std::uniform_real_distribution<double> up(0.0, 2.0 * s), ud(-s, s);
    for (int t = 0; t < options.segment_shock_attempts; ++t) {
      ShockVector m = ShockVector::prices(up(rng), ud(rng));
      for (auto& v : m.v_hat) v = ud(rng);
      const ResponseBundle resp = cs.solve(m);
      const DeflatedChanges dc = deflated_changes(resp.w_hat, m.p_hat, e.income());
      if (!dc.ordering_established()) continue;
      const auto letter = triple_letter(signs_of(resp.a0_prime));
      if (!letter || *letter != TripleLetter::C) continue;
      PerFactor<Estimate> a0{};
      for (int i = 0; i < 3; ++i) a0[i] = Estimate::of(resp.a0_prime[i]);
      const SegmentPosition pos = segment_position(segment_estimate(dc, e.income(), a0), ratio);
      segment.residual(pos.collinearity_residual);
      chain.check(pos.chain_holds);
      const SubregionRefinement cr = refine_subregions(dc, e.distributive(), e.income(), resp.a0_prime);
      mixed.check(cr.subregions.contains(*sub));
      break;
    }
  }

  // Admissible triples over the wider premise set: ranking, P > 0 and X > Z > Y only.
  oracle::SamplerConstraints wide;
  wide.land_labor_capital_ranking = true;
  wide.form = options.constraints.form;
  for (int k = 0; k < options.n; ++k) {
    const auto sample = oracle::sample_admissible(economy_seed(options.seed, k, 3), wide);
    ++out.wider_batch_economies;
    const Economy& e = sample.snapshot.economy;
    const ComparativeStatics cs(e);
    std::mt19937_64 rng(economy_seed(options.seed, k, 4));
    std::uniform_real_distribution<double> up(0.0, 2.0 * s), ud(-s, s);
    for (bool with_endowments : {false, true}) {
      ShockVector m = ShockVector::prices(up(rng), ud(rng));
      if (with_endowments)
        for (auto& v : m.v_hat) v = ud(rng);
      const ResponseBundle resp = cs.solve(m);
      const DeflatedChanges dc = deflated_changes(resp.w_hat, m.p_hat, e.income());
      if (!dc.ordering_established()) continue;
      triples.check(triple_letter(signs_of(resp.a0_prime)).has_value());
    }
  }

  sound.f.detail = fmt::format("conditions held for {} economies; {} operational P2 in total",
                               conditions_hold, p2_total);
  segment.f.detail = fmt::format("{} of {} subregion economies reached triple (+, +, -)",
                                 segment.f.checked, out.strip.total);
  mixed.f.detail = "refinement from a_i0' magnitudes";
  out.families = {pattern_tally.f, strong.f, segment.f, chain.f, triples.f, fd.f,
                  fd_r.f,     rows.f,   recip.f,   sound.f, mixed.f};
  return out;
}

Report validation_report(const ValidationSummary& v) {
  Report r(fmt::format("Oracle validation, seed {}, {} economies", v.options.seed, v.options.n));
  using nlohmann::ordered_json;
  const std::string batch = "Batch";
  const auto& c = v.options.constraints;
  std::string constraints = c.land_labor_capital_ranking ? "T > L > K" : "any ranking";
  if (c.quadrant_iv) constraints += ", quadrant IV";
  if (c.form == oracle::CoefficientForm::AllSubstitutes) constraints += ", all substitutes";
  r.add(batch, {"constraints", constraints, "", tag::kConfigured, "sampler"});
  r.add(batch, {"economies", v.economies, "", tag::kComputed, "accepted draws"});
  r.add(batch, {"rejections per economy", double(v.rejections) / v.economies,
                fmt::format("{:.1f}", double(v.rejections) / v.economies), tag::kComputed,
                "rejected draws / accepted draws"});
  r.add(batch, {"wider-premise economies", v.wider_batch_economies, "", tag::kComputed,
                "T > L > K only"});

  const std::string subs = "Subregions";
  const char* names[] = {"P1", "P2", "P3"};
  for (int k = 0; k < 3; ++k)
    r.add(subs, {names[k], v.subregion_counts[k], "", tag::kComputed, "operational subregion"});
  r.add(subs, {"boundary", v.boundary, "", tag::kComputed, "labor-column entry in the zero band"});
  r.add(subs, {"outside quadrant IV", v.not_strong, "", tag::kComputed, "no strong Rybczynski result"});

  const std::string inv = "Invariants";
  for (const auto& f : v.families) {
    ordered_json value;
    value["checked"] = f.checked;
    value["passed"] = f.passed;
    if (f.worst) value["worst"] = *f.worst;
    if (f.tolerance) value["tolerance"] = *f.tolerance;
    value["status"] = f.informational ? "info" : (f.ok() ? "pass" : "FAIL");
    std::string display = fmt::format("{} {}/{}", value["status"].get<std::string>(), f.passed, f.checked);
    if (f.worst) display += fmt::format(", worst {:.2e}", *f.worst);
    if (f.tolerance) display += fmt::format(" (tol {:.0e})", *f.tolerance);
    r.add(inv, {f.name, value, display, tag::kComputed, f.detail});
  }

  const std::string strip = "Strip prediction from S' thresholds";
  const char* rows[] = {"predicted P1", "predicted P2", "predicted P3", "on a threshold"};
  for (int k = 0; k < 4; ++k) {
    const auto& row = v.strip.counts[k];
    r.add(strip, {rows[k], ordered_json{{"P1", row[0]}, {"P2", row[1]}, {"P3", row[2]}},
                  fmt::format("P1 {}  P2 {}  P3 {}", row[0], row[1], row[2]), tag::kComputed,
                  "operational subregion counts"});
  }
  r.add(strip, {"agreement rate", v.strip.agreement_rate(),
                fmt::format("{:.1f}% ({}/{})", 100.0 * v.strip.agreement_rate(), v.strip.agree,
                            v.strip.total),
                tag::kComputed, "prediction equals operational subregion"});
  r.note(strip, "reported only; thresholds on S' alone do not determine the subregion");

  r.set_status(v.passed() ? "pass" : "FAIL");
  return r;
}

}  // namespace rybsign
