// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <string>

#include "rybsign/case_study.hpp"
#include "rybsign/classification.hpp"
#include "rybsign/validation.hpp"

using namespace rybsign;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
  fmt::print("[{}] {} {}: {}\n", ok ? "PASS" : "FAIL", id, title, detail);
  if (!ok) ++failures;
}

bool near(double v, double target, double tol) { return std::abs(v - target) <= tol; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const InvariantFamily& fam(const ValidationSummary& s, const char* name) {
  static const InvariantFamily missing{"missing", 0, 1, std::nullopt, std::nullopt, false, ""};
  const InvariantFamily* f = s.family(name);
  return f ? *f : missing;
}

std::string tally(const InvariantFamily& f) {
  std::string out = fmt::format("{}/{}", f.passed, f.checked);
  if (f.worst) out += fmt::format(" worst {:.1e}", *f.worst);
  return out;
}

}  // namespace

int main() {
  CaseStudyConfig config;
  config.dataset_dir = RYBSIGN_DATASET_DIR;

  // 1. Case study.
  auto t0 = std::chrono::steady_clock::now();
  const Verdict v = run_case_study(config);
  const double case_seconds = seconds_since(t0);
  {
    const auto& fp = v.prices;
    const bool ok =
        v.ok() && near(fp.p.percent, 176.6, 0.1) && near(fp.x.percent, 22.1, 0.1) &&
        near(fp.z.percent, -12.5, 0.1) && near(fp.z_plus_p, 164.1, 0.1) &&
        near(v.lambda.lambda_t1, 0.895, 0.001) && near(v.lambda.lambda_l1, 0.831, 0.001) &&
        v.a0_signs == PerFactor<Sign>{Sign::Positive, Sign::Positive, Sign::Negative} && v.quadrant_iv &&
        v.subregions == SubregionSet{Subregion::P1, Subregion::P2} &&
        v.relative_output == PerFactor<Sign>{Sign::Positive, Sign::Negative, Sign::Unknown} &&
        case_seconds < 5.0;
    report(1, "case-study reproduction", ok,
           fmt::format("P {} X {} Z {} Z+P {}, lambda_T1 {:.4f} lambda_L1 {:.4f}, triple ({}, {}, {}), "
                       "quadrant IV {}, subregions {}, relative output T {} K {} L {}, {:.3f} s",
                       percent_text(fp.p.percent), percent_text(fp.x.percent), percent_text(fp.z.percent),
                       percent_text(fp.z_plus_p), v.lambda.lambda_t1, v.lambda.lambda_l1,
                       symbol(v.a0_signs[0]), symbol(v.a0_signs[1]), symbol(v.a0_signs[2]),
                       v.quadrant_iv ? "yes" : "no", v.subregions.to_string(),
                       symbol(v.relative_output[0]), symbol(v.relative_output[1]),
                       v.relative_output[2] == Sign::Unknown ? "indeterminate" : symbol(v.relative_output[2]),
                       case_seconds));
  }

  // 2. Migration appendix.
  {
    const auto& m = v.migration;
    const bool have = m.ratios.size() == 2;
    const bool ok = have && m.skinner.net == 508000.0 && m.syb.net == 437738.0 &&
                    m.skinner.net - m.syb.net == 70262.0 && near(m.ratios[0].net, 236.2, 1e-9) &&
                    near(m.ratios[0].percent, 15.2, 0.1) && near(m.ratios[1].net, 740.0, 1e-9) &&
                    near(m.ratios[1].percent, 13.0, 0.1);
    report(2, "migration totals and ratios", ok,
           have ? fmt::format("{:.0f} / {:.0f} / {:.0f}; {:.1f}k {:.1f}% ({} to {}); {:.1f}k {:.1f}% ({} to {})",
                              m.skinner.net, m.syb.net, m.skinner.net - m.syb.net, m.ratios[0].net,
                              m.ratios[0].percent, m.ratios[0].first_label, m.ratios[0].last_label,
                              m.ratios[1].net, m.ratios[1].percent, m.ratios[1].first_label,
                              m.ratios[1].last_label)
                : "migration ratios missing");
  }

  // 3. Income-share identity.
  {
    const ShareChange s = share_change({0.8, 0.2}, {5.0, 0.0}, {0.0, 0.0});
    const double direct = importable_share_change(0.8, 0.2, 1.0);
    const bool ok = s.theta1_hat == 1.0 && s.theta2_hat == -4.0 && direct == -4.0;
    report(3, "importable share change", ok,
           fmt::format("theta_1 = 0.8, theta_1* = {:+.3f}% -> theta_2* = {:+.3f}%", s.theta1_hat, s.theta2_hat));
  }

  // 4-7. Seeded oracle batch.
  ValidationOptions opts;
  opts.seed = 42;
  opts.n = 1000;
  t0 = std::chrono::steady_clock::now();
  const ValidationSummary s = run_validation(opts);
  const double batch_seconds = seconds_since(t0);

  {
    const auto& t1 = fam(s, family::kSignPattern);
    const auto& cols = fam(s, family::kStrongColumns);
    const bool ok = s.economies >= 1000 && t1.checked + s.boundary == s.economies && t1.ok() &&
                    cols.ok() && cols.checked == t1.checked && batch_seconds < 60.0;
    report(4, "sign patterns over quadrant IV economies", ok,
           fmt::format("{} economies (P1 {}, P2 {}, P3 {}, boundary {}), pattern {}, land/capital columns {}, "
                       "batch {:.1f} s",
                       s.economies, s.subregion_counts[0], s.subregion_counts[1], s.subregion_counts[2],
                       s.boundary, tally(t1), tally(cols), batch_seconds));
  }
  {
    const auto& seg = fam(s, family::kSegment);
    const auto& chain = fam(s, family::kSegmentChain);
    const auto& l2 = fam(s, family::kTriples);
    const bool ok = seg.checked >= 500 && seg.ok() && chain.ok() && chain.checked == seg.checked &&
                    l2.checked > 0 && l2.ok();
    report(5, "segment AB and admissible triples", ok,
           fmt::format("on segment {} (tol 1e-6), chain {}, triples in {{A, B, C, D}} {}", tally(seg),
                       tally(chain), tally(l2)));
  }
  {
    const auto& fd = fam(s, family::kOracle);
    const auto& rows = fam(s, family::kRowSums);
    const auto& rec = fam(s, family::kReciprocity);
    const bool ok = fd.checked >= 1000 && fd.ok() && rows.ok() && rec.ok();
    report(6, "oracle equivalence", ok,
           fmt::format("relative error {} (tol 1e-4), row sums {} (tol 1e-8), reciprocity {} (tol 1e-8)",
                       tally(fd), tally(rows), tally(rec)));
  }
  {
    const auto& sound = fam(s, family::kConditionsSound);
    const bool ok = sound.checked > 0 && sound.passed == sound.checked && s.strip.total > 0;
    const auto& c = s.strip.counts;
    report(7, "strip prediction and soundness", ok,
           fmt::format("strip agreement {:.1f}% ({}/{}), S'-strip => P2 {}/{} (reported, not asserted), "
                       "real-wage conditions => P2 {}",
                       100.0 * s.strip.agreement_rate(), s.strip.agree, s.strip.total, c[1][1],
                       c[1][0] + c[1][1] + c[1][2], tally(sound)));
  }
  return failures == 0 ? 0 : 1;
}
