#include "rybsign/classification.hpp"

#include <cmath>

#include "rybsign/error.hpp"

namespace rybsign {

namespace {

bool positive(double v) { return sign_of(v) == Sign::Positive; }

Condition condition_of(bool holds) { return holds ? Condition::Holds : Condition::Fails; }

}  // namespace

// --- deflated changes ---------------------------------------------------------

DeflatedChanges DeflatedChanges::from_deflated(double p, double x, std::optional<double> y,
                                               double z,
                                               const std::optional<IncomeShares>& income) {
  DeflatedChanges dc;
  dc.p = p;
  dc.x = x;
  dc.y = y;
  dc.z = z;

  // Real rewards in units of good 1; Y may be absent.
  PerFactor<Estimate> level{Estimate::of(x), Estimate::unknown(), Estimate::of(z)};
  if (y) level[idx(Factor::Capital)] = Estimate::of(*y);
  for (Factor i : kFactors) {
    for (Factor h : kFactors) {
      if (i == h) {
        dc.w_diff[idx(i)][idx(h)] = Estimate::of(0.0);
        continue;
      }
      const Estimate& a = level[idx(i)];
      const Estimate& b = level[idx(h)];
      if (a.value && b.value) dc.w_diff[idx(i)][idx(h)] = Estimate::of(*a.value - *b.value);
    }
  }
  if (!y && positive(p) && positive(x - z) && positive(z + p)) {
    // Sector-2 zero profit with X + P > 0 and Z + P > 0 forces Y + P < 0,
    // so Y < -P < Z < X.
    const auto K = idx(Factor::Capital), T = idx(Factor::Land), L = idx(Factor::Labor);
    dc.w_diff[K][L] = Estimate::sign_only(Sign::Negative);
    dc.w_diff[L][K] = Estimate::sign_only(Sign::Positive);
    dc.w_diff[K][T] = Estimate::sign_only(Sign::Negative);
    dc.w_diff[T][K] = Estimate::sign_only(Sign::Positive);
  }
  if (income) {
    FactorByFactor ratio{};
    for (Factor i : kFactors)
      for (Factor h : kFactors) ratio[idx(i)][idx(h)] = income->factor_ratio(i, h);
    dc.theta_ratio = ratio;
  }
  return dc;
}

bool DeflatedChanges::ordering_established() const {
  if (!positive(p) || !positive(x - z)) return false;
  return y ? positive(z - *y) : positive(z + p);
}

DeflatedChanges deflated_changes(const PerFactor<double>& w_hat, const PerGood<double>& p_hat,
                                 const std::optional<IncomeShares>& income) {
  const double p1 = p_hat[idx(Good::Exportable)];
  return DeflatedChanges::from_deflated(p1 - p_hat[idx(Good::Importable)],
                                        w_hat[idx(Factor::Land)] - p1,
                                        w_hat[idx(Factor::Capital)] - p1,
                                        w_hat[idx(Factor::Labor)] - p1, income);
}

OrderingVerdict check_sufficient_ordering(const DeflatedChanges& dc, double theta_t1,
                                          double theta_t2) {
  if (sign_of(theta_t1 - theta_t2) == Sign::Zero)
    throw Error(ErrorCode::DegenerateIntensity, "theta_T1 equals theta_T2");
  OrderingVerdict v;
  v.line_intersection = -theta_t1 / (theta_t1 - theta_t2) * dc.p;
  v.applicable = positive(dc.p);
  if (!v.applicable) {
    v.reason = "terms of trade did not rise (P <= 0)";
    return v;
  }
  const bool x_over_z = positive(dc.x - dc.z);
  v.sufficient = x_over_z && positive(dc.z + dc.p);
  if (dc.y) {
    v.ranking = x_over_z && positive(dc.z - *dc.y);
  } else {
    v.ranking = v.sufficient;
    v.ranking_implied = v.sufficient;
  }
  if (!x_over_z)
    v.reason = "X > Z fails";
  else if (!v.ranking)
    v.reason = dc.y ? "Z > Y fails" : "Z > -P fails and Y is unknown";
  else
    v.reason = v.ranking_implied ? "X > Z > -P holds, hence X > Z > Y" : "X > Z > Y holds";
  return v;
}

// --- admissible sign triples --------------------------------------------------

char letter_char(TripleLetter l) { return static_cast<char>('A' + static_cast<int>(l)); }

PerFactor<Sign> triple_signs(TripleLetter l) {
  constexpr Sign P = Sign::Positive, N = Sign::Negative;
  switch (l) {
    case TripleLetter::A: return {N, P, N};
    case TripleLetter::B: return {N, P, P};
    case TripleLetter::C: return {P, P, N};
    case TripleLetter::D: return {N, N, P};
  }
  return {};
}

std::optional<TripleLetter> triple_letter(const PerFactor<Sign>& signs) {
  for (TripleLetter l : {TripleLetter::A, TripleLetter::B, TripleLetter::C, TripleLetter::D})
    if (triple_signs(l) == signs) return l;
  return std::nullopt;
}

std::set<TripleLetter> admissible_triples(const IntensityRanking& ranking,
                                         const DeflatedChanges& dc,
                                         const PerFactor<Sign>& known) {
  if (!ranking.is_land_labor_capital())
    throw Error(ErrorCode::NotApplicable, "factor intensity ranking is " + ranking.to_string() +
                                              ", not T > L > K");
  if (!positive(dc.p)) throw Error(ErrorCode::NotApplicable, "P > 0 fails");
  if (!dc.ordering_established())
    throw Error(ErrorCode::NotApplicable, "factor-price-change ranking X > Z > Y not established");
  std::set<TripleLetter> out;
  for (TripleLetter l : {TripleLetter::A, TripleLetter::B, TripleLetter::C, TripleLetter::D}) {
    const PerFactor<Sign> s = triple_signs(l);
    bool ok = true;
    for (Factor i : kFactors)
      if (known[idx(i)] != Sign::Unknown && known[idx(i)] != s[idx(i)]) ok = false;
    if (ok) out.insert(l);
  }
  return out;
}

PerFactor<double> aggregate_a0(const AllocationShares& allocation, const FactorByGood& a_hat) {
  PerFactor<double> out{};
  for (Factor i : kFactors)
    for (Good j : kGoods) out[idx(i)] += allocation(i, j) * a_hat[idx(i)][idx(j)];
  return out;
}

PerFactor<Sign> aggregate_a0_signs(const PerFactor<PerGood<Sign>>& a_hat_signs) {
  PerFactor<Sign> out{};
  for (Factor i : kFactors) {
    const Sign s1 = a_hat_signs[idx(i)][0];
    const Sign s2 = a_hat_signs[idx(i)][1];
    if (s1 == Sign::Unknown || s2 == Sign::Unknown)
      out[idx(i)] = Sign::Unknown;
    else if (s1 == s2 || s2 == Sign::Zero)
      out[idx(i)] = s1;
    else if (s1 == Sign::Zero)
      out[idx(i)] = s2;
    else
      out[idx(i)] = Sign::Unknown;
  }
  return out;
}

// --- segment AB ---------------------------------------------------------------

SegmentEstimate segment_estimate(const DeflatedChanges& dc, const IncomeShares& income,
                                 const PerFactor<Estimate>& a0) {
  const Estimate w_tl = dc.w(Factor::Land, Factor::Labor);
  const Estimate w_kl = dc.w(Factor::Capital, Factor::Labor);
  const Estimate w_lt = dc.w(Factor::Labor, Factor::Land);
  const Estimate w_kt = dc.w(Factor::Capital, Factor::Land);
  for (const Estimate* e : {&w_tl, &w_kl, &w_kt})
    if (e->sign == Sign::Zero)
      throw Error(ErrorCode::PointAUndefined, "a relative factor-price change is zero");
  const Estimate& a_t = a0[idx(Factor::Land)];
  const Estimate& a_k = a0[idx(Factor::Capital)];
  const Estimate& a_l = a0[idx(Factor::Labor)];
  for (const Estimate* e : {&a_t, &a_k, &a_l})
    if (e->sign == Sign::Zero)
      throw Error(ErrorCode::PointBUndefined, "an aggregate input-coefficient change is zero");

  const double theta_l = income.factor(Factor::Labor);
  const double theta_k = income.factor(Factor::Capital);
  const double theta_kt = income.factor_ratio(Factor::Capital, Factor::Land);

  SegmentEstimate seg;
  // A is where a_T0' = a_K0' = a_L0' = 0 meet; with sum_i theta_i a_i0' = 0
  // the three lines are concurrent.
  seg.point_a.s_prime = -(w_tl / w_kl);
  seg.point_a.u_prime = -((theta_l / theta_k) * (w_lt / w_kt));
  seg.point_b.s_prime = theta_kt * (a_k / a_t);
  seg.point_b.u_prime = a_k / a_l;
  seg.quadrant_iv = seg.point_a.in_quadrant_iv() && seg.point_b.in_quadrant_iv();
  const auto& A = seg.point_a;
  const auto& B = seg.point_b;
  if (A.s_prime.value && A.u_prime.value && B.s_prime.value && B.u_prime.value)
    seg.a_left_of_b = *A.s_prime.value < *B.s_prime.value && *A.u_prime.value > *B.u_prime.value;
  return seg;
}

SegmentPosition segment_position(const SegmentEstimate& seg, const EwsRatioVector& ratio) {
  const auto& A = seg.point_a;
  const auto& B = seg.point_b;
  if (!(A.s_prime.value && A.u_prime.value && B.s_prime.value && B.u_prime.value))
    throw Error(ErrorCode::NotApplicable, "segment endpoints are known only by sign");
  const double ax = *A.s_prime.value, ay = *A.u_prime.value;
  const double bx = *B.s_prime.value, by = *B.u_prime.value;
  const double dx = bx - ax, dy = by - ay;
  const double vx = ratio.s_prime - ax, vy = ratio.u_prime - ay;
  const double len2 = dx * dx + dy * dy;
  SegmentPosition out;
  out.t = (vx * dx + vy * dy) / len2;
  out.collinearity_residual = std::abs(dx * vy - dy * vx) / len2;
  out.chain_holds = 0.0 < ax && ax < ratio.s_prime && ratio.s_prime < bx && 0.0 > ay &&
                    ay > ratio.u_prime && ratio.u_prime > by;
  return out;
}

// --- subregions ---------------------------------------------------------------

std::string_view to_string(Subregion s) {
  switch (s) {
    case Subregion::P1: return "P1";
    case Subregion::P2: return "P2";
    case Subregion::P3: return "P3";
  }
  return "?";
}

SubregionSet::SubregionSet(std::initializer_list<Subregion> items) {
  for (Subregion s : items) bits_ |= mask(s);
}

std::size_t SubregionSet::size() const { return members().size(); }

std::vector<Subregion> SubregionSet::members() const {
  std::vector<Subregion> out;
  for (Subregion s : {Subregion::P1, Subregion::P2, Subregion::P3})
    if (contains(s)) out.push_back(s);
  return out;
}

SubregionSet SubregionSet::intersect(const SubregionSet& o) const {
  SubregionSet out;
  out.bits_ = bits_ & o.bits_;
  return out;
}

std::string SubregionSet::to_string() const {
  std::string out = "{";
  for (Subregion s : members()) {
    if (out.size() > 1) out += ", ";
    out += rybsign::to_string(s);
  }
  return out + "}";
}

SignPattern sign_pattern(const RybczynskiMatrix& r) {
  SignPattern out;
  for (Good j : kGoods)
    for (Factor i : kFactors) out.cells[idx(j)][idx(i)] = sign_of(r(j, i));
  return out;
}

namespace {

SignPattern single_pattern(Subregion s) {
  constexpr Sign P = Sign::Positive, N = Sign::Negative;
  SignPattern out;
  out.cells[0] = {P, N, s == Subregion::P1 ? N : P};
  out.cells[1] = {N, P, s == Subregion::P3 ? N : P};
  return out;
}

}  // namespace

SignPattern subregion_pattern(const SubregionSet& set) {
  const auto members = set.members();
  if (members.empty()) throw Error(ErrorCode::EmptySet, "no subregion to pattern");
  SignPattern out = single_pattern(members.front());
  for (Subregion s : members) {
    const SignPattern p = single_pattern(s);
    for (Good j : kGoods)
      for (Factor i : kFactors)
        if (out.cells[idx(j)][idx(i)] != p.cells[idx(j)][idx(i)])
          out.cells[idx(j)][idx(i)] = Sign::Unknown;
  }
  return out;
}

Subregion subregion_of(const Economy& economy) {
  const EwsReport report = ews(economy);
  if (!report.ratio.in_quadrant_iv())
    throw Error(ErrorCode::NotStrongRybczynski, "EWS-ratio vector is not in quadrant IV");
  const RybczynskiMatrix r = rybczynski_matrix(economy);
  const PerGood<Sign> labor = r.column_signs(Factor::Labor);
  if (!is_strict(labor[0]) || !is_strict(labor[1]))
    throw Error(ErrorCode::Boundary, "labor-column Rybczynski elasticity is in the zero band");
  if (labor[0] == Sign::Negative && labor[1] == Sign::Positive) return Subregion::P1;
  if (labor[0] == Sign::Positive && labor[1] == Sign::Positive) return Subregion::P2;
  if (labor[0] == Sign::Positive && labor[1] == Sign::Negative) return Subregion::P3;
  // theta_1 r_1L + theta_2 r_2L = theta_L rules out (-,-).
  throw Error(ErrorCode::Boundary, "labor column (-,-) violates the income identity");
}

std::optional<Subregion> strip_subregion(double s_prime, const DistributiveShares& theta) {
  const double lo = theta(Factor::Capital, Good::Exportable) / theta(Factor::Land, Good::Exportable);
  const double hi =
      theta(Factor::Capital, Good::Importable) / theta(Factor::Land, Good::Importable);
  if (s_prime < lo) return Subregion::P3;
  if (s_prime > hi) return Subregion::P1;
  if (s_prime > lo && s_prime < hi) return Subregion::P2;
  return std::nullopt;
}

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::Holds: return "holds";
    case Condition::Fails: return "fails";
    case Condition::Unknown: return "unknown";
  }
  return "unknown";
}

SubregionRefinement refine_subregions(const DeflatedChanges& dc, const DistributiveShares& theta,
                                 const IncomeShares& income,
                                 const std::optional<PerFactor<double>>& a0) {
  SubregionRefinement out;
  out.labor_above_importable = condition_of(sign_of(dc.z_plus_p()) == Sign::Positive);
  out.labor_below_exportable = condition_of(sign_of(dc.z) == Sign::Negative);
  if (a0 && is_strict(sign_of((*a0)[idx(Factor::Land)]))) {
    const double b_x = income.factor_ratio(Factor::Capital, Factor::Land) *
                       (*a0)[idx(Factor::Capital)] / (*a0)[idx(Factor::Land)];
    const double hi =
        theta(Factor::Capital, Good::Importable) / theta(Factor::Land, Good::Importable);
    out.b_inside_strip = condition_of(b_x < hi);
  }
  if (out.labor_above_importable == Condition::Holds &&
      out.labor_below_exportable == Condition::Holds) {
    out.subregions = {Subregion::P1, Subregion::P2};
    if (out.b_inside_strip == Condition::Holds) out.subregions = {Subregion::P2};
  }
  return out;
}

// --- income shares ------------------------------------------------------------

ShareChange share_change(const PerGood<double>& goods_income, const PerGood<double>& p_hat,
                         const PerGood<double>& x_hat) {
  const double theta1 = goods_income[0];
  const double theta2 = goods_income[1];
  if (!(theta2 > 0.0))
    throw Error(ErrorCode::NotApplicable, "importable income share must be positive");
  ShareChange out;
  out.theta1_hat = theta2 * ((p_hat[0] - p_hat[1]) + (x_hat[0] - x_hat[1]));
  out.theta2_hat = importable_share_change(theta1, theta2, out.theta1_hat);
  return out;
}

double importable_share_change(double theta1, double theta2, double theta1_hat) {
  if (!(theta2 > 0.0))
    throw Error(ErrorCode::NotApplicable, "importable income share must be positive");
  return -theta1 * theta1_hat / theta2;
}

}  // namespace rybsign
