#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "common.hpp"
#include "rybsign/classification.hpp"
#include "rybsign/economy_io.hpp"
#include "rybsign/error.hpp"

using namespace rybsign;
using doctest::Approx;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::ParseError;
}

// Thailand 1920-1927 deflated changes, percent.
DeflatedChanges thailand() { return DeflatedChanges::from_deflated(176.6, 22.1, std::nullopt, -12.5); }

const PerFactor<Sign> kNoSigns{Sign::Unknown, Sign::Unknown, Sign::Unknown};

}  // namespace

TEST_CASE("deflated changes from rates of change") {
  const DeflatedChanges dc = deflated_changes({0.05, 0.01, 0.02}, {0.03, 0.01});
  CHECK(dc.p == Approx(0.02));
  CHECK(dc.x == Approx(0.02));
  CHECK(*dc.y == Approx(-0.02));
  CHECK(dc.z == Approx(-0.01));
  CHECK(dc.z_plus_p() == Approx(0.01));
  CHECK(*dc.w(Factor::Land, Factor::Labor).value == Approx(0.03));
  CHECK(dc.ordering_established());
}

TEST_CASE("capital entries are implied when Y is unknown") {
  const DeflatedChanges dc = thailand();
  CHECK_FALSE(dc.y.has_value());
  CHECK(dc.ordering_established());
  CHECK(dc.w(Factor::Capital, Factor::Labor).sign == Sign::Negative);
  CHECK(dc.w(Factor::Labor, Factor::Capital).sign == Sign::Positive);
  CHECK(dc.w(Factor::Capital, Factor::Land).sign == Sign::Negative);
  CHECK_FALSE(dc.w(Factor::Capital, Factor::Labor).has_value());
  CHECK(*dc.w(Factor::Land, Factor::Labor).value == Approx(34.6));

  // Z + P <= 0 leaves them unknown.
  const DeflatedChanges weak = DeflatedChanges::from_deflated(10.0, 5.0, std::nullopt, -12.0);
  CHECK(weak.w(Factor::Capital, Factor::Labor).sign == Sign::Unknown);
  CHECK_FALSE(weak.ordering_established());
}

TEST_CASE("sufficient ordering check") {
  const OrderingVerdict v = check_sufficient_ordering(thailand(), 0.22, 0.0602);
  CHECK(v.applicable);
  CHECK(v.sufficient);
  CHECK(v.ranking);
  CHECK(v.ranking_implied);
  CHECK(v.line_intersection == Approx(-0.22 / (0.22 - 0.0602) * 176.6));

  const OrderingVerdict falling =
      check_sufficient_ordering(DeflatedChanges::from_deflated(-1.0, 22.1, std::nullopt, -12.5), 0.22, 0.06);
  CHECK_FALSE(falling.applicable);
  CHECK_FALSE(falling.ranking);

  // Y known and out of order.
  const OrderingVerdict y_high =
      check_sufficient_ordering(DeflatedChanges::from_deflated(5.0, 3.0, 1.0, 0.5), 0.22, 0.06);
  CHECK(y_high.sufficient);
  CHECK_FALSE(y_high.ranking);

  CHECK(code_of([] { check_sufficient_ordering(thailand(), 0.2, 0.2); }) ==
        ErrorCode::DegenerateIntensity);
}

TEST_CASE("sign triples and their letters") {
  for (TripleLetter l : {TripleLetter::A, TripleLetter::B, TripleLetter::C, TripleLetter::D})
    CHECK(triple_letter(triple_signs(l)) == l);
  CHECK(triple_signs(TripleLetter::C) == PerFactor<Sign>{Sign::Positive, Sign::Positive, Sign::Negative});
  CHECK_FALSE(triple_letter({Sign::Positive, Sign::Negative, Sign::Positive}).has_value());
  CHECK(letter_char(TripleLetter::D) == 'D');
}

TEST_CASE("admissible triples narrowed by a_T0'") {
  const IntensityRanking ranking = intensity_ranking(testing::sample_theta());
  const DeflatedChanges dc = thailand();
  CHECK(admissible_triples(ranking, dc).size() == 4);
  CHECK(admissible_triples(ranking, dc, {Sign::Positive, Sign::Unknown, Sign::Unknown}) ==
        std::set<TripleLetter>{TripleLetter::C});
  CHECK(admissible_triples(ranking, dc, {Sign::Negative, Sign::Unknown, Sign::Unknown}) ==
        std::set<TripleLetter>{TripleLetter::A, TripleLetter::B, TripleLetter::D});
  CHECK(admissible_triples(ranking, dc, {Sign::Unknown, Sign::Negative, Sign::Unknown}) ==
        std::set<TripleLetter>{TripleLetter::D});

  const DeflatedChanges falling = DeflatedChanges::from_deflated(-3.0, 22.1, std::nullopt, -12.5);
  CHECK(code_of([&] { admissible_triples(ranking, falling); }) == ErrorCode::NotApplicable);
  const IntensityRanking other =
      intensity_ranking(DistributiveShares({{{0.22, 0.06}, {0.51, 0.24}, {0.27, 0.70}}}));
  CHECK(code_of([&] { admissible_triples(other, dc); }) == ErrorCode::NotApplicable);
}

TEST_CASE("sector signs aggregate only when they agree") {
  using S = Sign;
  const auto agg = aggregate_a0_signs({PerGood<S>{S::Positive, S::Positive}, PerGood<S>{S::Positive, S::Zero},
                                       PerGood<S>{S::Positive, S::Negative}});
  CHECK(agg == PerFactor<S>{S::Positive, S::Positive, S::Unknown});
  const auto zero = aggregate_a0_signs({PerGood<S>{S::Zero, S::Zero}, PerGood<S>{S::Negative, S::Zero},
                                        PerGood<S>{S::Unknown, S::Positive}});
  CHECK(zero == PerFactor<S>{S::Zero, S::Negative, S::Unknown});

  const Economy e = testing::sample_economy();
  const FactorByGood a_hat{{{0.01, -0.02}, {0.0, 0.03}, {0.02, 0.02}}};
  const PerFactor<double> a0 = aggregate_a0(e.allocation(), a_hat);
  CHECK(a0[0] == Approx(e.allocation()(Factor::Land, Good::Exportable) * 0.01 -
                        e.allocation()(Factor::Land, Good::Importable) * 0.02));
  CHECK(a0[2] == Approx(0.02));
}

TEST_CASE("sign-level segment for the case study") {
  const auto income = IncomeShares::from_goods(testing::sample_theta(), {0.7, 0.3});
  PerFactor<Estimate> a0{};
  for (Factor i : kFactors) a0[idx(i)] = Estimate::sign_only(triple_signs(TripleLetter::C)[idx(i)]);
  const SegmentEstimate seg = segment_estimate(thailand(), income, a0);
  CHECK(seg.point_a.s_prime.sign == Sign::Positive);
  CHECK(seg.point_a.u_prime.sign == Sign::Negative);
  CHECK(seg.point_b.in_quadrant_iv());
  CHECK(seg.quadrant_iv);
  CHECK_FALSE(seg.a_left_of_b.has_value());

  a0[0] = Estimate::of(0.0);
  CHECK(code_of([&] { segment_estimate(thailand(), income, a0); }) == ErrorCode::PointBUndefined);
  const DeflatedChanges flat = DeflatedChanges::from_deflated(5.0, 2.0, 2.0, 2.0);
  a0[0] = Estimate::of(1.0);
  CHECK(code_of([&] { segment_estimate(flat, income, a0); }) == ErrorCode::PointAUndefined);
}

TEST_CASE("segment points from magnitudes") {
  const auto income = IncomeShares::from_goods(testing::sample_theta(), {0.7, 0.3});
  const DeflatedChanges dc = deflated_changes({0.05, -0.01, 0.02}, {0.03, 0.01}, income);
  const PerFactor<Estimate> a0{Estimate::of(0.004), Estimate::of(0.01), Estimate::of(-0.002)};
  const SegmentEstimate seg = segment_estimate(dc, income, a0);
  const double w_tl = 0.03, w_kl = -0.03, w_lt = -0.03, w_kt = -0.06;
  CHECK(*seg.point_a.s_prime.value == Approx(-w_tl / w_kl));
  CHECK(*seg.point_a.u_prime.value ==
        Approx(-income.factor(Factor::Labor) * w_lt / (income.factor(Factor::Capital) * w_kt)));
  CHECK(*seg.point_b.s_prime.value ==
        Approx(income.factor_ratio(Factor::Capital, Factor::Land) * 0.01 / 0.004));
  CHECK(*seg.point_b.u_prime.value == Approx(0.01 / -0.002));
}

TEST_CASE("subregion patterns") {
  const SignPattern p1 = subregion_pattern({Subregion::P1});
  CHECK(p1(Good::Exportable, Factor::Labor) == Sign::Negative);
  CHECK(p1(Good::Importable, Factor::Labor) == Sign::Positive);
  const SignPattern p3 = subregion_pattern({Subregion::P3});
  CHECK(p3(Good::Exportable, Factor::Labor) == Sign::Positive);
  CHECK(p3(Good::Importable, Factor::Labor) == Sign::Negative);
  const SignPattern p12 = subregion_pattern({Subregion::P1, Subregion::P2});
  CHECK(p12(Good::Exportable, Factor::Labor) == Sign::Unknown);
  CHECK(p12(Good::Importable, Factor::Labor) == Sign::Positive);
  for (const SignPattern& p : {p1, p3, p12}) {
    CHECK(p(Good::Exportable, Factor::Land) == Sign::Positive);
    CHECK(p(Good::Importable, Factor::Land) == Sign::Negative);
    CHECK(p(Good::Exportable, Factor::Capital) == Sign::Negative);
    CHECK(p(Good::Importable, Factor::Capital) == Sign::Positive);
  }
  CHECK(code_of([] { subregion_pattern(SubregionSet{}); }) == ErrorCode::EmptySet);
  CHECK(SubregionSet::all().to_string() == "{P1, P2, P3}");
  CHECK(SubregionSet{Subregion::P2, Subregion::P1}.to_string() == "{P1, P2}");
}

TEST_CASE("operational subregions of the fixtures") {
  CHECK(subregion_of(io::load_economy(testing::fixture("economy_p1.ini"))) == Subregion::P1);
  CHECK(subregion_of(io::load_economy(testing::fixture("economy_p2.ini"))) == Subregion::P2);
  CHECK(subregion_of(io::load_economy(testing::fixture("economy_p3.ini"))) == Subregion::P3);

  // Land and capital substitutes everywhere: outside quadrant IV.
  const auto theta = testing::sample_theta();
  ElasticityTensor off = testing::sample_off_diagonal();
  off[0][0][1] = off[0][1][0] = 0.3;
  off[1][0][1] = off[1][1][0] = 0.05;
  const Economy e = Economy::from_shares(theta, {0.7, 0.3}, AllenMatrix::from_off_diagonal(theta, off));
  CHECK(code_of([&] { subregion_of(e); }) == ErrorCode::NotStrongRybczynski);
}

TEST_CASE("strip prediction thresholds") {
  const auto theta = testing::sample_theta();
  const double lo = 0.27 / 0.22, hi = 0.70 / 0.06;
  CHECK(strip_subregion(lo - 0.1, theta) == Subregion::P3);
  CHECK(strip_subregion(0.5 * (lo + hi), theta) == Subregion::P2);
  CHECK(strip_subregion(hi + 1.0, theta) == Subregion::P1);
  CHECK_FALSE(strip_subregion(lo, theta).has_value());
}

TEST_CASE("real-wage conditions refine the subregion set") {
  const auto theta = testing::sample_theta();
  const auto income = IncomeShares::from_goods(theta, {0.7, 0.3});
  const SubregionRefinement r = refine_subregions(thailand(), theta, income);
  CHECK(r.labor_above_importable == Condition::Holds);
  CHECK(r.labor_below_exportable == Condition::Holds);
  CHECK(r.b_inside_strip == Condition::Unknown);
  CHECK(r.subregions == SubregionSet{Subregion::P1, Subregion::P2});

  // B inside the strip when theta_KT a_K0'/a_T0' < theta_K2/theta_T2.
  const double ratio = income.factor_ratio(Factor::Capital, Factor::Land);
  const double hi = 0.70 / 0.06;
  const double a_k = 0.5 * hi / ratio;
  const SubregionRefinement inside = refine_subregions(thailand(), theta, income, PerFactor<double>{1.0, a_k, -1.0});
  CHECK(inside.b_inside_strip == Condition::Holds);
  CHECK(inside.subregions == SubregionSet{Subregion::P2});
  const SubregionRefinement outside =
      refine_subregions(thailand(), theta, income, PerFactor<double>{1.0, 3.0 * a_k, -1.0});
  CHECK(outside.b_inside_strip == Condition::Fails);
  CHECK(outside.subregions.size() == 2);

  // Real wage in good 2 falling: no refinement.
  const SubregionRefinement none =
      refine_subregions(DeflatedChanges::from_deflated(5.0, 22.1, std::nullopt, -12.5), theta, income);
  CHECK(none.subregions == SubregionSet::all());
}

TEST_CASE("importable share change is exact") {
  CHECK(importable_share_change(0.8, 0.2, 1.0) == -4.0);
  const ShareChange s = share_change({0.8, 0.2}, {0.03, 0.01}, {0.02, 0.01});
  CHECK(s.theta1_hat == Approx(0.2 * (0.02 + 0.01)));
  CHECK(s.theta2_hat == Approx(-4.0 * s.theta1_hat));
  CHECK(code_of([] { share_change({1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}); }) == ErrorCode::NotApplicable);
}
