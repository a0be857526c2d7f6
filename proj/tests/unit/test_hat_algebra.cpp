#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "common.hpp"
#include "rybsign/economy_io.hpp"
#include "rybsign/error.hpp"
#include "rybsign/hat_algebra.hpp"
#include "rybsign/sign.hpp"

using namespace rybsign;
using doctest::Approx;

TEST_CASE("sign helpers") {
  CHECK(sign_of(2e-12) == Sign::Positive);
  CHECK(sign_of(-5e-13) == Sign::Zero);
  CHECK(sign_of(std::nan("")) == Sign::Unknown);
  CHECK(multiply(Sign::Negative, Sign::Negative) == Sign::Positive);
  CHECK(multiply(Sign::Unknown, Sign::Zero) == Sign::Zero);
  CHECK(negate(Sign::Unknown) == Sign::Unknown);
  const Estimate q = Estimate::sign_only(Sign::Positive) / Estimate::of(-2.0);
  CHECK(q.sign == Sign::Negative);
  CHECK_FALSE(q.has_value());
  CHECK((Estimate::of(3.0) / Estimate::of(0.0)).sign == Sign::Unknown);
  CHECK(*(Estimate::of(3.0) * Estimate::of(-2.0)).value == -6.0);
}

TEST_CASE("responses satisfy zero profit and full employment") {
  const Economy e = testing::sample_economy();
  ShockVector shock = ShockVector::prices(0.013, -0.004);
  shock.v_hat = {0.002, -0.007, 0.011};
  const ResponseBundle r = solve_changes(e, shock);
  for (Good j : kGoods) {
    double cost = 0.0;
    for (Factor i : kFactors) cost += e.distributive()(i, j) * r.w_hat[idx(i)];
    CHECK(cost == Approx(shock.p_hat[idx(j)]).epsilon(1e-12));
  }
  for (Factor i : kFactors) {
    double use = 0.0, a0 = 0.0;
    for (Good j : kGoods) {
      use += e.allocation()(i, j) * (r.x_hat[idx(j)] + r.a_hat[idx(i)][idx(j)]);
      a0 += e.allocation()(i, j) * r.a_hat[idx(i)][idx(j)];
    }
    CHECK(use == Approx(shock.v_hat[idx(i)]).epsilon(1e-12));
    CHECK(r.a0_prime[idx(i)] == Approx(a0).epsilon(1e-12));
  }
  CHECK(r.condition_number > 1.0);
  CHECK_FALSE(r.ill_conditioned());
}

TEST_CASE("responses are linear in the shock") {
  const ComparativeStatics cs(testing::sample_economy());
  ShockVector a = ShockVector::prices(0.01, 0.002);
  ShockVector b = ShockVector::endowment(Factor::Labor, 0.03) + ShockVector::prices(-0.004, 0.0);
  const ResponseBundle ra = cs.solve(a), rb = cs.solve(b), rab = cs.solve(a + 2.5 * b);
  for (int i = 0; i < 3; ++i) CHECK(rab.w_hat[i] == Approx(ra.w_hat[i] + 2.5 * rb.w_hat[i]).epsilon(1e-12));
  for (int j = 0; j < 2; ++j) CHECK(rab.x_hat[j] == Approx(ra.x_hat[j] + 2.5 * rb.x_hat[j]).epsilon(1e-12));
}

TEST_CASE("price shocks leave a_i0' equal to minus the output-weighted change") {
  const Economy e = testing::sample_economy();
  const ResponseBundle r = solve_changes(e, ShockVector::prices(0.02, 0.005));
  for (Factor i : kFactors) {
    double expected = 0.0;
    for (Good j : kGoods) expected -= e.allocation()(i, j) * r.x_hat[idx(j)];
    CHECK(r.a0_prime[idx(i)] == Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("Rybczynski and Stolper-Samuelson identities") {
  const Economy e = testing::sample_economy();
  const RybczynskiMatrix r = rybczynski_matrix(e);
  const StolperSamuelsonMatrix s = stolper_samuelson_matrix(e);
  for (Good j : kGoods) {
    CHECK(r(j, Factor::Land) + r(j, Factor::Capital) + r(j, Factor::Labor) ==
          Approx(1.0).epsilon(1e-12));
    double cost = 0.0;
    for (Factor i : kFactors) cost += e.distributive()(i, j) * s(i, j);
    CHECK(cost == Approx(1.0).epsilon(1e-12));
  }
  for (Factor i : kFactors)
    CHECK(s(i, Good::Exportable) + s(i, Good::Importable) == Approx(1.0).epsilon(1e-12));

  const ReciprocityReport rec = reciprocity_check(e);
  CHECK(rec.deviation < 1e-12);
  // Without the income-share weights the two matrices differ.
  CHECK(rec.unweighted_gap > 1e-3);

  const auto rel = relative_output_effects(r);
  CHECK(rel[0].value == Approx(r(Good::Exportable, Factor::Land) - r(Good::Importable, Factor::Land)));
  CHECK(rel[0].sign == Sign::Positive);
  CHECK(rel[1].sign == Sign::Negative);
}

TEST_CASE("column signs of the sample economy") {
  const RybczynskiMatrix r = rybczynski_matrix(testing::sample_economy());
  CHECK(r.column_signs(Factor::Land) == PerGood<Sign>{Sign::Positive, Sign::Negative});
  CHECK(r.column_signs(Factor::Capital) == PerGood<Sign>{Sign::Negative, Sign::Positive});
}

TEST_CASE("frozen Rybczynski matrix of the P2 fixture") {
  // Values from the generalized-Leontief oracle at the equilibrium of gl_p2.ini.
  const Economy e = io::load_economy(testing::fixture("economy_p2.ini"));
  const RybczynskiMatrix r = rybczynski_matrix(e);
  const double expected[2][3] = {{4.037892001447883, -4.2338494889622904, 1.1959574875144077},
                                 {-2.2565952694533142, 3.199404633123569, 0.057190636329745019}};
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 3; ++i) CHECK(r.r[j][i] == Approx(expected[j][i]).epsilon(1e-10));
  const StolperSamuelsonMatrix s = stolper_samuelson_matrix(e);
  CHECK(s.s[2][0] == Approx(0.93109965949478646).epsilon(1e-10));
  CHECK(s.s[0][1] == Approx(-6.3963742337199694).epsilon(1e-10));
}

TEST_CASE("fixed coefficients make the system singular") {
  const auto theta = testing::sample_theta();
  const Economy leontief = Economy::from_shares(theta, {0.7, 0.3}, AllenMatrix(ElasticityTensor{}));
  try {
    ComparativeStatics cs(leontief);
    FAIL("expected SingularSystem");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularSystem);
  }
}
