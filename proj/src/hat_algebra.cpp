#include "rybsign/hat_algebra.hpp"

#include <cmath>
#include <limits>

#include "rybsign/error.hpp"

namespace rybsign {

namespace {

constexpr double kSingularCondition = 1e14;

}  // namespace

ShockVector operator+(const ShockVector& a, const ShockVector& b) {
  ShockVector out;
  for (Good j : kGoods) out.p_hat[idx(j)] = a.p_hat[idx(j)] + b.p_hat[idx(j)];
  for (Factor i : kFactors) out.v_hat[idx(i)] = a.v_hat[idx(i)] + b.v_hat[idx(i)];
  return out;
}

ShockVector operator*(double k, const ShockVector& s) {
  ShockVector out;
  for (Good j : kGoods) out.p_hat[idx(j)] = k * s.p_hat[idx(j)];
  for (Factor i : kFactors) out.v_hat[idx(i)] = k * s.v_hat[idx(i)];
  return out;
}

ComparativeStatics::ComparativeStatics(const Economy& economy)
    : economy_(economy), eps_(cost_share_elasticities(economy)) {
  const auto& theta = economy.distributive();
  const auto& lambda = economy.allocation();
  const EwsComponents g = ews_components(economy);

  system_.setZero();
  for (Good j : kGoods)
    for (Factor i : kFactors) system_(idx(j), idx(i)) = theta(i, j);
  for (Factor i : kFactors) {
    const auto row = 2 + idx(i);
    for (Factor h : kFactors) system_(row, idx(h)) = g(i, h);
    for (Good j : kGoods) system_(row, 3 + idx(j)) = lambda(i, j);
  }

  Eigen::JacobiSVD<Eigen::Matrix<double, 5, 5>> svd(system_);
  const auto& sv = svd.singularValues();
  condition_ = sv(4) > 0.0 ? sv(0) / sv(4) : std::numeric_limits<double>::infinity();
  if (!std::isfinite(condition_) || condition_ > kSingularCondition)
    throw Error(ErrorCode::SingularSystem,
                "comparative-statics system is singular (condition " + std::to_string(condition_) + ")");
  lu_.compute(system_);
}

ResponseBundle ComparativeStatics::solve(const ShockVector& shock) const {
  Eigen::Matrix<double, 5, 1> rhs;
  for (Good j : kGoods) rhs(idx(j)) = shock.p_hat[idx(j)];
  for (Factor i : kFactors) rhs(2 + idx(i)) = shock.v_hat[idx(i)];
  const Eigen::Matrix<double, 5, 1> x = lu_.solve(rhs);

  ResponseBundle out;
  out.condition_number = condition_;
  for (Factor i : kFactors) out.w_hat[idx(i)] = x(idx(i));
  for (Good j : kGoods) out.x_hat[idx(j)] = x(3 + idx(j));
  const auto& lambda = economy_.allocation();
  for (Factor i : kFactors) {
    for (Good j : kGoods) {
      double a = 0.0;
      for (Factor h : kFactors) a += eps_[idx(j)][idx(i)][idx(h)] * out.w_hat[idx(h)];
      out.a_hat[idx(i)][idx(j)] = a;
      out.a0_prime[idx(i)] += lambda(i, j) * a;
    }
  }
  return out;
}

ResponseBundle solve_changes(const Economy& economy, const ShockVector& shock) {
  return ComparativeStatics(economy).solve(shock);
}

RybczynskiMatrix rybczynski_matrix(const Economy& economy) {
  const ComparativeStatics statics(economy);
  RybczynskiMatrix out;
  for (Factor i : kFactors) {
    const ResponseBundle resp = statics.solve(ShockVector::endowment(i, 1.0));
    for (Good j : kGoods) out.r[idx(j)][idx(i)] = resp.x_hat[idx(j)];
  }
  return out;
}

StolperSamuelsonMatrix stolper_samuelson_matrix(const Economy& economy) {
  const ComparativeStatics statics(economy);
  StolperSamuelsonMatrix out;
  for (Good j : kGoods) {
    ShockVector shock;
    shock.p_hat[idx(j)] = 1.0;
    const ResponseBundle resp = statics.solve(shock);
    for (Factor i : kFactors) out.s[idx(i)][idx(j)] = resp.w_hat[idx(i)];
  }
  return out;
}

ReciprocityReport reciprocity_check(const Economy& economy) {
  const RybczynskiMatrix r = rybczynski_matrix(economy);
  const StolperSamuelsonMatrix s = stolper_samuelson_matrix(economy);
  const auto& income = economy.income();
  ReciprocityReport out;
  for (Factor i : kFactors) {
    for (Good j : kGoods) {
      const double lhs = income.good(j) * r(j, i);
      const double rhs = income.factor(i) * s(i, j);
      out.deviation = std::max(out.deviation, std::abs(lhs - rhs));
      out.unweighted_gap = std::max(out.unweighted_gap, std::abs(r(j, i) - s(i, j)));
    }
  }
  return out;
}

PerFactor<RelativeOutputEffect> relative_output_effects(const RybczynskiMatrix& r) {
  PerFactor<RelativeOutputEffect> out{};
  for (Factor i : kFactors) {
    const double v = r(Good::Exportable, i) - r(Good::Importable, i);
    out[idx(i)] = {i, v, sign_of(v)};
  }
  return out;
}

}  // namespace rybsign
