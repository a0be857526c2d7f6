#include "rybsign/model_core.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "rybsign/error.hpp"

namespace rybsign {

namespace {

bool finite_all(const FactorByGood& m) {
  for (const auto& row : m)
    for (double v : row)
      if (!std::isfinite(v)) return false;
  return true;
}

std::string describe(Factor i, Good j) {
  return std::string(symbol(i)) + std::string(symbol(j));
}

}  // namespace

std::string_view symbol(Factor f) {
  switch (f) {
    case Factor::Land: return "T";
    case Factor::Capital: return "K";
    case Factor::Labor: return "L";
  }
  return "?";
}

std::string_view symbol(Good g) { return g == Good::Exportable ? "1" : "2"; }

std::string_view to_string(PairRelation r) {
  switch (r) {
    case PairRelation::Substitutes: return "economy-wide substitutes";
    case PairRelation::Complements: return "economy-wide complements";
    case PairRelation::Independent: return "independent";
  }
  return "?";
}

// --- shares -----------------------------------------------------------------

DistributiveShares::DistributiveShares(const FactorByGood& theta) : theta_(theta) {
  if (!finite_all(theta_)) throw Error(ErrorCode::InvalidShares, "non-finite distributive share");
  for (Good j : kGoods) {
    double sum = 0.0;
    for (Factor i : kFactors) {
      const double v = (*this)(i, j);
      if (!(v > 0.0) || v >= 1.0)
        throw Error(ErrorCode::InvalidShares,
                    "theta_" + describe(i, j) + " must lie in (0,1), got " + std::to_string(v));
      sum += v;
    }
    if (std::abs(sum - 1.0) > kShareTolerance)
      throw Error(ErrorCode::InvalidShares, "distributive shares of sector " +
                                                std::string(symbol(j)) + " sum to " +
                                                std::to_string(sum));
  }
}

double DistributiveShares::intensity_ratio(Factor i) const {
  return (*this)(i, Good::Exportable) / (*this)(i, Good::Importable);
}

IncomeShares::IncomeShares(const PerGood<double>& goods, const PerFactor<double>& factors)
    : goods_(goods), factors_(factors) {
  for (double v : goods_)
    if (!std::isfinite(v) || v < 0.0 || v > 1.0)
      throw Error(ErrorCode::InvalidShares, "income share of a good outside [0,1]");
  for (double v : factors_)
    if (!std::isfinite(v) || !(v > 0.0) || v > 1.0)
      throw Error(ErrorCode::InvalidShares, "income share of a factor outside (0,1]");
  const double goods_sum = goods_[0] + goods_[1];
  const double factor_sum = std::accumulate(factors_.begin(), factors_.end(), 0.0);
  if (std::abs(goods_sum - 1.0) > kShareTolerance)
    throw Error(ErrorCode::InvalidShares, "goods income shares sum to " + std::to_string(goods_sum));
  if (std::abs(factor_sum - 1.0) > kShareTolerance)
    throw Error(ErrorCode::InvalidShares,
                "factor income shares sum to " + std::to_string(factor_sum));
}

IncomeShares IncomeShares::from_goods(const DistributiveShares& distributive,
                                      const PerGood<double>& goods) {
  PerFactor<double> factors{};
  for (Factor i : kFactors)
    for (Good j : kGoods) factors[idx(i)] += goods[idx(j)] * distributive(i, j);
  return IncomeShares(goods, factors);
}

AllocationShares::AllocationShares(const FactorByGood& lambda) : lambda_(lambda) {
  if (!finite_all(lambda_)) throw Error(ErrorCode::InvalidShares, "non-finite allocation share");
  for (Factor i : kFactors) {
    double sum = 0.0;
    for (Good j : kGoods) {
      const double v = (*this)(i, j);
      if (v < 0.0 || v > 1.0 + kShareTolerance)
        throw Error(ErrorCode::InvalidShares, "lambda_" + describe(i, j) + " outside [0,1]");
      sum += v;
    }
    if (std::abs(sum - 1.0) > kShareTolerance)
      throw Error(ErrorCode::InvalidShares, "allocation shares of factor " +
                                                std::string(symbol(i)) + " sum to " +
                                                std::to_string(sum));
  }
}

AllocationResult derive_allocation(const DistributiveShares& distributive,
                                   const PerGood<double>& goods_income) {
  IncomeShares income = IncomeShares::from_goods(distributive, goods_income);
  FactorByGood lambda{};
  for (Factor i : kFactors)
    for (Good j : kGoods)
      lambda[idx(i)][idx(j)] = income.good(j) / income.factor(i) * distributive(i, j);
  return {income, AllocationShares(lambda)};
}

// --- Allen elasticities -----------------------------------------------------

AllenMatrix::AllenMatrix(const ElasticityTensor& sigma) : sigma_(sigma) {
  for (Good j : kGoods) {
    for (Factor i : kFactors) {
      for (Factor h : kFactors) {
        const double v = (*this)(j, i, h);
        if (!std::isfinite(v))
          throw Error(ErrorCode::InvalidElasticities, "non-finite Allen elasticity");
        const double vt = (*this)(j, h, i);
        if (std::abs(v - vt) > kShareTolerance * std::max(1.0, std::abs(v)))
          throw Error(ErrorCode::InvalidElasticities,
                      "Allen matrix of sector " + std::string(symbol(j)) + " is not symmetric");
      }
      if ((*this)(j, i, i) > kShareTolerance)
        throw Error(ErrorCode::InvalidElasticities,
                    "own Allen elasticity sigma" + std::string(symbol(j)) + "_" +
                        std::string(symbol(i)) + std::string(symbol(i)) + " is positive");
    }
  }
}

AllenMatrix AllenMatrix::from_off_diagonal(const DistributiveShares& theta,
                                           const ElasticityTensor& off) {
  ElasticityTensor sigma = off;
  for (Good j : kGoods) {
    for (Factor i : kFactors) {
      double cross = 0.0;
      for (Factor h : kFactors)
        if (h != i) cross += theta(h, j) * off[idx(j)][idx(i)][idx(h)];
      sigma[idx(j)][idx(i)][idx(i)] = -cross / theta(i, j);
    }
  }
  return AllenMatrix(sigma);
}

void validate_allen(const AllenMatrix& allen, const DistributiveShares& theta) {
  for (Good j : kGoods) {
    Eigen::Matrix3d weighted;
    double scale = 0.0;
    for (Factor i : kFactors) {
      double row = 0.0;
      for (Factor h : kFactors) {
        const double s = allen(j, i, h);
        row += theta(h, j) * s;
        weighted(idx(i), idx(h)) = theta(i, j) * theta(h, j) * s;
        scale = std::max(scale, std::abs(weighted(idx(i), idx(h))));
      }
      if (std::abs(row) > kShareTolerance * std::max(1.0, std::abs(allen(j, i, i))))
        throw Error(ErrorCode::InvalidElasticities,
                    "homogeneity fails for factor " + std::string(symbol(i)) + " in sector " +
                        std::string(symbol(j)) + " (residual " + std::to_string(row) + ")");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(weighted, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().maxCoeff() > kShareTolerance * std::max(1.0, scale))
      throw Error(ErrorCode::InvalidElasticities,
                  "cost function of sector " + std::string(symbol(j)) + " is not concave");
  }
}

// --- Economy ----------------------------------------------------------------

Economy::Economy(DistributiveShares distributive, IncomeShares income,
                 AllocationShares allocation, AllenMatrix allen)
    : distributive_(std::move(distributive)),
      income_(std::move(income)),
      allocation_(std::move(allocation)),
      allen_(std::move(allen)) {
  for (Factor i : kFactors) {
    double implied = 0.0;
    for (Good j : kGoods) implied += income_.good(j) * distributive_(i, j);
    if (std::abs(implied - income_.factor(i)) > kShareTolerance)
      throw Error(ErrorCode::InvalidShares, "factor income share of " + std::string(symbol(i)) +
                                                " inconsistent with distributive shares");
    for (Good j : kGoods) {
      const double lambda = income_.good(j) / income_.factor(i) * distributive_(i, j);
      if (std::abs(lambda - allocation_(i, j)) > kShareTolerance)
        throw Error(ErrorCode::InvalidShares,
                    "lambda_" + describe(i, j) + " inconsistent with income and distributive shares");
    }
  }
  validate_allen(allen_, distributive_);
}

Economy Economy::from_shares(const DistributiveShares& distributive,
                             const PerGood<double>& goods_income, const AllenMatrix& allen) {
  auto [income, allocation] = derive_allocation(distributive, goods_income);
  return Economy(distributive, income, allocation, allen);
}

// --- intensity ranking -------------------------------------------------------

std::string IntensityRanking::to_string() const {
  std::ostringstream out;
  out << symbol(order[0]) << " > " << symbol(order[1]) << " > " << symbol(order[2]);
  return out.str();
}

IntensityRanking intensity_ranking(const DistributiveShares& distributive) {
  IntensityRanking ranking;
  for (Factor i : kFactors) ranking.ratios[idx(i)] = distributive.intensity_ratio(i);
  ranking.order = kFactors;
  std::sort(ranking.order.begin(), ranking.order.end(), [&](Factor a, Factor b) {
    return ranking.ratios[idx(a)] > ranking.ratios[idx(b)];
  });
  for (std::size_t k = 0; k + 1 < kNumFactors; ++k) {
    const double gap = ranking.ratios[idx(ranking.order[k])] - ranking.ratios[idx(ranking.order[k + 1])];
    if (gap <= kSignThreshold)
      throw Error(ErrorCode::Indeterminate,
                  "intensity ratios of " + std::string(symbol(ranking.order[k])) + " and " +
                      std::string(symbol(ranking.order[k + 1])) + " are tied");
  }
  const Factor m = ranking.middle();
  const double diff = distributive(m, Good::Exportable) - distributive(m, Good::Importable);
  if (std::abs(diff) <= kSignThreshold)
    throw Error(ErrorCode::Indeterminate, "middle factor has equal shares in both sectors");
  ranking.middle_intensity = diff > 0 ? MiddleIntensity::Exportable : MiddleIntensity::Importable;
  return ranking;
}

std::array<Factor, kNumFactors> allocation_order(const AllocationShares& allocation) {
  auto order = kFactors;
  std::sort(order.begin(), order.end(), [&](Factor a, Factor b) {
    return allocation(a, Good::Exportable) > allocation(b, Good::Exportable);
  });
  return order;
}

// --- elasticities and EWS ------------------------------------------------------

ElasticityTensor cost_share_elasticities(const Economy& economy) {
  ElasticityTensor eps{};
  const auto& theta = economy.distributive();
  const auto& allen = economy.allen();
  for (Good j : kGoods)
    for (Factor i : kFactors)
      for (Factor h : kFactors) eps[idx(j)][idx(i)][idx(h)] = theta(h, j) * allen(j, i, h);
  return eps;
}

EwsComponents ews_components(const Economy& economy) {
  const ElasticityTensor eps = cost_share_elasticities(economy);
  const auto& lambda = economy.allocation();
  EwsComponents out;
  for (Factor i : kFactors)
    for (Factor h : kFactors)
      for (Good j : kGoods) out.g[idx(i)][idx(h)] += lambda(i, j) * eps[idx(j)][idx(i)][idx(h)];
  out.s = out(Factor::Labor, Factor::Capital);
  out.t = out(Factor::Labor, Factor::Land);
  out.u = out(Factor::Capital, Factor::Land);
  return out;
}

EwsReport ews(const Economy& economy) {
  EwsReport report;
  report.components = ews_components(economy);
  const auto& c = report.components;
  if (std::abs(c.t) <= kSignThreshold)
    throw Error(ErrorCode::RatioUndefined, "g_LT is zero; the EWS ratio vector is undefined");
  report.ratio = {c.s / c.t, c.u / c.t};
  auto label = [&](Factor a, Factor b) {
    const Sign s = sign_of(c(a, b));
    const PairRelation r = s == Sign::Positive   ? PairRelation::Substitutes
                           : s == Sign::Negative ? PairRelation::Complements
                                                 : PairRelation::Independent;
    return FactorPairLabel{a, b, r};
  };
  report.labels = {label(Factor::Labor, Factor::Capital), label(Factor::Labor, Factor::Land),
                   label(Factor::Capital, Factor::Land)};
  return report;
}

}  // namespace rybsign
