#pragma once

// Share algebra and economy-wide substitution for the three-factor,
// two-good economy. Factors are ordered (T, K, L) = (land, capital, labor)
// and goods (1, 2) = (exportable, importable) everywhere in the library.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "rybsign/sign.hpp"

namespace rybsign {

enum class Factor : std::size_t { Land = 0, Capital = 1, Labor = 2 };
enum class Good : std::size_t { Exportable = 0, Importable = 1 };

inline constexpr std::size_t kNumFactors = 3;
inline constexpr std::size_t kNumGoods = 2;
inline constexpr std::array<Factor, kNumFactors> kFactors{Factor::Land, Factor::Capital,
                                                          Factor::Labor};
inline constexpr std::array<Good, kNumGoods> kGoods{Good::Exportable, Good::Importable};

constexpr std::size_t idx(Factor f) { return static_cast<std::size_t>(f); }
constexpr std::size_t idx(Good g) { return static_cast<std::size_t>(g); }

/// "T", "K" or "L".
std::string_view symbol(Factor f);
/// "1" or "2".
std::string_view symbol(Good g);

/// Tolerance for share normalisation identities.
inline constexpr double kShareTolerance = 1e-9;

template <class T>
using PerFactor = std::array<T, kNumFactors>;
template <class T>
using PerGood = std::array<T, kNumGoods>;
using FactorByGood = PerFactor<PerGood<double>>;      // [i][j]
using FactorByFactor = PerFactor<PerFactor<double>>;  // [i][h]
using ElasticityTensor = PerGood<FactorByFactor>;     // [j][i][h]

/// theta[i][j]: share of factor i in the unit cost of good j.
class DistributiveShares {
 public:
  explicit DistributiveShares(const FactorByGood& theta);

  double operator()(Factor i, Good j) const { return theta_[idx(i)][idx(j)]; }
  const FactorByGood& values() const { return theta_; }
  /// theta_i1 / theta_i2.
  double intensity_ratio(Factor i) const;

 private:
  FactorByGood theta_;
};

/// Shares of goods (theta_j) and factors (theta_i) in national income.
class IncomeShares {
 public:
  IncomeShares(const PerGood<double>& goods, const PerFactor<double>& factors);

  /// Factor shares implied by theta_i = sum_j theta_j theta_ij.
  static IncomeShares from_goods(const DistributiveShares& distributive,
                                 const PerGood<double>& goods);

  double good(Good j) const { return goods_[idx(j)]; }
  double factor(Factor i) const { return factors_[idx(i)]; }
  const PerGood<double>& goods() const { return goods_; }
  const PerFactor<double>& factors() const { return factors_; }
  /// theta_i / theta_h.
  double factor_ratio(Factor i, Factor h) const { return factor(i) / factor(h); }

 private:
  PerGood<double> goods_;
  PerFactor<double> factors_;
};

/// lambda[i][j]: fraction of the endowment of factor i employed in sector j.
class AllocationShares {
 public:
  explicit AllocationShares(const FactorByGood& lambda);

  double operator()(Factor i, Good j) const { return lambda_[idx(i)][idx(j)]; }
  const FactorByGood& values() const { return lambda_; }

 private:
  FactorByGood lambda_;
};

/// Allen partial elasticities sigma[j][i][h] for both sectors.
///
/// The constructor checks symmetry and non-positive own terms. The
/// remaining invariants (cost-share homogeneity and concavity) involve the
/// distributive shares and are checked by validate_allen().
class AllenMatrix {
 public:
  explicit AllenMatrix(const ElasticityTensor& sigma);

  /// Fills the diagonal from homogeneity, sum_h theta_hj sigma_ih = 0,
  /// given the off-diagonal entries (the diagonal of `off` is ignored).
  static AllenMatrix from_off_diagonal(const DistributiveShares& theta,
                                       const ElasticityTensor& off);

  double operator()(Good j, Factor i, Factor h) const {
    return sigma_[idx(j)][idx(i)][idx(h)];
  }
  const ElasticityTensor& values() const { return sigma_; }

 private:
  ElasticityTensor sigma_;
};

/// Throws InvalidElasticities if homogeneity or concavity fails.
void validate_allen(const AllenMatrix& allen, const DistributiveShares& theta);

/// One economy at a point in time.
class Economy {
 public:
  Economy(DistributiveShares distributive, IncomeShares income, AllocationShares allocation,
          AllenMatrix allen);

  /// Derives income and allocation shares from the goods' income shares.
  static Economy from_shares(const DistributiveShares& distributive,
                             const PerGood<double>& goods_income, const AllenMatrix& allen);

  const DistributiveShares& distributive() const { return distributive_; }
  const IncomeShares& income() const { return income_; }
  const AllocationShares& allocation() const { return allocation_; }
  const AllenMatrix& allen() const { return allen_; }

 private:
  DistributiveShares distributive_;
  IncomeShares income_;
  AllocationShares allocation_;
  AllenMatrix allen_;
};

struct AllocationResult {
  IncomeShares income;
  AllocationShares allocation;
};

/// lambda_ij = (theta_j / theta_i) theta_ij with theta_i = sum_j theta_j theta_ij.
AllocationResult derive_allocation(const DistributiveShares& distributive,
                                   const PerGood<double>& goods_income);

enum class MiddleIntensity {
  Exportable,  // theta_m1 > theta_m2
  Importable,  // theta_m1 < theta_m2
};

struct IntensityRanking {
  /// Factors by decreasing theta_i1/theta_i2.
  std::array<Factor, kNumFactors> order{};
  PerFactor<double> ratios{};
  MiddleIntensity middle_intensity = MiddleIntensity::Exportable;

  Factor middle() const { return order[1]; }
  std::array<Factor, 2> extremes() const { return {order[0], order[2]}; }
  /// theta_T1/theta_T2 > theta_L1/theta_L2 > theta_K1/theta_K2.
  bool is_land_labor_capital() const {
    return order[0] == Factor::Land && order[1] == Factor::Labor && order[2] == Factor::Capital;
  }
  /// "T > L > K" style rendering.
  std::string to_string() const;
};

/// Ranks factors by intensity ratio. Ratios closer than 1e-12, or a middle
/// factor with equal shares in both sectors, raise Indeterminate.
IntensityRanking intensity_ranking(const DistributiveShares& distributive);

/// Ranks factors by lambda_i1; with positive shares this ordering coincides
/// with the intensity-ratio ordering.
std::array<Factor, kNumFactors> allocation_order(const AllocationShares& allocation);

/// epsilon[j][i][h] = d log a_ij / d log w_h = theta_hj sigma^j_ih.
ElasticityTensor cost_share_elasticities(const Economy& economy);

struct EwsComponents {
  FactorByFactor g{};
  double s = 0.0;  // g_LK
  double t = 0.0;  // g_LT
  double u = 0.0;  // g_KT

  double operator()(Factor i, Factor h) const { return g[idx(i)][idx(h)]; }
};

struct EwsRatioVector {
  double s_prime = 0.0;  // g_LK / g_LT
  double u_prime = 0.0;  // g_KT / g_LT

  bool in_quadrant_iv() const {
    return sign_of(s_prime) == Sign::Positive && sign_of(u_prime) == Sign::Negative;
  }
};

enum class PairRelation { Substitutes, Complements, Independent };
std::string_view to_string(PairRelation r);

struct FactorPairLabel {
  Factor first;
  Factor second;
  PairRelation relation;
};

struct EwsReport {
  EwsComponents components;
  EwsRatioVector ratio;
  /// Pairs (L,K), (L,T), (K,T).
  std::array<FactorPairLabel, 3> labels;
};

/// g_ih = sum_j lambda_ij epsilon^j_ih.
EwsComponents ews_components(const Economy& economy);

/// Full report; throws RatioUndefined when |g_LT| <= 1e-12.
EwsReport ews(const Economy& economy);

}  // namespace rybsign
