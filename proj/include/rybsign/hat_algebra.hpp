#pragma once

// Linear comparative statics of the 3x2 economy.
//
// Unknowns are ordered (w_T*, w_K*, w_L*, X_1*, X_2*) and equations
// (zero profit 1, zero profit 2, full employment T, K, L):
//
//   sum_i theta_ij w_i*                         = p_j*
//   sum_h g_ih w_h* + sum_j lambda_ij X_j*      = V_i*
//
// where g is the economy-wide substitution matrix.

#include <Eigen/Dense>

#include "rybsign/model_core.hpp"

namespace rybsign {

struct ShockVector {
  PerGood<double> p_hat{};
  PerFactor<double> v_hat{};

  static ShockVector prices(double p1, double p2) { return {{p1, p2}, {}}; }
  static ShockVector endowment(Factor i, double rate) {
    ShockVector s;
    s.v_hat[idx(i)] = rate;
    return s;
  }
};

ShockVector operator+(const ShockVector& a, const ShockVector& b);
ShockVector operator*(double k, const ShockVector& s);

struct ResponseBundle {
  PerFactor<double> w_hat{};
  PerGood<double> x_hat{};
  FactorByGood a_hat{};           // a_ij* = sum_h epsilon^j_ih w_h*
  PerFactor<double> a0_prime{};   // a_i0' = sum_j lambda_ij a_ij*
  double condition_number = 0.0;  // 2-norm condition number of the system

  bool ill_conditioned() const { return condition_number > 1e8; }
};

/// Elasticities X_j*/V_i* at fixed goods prices, r[j][i].
struct RybczynskiMatrix {
  PerGood<PerFactor<double>> r{};

  double operator()(Good j, Factor i) const { return r[idx(j)][idx(i)]; }
  PerGood<Sign> column_signs(Factor i) const {
    return {sign_of((*this)(Good::Exportable, i)), sign_of((*this)(Good::Importable, i))};
  }
};

/// Elasticities w_i*/p_j* at fixed endowments, s[i][j].
struct StolperSamuelsonMatrix {
  PerFactor<PerGood<double>> s{};

  double operator()(Factor i, Good j) const { return s[idx(i)][idx(j)]; }
};

/// Factorised comparative-statics system of one economy.
class ComparativeStatics {
 public:
  /// Throws SingularSystem when the system is numerically singular.
  explicit ComparativeStatics(const Economy& economy);

  ResponseBundle solve(const ShockVector& shock) const;
  const Eigen::Matrix<double, 5, 5>& system() const { return system_; }
  double condition_number() const { return condition_; }
  const Economy& economy() const { return economy_; }

 private:
  Economy economy_;
  ElasticityTensor eps_;
  Eigen::Matrix<double, 5, 5> system_;
  Eigen::PartialPivLU<Eigen::Matrix<double, 5, 5>> lu_;
  double condition_ = 0.0;
};

ResponseBundle solve_changes(const Economy& economy, const ShockVector& shock);
RybczynskiMatrix rybczynski_matrix(const Economy& economy);
StolperSamuelsonMatrix stolper_samuelson_matrix(const Economy& economy);

struct ReciprocityReport {
  /// max |theta_j X_j*/V_i* - theta_i w_i*/p_j*|; zero up to rounding.
  double deviation = 0.0;
  /// max |X_j*/V_i* - w_i*/p_j*| without income-share weights; nonzero in
  /// general, reported for reference only.
  double unweighted_gap = 0.0;
};

ReciprocityReport reciprocity_check(const Economy& economy);

struct RelativeOutputEffect {
  Factor factor;
  double value;  // X_1*/V_i* - X_2*/V_i*
  Sign sign;
};

PerFactor<RelativeOutputEffect> relative_output_effects(const RybczynskiMatrix& r);

}  // namespace rybsign
