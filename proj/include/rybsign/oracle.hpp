#pragma once

// Brute-force nonlinear equilibrium of a 3x2 economy whose sectors have
// generalized-Leontief unit costs
//
//   c_j(w) = sum_i sum_h b^j_ih sqrt(w_i w_h),   b^j symmetric.
//
// The oracle solves the level equations directly and differentiates them
// numerically, independently of the linear comparative-statics system.

#include <cstdint>
#include <optional>

#include "rybsign/hat_algebra.hpp"
#include "rybsign/model_core.hpp"

namespace rybsign::oracle {

struct GLEconomy {
  PerGood<FactorByFactor> b{};  // b[j][i][h]
  PerGood<double> p{};
  PerFactor<double> v{};
};

/// Unit cost c_j(w).
double unit_cost(const GLEconomy& gl, Good j, const PerFactor<double>& w);
/// Unit input requirements a_ij(w) = dc_j/dw_i.
PerFactor<double> input_requirements(const GLEconomy& gl, Good j, const PerFactor<double>& w);
/// Hessian of c_j at w.
FactorByFactor cost_hessian(const GLEconomy& gl, Good j, const PerFactor<double>& w);
/// Closed-form Allen elasticities sigma_ih = c c_ih / (c_i c_h).
FactorByFactor allen_elasticities(const GLEconomy& gl, Good j, const PerFactor<double>& w);

struct EquilibriumSnapshot {
  PerFactor<double> w{};
  PerGood<double> x{};
  double national_income = 0.0;
  double max_profit_residual = 0.0;  // max_j |c_j(w) - p_j| / p_j
  double max_market_residual = 0.0;  // max_i |sum_j a_ij x_j - v_i| / v_i
  int iterations = 0;
  Economy economy;
};

struct InitialGuess {
  PerFactor<double> w{};
  PerGood<double> x{};
};

/// Newton's method on (w, x) with an analytic Jacobian. Without an initial
/// guess, w starts at a price-scaled unit vector. Throws NoEquilibrium after
/// 100 iterations without convergence and Infeasible when the solution has
/// non-positive prices, outputs or input requirements.
EquilibriumSnapshot solve_equilibrium(const GLEconomy& gl,
                                      const std::optional<InitialGuess>& guess = std::nullopt);

/// Central-difference X_j*/V_i* at fixed prices; `step` is the log step.
RybczynskiMatrix fd_rybczynski(const GLEconomy& gl, double step);

struct FdResponse {
  PerFactor<double> w_hat{};
  PerGood<double> x_hat{};
  double income_share_1_hat = 0.0;  // rate of change of p_1 X_1 / I
};

/// Directional central difference of log(w, x) along a log shock of
/// (p, v). The largest log perturbation applied equals `step`; the result
/// is scaled back to the size of `shock`.
FdResponse fd_response(const GLEconomy& gl, const ShockVector& shock, double step);

/// Central-difference d log a_ij / d log w_h at w, [j][i][h].
ElasticityTensor fd_cost_share_elasticities(const GLEconomy& gl, const PerFactor<double>& w,
                                            double step);

/// Copy of `gl` with prices and endowments moved by exp(log_shift * shock).
GLEconomy shifted(const GLEconomy& gl, const ShockVector& shock, double log_shift);

enum class CoefficientForm {
  Mixed,            // off-diagonals in [-0.3, 1.0]
  AllSubstitutes,   // off-diagonals in [0, 1.0]
};

struct SamplerConstraints {
  bool land_labor_capital_ranking = true;
  std::optional<MiddleIntensity> middle_intensity;
  bool quadrant_iv = false;
  /// Requires P > 0 and X > Z > Y for the response to this shock.
  std::optional<ShockVector> triple_shock;
  /// Requires these a_i0' signs under `triple_shock`.
  std::optional<PerFactor<Sign>> a0_signs;
  /// Rescales the land row of sector 2 so that theta_T2 hits this value.
  std::optional<double> land_share_sector2;
  CoefficientForm form = CoefficientForm::Mixed;
  int max_rejections = 10000;
};

struct AdmissibleSample {
  GLEconomy gl;
  EquilibriumSnapshot snapshot;
  int rejections = 0;
};

/// Rejection sampler; deterministic in (seed, constraints). Throws
/// SamplerExhausted naming the constraint that rejected most draws.
AdmissibleSample sample_admissible(std::uint64_t seed, const SamplerConstraints& constraints);

}  // namespace rybsign::oracle
