#include "rybsign/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "rybsign/classification.hpp"
#include "rybsign/error.hpp"

namespace rybsign::oracle {

namespace {

constexpr int kMaxIterations = 100;
constexpr double kConverged = 1e-14;
constexpr double kResidualContract = 1e-10;

using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat5 = Eigen::Matrix<double, 5, 5>;

Vec5 scaled_residual(const GLEconomy& gl, const PerFactor<double>& w, const PerGood<double>& x) {
  Vec5 f;
  std::array<PerFactor<double>, kNumGoods> a{};
  for (Good j : kGoods) {
    f(idx(j)) = (unit_cost(gl, j, w) - gl.p[idx(j)]) / gl.p[idx(j)];
    a[idx(j)] = input_requirements(gl, j, w);
  }
  for (Factor i : kFactors) {
    double demand = 0.0;
    for (Good j : kGoods) demand += a[idx(j)][idx(i)] * x[idx(j)];
    f(2 + idx(i)) = (demand - gl.v[idx(i)]) / gl.v[idx(i)];
  }
  return f;
}

Mat5 scaled_jacobian(const GLEconomy& gl, const PerFactor<double>& w, const PerGood<double>& x) {
  Mat5 jac = Mat5::Zero();
  for (Good j : kGoods) {
    const PerFactor<double> a = input_requirements(gl, j, w);
    const FactorByFactor hess = cost_hessian(gl, j, w);
    for (Factor h : kFactors) jac(idx(j), idx(h)) = a[idx(h)] / gl.p[idx(j)];
    for (Factor i : kFactors) {
      for (Factor h : kFactors)
        jac(2 + idx(i), idx(h)) += hess[idx(i)][idx(h)] * x[idx(j)] / gl.v[idx(i)];
      jac(2 + idx(i), 3 + idx(j)) = a[idx(i)] / gl.v[idx(i)];
    }
  }
  return jac;
}

bool all_positive(const PerFactor<double>& w, const PerGood<double>& x) {
  return std::all_of(w.begin(), w.end(), [](double v) { return v > 0.0; }) &&
         std::all_of(x.begin(), x.end(), [](double v) { return v > 0.0; });
}

void check_coefficients(const GLEconomy& gl) {
  for (Good j : kGoods) {
    if (!(gl.p[idx(j)] > 0.0)) throw Error(ErrorCode::Infeasible, "goods price must be positive");
    for (Factor i : kFactors)
      for (Factor h : kFactors)
        if (gl.b[idx(j)][idx(i)][idx(h)] != gl.b[idx(j)][idx(h)][idx(i)])
          throw Error(ErrorCode::Infeasible, "generalized-Leontief coefficients must be symmetric");
  }
  for (double v : gl.v)
    if (!(v > 0.0)) throw Error(ErrorCode::Infeasible, "endowments must be positive");
}

InitialGuess default_guess(const GLEconomy& gl) {
  InitialGuess g;
  double scale = 0.0;
  for (Good j : kGoods) {
    double total = 0.0;
    for (const auto& row : gl.b[idx(j)])
      for (double v : row) total += v;
    scale += gl.p[idx(j)] / std::max(total, 1e-12);
  }
  scale /= kNumGoods;
  g.w.fill(scale);
  // Least-squares outputs for the market-clearing rows at the initial prices.
  Eigen::Matrix<double, 3, 2> a;
  Eigen::Vector3d v;
  for (Good j : kGoods) {
    const PerFactor<double> req = input_requirements(gl, j, g.w);
    for (Factor i : kFactors) a(idx(i), idx(j)) = req[idx(i)];
  }
  for (Factor i : kFactors) v(idx(i)) = gl.v[idx(i)];
  const Eigen::Vector2d x = a.colPivHouseholderQr().solve(v);
  const double floor = 1e-3 * std::max({std::abs(x(0)), std::abs(x(1)), 1e-6});
  for (Good j : kGoods) g.x[idx(j)] = std::max(x(idx(j)), floor);
  return g;
}

Economy extract_economy(const GLEconomy& gl, const PerFactor<double>& w,
                        const PerGood<double>& x) {
  FactorByGood theta{};
  PerGood<double> value{};
  ElasticityTensor sigma{};
  for (Good j : kGoods) {
    const double c = unit_cost(gl, j, w);
    const PerFactor<double> a = input_requirements(gl, j, w);
    for (Factor i : kFactors) theta[idx(i)][idx(j)] = a[idx(i)] * w[idx(i)] / c;
    value[idx(j)] = c * x[idx(j)];
    sigma[idx(j)] = allen_elasticities(gl, j, w);
  }
  const double income = value[0] + value[1];
  // Renormalise the computed shares so that the identities hold to rounding.
  for (Good j : kGoods) {
    double sum = 0.0;
    for (Factor i : kFactors) sum += theta[idx(i)][idx(j)];
    for (Factor i : kFactors) theta[idx(i)][idx(j)] /= sum;
  }
  const PerGood<double> goods{value[0] / income, value[1] / income};
  return Economy::from_shares(DistributiveShares(theta), goods, AllenMatrix(sigma));
}

}  // namespace

double unit_cost(const GLEconomy& gl, Good j, const PerFactor<double>& w) {
  double c = 0.0;
  for (Factor i : kFactors)
    for (Factor h : kFactors)
      c += gl.b[idx(j)][idx(i)][idx(h)] * std::sqrt(w[idx(i)] * w[idx(h)]);
  return c;
}

PerFactor<double> input_requirements(const GLEconomy& gl, Good j, const PerFactor<double>& w) {
  PerFactor<double> a{};
  for (Factor i : kFactors)
    for (Factor h : kFactors)
      a[idx(i)] += gl.b[idx(j)][idx(i)][idx(h)] * std::sqrt(w[idx(h)] / w[idx(i)]);
  return a;
}

FactorByFactor cost_hessian(const GLEconomy& gl, Good j, const PerFactor<double>& w) {
  FactorByFactor hess{};
  const auto& b = gl.b[idx(j)];
  for (std::size_t i = 0; i < kNumFactors; ++i) {
    for (std::size_t h = i + 1; h < kNumFactors; ++h) {
      const double v = 0.5 * b[i][h] / std::sqrt(w[i] * w[h]);
      hess[i][h] = v;
      hess[h][i] = v;
    }
    double own = 0.0;
    for (std::size_t h = 0; h < kNumFactors; ++h)
      if (h != i) own += b[i][h] * std::sqrt(w[h] / w[i]);
    hess[i][i] = -0.5 * own / w[i];
  }
  return hess;
}

FactorByFactor allen_elasticities(const GLEconomy& gl, Good j, const PerFactor<double>& w) {
  const double c = unit_cost(gl, j, w);
  const PerFactor<double> a = input_requirements(gl, j, w);
  const FactorByFactor hess = cost_hessian(gl, j, w);
  FactorByFactor sigma{};
  for (std::size_t i = 0; i < kNumFactors; ++i)
    for (std::size_t h = 0; h < kNumFactors; ++h) sigma[i][h] = c * hess[i][h] / (a[i] * a[h]);
  return sigma;
}

EquilibriumSnapshot solve_equilibrium(const GLEconomy& gl,
                                      const std::optional<InitialGuess>& guess) {
  check_coefficients(gl);
  const InitialGuess start = guess ? *guess : default_guess(gl);
  PerFactor<double> w = start.w;
  PerGood<double> x = start.x;
  if (!all_positive(w, x))
    throw Error(ErrorCode::Infeasible, "initial guess must be strictly positive");

  Vec5 f = scaled_residual(gl, w, x);
  int iter = 0;
  for (; iter < kMaxIterations && f.lpNorm<Eigen::Infinity>() > kConverged; ++iter) {
    const Mat5 jac = scaled_jacobian(gl, w, x);
    const Vec5 step = jac.partialPivLu().solve(-f);
    if (!step.allFinite()) throw Error(ErrorCode::NoEquilibrium, "singular Newton Jacobian");

    // Halve the step on negativity, then backtrack on the residual norm.
    double t = 1.0;
    PerFactor<double> w_new{};
    PerGood<double> x_new{};
    Vec5 f_new;
    for (int halvings = 0;; ++halvings) {
      for (Factor i : kFactors) w_new[idx(i)] = w[idx(i)] + t * step(idx(i));
      for (Good j : kGoods) x_new[idx(j)] = x[idx(j)] + t * step(3 + idx(j));
      const bool positive = all_positive(w_new, x_new);
      if (positive) {
        f_new = scaled_residual(gl, w_new, x_new);
        if (f_new.norm() < (1.0 - 1e-4 * t) * f.norm() || f.norm() < 1e-12) break;
      }
      if (halvings >= 50) {
        if (!positive) throw Error(ErrorCode::NoEquilibrium, "Newton step cannot stay positive");
        break;
      }
      t *= 0.5;
    }
    w = w_new;
    x = x_new;
    f = f_new;
  }
  if (!(f.lpNorm<Eigen::Infinity>() <= kConverged * 100))
    throw Error(ErrorCode::NoEquilibrium,
                "Newton did not converge in " + std::to_string(kMaxIterations) + " iterations");
  if (!all_positive(w, x)) throw Error(ErrorCode::Infeasible, "non-positive equilibrium");
  for (Good j : kGoods) {
    const PerFactor<double> a = input_requirements(gl, j, w);
    for (double v : a)
      if (!(v > 0.0)) throw Error(ErrorCode::Infeasible, "non-positive input requirement");
  }

  double profit = 0.0, market = 0.0;
  for (Good j : kGoods) profit = std::max(profit, std::abs(f(idx(j))));
  for (Factor i : kFactors) market = std::max(market, std::abs(f(2 + idx(i))));
  if (profit > kResidualContract || market > kResidualContract)
    throw Error(ErrorCode::NoEquilibrium, "equilibrium residuals exceed tolerance");

  double income = 0.0;
  for (Good j : kGoods) income += gl.p[idx(j)] * x[idx(j)];
  return EquilibriumSnapshot{w, x, income, profit, market, iter, extract_economy(gl, w, x)};
}

GLEconomy shifted(const GLEconomy& gl, const ShockVector& shock, double log_shift) {
  GLEconomy out = gl;
  for (Good j : kGoods) out.p[idx(j)] *= std::exp(log_shift * shock.p_hat[idx(j)]);
  for (Factor i : kFactors) out.v[idx(i)] *= std::exp(log_shift * shock.v_hat[idx(i)]);
  return out;
}

FdResponse fd_response(const GLEconomy& gl, const ShockVector& shock, double step) {
  double size = 0.0;
  for (double v : shock.p_hat) size = std::max(size, std::abs(v));
  for (double v : shock.v_hat) size = std::max(size, std::abs(v));
  FdResponse out;
  if (size == 0.0) return out;
  const double t = step / size;
  const EquilibriumSnapshot base = solve_equilibrium(gl);
  const InitialGuess warm{base.w, base.x};
  const GLEconomy up_gl = shifted(gl, shock, t);
  const GLEconomy down_gl = shifted(gl, shock, -t);
  const EquilibriumSnapshot up = solve_equilibrium(up_gl, warm);
  const EquilibriumSnapshot down = solve_equilibrium(down_gl, warm);
  for (Factor i : kFactors)
    out.w_hat[idx(i)] = (std::log(up.w[idx(i)]) - std::log(down.w[idx(i)])) / (2 * t);
  for (Good j : kGoods)
    out.x_hat[idx(j)] = (std::log(up.x[idx(j)]) - std::log(down.x[idx(j)])) / (2 * t);
  auto share1 = [](const GLEconomy& g, const EquilibriumSnapshot& s) {
    return g.p[0] * s.x[0] / (g.p[0] * s.x[0] + g.p[1] * s.x[1]);
  };
  out.income_share_1_hat =
      (std::log(share1(up_gl, up)) - std::log(share1(down_gl, down))) / (2 * t);
  return out;
}

RybczynskiMatrix fd_rybczynski(const GLEconomy& gl, double step) {
  RybczynskiMatrix out;
  for (Factor i : kFactors) {
    const FdResponse resp = fd_response(gl, ShockVector::endowment(i, 1.0), step);
    for (Good j : kGoods) out.r[idx(j)][idx(i)] = resp.x_hat[idx(j)];
  }
  return out;
}

ElasticityTensor fd_cost_share_elasticities(const GLEconomy& gl, const PerFactor<double>& w,
                                            double step) {
  ElasticityTensor out{};
  for (Factor h : kFactors) {
    PerFactor<double> up = w, down = w;
    up[idx(h)] *= std::exp(step);
    down[idx(h)] *= std::exp(-step);
    for (Good j : kGoods) {
      const PerFactor<double> a_up = input_requirements(gl, j, up);
      const PerFactor<double> a_down = input_requirements(gl, j, down);
      for (Factor i : kFactors)
        out[idx(j)][idx(i)][idx(h)] =
            (std::log(a_up[idx(i)]) - std::log(a_down[idx(i)])) / (2 * step);
    }
  }
  return out;
}

// --- sampler ------------------------------------------------------------------

namespace {

// Draws pass the checks in a fixed order; the furthest check that still
// rejected is the one blocking the constraint set.
class Rejections {
 public:
  void note(const std::string& reason) {
    if (!counts_.count(reason)) order_.push_back(reason);
    ++counts_[reason];
    ++total_;
    if (stage(reason) > stage(furthest_)) furthest_ = reason;
  }
  int total() const { return total_; }
  std::string summary() const {
    std::string out = "blocking constraint: " + furthest_ + " (";
    for (std::size_t k = 0; k < order_.size(); ++k)
      out += (k ? ", " : "") + order_[k] + " " + std::to_string(counts_.at(order_[k]));
    return out + ")";
  }

 private:
  static int stage(const std::string& reason) {
    static const std::vector<std::string> chain = {
        "land share of sector 2 unreachable", "non-positive input requirements",
        "equilibrium not found", "invalid extracted economy", "intensity ranking tied",
        "intensity ranking T > L > K", "middle-factor intensity", "quadrant IV",
        "singular comparative statics", "terms of trade and factor-price ranking",
        "a0' sign triple"};
    const auto it = std::find(chain.begin(), chain.end(), reason);
    return it == chain.end() ? -1 : static_cast<int>(it - chain.begin());
  }

  std::map<std::string, int> counts_;
  std::vector<std::string> order_;
  std::string furthest_ = "none";
  int total_ = 0;
};


// Scales row and column T of b^2 so that theta_T2 equals `target` at w.
bool rescale_land_sector2(GLEconomy& gl, const PerFactor<double>& w, double target) {
  auto share_at = [&](double k) {
    GLEconomy trial = gl;
    auto& b = trial.b[1];
    for (std::size_t h = 0; h < kNumFactors; ++h) {
      b[0][h] *= k;
      if (h != 0) b[h][0] *= k;
    }
    const PerFactor<double> a = input_requirements(trial, Good::Importable, w);
    return std::make_pair(a[0] * w[0] / unit_cost(trial, Good::Importable, w), trial);
  };
  double lo = 0.0, hi = 1.0;
  if (share_at(hi).first < target) return false;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (share_at(mid).first < target ? lo : hi) = mid;
  }
  auto [share, trial] = share_at(hi);
  if (!(share > 0.0) || std::abs(share - target) > 1e-12) return false;
  gl = trial;
  return true;
}

}  // namespace

AdmissibleSample sample_admissible(std::uint64_t seed, const SamplerConstraints& constraints) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  std::mt19937_64 rng(seq);
  const double off_lo = constraints.form == CoefficientForm::AllSubstitutes ? 0.0 : -0.3;
  std::uniform_real_distribution<double> off(off_lo, 1.0);
  std::uniform_real_distribution<double> diag(0.2, 2.0);
  std::uniform_real_distribution<double> level(0.5, 2.0);

  Rejections rejected;
  while (rejected.total() < constraints.max_rejections) {
    GLEconomy gl;
    for (Good j : kGoods) {
      auto& b = gl.b[idx(j)];
      for (std::size_t i = 0; i < kNumFactors; ++i) {
        b[i][i] = diag(rng);
        for (std::size_t h = i + 1; h < kNumFactors; ++h) b[i][h] = b[h][i] = off(rng);
      }
    }
    PerFactor<double> w0{};
    PerGood<double> x0{};
    for (double& v : w0) v = level(rng);
    for (double& v : x0) v = level(rng);

    if (constraints.land_share_sector2 &&
        !rescale_land_sector2(gl, w0, *constraints.land_share_sector2)) {
      rejected.note("land share of sector 2 unreachable");
      continue;
    }

    // Equilibrium by construction at (w0, x0); the cold solve must find it.
    bool positive = true;
    for (Good j : kGoods) {
      gl.p[idx(j)] = unit_cost(gl, j, w0);
      const PerFactor<double> a = input_requirements(gl, j, w0);
      for (Factor i : kFactors) {
        positive = positive && a[idx(i)] > 0.0;
        gl.v[idx(i)] += a[idx(i)] * x0[idx(j)];
      }
      positive = positive && gl.p[idx(j)] > 0.0;
    }
    if (!positive) {
      rejected.note("non-positive input requirements");
      continue;
    }

    std::optional<EquilibriumSnapshot> snap;
    try {
      snap = solve_equilibrium(gl);
    } catch (const Error& e) {
      rejected.note(e.code() == ErrorCode::NoEquilibrium || e.code() == ErrorCode::Infeasible
                        ? "equilibrium not found"
                        : "invalid extracted economy");
      continue;
    }
    double gap = 0.0;
    for (Factor i : kFactors) gap = std::max(gap, std::abs(snap->w[idx(i)] / w0[idx(i)] - 1.0));
    for (Good j : kGoods) gap = std::max(gap, std::abs(snap->x[idx(j)] / x0[idx(j)] - 1.0));
    if (gap > 1e-8) {
      rejected.note("equilibrium not found");
      continue;
    }

    const Economy& economy = snap->economy;
    std::optional<IntensityRanking> ranking;
    try {
      ranking = intensity_ranking(economy.distributive());
    } catch (const Error&) {
      rejected.note("intensity ranking tied");
      continue;
    }
    if (constraints.land_labor_capital_ranking && !ranking->is_land_labor_capital()) {
      rejected.note("intensity ranking T > L > K");
      continue;
    }
    if (constraints.middle_intensity && ranking->middle_intensity != *constraints.middle_intensity) {
      rejected.note("middle-factor intensity");
      continue;
    }
    if (constraints.quadrant_iv) {
      const EwsComponents g = ews_components(economy);
      if (!(sign_of(g.u) == Sign::Negative && sign_of(g.t) == Sign::Positive)) {
        rejected.note("quadrant IV");
        continue;
      }
    }
    if (constraints.triple_shock) {
      std::optional<ResponseBundle> resp;
      try {
        resp = solve_changes(economy, *constraints.triple_shock);
      } catch (const Error&) {
        rejected.note("singular comparative statics");
        continue;
      }
      const auto dc = deflated_changes(resp->w_hat, constraints.triple_shock->p_hat,
                                       economy.income());
      if (!(dc.p > kSignThreshold && dc.ordering_established())) {
        rejected.note("terms of trade and factor-price ranking");
        continue;
      }
      if (constraints.a0_signs) {
        bool match = true;
        for (Factor i : kFactors)
          match = match && sign_of(resp->a0_prime[idx(i)]) == (*constraints.a0_signs)[idx(i)];
        if (!match) {
          rejected.note("a0' sign triple");
          continue;
        }
      }
    }
    return AdmissibleSample{gl, std::move(*snap), rejected.total()};
  }
  throw Error(ErrorCode::SamplerExhausted,
              std::to_string(constraints.max_rejections) +
                  " draws rejected; " + rejected.summary());
}

}  // namespace rybsign::oracle
