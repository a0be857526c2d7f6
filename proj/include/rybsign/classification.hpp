#pragma once

// Sign-level inference on the 3x2 economy: deflated factor-price changes,
// admissible input-coefficient sign triples, the line segment that brackets
// the EWS-ratio vector, and the labor-column subregions of quadrant IV.
//
// Hats are percent changes combined additively (first-order convention).

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rybsign/hat_algebra.hpp"
#include "rybsign/model_core.hpp"
#include "rybsign/sign.hpp"

namespace rybsign {

/// P = p_1* - p_2*, X = w_T* - p_1*, Y = w_K* - p_1*, Z = w_L* - p_1*.
struct DeflatedChanges {
  double p = 0.0;
  double x = 0.0;
  std::optional<double> y;  // unknown in the historical data
  double z = 0.0;
  /// W_ih = w_i* - w_h*; sign-only where Y is unknown but implied.
  PerFactor<PerFactor<Estimate>> w_diff{};
  /// theta_i / theta_h when income shares are supplied.
  std::optional<FactorByFactor> theta_ratio;

  /// Builds from deflated rates. When Y is missing, the W entries that
  /// involve capital get the signs implied by P > 0 and X > Z > -P, if those
  /// hold, and stay unknown otherwise.
  static DeflatedChanges from_deflated(double p, double x, std::optional<double> y, double z,
                                       const std::optional<IncomeShares>& income = std::nullopt);

  double z_plus_p() const { return z + p; }  // w_L* - p_2*
  Estimate w(Factor i, Factor h) const { return w_diff[idx(i)][idx(h)]; }
  /// P > 0 and X > Z > Y, directly or through X > Z > -P.
  bool ordering_established() const;
};

DeflatedChanges deflated_changes(const PerFactor<double>& w_hat, const PerGood<double>& p_hat,
                                 const std::optional<IncomeShares>& income = std::nullopt);

struct OrderingVerdict {
  bool applicable = false;  // P > 0
  bool sufficient = false;  // P > 0, X > Z > -P
  /// P > 0, X > Z > Y; from Y directly, or implied by `sufficient`.
  bool ranking = false;
  bool ranking_implied = false;  // true when Y was unknown
  double line_intersection = 0.0;  // -theta_T1 / (theta_T1 - theta_T2) * P
  std::string reason;
};

/// Throws DegenerateIntensity when theta_T1 == theta_T2.
OrderingVerdict check_sufficient_ordering(const DeflatedChanges& dc, double theta_t1,
                                          double theta_t2);

/// Letters of the admissible a_i0' sign triples.
enum class TripleLetter { A, B, C, D };
char letter_char(TripleLetter l);
PerFactor<Sign> triple_signs(TripleLetter l);  // (a_T0', a_K0', a_L0')
std::optional<TripleLetter> triple_letter(const PerFactor<Sign>& signs);

/// Admissible triples {A, B, C, D} narrowed by known component signs
/// (Unknown entries do not constrain). Requires the T > L > K ranking,
/// P > 0 and X > Z > Y; throws NotApplicable otherwise.
std::set<TripleLetter> admissible_triples(const IntensityRanking& ranking,
                                         const DeflatedChanges& dc,
                                         const PerFactor<Sign>& known = {Sign::Unknown,
                                                                         Sign::Unknown,
                                                                         Sign::Unknown});

/// a_i0' = sum_j lambda_ij a_ij*.
PerFactor<double> aggregate_a0(const AllocationShares& allocation, const FactorByGood& a_hat);
/// Sign-level aggregate: agreeing (or zero) sector signs carry through,
/// otherwise the aggregate is Unknown.
PerFactor<Sign> aggregate_a0_signs(const PerFactor<PerGood<Sign>>& a_hat_signs);

struct PlanePoint {
  Estimate s_prime;
  Estimate u_prime;

  bool in_quadrant_iv() const {
    return s_prime.sign == Sign::Positive && u_prime.sign == Sign::Negative;
  }
};

struct SegmentEstimate {
  /// (-W_TL / W_KL, -theta_L W_LT / (theta_K W_KT)): where all three
  /// lines a_i0' = 0 meet.
  PlanePoint point_a;
  /// (theta_KT a_K0'/a_T0', a_K0'/a_L0').
  PlanePoint point_b;
  bool quadrant_iv = false;  // both endpoints in quadrant IV
  /// A left of B and above B; only decided when magnitudes are known.
  std::optional<bool> a_left_of_b;
};

/// Endpoints of the segment bracketing (S', U'). `a0` may carry values or
/// signs only. Throws PointAUndefined when W_KL or W_KT is in the zero band
/// and PointBUndefined when a_T0' or a_L0' is.
SegmentEstimate segment_estimate(const DeflatedChanges& dc, const IncomeShares& income,
                                 const PerFactor<Estimate>& a0);

struct SegmentPosition {
  double t = 0.0;                    // projection parameter along A -> B
  double collinearity_residual = 0.0;  // |cross(B-A, S-A)| / |B-A|^2
  bool chain_holds = false;          // 0 < A_x < S' < B_x and 0 > A_y > U' > B_y
};

/// Position of a numeric EWS-ratio vector relative to a numeric segment.
SegmentPosition segment_position(const SegmentEstimate& seg, const EwsRatioVector& ratio);

enum class Subregion { P1, P2, P3 };
std::string_view to_string(Subregion s);

/// Set of subregions with a fixed P1, P2, P3 rendering order.
class SubregionSet {
 public:
  SubregionSet() = default;
  SubregionSet(std::initializer_list<Subregion> items);
  static SubregionSet all() { return {Subregion::P1, Subregion::P2, Subregion::P3}; }

  bool contains(Subregion s) const { return bits_ & mask(s); }
  bool empty() const { return bits_ == 0; }
  std::size_t size() const;
  std::vector<Subregion> members() const;
  SubregionSet intersect(const SubregionSet& o) const;
  bool operator==(const SubregionSet& o) const { return bits_ == o.bits_; }
  /// "{P1, P2}".
  std::string to_string() const;

 private:
  static unsigned mask(Subregion s) { return 1u << static_cast<unsigned>(s); }
  unsigned bits_ = 0;
};

/// Rybczynski sign matrix, cells[j][i].
struct SignPattern {
  PerGood<PerFactor<Sign>> cells{};

  Sign operator()(Good j, Factor i) const { return cells[idx(j)][idx(i)]; }
  bool operator==(const SignPattern&) const = default;
};

SignPattern sign_pattern(const RybczynskiMatrix& r);

/// Labor-column patterns P1 (-,+), P2 (+,+), P3 (+,-) with land (+,-) and
/// capital (-,+). Cells on which the set disagrees become Unknown. Throws
/// EmptySet for an empty set.
SignPattern subregion_pattern(const SubregionSet& set);

/// Operational subregion from the labor column of the solved Rybczynski
/// matrix. Throws NotStrongRybczynski outside quadrant IV and Boundary when
/// a labor-column sign is in the zero band.
Subregion subregion_of(const Economy& economy);

/// Subregion predicted from S' alone: P3 below theta_K1/theta_T1, P2 between,
/// P1 above theta_K2/theta_T2. Empty on a threshold.
std::optional<Subregion> strip_subregion(double s_prime, const DistributiveShares& theta);

enum class Condition { Holds, Fails, Unknown };
std::string_view to_string(Condition c);

struct SubregionRefinement {
  Condition labor_above_importable = Condition::Unknown;  // w_L* - p_2* > 0
  Condition labor_below_exportable = Condition::Unknown;  // w_L* - p_1* < 0
  Condition b_inside_strip = Condition::Unknown;  // theta_KT a_K0'/a_T0' < theta_K2/theta_T2
  SubregionSet subregions = SubregionSet::all();
};

/// Narrows {P1, P2, P3}: point A inside the strip gives {P1, P2}; point B
/// inside as well gives {P2}. Unknown conditions leave the set unrefined.
SubregionRefinement refine_subregions(const DeflatedChanges& dc, const DistributiveShares& theta,
                                 const IncomeShares& income,
                                 const std::optional<PerFactor<double>>& a0 = std::nullopt);

struct ShareChange {
  double theta1_hat = 0.0;
  double theta2_hat = 0.0;
};

/// theta_1* = theta_2 (P + X_1* - X_2*), theta_2* = -(theta_1/theta_2) theta_1*.
/// Throws NotApplicable when theta_2 is not positive.
ShareChange share_change(const PerGood<double>& goods_income, const PerGood<double>& p_hat,
                         const PerGood<double>& x_hat);
/// theta_2* implied by theta_1* through theta_1 + theta_2 = 1.
double importable_share_change(double theta1, double theta2, double theta1_hat);

}  // namespace rybsign
