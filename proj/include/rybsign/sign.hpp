#pragma once

#include <cmath>
#include <optional>
#include <string_view>

namespace rybsign {

/// Threshold below which an extracted quantity is treated as a zero sign.
inline constexpr double kSignThreshold = 1e-12;

enum class Sign { Negative, Zero, Positive, Unknown };

inline Sign sign_of(double value, double threshold = kSignThreshold) {
  if (!std::isfinite(value)) return Sign::Unknown;
  if (value > threshold) return Sign::Positive;
  if (value < -threshold) return Sign::Negative;
  return Sign::Zero;
}

/// "+", "-", "0" or "?".
std::string_view symbol(Sign s);

Sign negate(Sign s);
Sign multiply(Sign a, Sign b);

inline bool is_strict(Sign s) { return s == Sign::Positive || s == Sign::Negative; }

/// A quantity whose sign may be known without its magnitude.
struct Estimate {
  std::optional<double> value;
  Sign sign = Sign::Unknown;

  static Estimate of(double v) { return {v, sign_of(v)}; }
  static Estimate sign_only(Sign s) { return {std::nullopt, s}; }
  static Estimate unknown() { return {}; }

  bool has_value() const { return value.has_value(); }
};

Estimate operator-(const Estimate& a);
Estimate operator*(const Estimate& a, const Estimate& b);
Estimate operator*(double a, const Estimate& b);
/// Division; a zero-sign divisor yields an unknown estimate.
Estimate operator/(const Estimate& a, const Estimate& b);

}  // namespace rybsign
