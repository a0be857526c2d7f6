#include "rybsign/sign.hpp"

namespace rybsign {

std::string_view symbol(Sign s) {
  switch (s) {
    case Sign::Negative: return "-";
    case Sign::Zero: return "0";
    case Sign::Positive: return "+";
    case Sign::Unknown: return "?";
  }
  return "?";
}

Sign negate(Sign s) {
  switch (s) {
    case Sign::Negative: return Sign::Positive;
    case Sign::Positive: return Sign::Negative;
    default: return s;
  }
}

Sign multiply(Sign a, Sign b) {
  if (a == Sign::Zero || b == Sign::Zero) return Sign::Zero;
  if (a == Sign::Unknown || b == Sign::Unknown) return Sign::Unknown;
  return a == b ? Sign::Positive : Sign::Negative;
}

Estimate operator-(const Estimate& a) {
  if (a.value) return Estimate::of(-*a.value);
  return Estimate::sign_only(negate(a.sign));
}

Estimate operator*(const Estimate& a, const Estimate& b) {
  if (a.value && b.value) return Estimate::of(*a.value * *b.value);
  return Estimate::sign_only(multiply(a.sign, b.sign));
}

Estimate operator*(double a, const Estimate& b) { return Estimate::of(a) * b; }

Estimate operator/(const Estimate& a, const Estimate& b) {
  if (b.sign == Sign::Zero) return Estimate::unknown();
  if (a.value && b.value) return Estimate::of(*a.value / *b.value);
  // Sign of a quotient equals the sign of the product.
  return Estimate::sign_only(multiply(a.sign, b.sign));
}

}  // namespace rybsign
