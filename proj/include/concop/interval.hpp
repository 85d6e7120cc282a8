#pragma once

#include <limits>
#include <string>

#include "concop/errors.hpp"

namespace concop {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Extended-real helpers. Coordinates live in binary64 with +-inf allowed;
// inf - inf (and 0 * inf where ambiguous) must never reach plain arithmetic.
double ext_add(double a, double b);                 // throws Error on inf - inf
double ext_mul_nonneg(double a, double b);          // a,b >= 0; 0 * inf = 0

// Sub-interval of the extended reals. Infinite endpoints are always open.
// The empty interval is a distinguished value.
struct Interval {
  double lo = 0.0, hi = 0.0;
  bool lo_closed = true, hi_closed = true;
  bool is_empty = true;

  static Interval empty() { return Interval{}; }
  static Interval point(double x) { return make(x, x, true, true); }
  static Interval closed(double a, double b) { return make(a, b, true, true); }
  static Interval all() { return make(-kInf, kInf, false, false); }
  static Interval make(double lo, double hi, bool lc, bool hc);

  bool contains(double x) const;
  bool is_point() const { return !is_empty && lo == hi; }
  bool unbounded_below() const { return !is_empty && lo == -kInf; }
  bool unbounded_above() const { return !is_empty && hi == kInf; }

  // A+ = {x : exists a in A, a <= x} and A- = {x : exists a in A, a >= x}.
  Interval plus_set() const;
  Interval minus_set() const;

  std::string str() const;
};

Interval intersect(const Interval& a, const Interval& b);
Interval minkowski_add(const Interval& a, const Interval& b);
Interval minkowski_mul_nonneg(const Interval& a, const Interval& b);  // both subsets of [0, inf]
Interval negate(const Interval& a);

// Interval order: I <= J  iff  J subset of I+ and I subset of J-.
// For closed endpoints this is the endpoint rule a <= alpha and b <= beta.
bool interval_leq(const Interval& a, const Interval& b);  // throws EmptyInterval

// Greatest lower / least upper bound in the interval order, under the
// convention min(I, empty) = max(I, empty) = I.
Interval interval_min(const Interval& a, const Interval& b);
Interval interval_max(const Interval& a, const Interval& b);

bool interval_close(const Interval& a, const Interval& b, double tol);

inline bool approx(double a, double b, double tol) {
  if (a == b) return true;  // covers matching infinities
  double s = std::max(1.0, std::max(std::abs(a), std::abs(b)));
  if (s == kInf) return false;
  return std::abs(a - b) <= tol * s;
}

}  // namespace concop
