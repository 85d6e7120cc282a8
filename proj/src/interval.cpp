#include "concop/interval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace concop {

double ext_add(double a, double b) {
  if ((a == kInf && b == -kInf) || (a == -kInf && b == kInf))
    throw Error("ext_add: inf - inf is undefined");
  return a + b;
}

double ext_mul_nonneg(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;  // 0 * inf = 0 by the set convention
  return a * b;
}

Interval Interval::make(double lo, double hi, bool lc, bool hc) {
  if (std::isnan(lo) || std::isnan(hi)) throw Error("interval: NaN endpoint");
  if (lo > hi) throw Error("interval: lo > hi");
  Interval r;
  r.is_empty = false;
  r.lo = lo;
  r.hi = hi;
  r.lo_closed = lc && lo != -kInf;
  r.hi_closed = hc && hi != kInf;
  if (lo == hi && !(r.lo_closed && r.hi_closed))
    throw Error("interval: degenerate open interval");
  return r;
}

bool Interval::contains(double x) const {
  if (is_empty) return false;
  if (x < lo || (x == lo && !lo_closed)) return false;
  if (x > hi || (x == hi && !hi_closed)) return false;
  return true;
}

Interval Interval::plus_set() const {
  if (is_empty) return empty();
  return make(lo, kInf, lo_closed, false);
}

Interval Interval::minus_set() const {
  if (is_empty) return empty();
  return make(-kInf, hi, false, hi_closed);
}

std::string Interval::str() const {
  if (is_empty) return "{}";
  std::ostringstream os;
  os << (lo_closed ? '[' : '(') << lo << ", " << hi << (hi_closed ? ']' : ')');
  return os.str();
}

Interval intersect(const Interval& a, const Interval& b) {
  if (a.is_empty || b.is_empty) return Interval::empty();
  double lo = std::max(a.lo, b.lo);
  double hi = std::min(a.hi, b.hi);
  bool lc = (a.lo == lo ? a.lo_closed : true) && (b.lo == lo ? b.lo_closed : true);
  bool hc = (a.hi == hi ? a.hi_closed : true) && (b.hi == hi ? b.hi_closed : true);
  if (lo > hi) return Interval::empty();
  if (lo == hi && !(lc && hc)) return Interval::empty();
  return Interval::make(lo, hi, lc, hc);
}

Interval minkowski_add(const Interval& a, const Interval& b) {
  if (a.is_empty || b.is_empty) return Interval::empty();
  double lo = (a.lo == -kInf || b.lo == -kInf) ? -kInf : a.lo + b.lo;
  double hi = (a.hi == kInf || b.hi == kInf) ? kInf : a.hi + b.hi;
  return Interval::make(lo, hi, a.lo_closed && b.lo_closed, a.hi_closed && b.hi_closed);
}

Interval minkowski_mul_nonneg(const Interval& a, const Interval& b) {
  if (a.is_empty || b.is_empty) return Interval::empty();
  if (a.lo < 0 || b.lo < 0) throw NegativeRange("minkowski_mul: negative operand");
  double lo = ext_mul_nonneg(a.lo, b.lo);
  double hi = ext_mul_nonneg(a.hi, b.hi);
  return Interval::make(lo, hi, a.lo_closed && b.lo_closed, a.hi_closed && b.hi_closed);
}

Interval negate(const Interval& a) {
  if (a.is_empty) return Interval::empty();
  return Interval::make(-a.hi, -a.lo, a.hi_closed, a.lo_closed);
}

bool interval_leq(const Interval& a, const Interval& b) {
  if (a.is_empty || b.is_empty) throw EmptyInterval("interval_leq: empty operand");
  // b subset of a.plus_set()
  bool lower = b.lo > a.lo || (b.lo == a.lo && (a.lo_closed || !b.lo_closed));
  // a subset of b.minus_set()
  bool upper = a.hi < b.hi || (a.hi == b.hi && (b.hi_closed || !a.hi_closed));
  return lower && upper;
}

Interval interval_min(const Interval& a, const Interval& b) {
  if (a.is_empty) return b;
  if (b.is_empty) return a;
  double lo = std::min(a.lo, b.lo);
  bool lc = (a.lo == lo && a.lo_closed) || (b.lo == lo && b.lo_closed);
  double hi = std::min(a.hi, b.hi);
  bool hc = (a.hi == hi ? a.hi_closed : true) && (b.hi == hi ? b.hi_closed : true);
  return Interval::make(lo, hi, lc, hc);
}

Interval interval_max(const Interval& a, const Interval& b) {
  return negate(interval_min(negate(a), negate(b)));
}

bool interval_close(const Interval& a, const Interval& b, double tol) {
  if (a.is_empty || b.is_empty) return a.is_empty == b.is_empty;
  return approx(a.lo, b.lo, tol) && approx(a.hi, b.hi, tol);
}

}  // namespace concop
