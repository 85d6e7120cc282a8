#include "concop/integral.hpp"

#include <algorithm>
#include <cmath>

namespace concop {

namespace {

// Closed-form integral of y(s)^q over a segment where y is linear and >= 0.
double segment_power_integral(double y1, double y2, double width, double q) {
  if (width <= 0.0) return 0.0;
  y1 = std::max(y1, 0.0);
  y2 = std::max(y2, 0.0);
  if (q == 1.0) return 0.5 * (y1 + y2) * width;
  if (y1 == y2) return std::pow(y1, q) * width;
  return width * (std::pow(y2, q + 1.0) - std::pow(y1, q + 1.0)) / ((y2 - y1) * (q + 1.0));
}

// Trapezoid integral of f^q (selection) with divergence detection; q = 1
// gives the signed operator integral, q != 1 requires f >= 0.
double selection_integral(const MonoCurve& f, double a, double b, double q) {
  if (a > b) throw BadBounds("integral: a > b");
  if (f.empty() || a == b) return 0.0;
  if (f.orientation() != Orientation::down)
    throw Error("integral: operator must be nonincreasing");
  Interval dom = f.domain();
  Interval ran = f.range();
  double total = 0.0;

  // region left of the domain: levels are unbounded above at a finite
  // domain edge of a maximal operator
  if (a < dom.lo) {
    double top = f.eval(dom.lo).hi;
    if (top == kInf) return kInf;
    double width = dom.lo - a;  // possibly inf
    double v = q == 1.0 ? top : std::pow(std::max(top, 0.0), q);
    if (v != 0.0) {
      if (width == kInf) return v > 0 ? kInf : -kInf;
      total += v * width;
    }
  }
  // region right of a bounded domain: extend by the clamped boundary level
  if (b > dom.hi && dom.hi != kInf) {
    double v = std::max(0.0, f.eval(dom.hi).lo);
    if (q != 1.0) v = std::pow(v, q);
    double width = b - dom.hi;
    if (v > 0.0) {
      if (width == kInf) return kInf;
      total += v * width;
    }
  }

  double lo = std::max(a, dom.lo), hi = std::min(b, dom.hi);
  if (lo >= hi) return total;
  if (lo == -kInf) {
    // nonincreasing toward -inf: the value tends to sup ran
    if (ran.hi == kInf || ran.hi > 0.0) return kInf;
    if (ran.hi < 0.0) return q == 1.0 ? -kInf : total;
    lo = f.vertices().front().x;  // flat at 0 beyond the first vertex
    if (lo >= hi) return total;
  }
  if (hi == kInf) {
    double tail = ran.lo;
    if (tail > 0.0) return kInf;
    if (tail == -kInf || tail < 0.0) {
      if (q == 1.0) return -kInf;
      // values clamp to 0 once negative; find the zero crossing below
    }
    hi = f.vertices().back().x;
    if (tail < 0.0 && q == 1.0) return -kInf;
    if (hi <= lo) return total;
  }

  std::vector<double> xs{lo, hi};
  for (double x : breakpoints(f))
    if (x > lo && x < hi) xs.push_back(x);
  std::sort(xs.begin(), xs.end());
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    double y1 = f.eval(xs[i]).lo;     // value just right of xs[i]
    double y2 = f.eval(xs[i + 1]).hi; // value just left of xs[i+1]
    if (q == 1.0)
      total += 0.5 * (y1 + y2) * (xs[i + 1] - xs[i]);
    else
      total += segment_power_integral(y1, y2, xs[i + 1] - xs[i], q);
  }
  return total;
}

}  // namespace

double curve_integral(const MonoCurve& f, double a, double b) {
  return selection_integral(f, a, b, 1.0);
}

double curve_moment(const MonoCurve& alpha, double q) {
  if (!(q > 0.0)) throw BadParameter("moment: q must be positive");
  if (alpha.empty() || alpha.orientation() != Orientation::down || !alpha.maximal())
    throw NotProbOp("moment: operator must be a maximal nonincreasing probabilistic operator");
  Interval ran = alpha.range();
  if (ran.lo < 0.0 || ran.hi < 1.0 || ran.lo >= 1.0)
    throw NotProbOp("moment: operator is not probabilistic");
  MonoCurve inv = invert(alpha);
  return selection_integral(inv, 0.0, kInf, q);
}

bool check_holder(const MonoCurve& alpha, double q, double p) {
  if (!(0.0 < q && q < p)) throw BadParameter("check_holder: need 0 < q < p");
  double mq = curve_moment(alpha, q);
  double mp = curve_moment(alpha, p);
  double alpha0 = alpha.eval(0.0).lo;
  if (mq == kInf) return mp == kInf;
  double lhs = std::pow(mq, 1.0 / q);
  double rhs = std::pow(alpha0, (p - q) / (p * q)) * std::pow(mp, 1.0 / p);
  return lhs <= rhs * (1.0 + 1e-12) + 1e-12;
}

}  // namespace concop
