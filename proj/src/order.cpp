#include "concop/order.hpp"

#include <algorithm>
#include <cmath>

namespace concop {

namespace {

double end_slope(const MonoCurve& c, bool left) {
  const Ray& r = left ? c.left_ray() : c.right_ray();
  if (r.kind == RayKind::horizontal) return 0.0;
  return r.slope;  // resolvents only carry horizontal or sloped rays
}

std::vector<double> probe_points(const MonoCurve& f, const MonoCurve& g, const Interval& window) {
  std::vector<double> xs;
  for (const MonoCurve* c : {&f, &g})
    for (double x : breakpoints(*c))
      if (window.is_empty || window.contains(x)) xs.push_back(x);
  if (!window.is_empty) {
    if (std::isfinite(window.lo)) xs.push_back(window.lo);
    if (std::isfinite(window.hi)) xs.push_back(window.hi);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<double> probes = xs;
  for (size_t i = 0; i + 1 < xs.size(); ++i) probes.push_back(0.5 * (xs[i] + xs[i + 1]));
  std::sort(probes.begin(), probes.end());
  return probes;
}

OrderVerdict resolvent_mode(const MonoCurve& f, const MonoCurve& g, double tol) {
  // up: f <= g iff J_f >= J_g pointwise; down: iff J_f <= J_g.
  MonoCurve jf = resolvent_of(f), jg = resolvent_of(g);
  double sign = f.orientation() == Orientation::up ? 1.0 : -1.0;
  OrderVerdict v;
  v.leq = true;
  v.tight = false;
  auto diff = [&](double x) { return sign * (jf.eval_scalar(x) - jg.eval_scalar(x)); };

  std::vector<double> probes = probe_points(jf, jg, Interval::empty());
  double min_diff = kInf;
  for (double x : probes) {
    double d = diff(x);
    min_diff = std::min(min_diff, d);
    if (d < -tol * std::max({1.0, std::abs(jf.eval_scalar(x)), std::abs(jg.eval_scalar(x))})) {
      v.leq = false;
      v.witness = x;
      return v;
    }
  }
  // ray behavior beyond the outermost breakpoints
  for (bool left : {true, false}) {
    double x0 = left ? probes.front() : probes.back();
    double ds = sign * (end_slope(jf, left) - end_slope(jg, left));
    double d0 = diff(x0);
    bool diverges_negative = left ? ds > tol : ds < -tol;
    if (diverges_negative) {
      double slope_gap = left ? ds : -ds;
      double xw = left ? x0 - (d0 / slope_gap + 1.0) : x0 + (d0 / slope_gap + 1.0);
      v.leq = false;
      v.witness = xw;
      return v;
    }
  }
  if (min_diff <= tol) v.tight = true;
  return v;
}

bool dom_leq_tol(const Interval& a, const Interval& b, double tol) {
  // interval order with slack: a <= b up to tol on both endpoints
  bool lower = b.lo >= a.lo - tol * std::max(1.0, std::abs(a.lo) == kInf ? 1.0 : std::abs(a.lo));
  bool upper = a.hi <= b.hi + tol * std::max(1.0, std::abs(b.hi) == kInf ? 1.0 : std::abs(b.hi));
  if (a.lo == -kInf) lower = true;
  if (b.lo == -kInf) lower = a.lo == -kInf;
  if (b.hi == kInf) upper = true;
  if (a.hi == kInf) upper = b.hi == kInf;
  return lower && upper;
}

double value_slope(const MonoCurve& c, bool left) {
  // signed d(value)/d(argument) along the outer ray
  const Ray& r = left ? c.left_ray() : c.right_ray();
  if (r.kind != RayKind::sloped) return 0.0;
  return c.orientation() == Orientation::up ? r.slope : -r.slope;
}

OrderVerdict pointwise_mode(const MonoCurve& f, const MonoCurve& g, OrderMode mode, double tol) {
  OrderVerdict v;
  Interval df = f.domain(), dg = g.domain();
  bool dom_ok = f.orientation() == Orientation::up ? dom_leq_tol(dg, df, tol)
                                                   : dom_leq_tol(df, dg, tol);
  if (!dom_ok) {
    v.leq = false;
    v.witness = f.orientation() == Orientation::up ? dg.lo : df.lo;
    return v;
  }
  Interval common = intersect(df, dg);
  v.leq = true;
  if (common.is_empty) return v;

  // Beyond the outermost breakpoints both curves are single-valued linear;
  // the per-point condition reduces to a value-and-slope comparison there.
  for (bool left : {true, false}) {
    bool unbounded = left ? common.lo == -kInf : common.hi == kInf;
    if (!unbounded) continue;
    double slope_gap = value_slope(g, left) - value_slope(f, left);
    bool diverges = left ? slope_gap > tol : slope_gap < -tol;
    if (diverges) {
      v.leq = false;
      v.witness = left ? -kInf : kInf;
      return v;
    }
  }

  double min_gap = kInf;
  std::vector<double> probes = probe_points(f, g, common);
  if (!probes.empty()) {
    if (common.lo == -kInf) probes.push_back(probes.front() - 1.0);
    if (common.hi == kInf) probes.push_back(probes.back() + 1.0);
  }
  const bool down = f.orientation() == Orientation::down;
  for (double y : probes) {
    Interval if_ = f.eval(y), ig = g.eval(y);
    if (if_.is_empty || ig.is_empty) continue;
    double s = std::max({1.0, std::abs(if_.lo) == kInf ? 1.0 : std::abs(if_.lo),
                         std::abs(ig.lo) == kInf ? 1.0 : std::abs(ig.lo)});
    bool ok = true;
    double gap = kInf;
    switch (mode) {
      case OrderMode::intermediate:  // g(y) subset of f(y)+
        ok = ig.lo >= if_.lo - tol * s;
        gap = ig.lo - if_.lo;
        break;
      case OrderMode::strong:  // f(y) <= g(y) in interval order
        ok = if_.lo <= ig.lo + tol * s && if_.hi <= ig.hi + tol * s;
        gap = std::min(ig.lo - if_.lo, ig.hi - if_.hi);
        break;
      case OrderMode::weak:  // g(y) meets f(y)+
        ok = ig.hi >= if_.lo - tol * s;
        gap = ig.hi - if_.lo;
        break;
      default:
        break;
    }
    // One-sided limits at jump points: graphs are closed, so the interval
    // endpoints are the limit values and both curves are single-valued just
    // off the jump, where every characterization reads g >= f pointwise.
    if (ok && y > common.lo) {
      double fl = down ? if_.hi : if_.lo, gl = down ? ig.hi : ig.lo;
      if (std::isfinite(fl) && std::isfinite(gl)) ok = gl >= fl - tol * s;
    }
    if (ok && y < common.hi) {
      double fr = down ? if_.lo : if_.hi, gr = down ? ig.lo : ig.hi;
      if (std::isfinite(fr) && std::isfinite(gr)) ok = gr >= fr - tol * s;
    }
    if (std::isfinite(gap)) min_gap = std::min(min_gap, gap);
    if (!ok) {
      v.leq = false;
      v.witness = y;
      return v;
    }
  }
  if (min_gap <= tol) v.tight = true;
  return v;
}

}  // namespace

OrderVerdict op_leq(const MonoCurve& f, const MonoCurve& g, OrderMode mode, double tol) {
  if (f.empty() || g.empty()) throw NotMaximal("op_leq: empty operand");
  if (f.orientation() != g.orientation())
    throw OrientationMismatch("op_leq: operands have different orientations");
  if (!f.maximal() || !g.maximal()) throw NotMaximal("op_leq: operands must be maximal");
  if (mode == OrderMode::resolvent) return resolvent_mode(f, g, tol);
  return pointwise_mode(f, g, mode, tol);
}

OrderVerdict survival_leq(const MonoCurve& survival, const MonoCurve& alpha, double tol) {
  if (alpha.empty() || !alpha.maximal()) throw NotMaximal("survival_leq: alpha must be maximal");
  if (survival.empty()) throw NotMaximal("survival_leq: empty survival");
  if (alpha.orientation() != Orientation::down || survival.orientation() != Orientation::down)
    throw OrientationMismatch("survival_leq: operands must be nonincreasing");
  Interval da = alpha.domain();
  if (std::isfinite(da.hi))
    throw NotMaximal("survival_leq: dom(alpha) must be unbounded above");

  OrderVerdict v;
  v.leq = true;
  double min_gap = kInf;
  for (double t : probe_points(survival, alpha, da)) {
    Interval ia = alpha.eval(t);
    Interval is = survival.eval(t);
    if (ia.is_empty || is.is_empty) continue;
    double gap = ia.hi - is.lo;  // max alpha(t) - P(X > t)
    min_gap = std::min(min_gap, gap);
    if (gap < -tol) {
      v.leq = false;
      v.witness = t;
      return v;
    }
  }
  if (min_gap <= tol) v.tight = true;
  return v;
}

}  // namespace concop
