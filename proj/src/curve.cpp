#include "concop/curve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace concop {

namespace {

constexpr double kSlopeMergeRel = 1e-12;

bool collinear(double dx1, double dy1, double dx2, double dy2) {
  double cross = dx1 * dy2 - dy1 * dx2;
  double scale = std::abs(dx1 * dy2) + std::abs(dy1 * dx2);
  if (scale == 0.0) return true;  // both segments horizontal or both vertical
  return std::abs(cross) <= kSlopeMergeRel * scale;
}

bool slope_matches(double dx, double dy, double m) {
  if (dx <= 0.0) return false;
  double s = std::abs(dy) / dx;
  return std::abs(s - m) <= kSlopeMergeRel * std::max(s, m);
}

}  // namespace

MonoCurve MonoCurve::empty_op(Orientation o) {
  MonoCurve c;
  c.orient_ = o;
  c.empty_ = true;
  c.maximal_ = false;
  return c;
}

MonoCurve MonoCurve::build(Orientation o, std::vector<Vertex> vs, Ray left, Ray right) {
  if (vs.empty()) {
    if (left.kind != RayKind::none || right.kind != RayKind::none)
      throw MonotonicityViolation("build: rays require at least one vertex");
    return empty_op(o);
  }
  MonoCurve c;
  c.orient_ = o;
  c.v_ = std::move(vs);
  c.left_ = left;
  c.right_ = right;
  c.empty_ = false;
  // Absorb sub-ulp-scale monotonicity wobble from upstream arithmetic before
  // validating; genuine violations stay visible.
  for (size_t i = 1; i < c.v_.size(); ++i) {
    double sx = std::max({1.0, std::abs(c.v_[i - 1].x), std::abs(c.v_[i].x)});
    if (c.v_[i].x < c.v_[i - 1].x && c.v_[i - 1].x - c.v_[i].x <= 1e-12 * sx)
      c.v_[i].x = c.v_[i - 1].x;
    double sy = std::max({1.0, std::abs(c.v_[i - 1].y), std::abs(c.v_[i].y)});
    double dy = c.v_[i].y - c.v_[i - 1].y;
    bool wrong = o == Orientation::up ? dy < 0.0 : dy > 0.0;
    if (wrong && std::abs(dy) <= 1e-12 * sy) c.v_[i].y = c.v_[i - 1].y;
  }
  c.validate();
  c.canonicalize();
  c.maximal_ = c.left_.kind != RayKind::none && c.right_.kind != RayKind::none;
  return c;
}

void MonoCurve::validate() const {
  for (const Ray* r : {&left_, &right_}) {
    if (r->kind == RayKind::sloped && !(r->slope > 0.0 && std::isfinite(r->slope)))
      throw MonotonicityViolation("build: sloped ray needs finite positive slope");
  }
  for (size_t i = 0; i < v_.size(); ++i) {
    if (!std::isfinite(v_[i].x) || !std::isfinite(v_[i].y))
      throw MonotonicityViolation("build: non-finite vertex coordinate");
  }
  for (size_t i = 0; i + 1 < v_.size(); ++i) {
    double dx = v_[i + 1].x - v_[i].x;
    double dy = v_[i + 1].y - v_[i].y;
    bool ok = dx >= 0.0 && (orient_ == Orientation::up ? dy >= 0.0 : dy <= 0.0);
    if (!ok) {
      std::ostringstream os;
      os << "build: vertices " << i << " and " << i + 1 << " violate "
         << (orient_ == Orientation::up ? "nondecreasing" : "nonincreasing")
         << " monotonicity: (" << v_[i].x << "," << v_[i].y << ") -> ("
         << v_[i + 1].x << "," << v_[i + 1].y << ")";
      throw MonotonicityViolation(os.str());
    }
  }
}

void MonoCurve::canonicalize() {
  // Drop consecutive duplicates.
  std::vector<Vertex> out;
  out.reserve(v_.size());
  for (const Vertex& p : v_) {
    if (!out.empty() && out.back().x == p.x && out.back().y == p.y) continue;
    out.push_back(p);
  }
  // Merge collinear adjacent segments.
  std::vector<Vertex> merged;
  merged.reserve(out.size());
  for (const Vertex& p : out) {
    while (merged.size() >= 2) {
      const Vertex& a = merged[merged.size() - 2];
      const Vertex& b = merged.back();
      if (collinear(b.x - a.x, b.y - a.y, p.x - b.x, p.y - b.y))
        merged.pop_back();
      else
        break;
    }
    merged.push_back(p);
  }
  // Absorb leading/trailing segments collinear with their ray.
  auto ray_absorbs = [&](const Ray& r, const Vertex& inner, const Vertex& edge) {
    double dx = std::abs(edge.x - inner.x);
    double dy = std::abs(edge.y - inner.y);
    switch (r.kind) {
      case RayKind::horizontal: return dy == 0.0 && dx > 0.0;
      case RayKind::vertical: return dx == 0.0 && dy > 0.0;
      case RayKind::sloped: return slope_matches(dx, dy, r.slope);
      case RayKind::none: return false;
    }
    return false;
  };
  size_t lo = 0, hi = merged.size();
  while (hi - lo >= 2 && ray_absorbs(left_, merged[lo + 1], merged[lo])) ++lo;
  while (hi - lo >= 2 && ray_absorbs(right_, merged[hi - 2], merged[hi - 1])) --hi;
  v_.assign(merged.begin() + lo, merged.begin() + hi);
}

Interval MonoCurve::domain() const {
  if (empty_) return Interval::empty();
  double lo = left_.unbounded_x() ? -kInf : v_.front().x;
  double hi = right_.unbounded_x() ? kInf : v_.back().x;
  return Interval::make(lo, hi, true, true);
}

Interval MonoCurve::range() const {
  if (empty_) return Interval::empty();
  if (orient_ == Orientation::up) {
    double lo = left_.unbounded_y() ? -kInf : v_.front().y;
    double hi = right_.unbounded_y() ? kInf : v_.back().y;
    return Interval::make(lo, hi, true, true);
  }
  double hi = left_.unbounded_y() ? kInf : v_.front().y;
  double lo = right_.unbounded_y() ? -kInf : v_.back().y;
  return Interval::make(lo, hi, true, true);
}

Interval MonoCurve::eval(double x) const {
  if (empty_) return Interval::empty();
  Interval dom = domain();
  if (!dom.contains(x)) return Interval::empty();
  const bool up = orient_ == Orientation::up;
  double x0 = v_.front().x, xn = v_.back().x;

  if (x < x0) {
    double y = v_.front().y;
    if (left_.kind == RayKind::sloped)
      y += (up ? -1.0 : 1.0) * left_.slope * (x0 - x);
    return Interval::point(y);
  }
  if (x > xn) {
    double y = v_.back().y;
    if (right_.kind == RayKind::sloped)
      y += (up ? 1.0 : -1.0) * right_.slope * (x - xn);
    return Interval::point(y);
  }

  double ylo = kInf, yhi = -kInf;
  auto add = [&](double y) {
    ylo = std::min(ylo, y);
    yhi = std::max(yhi, y);
  };
  // First vertex with x-coordinate >= x.
  size_t i = std::lower_bound(v_.begin(), v_.end(), x,
                              [](const Vertex& p, double t) { return p.x < t; }) -
             v_.begin();
  if (i > 0 && v_[i - 1].x < x && i < v_.size() && v_[i].x > x) {
    const Vertex &a = v_[i - 1], &b = v_[i];
    add(a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x));
  }
  for (size_t j = i; j < v_.size() && v_[j].x == x; ++j) add(v_[j].y);

  bool lo_inf = false, hi_inf = false;
  if (x == x0 && left_.kind == RayKind::vertical) (up ? lo_inf : hi_inf) = true;
  if (x == xn && right_.kind == RayKind::vertical) (up ? hi_inf : lo_inf) = true;
  if (lo_inf) ylo = -kInf;
  if (hi_inf) yhi = kInf;
  return Interval::make(ylo, yhi, true, true);
}

double MonoCurve::eval_scalar(double x) const {
  Interval i = eval(x);
  if (i.is_empty) throw Error("eval_scalar: x outside domain");
  return i.lo;
}

bool check_maximal(const MonoCurve& f) {
  if (f.empty()) return false;
  Interval dom = f.domain(), ran = f.range();
  if (f.orientation() == Orientation::up) {
    return (dom.lo == -kInf || ran.lo == -kInf) && (dom.hi == kInf || ran.hi == kInf);
  }
  return (ran.hi == kInf || dom.lo == -kInf) && (ran.lo == -kInf || dom.hi == kInf);
}

namespace {

Ray swap_ray(const Ray& r) {
  switch (r.kind) {
    case RayKind::horizontal: return Ray::vertical();
    case RayKind::vertical: return Ray::horizontal();
    case RayKind::sloped: return Ray::sloped(1.0 / r.slope);
    case RayKind::none: return Ray::none();
  }
  return Ray::none();
}

}  // namespace

MonoCurve invert(const MonoCurve& f) {
  if (f.empty()) return MonoCurve::empty_op(f.orientation());
  std::vector<Vertex> w;
  w.reserve(f.vertices().size());
  for (const Vertex& p : f.vertices()) w.push_back({p.y, p.x});
  if (f.orientation() == Orientation::up) {
    return MonoCurve::build(Orientation::up, std::move(w), swap_ray(f.left_ray()),
                            swap_ray(f.right_ray()));
  }
  std::reverse(w.begin(), w.end());
  return MonoCurve::build(Orientation::down, std::move(w), swap_ray(f.right_ray()),
                          swap_ray(f.left_ray()));
}

MonoCurve restrict_to(const MonoCurve& f, const Interval& a) {
  if (f.empty() || a.is_empty) return MonoCurve::empty_op(f.orientation());
  Interval closure = Interval::make(a.lo, a.hi, true, true);
  Interval dom = intersect(closure, f.domain());
  if (dom.is_empty) return MonoCurve::empty_op(f.orientation());
  const bool up = f.orientation() == Orientation::up;

  if (dom.is_point()) {
    // Maximal operator with singleton domain: the full vertical line.
    Interval img = f.eval(dom.lo);
    double anchor = std::isfinite(img.lo) ? img.lo : (std::isfinite(img.hi) ? img.hi : 0.0);
    return MonoCurve::build(f.orientation(), {{dom.lo, anchor}}, Ray::vertical(),
                            Ray::vertical());
  }

  std::vector<Vertex> w;
  Ray left, right;
  if (dom.lo == -kInf) {
    left = f.left_ray();
  } else {
    left = Ray::vertical();
    Interval img = f.eval(dom.lo);
    w.push_back({dom.lo, up ? img.hi : img.lo});  // maximal completion at the boundary
  }
  for (const Vertex& p : f.vertices())
    if (p.x > dom.lo && p.x < dom.hi) w.push_back(p);
  if (dom.hi == kInf) {
    right = f.right_ray();
  } else {
    right = Ray::vertical();
    Interval img = f.eval(dom.hi);
    w.push_back({dom.hi, up ? img.lo : img.hi});
  }
  return MonoCurve::build(f.orientation(), std::move(w), left, right);
}

namespace {

Ray shear_ray(const Ray& r) {
  switch (r.kind) {
    case RayKind::horizontal: return Ray::sloped(1.0);
    case RayKind::vertical: return Ray::horizontal();
    case RayKind::sloped: return Ray::sloped(1.0 / (1.0 + r.slope));
    case RayKind::none: return Ray::none();
  }
  return Ray::none();
}

Ray unshear_ray(const Ray& r) {
  if (r.kind == RayKind::horizontal) return Ray::vertical();
  if (r.kind != RayKind::sloped) throw NotAResolvent("resolvent ray must have slope in [0,1]");
  double s = r.slope;
  if (std::abs(s - 1.0) <= kSlopeMergeRel) return Ray::horizontal();
  if (s > 1.0) throw NotAResolvent("resolvent ray slope exceeds 1");
  return Ray::sloped((1.0 - s) / s);
}

}  // namespace

MonoCurve resolvent_of(const MonoCurve& f) {
  if (!f.maximal()) throw NotMaximal("resolvent_of: operator is not maximal");
  const bool up = f.orientation() == Orientation::up;
  std::vector<Vertex> w;
  w.reserve(f.vertices().size());
  for (const Vertex& p : f.vertices())
    w.push_back({up ? p.x + p.y : p.x - p.y, p.x});
  return MonoCurve::build(Orientation::up, std::move(w), shear_ray(f.left_ray()),
                          shear_ray(f.right_ray()));
}

MonoCurve from_resolvent(const MonoCurve& j, Orientation o) {
  if (j.empty() || j.orientation() != Orientation::up)
    throw NotAResolvent("from_resolvent: need a nonempty nondecreasing curve");
  if (!j.left_ray().unbounded_x() || !j.right_ray().unbounded_x())
    throw NotAResolvent("from_resolvent: resolvent domain must be all of R");
  const auto& vs = j.vertices();
  for (size_t i = 0; i + 1 < vs.size(); ++i) {
    double dx = vs[i + 1].x - vs[i].x;
    double dy = vs[i + 1].y - vs[i].y;
    if (dx <= 0.0) throw NotAResolvent("from_resolvent: curve is not single-valued");
    if (dy > dx * (1.0 + 1e-9)) throw NotAResolvent("from_resolvent: segment slope exceeds 1");
  }
  for (const Ray& r : {j.left_ray(), j.right_ray()})
    if (r.kind == RayKind::sloped && r.slope > 1.0 + 1e-9)
      throw NotAResolvent("from_resolvent: ray slope exceeds 1");

  std::vector<Vertex> w;
  w.reserve(vs.size());
  for (const Vertex& p : vs)
    w.push_back({p.y, o == Orientation::up ? p.x - p.y : p.y - p.x});
  return MonoCurve::build(o, std::move(w), unshear_ray(j.left_ray()),
                          unshear_ray(j.right_ray()));
}

std::pair<double, double> minty_param(const MonoCurve& f, double x) {
  if (!f.maximal()) throw NotMaximal("minty_param: operator is not maximal");
  MonoCurve j = resolvent_of(f);
  double jx = j.eval_scalar(x);
  double y = f.orientation() == Orientation::up ? x - jx : jx - x;
  return {jx, y};
}

std::vector<double> breakpoints(const MonoCurve& f) {
  std::vector<double> xs;
  xs.reserve(f.vertices().size());
  for (const Vertex& p : f.vertices())
    if (xs.empty() || xs.back() != p.x) xs.push_back(p.x);
  return xs;
}

bool curves_equal(const MonoCurve& a, const MonoCurve& b, double tol) {
  if (a.empty() || b.empty()) return a.empty() && b.empty();
  if (a.orientation() != b.orientation()) return false;

  if (a.maximal() && b.maximal()) {
    // Maximal operators are determined by their resolvents, which are
    // single-valued and 1-Lipschitz: pointwise comparison is jitter-stable.
    MonoCurve ja = resolvent_of(a), jb = resolvent_of(b);
    auto eff_slope = [](const Ray& r) { return r.kind == RayKind::horizontal ? 0.0 : r.slope; };
    if (!approx(eff_slope(ja.left_ray()), eff_slope(jb.left_ray()), tol)) return false;
    if (!approx(eff_slope(ja.right_ray()), eff_slope(jb.right_ray()), tol)) return false;
    std::vector<double> xs = breakpoints(ja);
    for (double x : breakpoints(jb)) xs.push_back(x);
    std::sort(xs.begin(), xs.end());
    for (size_t i = 0; i < xs.size(); ++i) {
      if (!approx(ja.eval_scalar(xs[i]), jb.eval_scalar(xs[i]), tol)) return false;
      if (i + 1 < xs.size()) {
        double m = 0.5 * (xs[i] + xs[i + 1]);
        if (!approx(ja.eval_scalar(m), jb.eval_scalar(m), tol)) return false;
      }
    }
    return true;
  }
  if (a.maximal() != b.maximal()) return false;

  for (auto [ra, rb] : {std::pair{a.left_ray(), b.left_ray()}, {a.right_ray(), b.right_ray()}}) {
    if (ra.kind != rb.kind) return false;
    if (ra.kind == RayKind::sloped && !approx(ra.slope, rb.slope, tol)) return false;
  }
  if (!interval_close(a.domain(), b.domain(), tol)) return false;

  std::vector<double> xs = breakpoints(a);
  for (double x : breakpoints(b)) xs.push_back(x);
  std::sort(xs.begin(), xs.end());
  std::vector<double> grid;
  for (double x : xs)
    if (grid.empty() || !approx(grid.back(), x, tol)) grid.push_back(x);
  std::vector<double> probes = grid;
  for (size_t i = 0; i + 1 < grid.size(); ++i) probes.push_back(0.5 * (grid[i] + grid[i + 1]));

  for (double x : probes) {
    Interval ia = a.eval(x), ib = b.eval(x);
    if (ia.is_empty != ib.is_empty) {
      // Breakpoints deduped within tol may sit just outside one domain.
      if (approx(x, a.domain().lo, tol) || approx(x, a.domain().hi, tol)) continue;
      return false;
    }
    if (!interval_close(ia, ib, tol)) return false;
  }
  return true;
}

}  // namespace concop
