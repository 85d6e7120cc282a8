#include "concop/curve_ops.hpp"

#include <algorithm>
#include <cmath>

namespace concop {

namespace {

// Constant functions and their inverses live in both monotone classes;
// single-vertex curves with twin horizontal or twin vertical rays are
// orientation-free and coerce to the other operand's class.
bool orientation_free(const MonoCurve& c) {
  if (c.empty() || c.vertices().size() != 1) return false;
  RayKind l = c.left_ray().kind, r = c.right_ray().kind;
  return (l == RayKind::horizontal && r == RayKind::horizontal) ||
         (l == RayKind::vertical && r == RayKind::vertical);
}

MonoCurve with_orientation(const MonoCurve& c, Orientation o) {
  if (c.empty() || c.orientation() == o) return c;
  return MonoCurve::build(o, c.vertices(), c.left_ray(), c.right_ray());
}

void require_same_orientation(const MonoCurve& f, const MonoCurve& g) {
  if (!f.empty() && !g.empty() && f.orientation() != g.orientation())
    throw OrientationMismatch("operands have different orientations");
}

std::vector<double> merged_grid(const MonoCurve& f, const MonoCurve& g, const Interval& dom) {
  std::vector<double> xs;
  for (const MonoCurve* c : {&f, &g})
    for (double x : breakpoints(*c))
      if (dom.contains(x)) xs.push_back(x);
  if (std::isfinite(dom.lo)) xs.push_back(dom.lo);
  if (std::isfinite(dom.hi)) xs.push_back(dom.hi);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

// Pointwise combination of two curves on the intersected domain. `combine`
// merges image intervals; `ray_slope` gives the slope of the combined curve
// on an unbounded domain side (nullopt if not representable by one ray, in
// which case a sampled window with a linear continuation is emitted).
struct PointwiseSpec {
  Interval (*combine)(const Interval&, const Interval&);
  std::optional<double> (*ray_slope)(const MonoCurve&, const MonoCurve&, bool left);
  // optional quadratic refinement between grid points (used by mul)
  bool refine = false;
  MulOptions opt;
};

double slope_at_end(const MonoCurve& c, bool left) {
  // signed dy/dx of the curve beyond its first/last vertex; requires the
  // corresponding ray to be horizontal or sloped
  const Ray& r = left ? c.left_ray() : c.right_ray();
  if (r.kind == RayKind::horizontal) return 0.0;
  double sgn = c.orientation() == Orientation::up ? 1.0 : -1.0;
  return sgn * r.slope;
}

MonoCurve assemble_pointwise(const MonoCurve& f0, const MonoCurve& g0, const PointwiseSpec& spec) {
  MonoCurve f = orientation_free(f0) && !g0.empty() ? with_orientation(f0, g0.orientation()) : f0;
  MonoCurve g = orientation_free(g0) && !f.empty() ? with_orientation(g0, f.orientation()) : g0;
  require_same_orientation(f, g);
  if (f.empty() || g.empty()) return MonoCurve::empty_op(f.empty() ? g.orientation() : f.orientation());
  Orientation o = f.orientation();
  const bool up = o == Orientation::up;
  Interval dom = intersect(f.domain(), g.domain());
  if (dom.is_empty) return MonoCurve::empty_op(o);

  if (dom.is_point()) {
    Interval i = spec.combine(f.eval(dom.lo), g.eval(dom.lo));
    std::vector<Vertex> w;
    Ray lo_ray = Ray::none(), hi_ray = Ray::none();
    if (i.lo == -kInf) lo_ray = Ray::vertical();
    else w.push_back({dom.lo, i.lo});
    if (i.hi == kInf) hi_ray = Ray::vertical();
    else if (i.hi != i.lo || w.empty()) w.push_back({dom.lo, i.hi});
    if (w.empty()) w.push_back({dom.lo, 0.0});
    if (!up) std::reverse(w.begin(), w.end());
    Ray left = up ? lo_ray : hi_ray, right = up ? hi_ray : lo_ray;
    return MonoCurve::build(o, std::move(w), left, right);
  }

  std::vector<double> grid = merged_grid(f, g, dom);
  std::vector<Vertex> w;
  Ray left = Ray::none(), right = Ray::none();

  auto emit = [&](double x, const Interval& i) {
    double first = up ? i.lo : i.hi;
    double last = up ? i.hi : i.lo;
    if (std::isfinite(first)) w.push_back({x, first});
    if (std::isfinite(last) && last != first) w.push_back({x, last});
  };

  // refinement of one open cell (x1, x2) where both curves are linear
  auto refine_cell = [&](double x1, double x2) {
    if (!spec.refine) return;
    double fa = f.eval(x1).hi, fb = f.eval(x2).lo;
    double ga = g.eval(x1).hi, gb = g.eval(x2).lo;
    if (!up) { fa = f.eval(x1).lo; fb = f.eval(x2).hi; ga = g.eval(x1).lo; gb = g.eval(x2).hi; }
    double len = x2 - x1;
    double bd = std::abs((fb - fa) * (gb - ga)) / (len * len);  // |B*D|
    double pa = fa * ga, pb = fb * gb;
    double eps = spec.opt.rel_dev * std::max({1.0, std::abs(pa), std::abs(pb)});
    double dev = bd * len * len / 4.0;
    if (dev <= eps) return;
    size_t n = static_cast<size_t>(std::ceil(std::sqrt(dev / eps)));
    n = std::min(n, spec.opt.max_extra);
    for (size_t k = 1; k < n; ++k) {
      double x = x1 + len * static_cast<double>(k) / static_cast<double>(n);
      double fv = fa + (fb - fa) * (x - x1) / len;
      double gv = ga + (gb - ga) * (x - x1) / len;
      w.push_back({x, fv * gv});
    }
  };

  // left side
  size_t first_idx = 0;
  if (dom.lo == -kInf) {
    auto s = spec.ray_slope(f, g, true);
    if (s) {
      left = *s == 0.0 ? Ray::horizontal() : Ray::sloped(std::abs(*s));
    } else {
      // superlinear tail: sample a window, then continue linearly (inexact)
      double x0 = grid.front();
      double step = std::max(1.0, (grid.back() - grid.front()) / 4.0);
      for (int k = 16; k >= 0; --k) {
        double x = x0 - step * std::ldexp(1.0, k);
        Interval i = spec.combine(f.eval(x), g.eval(x));
        w.push_back({x, up ? i.lo : i.hi});
        if (k == 16) {
          double x2 = x - step;
          Interval i2 = spec.combine(f.eval(x2), g.eval(x2));
          double m = std::abs((i.lo - i2.lo) / (x - x2));
          left = Ray::sloped(std::max(m, 1e-300));
        }
      }
    }
  } else {
    Interval i = spec.combine(f.eval(dom.lo), g.eval(dom.lo));
    if ((up ? i.lo : i.hi) == (up ? -kInf : kInf)) left = Ray::vertical();
    emit(dom.lo, i);
    first_idx = 1;
  }

  for (size_t k = first_idx; k < grid.size(); ++k) {
    double x = grid[k];
    bool last = k + 1 == grid.size() && std::isfinite(dom.hi);
    Interval i = spec.combine(f.eval(x), g.eval(x));
    if (last && (up ? i.hi : i.lo) == (up ? kInf : -kInf)) right = Ray::vertical();
    emit(x, i);
  }
  for (size_t k = 0; k + 1 < grid.size(); ++k) refine_cell(grid[k], grid[k + 1]);

  if (dom.hi == kInf) {
    auto s = spec.ray_slope(f, g, false);
    if (s) {
      right = *s == 0.0 ? Ray::horizontal() : Ray::sloped(std::abs(*s));
    } else {
      double x0 = grid.back();
      double step = std::max(1.0, (grid.back() - grid.front()) / 4.0);
      double prev_x = x0, prev_v = 0.0;
      for (int k = 0; k <= 16; ++k) {
        double x = x0 + step * std::ldexp(1.0, k);
        Interval i = spec.combine(f.eval(x), g.eval(x));
        double v = up ? i.hi : i.lo;
        w.push_back({x, v});
        prev_x = x;
        prev_v = v;
      }
      double x2 = prev_x + step;
      Interval i2 = spec.combine(f.eval(x2), g.eval(x2));
      double m = std::abs(((up ? i2.hi : i2.lo) - prev_v) / (x2 - prev_x));
      right = Ray::sloped(std::max(m, 1e-300));
    }
  }

  // vertices must be emitted in traversal order; grid refinement appends in
  // order already, so a stable sort by x (ties keep emission order) is enough
  std::stable_sort(w.begin(), w.end(), [](const Vertex& a, const Vertex& b) { return a.x < b.x; });
  return MonoCurve::build(o, std::move(w), left, right);
}

Interval combine_add(const Interval& a, const Interval& b) { return minkowski_add(a, b); }
Interval combine_mul(const Interval& a, const Interval& b) { return minkowski_mul_nonneg(a, b); }

std::optional<double> add_ray_slope(const MonoCurve& f, const MonoCurve& g, bool left) {
  return slope_at_end(f, left) + slope_at_end(g, left);
}

std::optional<double> mul_ray_slope(const MonoCurve& f, const MonoCurve& g, bool left) {
  double sf = slope_at_end(f, left), sg = slope_at_end(g, left);
  if (sf != 0.0 && sg != 0.0) return std::nullopt;  // product grows quadratically
  const MonoCurve& flat = sf == 0.0 ? f : g;
  const MonoCurve& lin = sf == 0.0 ? g : f;
  double level = left ? flat.vertices().front().y : flat.vertices().back().y;
  return level * slope_at_end(lin, left);
}

}  // namespace

MonoCurve curve_add(const MonoCurve& f, const MonoCurve& g) {
  return assemble_pointwise(f, g, {combine_add, add_ray_slope, false, {}});
}

MonoCurve curve_mul(const MonoCurve& f, const MonoCurve& g, const MulOptions& opt) {
  if (!f.empty() && f.range().lo < 0.0)
    throw NegativeRange("curve_mul: left operand range leaves R+");
  if (!g.empty() && g.range().lo < 0.0)
    throw NegativeRange("curve_mul: right operand range leaves R+");
  return assemble_pointwise(f, g, {combine_mul, mul_ray_slope, true, opt});
}

MonoCurve curve_psum(const MonoCurve& f, const MonoCurve& g) {
  return invert(curve_add(invert(f), invert(g)));
}

MonoCurve curve_pprod(const MonoCurve& f, const MonoCurve& g, const MulOptions& opt) {
  if (!f.empty() && f.domain().lo < 0.0)
    throw NegativeDomain("curve_pprod: left operand domain leaves R+");
  if (!g.empty() && g.domain().lo < 0.0)
    throw NegativeDomain("curve_pprod: right operand domain leaves R+");
  return invert(curve_mul(invert(f), invert(g), opt));
}

MonoCurve curve_shift_arg(const MonoCurve& f, double delta) {
  if (!std::isfinite(delta)) throw BadParameter("shift: delta must be finite");
  if (f.empty()) return f;
  std::vector<Vertex> w;
  w.reserve(f.vertices().size());
  for (const Vertex& p : f.vertices()) w.push_back({p.x - delta, p.y});
  return MonoCurve::build(f.orientation(), std::move(w), f.left_ray(), f.right_ray());
}

MonoCurve curve_scale_arg(const MonoCurve& f, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw BadParameter("scale: lambda must be positive and finite");
  if (f.empty()) return f;
  std::vector<Vertex> w;
  w.reserve(f.vertices().size());
  for (const Vertex& p : f.vertices()) w.push_back({p.x / lambda, p.y});
  auto fix = [&](Ray r) { return r.kind == RayKind::sloped ? Ray::sloped(r.slope * lambda) : r; };
  return MonoCurve::build(f.orientation(), std::move(w), fix(f.left_ray()), fix(f.right_ray()));
}

MonoCurve curve_scale_range(const MonoCurve& f, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw BadParameter("scale_range: factor must be positive");
  if (f.empty()) return f;
  std::vector<Vertex> w;
  w.reserve(f.vertices().size());
  for (const Vertex& p : f.vertices()) w.push_back({p.x, p.y * c});
  auto fix = [&](Ray r) { return r.kind == RayKind::sloped ? Ray::sloped(r.slope * c) : r; };
  return MonoCurve::build(f.orientation(), std::move(w), fix(f.left_ray()), fix(f.right_ray()));
}

MonoCurve curve_cap_one(const MonoCurve& f) {
  if (f.empty()) return f;
  return curve_min({f, const_curve(f.orientation(), 1.0)});
}

MonoCurve const_curve(Orientation o, double c) {
  return MonoCurve::build(o, {{0.0, c}}, Ray::horizontal(), Ray::horizontal());
}

MonoCurve const_inverse_curve(Orientation o, double c) {
  return MonoCurve::build(o, {{c, 0.0}}, Ray::vertical(), Ray::vertical());
}

MonoCurve incr_curve(double delta) {
  return MonoCurve::build(Orientation::down, {{delta, 1.0}, {delta, 0.0}}, Ray::horizontal(),
                          Ray::horizontal());
}

MonoCurve incr_pos_curve(double delta) {
  if (delta < 0.0) throw BadParameter("incr_pos: delta must be >= 0");
  if (delta == 0.0)
    return MonoCurve::build(Orientation::down, {{0.0, 0.0}}, Ray::vertical(), Ray::horizontal());
  return MonoCurve::build(Orientation::down, {{0.0, 1.0}, {delta, 1.0}, {delta, 0.0}},
                          Ray::vertical(), Ray::horizontal());
}

MonoCurve line_curve(double slope, double intercept) {
  if (slope == 0.0) return const_curve(Orientation::up, intercept);
  Orientation o = slope > 0.0 ? Orientation::up : Orientation::down;
  return MonoCurve::build(o, {{0.0, intercept}}, Ray::sloped(std::abs(slope)),
                          Ray::sloped(std::abs(slope)));
}

namespace {

// Pointwise min or max of two single-valued full-domain nondecreasing
// 1-Lipschitz curves (resolvents); exact on PL with crossing insertion.
MonoCurve pointwise_extreme(const MonoCurve& a, const MonoCurve& b, bool take_min) {
  std::vector<double> xs = breakpoints(a);
  for (double x : breakpoints(b)) xs.push_back(x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  auto va = [&](double x) { return a.eval_scalar(x); };
  auto vb = [&](double x) { return b.eval_scalar(x); };

  std::vector<double> probe = xs;
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    double d1 = va(xs[i]) - vb(xs[i]);
    double d2 = va(xs[i + 1]) - vb(xs[i + 1]);
    if ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0))
      probe.push_back(xs[i] + (0.0 - d1) * (xs[i + 1] - xs[i]) / (d2 - d1));
  }
  // crossings beyond the outermost breakpoints
  for (bool leftside : {true, false}) {
    double x0 = leftside ? xs.front() : xs.back();
    double d0 = va(x0) - vb(x0);
    double ds = slope_at_end(a, leftside) - slope_at_end(b, leftside);
    if (d0 != 0.0 && ds != 0.0) {
      double xc = x0 - d0 / ds;
      if ((leftside && xc < x0) || (!leftside && xc > x0)) probe.push_back(xc);
    }
  }
  std::sort(probe.begin(), probe.end());
  // merge probes that nearly coincide: micro-spacing amplifies evaluation
  // noise into spurious segment slopes
  std::vector<double> merged;
  for (double x : probe)
    if (merged.empty() || !approx(merged.back(), x, 1e-12)) merged.push_back(x);
  probe.swap(merged);

  std::vector<Vertex> w;
  w.reserve(probe.size());
  for (double x : probe)
    w.push_back({x, take_min ? std::min(va(x), vb(x)) : std::max(va(x), vb(x))});

  auto pick_end = [&](bool leftside) {
    double x0 = leftside ? probe.front() : probe.back();
    double xq = leftside ? x0 - 1.0 : x0 + 1.0;
    double fa = va(xq), fb = vb(xq);
    bool use_a;
    if (fa != fb)
      use_a = take_min ? fa < fb : fa > fb;
    else {
      double sa = slope_at_end(a, leftside), sb = slope_at_end(b, leftside);
      bool lower_beyond = leftside ? sa > sb : sa < sb;  // stays below going outward
      use_a = take_min ? lower_beyond : !lower_beyond;
    }
    return use_a ? (leftside ? a.left_ray() : a.right_ray())
                 : (leftside ? b.left_ray() : b.right_ray());
  };
  Ray left = pick_end(true), right = pick_end(false);
  return MonoCurve::build(Orientation::up, std::move(w), left, right);
}

MonoCurve extreme_family(const std::vector<MonoCurve>& family, bool want_min) {
  Orientation o = Orientation::up;
  bool have = false;
  std::vector<MonoCurve> coerced;
  coerced.reserve(family.size());
  for (const MonoCurve& f : family) {
    if (f.empty()) continue;  // min(f, empty) = f
    if (!orientation_free(f)) {
      if (have && f.orientation() != o)
        throw OrientationMismatch("min/max: operands have different orientations");
      o = f.orientation();
      have = true;
    }
    coerced.push_back(f);
  }
  if (coerced.empty())
    return MonoCurve::empty_op(family.empty() ? Orientation::up : family.front().orientation());
  for (MonoCurve& f : coerced) f = with_orientation(f, o);
  std::vector<const MonoCurve*> live;
  for (const MonoCurve& f : coerced) live.push_back(&f);
  if (live.size() == 1) return *live.front();

  // J_min f = max J (up) / min J (down); J_max f mirrors.
  bool resolvent_min = (o == Orientation::up) ? !want_min : want_min;
  MonoCurve j = resolvent_of(*live.front());
  for (size_t i = 1; i < live.size(); ++i)
    j = pointwise_extreme(j, resolvent_of(*live[i]), resolvent_min);
  return from_resolvent(j, o);
}

}  // namespace

MonoCurve curve_min(const std::vector<MonoCurve>& family) { return extreme_family(family, true); }
MonoCurve curve_max(const std::vector<MonoCurve>& family) { return extreme_family(family, false); }

// ---------------------------------------------------------------------------
// Relation composition f(g(.)).

namespace {

struct ChainEnd {
  enum Kind { cut, g_ray, open } kind = open;
  Ray ray;  // for g_ray
};

}  // namespace

ComposeResult curve_compose(const MonoCurve& f, const MonoCurve& g) {
  ComposeResult res;
  Orientation comp_o = f.orientation() == g.orientation() ? Orientation::up : Orientation::down;
  if (f.empty() || g.empty()) {
    res.curve = MonoCurve::empty_op(comp_o);
    res.verdict = ComposeVerdict::monotone_not_maximal;
    return res;
  }
  Interval dom_f = f.domain();

  // A horizontal extent of g at level y0 combined with a nondegenerate image
  // f(y0) produces a rectangle in the composite graph: not monotone.
  auto nondegenerate_at = [&](double y0) {
    Interval i = f.eval(y0);
    return !i.is_empty && (i.hi > i.lo);
  };
  const auto& gv = g.vertices();
  for (size_t i = 0; i + 1 < gv.size(); ++i)
    if (gv[i].y == gv[i + 1].y && gv[i + 1].x > gv[i].x && nondegenerate_at(gv[i].y)) {
      res.verdict = ComposeVerdict::not_monotone;
      return res;
    }
  if (g.left_ray().kind == RayKind::horizontal && nondegenerate_at(gv.front().y)) {
    res.verdict = ComposeVerdict::not_monotone;
    return res;
  }
  if (g.right_ray().kind == RayKind::horizontal && nondegenerate_at(gv.back().y)) {
    res.verdict = ComposeVerdict::not_monotone;
    return res;
  }

  if (intersect(g.range(), dom_f).is_empty) {
    res.curve = MonoCurve::empty_op(comp_o);
    res.verdict = ComposeVerdict::monotone_not_maximal;
    return res;
  }

  const bool g_up = g.orientation() == Orientation::up;
  double ylo = dom_f.lo, yhi = dom_f.hi;

  // Cut levels: f breakpoints plus finite domain edges of f.
  std::vector<double> levels = breakpoints(f);
  if (std::isfinite(ylo)) levels.push_back(ylo);
  if (std::isfinite(yhi)) levels.push_back(yhi);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  auto in_dom = [&](double y) { return y >= ylo && y <= yhi; };

  // Walk g's graph left to right, keeping points whose y lies in dom(f) and
  // inserting crossings with every cut level.
  std::vector<Vertex> chain;
  ChainEnd left_end, right_end;

  auto add_pt = [&](double x, double y) {
    if (!chain.empty() && chain.back().x == x && chain.back().y == y) return;
    chain.push_back({x, y});
  };
  auto add_segment_cuts = [&](double x1, double y1, double x2, double y2) {
    if (y1 == y2 || x1 == x2) return;  // horizontal or vertical: no interior cuts needed
    double lo = std::min(y1, y2), hi = std::max(y1, y2);
    auto it = std::lower_bound(levels.begin(), levels.end(), lo);
    std::vector<Vertex> cuts;
    for (; it != levels.end() && *it <= hi; ++it) {
      double l = *it;
      if (l <= lo || l >= hi) continue;
      cuts.push_back({x1 + (l - y1) * (x2 - x1) / (y2 - y1), l});
    }
    std::sort(cuts.begin(), cuts.end(), [](const Vertex& a, const Vertex& b) { return a.x < b.x; });
    for (const Vertex& c : cuts) add_pt(c.x, c.y);
  };

  double y_first = gv.front().y, y_last = gv.back().y;

  // Left end of the chain (smallest x): resolve the end style and collect
  // cut points along the ray, which crosses f-levels like any segment.
  {
    const Ray& r = g.left_ray();
    double m = r.kind == RayKind::sloped ? slope_at_end(g, true) : 0.0;  // signed dy/dx
    auto ray_x = [&](double lvl) { return gv.front().x - (y_first - lvl) / m; };
    bool starts_outside;
    if (r.unbounded_y())
      starts_outside = g_up ? std::isfinite(ylo) : std::isfinite(yhi);
    else
      starts_outside = !in_dom(y_first);
    double enter_level = g_up ? ylo : yhi;
    if (starts_outside) {
      left_end.kind = ChainEnd::cut;
      if (r.kind == RayKind::vertical) {
        if (g_up ? enter_level <= y_first : enter_level >= y_first)
          add_pt(gv.front().x, enter_level);
      } else if (r.kind == RayKind::sloped) {
        double x = ray_x(enter_level);
        if (x <= gv.front().x) add_pt(x, enter_level);
      }
    } else {
      left_end.kind = r.kind == RayKind::none ? ChainEnd::open : ChainEnd::g_ray;
      left_end.ray = r;
    }
    if (r.kind == RayKind::sloped) {
      // the ray spans every level beyond y_first on its side; cut at each
      // f-level it crosses inside dom(f)
      std::vector<Vertex> cuts;
      for (double l : levels) {
        bool inside = g_up ? (l < y_first && in_dom(l)) : (l > y_first && in_dom(l));
        if (!inside) continue;
        double x = ray_x(l);
        if (x < gv.front().x) cuts.push_back({x, l});
      }
      std::sort(cuts.begin(), cuts.end(),
                [](const Vertex& a, const Vertex& b) { return a.x < b.x; });
      for (const Vertex& c : cuts) add_pt(c.x, c.y);
    }
  }

  // Polyline with cuts.
  if (in_dom(gv.front().y)) add_pt(gv.front().x, gv.front().y);
  for (size_t i = 0; i + 1 < gv.size(); ++i) {
    Vertex a = gv[i], b = gv[i + 1];
    // clip segment [a,b] in y to [ylo, yhi]
    double s_lo = std::min(a.y, b.y), s_hi = std::max(a.y, b.y);
    if (s_hi < ylo || s_lo > yhi) continue;
    auto clip_pt = [&](double lvl) -> Vertex {
      if (a.y == b.y) return a;
      return {a.x + (lvl - a.y) * (b.x - a.x) / (b.y - a.y), lvl};
    };
    Vertex ca = a, cb = b;
    if (ca.y < ylo) ca = clip_pt(ylo);
    if (ca.y > yhi) ca = clip_pt(yhi);
    if (cb.y < ylo) cb = clip_pt(ylo);
    if (cb.y > yhi) cb = clip_pt(yhi);
    add_pt(ca.x, ca.y);
    add_segment_cuts(ca.x, ca.y, cb.x, cb.y);
    add_pt(cb.x, cb.y);
  }

  // Right end.
  {
    const Ray& r = g.right_ray();
    double m = r.kind == RayKind::sloped ? slope_at_end(g, false) : 0.0;
    auto ray_x = [&](double lvl) { return gv.back().x + (lvl - y_last) / m; };
    bool ends_outside;
    if (r.unbounded_y())
      ends_outside = g_up ? std::isfinite(yhi) : std::isfinite(ylo);
    else
      ends_outside = !in_dom(y_last);
    double exit_level = g_up ? yhi : ylo;
    if (r.kind == RayKind::sloped) {
      std::vector<Vertex> cuts;
      for (double l : levels) {
        bool inside = g_up ? (l > y_last && l <= yhi && in_dom(l))
                           : (l < y_last && l >= ylo && in_dom(l));
        if (!inside) continue;
        double x = ray_x(l);
        if (x > gv.back().x) cuts.push_back({x, l});
      }
      std::sort(cuts.begin(), cuts.end(),
                [](const Vertex& a, const Vertex& b) { return a.x < b.x; });
      for (const Vertex& c : cuts) add_pt(c.x, c.y);
    }
    if (ends_outside) {
      right_end.kind = ChainEnd::cut;
      if (r.kind == RayKind::vertical) {
        if (g_up ? exit_level >= y_last : exit_level <= y_last)
          add_pt(gv.back().x, exit_level);
      } else if (r.kind == RayKind::sloped) {
        double x = ray_x(exit_level);
        if (x >= gv.back().x) add_pt(x, exit_level);
      }
    } else {
      right_end.kind = r.kind == RayKind::none ? ChainEnd::open : ChainEnd::g_ray;
      right_end.ray = r;
    }
  }
  // Rays whose level never meets dom(f) leave an empty chain.
  if (chain.empty()) {
    res.curve = MonoCurve::empty_op(comp_o);
    res.verdict = ComposeVerdict::monotone_not_maximal;
    return res;
  }

  // Map the chain through f.
  const bool comp_up = comp_o == Orientation::up;
  std::vector<Vertex> w;
  w.reserve(chain.size() * 2);
  Ray left = Ray::none(), right = Ray::none();

  for (size_t i = 0; i < chain.size(); ++i) {
    Interval img = f.eval(chain[i].y);
    if (img.is_empty) continue;  // numeric guard; clip keeps y inside dom(f)
    double first = comp_up ? img.lo : img.hi;
    double second = comp_up ? img.hi : img.lo;
    bool at_left = i == 0, at_right = i + 1 == chain.size();
    if (!std::isfinite(first)) {
      if (at_left)
        left = Ray::vertical();
      else if (at_right)
        right = Ray::vertical();
    } else {
      w.push_back({chain[i].x, first});
    }
    if (second != first) {
      if (!std::isfinite(second)) {
        if (at_right)
          right = Ray::vertical();
        else if (at_left)
          left = Ray::vertical();
      } else {
        w.push_back({chain[i].x, second});
      }
    }
  }
  if (w.empty()) {
    res.curve = MonoCurve::empty_op(comp_o);
    res.verdict = ComposeVerdict::monotone_not_maximal;
    return res;
  }

  auto resolve_end = [&](const ChainEnd& e, bool leftside) -> Ray {
    // leftside refers to the g-chain end being mapped; for the composite the
    // same side is the left end iff we are at the smallest x (always true for
    // the chain's left end since composite x order follows g's x order).
    if (e.kind == ChainEnd::cut || e.kind == ChainEnd::open) {
      return leftside ? left : right;  // vertical ray set during mapping, else none
    }
    const Ray& r = e.ray;
    if (r.kind == RayKind::horizontal) return Ray::horizontal();
    if (r.kind == RayKind::vertical) {
      // g dives to +-inf at fixed x; f tends to a finite level iff its outer
      // ray is horizontal (open limit closed off), otherwise composite is
      // unbounded in y at that x.
      const Ray& fr = (g_up == leftside) ? f.left_ray() : f.right_ray();
      return fr.kind == RayKind::horizontal ? Ray::none() : Ray::vertical();
    }
    // sloped g ray: pair with f's ray on the matching side
    const Ray& fr = (g_up == leftside) ? f.left_ray() : f.right_ray();
    if (fr.kind == RayKind::horizontal) return Ray::horizontal();
    return Ray::sloped(fr.slope * r.slope);
  };
  if (left.kind == RayKind::none) left = resolve_end(left_end, true);
  if (right.kind == RayKind::none) right = resolve_end(right_end, false);

  std::stable_sort(w.begin(), w.end(), [](const Vertex& a, const Vertex& b) { return a.x < b.x; });
  try {
    res.curve = MonoCurve::build(comp_o, std::move(w), left, right);
  } catch (const MonotonicityViolation&) {
    res.verdict = ComposeVerdict::not_monotone;
    return res;
  }
  res.verdict = check_maximal(res.curve) ? ComposeVerdict::maximal
                                         : ComposeVerdict::monotone_not_maximal;
  return res;
}

}  // namespace concop
