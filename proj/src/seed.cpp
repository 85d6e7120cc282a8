#include "concop/seed.hpp"

#include <algorithm>
#include <cmath>

namespace concop {

double solve_monotone(const std::function<double(double)>& fn, double target, double lo_hint,
                      double hi_hint, bool increasing) {
  double lo = lo_hint, hi = hi_hint;
  if (lo > hi) std::swap(lo, hi);
  auto g = [&](double x) { return increasing ? fn(x) - target : target - fn(x); };
  // expand the bracket until g(lo) <= 0 <= g(hi)
  double span = std::max(1.0, hi - lo);
  for (int i = 0; i < 200 && g(lo) > 0.0; ++i) {
    hi = lo;
    lo -= span;
    span *= 2.0;
  }
  span = std::max(1.0, hi - lo);
  for (int i = 0; i < 200 && g(hi) < 0.0; ++i) {
    lo = hi;
    hi += span;
    span *= 2.0;
  }
  if (g(lo) > 0.0 || g(hi) < 0.0) throw Error("solve_monotone: bracket not found");
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo) + std::abs(hi)); ++i) {
    double mid = 0.5 * (lo + hi);
    if (g(mid) <= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double quad_rec(const std::function<double(double)>& fn, double a, double m, double b, double fa,
                double fm, double fb, double whole, double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = fn(lm), frm = fn(rm);
  double left = simpson(a, m, fa, flm, fm);
  double right = simpson(m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return quad_rec(fn, a, lm, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         quad_rec(fn, m, rm, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

}  // namespace

double adaptive_quad(const std::function<double(double)>& fn, double a, double b, double rel_tol,
                     int max_depth) {
  if (a == b) return 0.0;
  double m = 0.5 * (a + b);
  double fa = fn(a), fm = fn(m), fb = fn(b);
  double whole = simpson(a, b, fa, fm, fb);
  double tol = rel_tol * std::max(std::abs(whole), 1e-300);
  return quad_rec(fn, a, m, b, fa, fm, fb, whole, tol, max_depth);
}

// ---------------------------------------------------------------------------
// Bases.

namespace {

struct E1Base final : SeedBase {
  double eval(double u) const override { return std::exp(-u); }
  double inverse(double y) const override { return -std::log(y); }
  std::string name() const override { return "E1"; }
  std::optional<double> power_moment(double p, double a, double q) const override {
    // int_0^inf exp(-(a t^{1/q})^p) dt = (q/a^q) Gamma(q/p) / p
    return (q / std::pow(a, q)) * std::tgamma(q / p) / p;
  }
};

struct E2Base final : SeedBase {
  double eval(double u) const override { return 2.0 * std::exp(-u * u / 2.0); }
  double inverse(double y) const override { return std::sqrt(2.0 * std::log(2.0 / y)); }
  std::string name() const override { return "E2"; }
  std::optional<double> power_moment(double p, double a, double q) const override {
    // int_0^inf 2 exp(-s^{2p}/2) s^{q-1} ds = 2 Gamma(q/2p) 2^{q/2p} / (2p)
    double inner = 2.0 * std::tgamma(q / (2.0 * p)) * std::pow(2.0, q / (2.0 * p)) / (2.0 * p);
    return (q / std::pow(a, q)) * inner;
  }
};

struct PowerDecayBase final : SeedBase {
  double q_;
  explicit PowerDecayBase(double q) : q_(q) {}
  double eval(double u) const override { return std::pow(u, -q_); }
  double inverse(double y) const override { return std::pow(y, -1.0 / q_); }
  double sup_value() const override { return kInf; }
  std::string name() const override { return "upow" + std::to_string(q_); }
  bool same(const SeedBase& other) const override {
    auto* o = dynamic_cast<const PowerDecayBase*>(&other);
    return o && o->q_ == q_;
  }
};

struct OpaqueBase final : SeedBase {
  std::string name_;
  std::function<double(double)> eval_, inverse_;
  double u_lo_;
  std::optional<double> sup_;
  double eval(double u) const override { return eval_(u); }
  double inverse(double y) const override { return inverse_(y); }
  double u_lo() const override { return u_lo_; }
  double sup_value() const override { return sup_ ? *sup_ : eval_(u_lo_); }
  std::string name() const override { return name_; }
  bool same(const SeedBase& other) const override { return this == &other; }
};

}  // namespace

SeedPtr seed_e1() {
  static SeedPtr s = std::make_shared<E1Base>();
  return s;
}

SeedPtr seed_e2() {
  static SeedPtr s = std::make_shared<E2Base>();
  return s;
}

SeedPtr seed_power_decay(double q) {
  if (!(q > 0.0)) throw BadParameter("power decay base: q must be positive");
  return std::make_shared<PowerDecayBase>(q);
}

SeedPtr seed_opaque(std::string name, std::function<double(double)> eval,
                    std::function<double(double)> inverse, double u_lo,
                    std::optional<double> sup) {
  auto b = std::make_shared<OpaqueBase>();
  b->name_ = std::move(name);
  b->eval_ = std::move(eval);
  b->inverse_ = std::move(inverse);
  b->u_lo_ = u_lo;
  b->sup_ = sup;
  return b;
}

// ---------------------------------------------------------------------------
// Argument maps.

ArgMap ArgMap::affine(double a, double b) {
  if (!(a > 0.0)) throw BadParameter("arg map: slope must be positive");
  ArgMap m;
  m.a = a;
  m.b = b;
  m.p = 1.0;
  return m;
}

ArgMap ArgMap::power_affine(double a, double b, double p) {
  if (!(a > 0.0) || !(p > 0.0)) throw BadParameter("arg map: a and p must be positive");
  ArgMap m;
  m.a = a;
  m.b = b;
  m.p = p;
  return m;
}

ArgMap ArgMap::opaque(std::function<double(double)> fwd, std::function<double(double)> inv) {
  ArgMap m;
  m.structured = false;
  m.fwd_fn = std::move(fwd);
  m.inv_fn = std::move(inv);
  return m;
}

double ArgMap::fwd(double t) const {
  if (!structured) return fwd_fn(t);
  double u = a * t + b;
  return p == 1.0 ? u : std::pow(std::max(u, 0.0), p);
}

double ArgMap::inv(double u) const {
  if (!structured) return inv_fn(u);
  double v = p == 1.0 ? u : std::pow(std::max(u, 0.0), 1.0 / p);
  return (v - b) / a;
}

ArgMap ArgMap::precompose_affine(double s, double d) const {
  if (!(s > 0.0)) throw BadParameter("arg map: precompose slope must be positive");
  if (structured) {
    ArgMap m = *this;
    m.a = a * s;
    m.b = a * d + b;
    return m;
  }
  auto F = fwd_fn, I = inv_fn;
  return opaque([F, s, d](double t) { return F(s * t + d); },
                [I, s, d](double u) { return (I(u) - d) / s; });
}

ArgMap ArgMap::precompose_root(double k) const {
  if (!(k > 0.0)) throw BadParameter("arg map: root order must be positive");
  if (structured && b == 0.0) {
    ArgMap m = *this;
    m.a = std::pow(a, k);
    m.p = p / k;
    return m;
  }
  if (structured) {
    double a0 = a, b0 = b, p0 = p;
    return opaque(
        [a0, b0, p0, k](double t) {
          return std::pow(std::max(a0 * std::pow(std::max(t, 0.0), 1.0 / k) + b0, 0.0), p0);
        },
        [a0, b0, p0, k](double u) {
          return std::pow(std::max((std::pow(std::max(u, 0.0), 1.0 / p0) - b0) / a0, 0.0), k);
        });
  }
  auto F = fwd_fn, I = inv_fn;
  return opaque([F, k](double t) { return F(std::pow(std::max(t, 0.0), 1.0 / k)); },
                [I, k](double u) { return std::pow(std::max(I(u), 0.0), k); });
}

// ---------------------------------------------------------------------------
// Analytic operator.

double AnalyticOp::t_lo() const {
  double ulo = base->u_lo();
  if (!w.structured) return ulo == -kInf ? -kInf : w.inv(ulo);
  if (w.p == 1.0) return ulo == -kInf ? -kInf : (ulo - w.b) / w.a;
  return (std::pow(std::max(ulo, 0.0), 1.0 / w.p) - w.b) / w.a;
}

double AnalyticOp::value(double t) const { return scale * base->eval(w.fwd(t)); }

Interval AnalyticOp::eval(double t) const {
  double tl = t_lo();
  if (cap_one) {
    if (t < tl) return Interval::point(1.0);
    if (t == tl && std::isfinite(tl)) {
      double v = value(tl);
      return Interval::make(std::min(v, 1.0), 1.0, true, true);
    }
    return Interval::point(std::min(value(t), 1.0));
  }
  if (t < tl) return Interval::empty();
  if (t == tl && std::isfinite(tl)) return Interval::make(value(tl), kInf, true, false);
  return Interval::point(value(t));
}

Interval AnalyticOp::domain() const {
  if (cap_one) return Interval::all();
  double tl = t_lo();
  return tl == -kInf ? Interval::all() : Interval::make(tl, kInf, true, false);
}

double AnalyticOp::solve_value(double y) const { return w.inv(base->inverse(y / scale)); }

bool AnalyticOp::same_shape(const AnalyticOp& o) const {
  if (!base->same(*o.base) || scale != o.scale || cap_one != o.cap_one) return false;
  if (w.structured != o.w.structured) return false;
  if (!w.structured) return false;  // opaque maps are never considered equal
  return w.a == o.w.a && w.b == o.w.b && w.p == o.w.p;
}

double analytic_moment(const AnalyticOp& op, double q) {
  if (!(q > 0.0)) throw BadParameter("moment: q must be positive");
  double tl = op.t_lo();
  if (!op.cap_one) {
    if (tl > 0.0) return kInf;  // inf dom > 0: the integral diverges
    if (op.w.pure_power()) {
      auto cf = op.base->power_moment(op.w.p, op.w.a, q);
      if (cf) return op.scale * *cf;
    }
  }
  auto g = [&](double t) {
    double s = std::pow(std::max(t, 1e-300), 1.0 / q);
    if (s <= tl) return op.cap_one ? 1.0 : op.value(std::max(s, tl));
    double v = op.value(s);
    return op.cap_one ? std::min(v, 1.0) : v;
  };
  double ref = std::max(op.cap_one ? 1.0 : 0.0, 1e-300);
  double residual = 1e-16 * std::max(op.scale, ref);
  double s_end = op.solve_value(residual);
  double T = std::pow(std::max(s_end, 1.0), q);
  double total = adaptive_quad(g, 0.0, T, 1e-11);
  // extend until the remaining contribution is negligible
  for (int i = 0; i < 60; ++i) {
    double chunk = adaptive_quad(g, T, 2.0 * T, 1e-9);
    total += chunk;
    T *= 2.0;
    if (chunk <= 1e-14 * std::max(total, 1e-300)) break;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Envelopes.

namespace {

struct Sampler {
  const std::function<double(double)>& fn;
  double eps;
  size_t budget;
  std::vector<Vertex> out;

  void refine(double x1, double v1, double x2, double v2, int depth) {
    if (out.size() >= budget)
      throw ToleranceUnreachable("envelope: vertex budget exhausted before tolerance");
    double xm = 0.5 * (x1 + x2);
    double vm = fn(xm);
    double err = std::abs(vm - 0.5 * (v1 + v2));
    double scale = std::max({1.0, std::abs(v1), std::abs(v2)});
    if (depth <= 0 || err <= eps / 4.0 * scale) {
      out.push_back({x1, v1});
      out.push_back({xm, vm});
      return;
    }
    refine(x1, v1, xm, vm, depth - 1);
    refine(xm, vm, x2, v2, depth - 1);
  }

  std::vector<Vertex> run(double a, double b, int coarse) {
    out.clear();
    double prev_x = a, prev_v = fn(a);
    for (int i = 1; i <= coarse; ++i) {
      double x = a + (b - a) * static_cast<double>(i) / coarse;
      double v = fn(x);
      refine(prev_x, prev_v, x, v, 40);
      prev_x = x;
      prev_v = v;
    }
    out.push_back({b, fn(b)});
    return out;
  }
};

MonoCurve assemble_down_envelope(std::vector<Vertex> body, EnvelopeDir dir, double eps,
                                 bool flat_one_left, bool vertical_left) {
  double sgn = dir == EnvelopeDir::upper ? 1.0 : -1.0;
  for (Vertex& p : body)
    p.y = std::max(p.y + sgn * eps / 2.0 * std::max(1.0, std::abs(p.y)), 0.0);
  for (size_t i = 1; i < body.size(); ++i) body[i].y = std::min(body[i].y, body[i - 1].y);
  if (flat_one_left)
    for (Vertex& p : body) p.y = std::min(p.y, 1.0);

  std::vector<Vertex> w;
  Ray left, right;
  if (flat_one_left) {
    left = Ray::horizontal();
    if (body.front().y < 1.0) w.push_back({body.front().x, 1.0});
  } else if (vertical_left) {
    left = Ray::vertical();
  } else {
    left = Ray::horizontal();
  }
  for (const Vertex& p : body) w.push_back(p);
  if (dir == EnvelopeDir::upper || body.back().y == 0.0) {
    right = Ray::horizontal();
  } else {
    w.push_back({body.back().x, 0.0});
    right = Ray::horizontal();
  }
  return MonoCurve::build(Orientation::down, std::move(w), left, right);
}

}  // namespace

MonoCurve envelope_down(const AnalyticOp& op, EnvelopeDir dir, const EnvelopeOptions& opt) {
  double tl = op.t_lo();
  double v_sup = op.scale * op.base->sup_value();
  double y_tail = std::min(opt.tail_residual, v_sup / 4.0);
  double t_hi = op.solve_value(y_tail);

  bool capped = op.cap_one && v_sup > 1.0;
  bool flat_left = op.cap_one;
  double t0;
  bool vertical_left = false;
  if (capped) {
    t0 = std::isfinite(tl) ? std::max(tl, op.solve_value(1.0)) : op.solve_value(1.0);
    if (std::isfinite(tl) && op.value(tl) < 1.0) t0 = tl;
  } else if (std::isfinite(tl)) {
    t0 = tl;
    vertical_left = !op.cap_one;
  } else {
    // full-line base: start where the value is within eps/2 of its supremum
    double delta = std::min(opt.eps / 2.0, v_sup / 1e6);
    t0 = op.solve_value(v_sup - delta);
  }
  if (!(t_hi > t0)) t_hi = t0 + 1.0;

  auto fn = [&](double t) { return op.value(std::max(t, tl)); };
  Sampler s{fn, opt.eps, opt.max_vertices, {}};
  std::vector<Vertex> body = s.run(t0, t_hi, 64);
  return assemble_down_envelope(std::move(body), dir, opt.eps, flat_left, vertical_left);
}

MonoCurve envelope_compose_map(const MonoCurve& alpha, const ArgMap& w, EnvelopeDir dir,
                               const EnvelopeOptions& opt) {
  if (alpha.empty()) return alpha;
  if (alpha.orientation() != Orientation::down)
    throw Error("envelope_compose_map: alpha must be nonincreasing");
  Interval dom = alpha.domain();
  const double shift = dir == EnvelopeDir::upper ? opt.eps / 2.0 : -opt.eps / 2.0;

  // node positions: domain edges and alpha breakpoints pulled back through w
  std::vector<double> ts;
  Ray left = Ray::none(), right = Ray::none();
  std::vector<Vertex> out;
  auto push = [&](double t, double v) {
    out.push_back({t, std::max(v + shift * std::max(1.0, std::abs(v)), 0.0)});
  };

  bool left_edge = std::isfinite(dom.lo);
  bool right_edge = std::isfinite(dom.hi);
  for (double u : breakpoints(alpha))
    if (u > dom.lo && u < dom.hi) ts.push_back(w.inv(u));
  std::sort(ts.begin(), ts.end());

  if (left_edge) {
    ts.insert(ts.begin(), w.inv(dom.lo));
  } else {
    // the tail of a nonincreasing PL operator toward -inf is flat or sloped;
    // flat tails compose exactly through any argument map
    if (alpha.left_ray().kind == RayKind::horizontal) {
      left = Ray::horizontal();
    } else if (w.structured && w.p == 1.0) {
      left = Ray::sloped(alpha.left_ray().slope * w.a);
    } else {
      throw Error("envelope_compose_map: sloped left tail with a nonaffine map");
    }
    if (ts.empty()) ts.push_back(w.inv(alpha.vertices().front().x));
  }
  if (right_edge) {
    ts.push_back(w.inv(dom.hi));
  } else {
    if (alpha.right_ray().kind == RayKind::horizontal) {
      right = Ray::horizontal();
    } else if (w.structured && w.p == 1.0) {
      right = Ray::sloped(alpha.right_ray().slope * w.a);
    } else {
      throw Error("envelope_compose_map: sloped right tail with a nonaffine map");
    }
    if (ts.size() < 2) ts.push_back(ts.back() + 1.0);
  }
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  // left end emission
  {
    double t0 = ts.front();
    Interval img = alpha.eval(left_edge ? dom.lo : w.fwd(t0));
    if (left_edge) {
      if (img.hi == kInf) {
        left = Ray::vertical();
        push(t0, img.lo);
      } else {
        if (alpha.left_ray().kind == RayKind::vertical) left = Ray::vertical();
        push(t0, img.hi);
        if (img.lo != img.hi) push(t0, img.lo);
      }
    } else {
      push(t0, img.hi);
      if (img.lo != img.hi) push(t0, img.lo);
    }
  }

  // interior cells: single-valued between nodes, refined through the map;
  // jumps at interior nodes land exactly
  auto fn = [&](double t) { return alpha.eval(w.fwd(t)).lo; };
  std::function<void(double, double, double, double, int)> refine =
      [&](double x1, double v1, double x2, double v2, int depth) {
        if (out.size() >= opt.max_vertices)
          throw ToleranceUnreachable("envelope_compose_map: vertex budget exhausted");
        double xm = 0.5 * (x1 + x2);
        double vm = fn(xm);
        double err = std::abs(vm - 0.5 * (v1 + v2));
        double scale = std::max({1.0, std::abs(v1), std::abs(v2)});
        if (depth <= 0 || err <= opt.eps / 4.0 * scale) {
          push(xm, vm);
          return;
        }
        refine(x1, v1, xm, vm, depth - 1);
        push(xm, vm);
        refine(xm, vm, x2, v2, depth - 1);
      };
  for (size_t k = 0; k + 1 < ts.size(); ++k) {
    double ta = ts[k], tb = ts[k + 1];
    if (!(tb > ta)) continue;
    double va = alpha.eval(w.fwd(ta)).lo;   // right limit at ta
    Interval ib = alpha.eval(w.fwd(tb));
    refine(ta, va, tb, ib.hi, 36);
    bool last = k + 2 == ts.size();
    if (last && right_edge && ib.lo == -kInf) {
      push(tb, ib.hi);
      right = Ray::vertical();
    } else {
      push(tb, ib.hi);
      if (ib.lo != ib.hi && std::isfinite(ib.lo)) push(tb, ib.lo);
    }
  }

  if (right.kind == RayKind::none && right_edge &&
      alpha.right_ray().kind == RayKind::vertical)
    right = Ray::vertical();

  // monotone cleanup of shift-induced wobble
  std::stable_sort(out.begin(), out.end(),
                   [](const Vertex& a, const Vertex& b) { return a.x < b.x; });
  for (size_t i = 1; i < out.size(); ++i) out[i].y = std::min(out[i].y, out[i - 1].y);
  return MonoCurve::build(Orientation::down, std::move(out), left, right);
}

}  // namespace concop
