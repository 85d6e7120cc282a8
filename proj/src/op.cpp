#include "concop/op.hpp"

#include <algorithm>
#include <cmath>

namespace concop {

Op Op::curve(MonoCurve c) {
  Op o;
  o.kind_ = Kind::pl;
  o.pl_ = std::move(c);
  return o;
}

Op Op::analytic(AnalyticOp a) {
  Op o;
  o.kind_ = Kind::analytic;
  o.an_ = std::move(a);
  return o;
}

Op Op::power(double a, PowerEdge edge) {
  if (a == 0.0) throw BadParameter("power: exponent must be nonzero");
  Op o;
  o.kind_ = Kind::power;
  o.power_a_ = a;
  o.power_edge_ = edge;
  return o;
}

Orientation Op::orientation() const {
  switch (kind_) {
    case Kind::pl: return pl_.orientation();
    case Kind::analytic: return Orientation::down;
    case Kind::power: return power_a_ > 0.0 ? Orientation::up : Orientation::down;
  }
  return Orientation::up;
}

bool Op::maximal() const {
  switch (kind_) {
    case Kind::pl: return pl_.maximal();
    case Kind::analytic: return true;
    case Kind::power: return power_edge_ != PowerEdge::modulus;
  }
  return false;
}

Interval Op::domain() const {
  switch (kind_) {
    case Kind::pl: return pl_.domain();
    case Kind::analytic: return an_.domain();
    case Kind::power:
      if (power_a_ < 0.0) return Interval::make(0.0, kInf, false, false);
      if (power_edge_ == PowerEdge::inverted) return Interval::all();
      return Interval::make(0.0, kInf, true, false);
  }
  return Interval::empty();
}

Interval Op::range() const {
  switch (kind_) {
    case Kind::pl: return pl_.range();
    case Kind::analytic: {
      double sup = an_.scale * an_.base->sup_value();
      if (an_.cap_one) sup = std::min(sup, 1.0);
      bool edge = std::isfinite(an_.t_lo()) && !an_.cap_one;
      return Interval::make(0.0, edge ? kInf : sup, false, false);
    }
    case Kind::power:
      if (power_a_ < 0.0) return Interval::make(0.0, kInf, false, false);
      if (power_edge_ == PowerEdge::convention) return Interval::all();
      return Interval::make(0.0, kInf, true, false);
  }
  return Interval::empty();
}

Interval Op::eval(double t) const {
  switch (kind_) {
    case Kind::pl: return pl_.eval(t);
    case Kind::analytic: return an_.eval(t);
    case Kind::power: {
      if (t > 0.0) return Interval::point(std::pow(t, power_a_));
      if (power_a_ < 0.0) return Interval::empty();
      switch (power_edge_) {
        case PowerEdge::convention:
          return t == 0.0 ? Interval::make(-kInf, 0.0, false, true) : Interval::empty();
        case PowerEdge::inverted: return Interval::point(0.0);
        case PowerEdge::modulus:
          return t == 0.0 ? Interval::point(0.0) : Interval::empty();
      }
    }
  }
  return Interval::empty();
}

MonoCurve Op::to_curve(EnvelopeDir dir, double eps) const {
  EnvelopeOptions opt;
  opt.eps = eps;
  return to_curve_opts(dir, opt);
}

MonoCurve Op::to_curve_opts(EnvelopeDir dir, const EnvelopeOptions& opt, Interval window) const {
  switch (kind_) {
    case Kind::pl: return pl_;
    case Kind::analytic: return envelope_down(an_, dir, opt);
    case Kind::power: {
      // sampled window [0, W]; id^1 is exactly PL
      double W = window.is_empty ? 100.0 : window.hi;
      double shift = (dir == EnvelopeDir::upper ? 1.0 : -1.0) * opt.eps / 2.0;
      std::vector<Vertex> w;
      if (power_a_ == 1.0 && power_edge_ != PowerEdge::modulus) {
        Ray left = power_edge_ == PowerEdge::convention ? Ray::vertical() : Ray::horizontal();
        return MonoCurve::build(Orientation::up, {{0.0, 0.0}}, left, Ray::sloped(1.0));
      }
      size_t n = std::max<size_t>(64, std::min<size_t>(opt.max_vertices, 4096));
      double lo = power_a_ < 0.0 ? W * 1e-9 : 0.0;
      for (size_t i = 0; i <= n; ++i) {
        // geometric refinement near 0 where curvature concentrates
        double u = static_cast<double>(i) / static_cast<double>(n);
        double t = lo + (W - lo) * u * u;
        if (t <= 0.0 && power_a_ < 0.0) continue;
        double v = t == 0.0 ? 0.0 : std::pow(t, power_a_);
        w.push_back({t, v + shift});
      }
      if (power_a_ < 0.0) {
        Ray left = Ray::vertical();
        Ray right = Ray::horizontal();
        return MonoCurve::build(Orientation::down, std::move(w), left, right);
      }
      Ray left = power_edge_ == PowerEdge::convention
                     ? Ray::vertical()
                     : (power_edge_ == PowerEdge::inverted ? Ray::horizontal() : Ray::none());
      double chord = (w.back().y - w[w.size() - 2].y) / (w.back().x - w[w.size() - 2].x);
      return MonoCurve::build(Orientation::up, std::move(w), left,
                              Ray::sloped(std::max(chord, 1e-300)));
    }
  }
  return MonoCurve::empty_op(Orientation::up);
}

// ---------------------------------------------------------------------------
// Named operators.

Op named_e1() { return Op::analytic({seed_e1(), ArgMap::identity(), 1.0, false}); }
Op named_e2() { return Op::analytic({seed_e2(), ArgMap::identity(), 1.0, false}); }
Op named_incr(double delta) { return Op::curve(incr_curve(delta)); }
Op named_incr_pos(double delta) { return Op::curve(incr_pos_curve(delta)); }
Op named_power(double a) { return Op::power(a); }
Op named_const(double c, Orientation o) { return Op::curve(const_curve(o, c)); }
Op named_const_inv(double c, Orientation o) { return Op::curve(const_inverse_curve(o, c)); }
Op named_modulus_power(double k) {
  if (!(k > 0.0)) throw BadParameter("modulus: power must be positive");
  return Op::power(k, PowerEdge::modulus);
}
Op named_empty(Orientation o) { return Op::curve(MonoCurve::empty_op(o)); }

std::optional<double> detect_incr(const MonoCurve& c) {
  if (c.empty() || c.orientation() != Orientation::down) return std::nullopt;
  if (c.left_ray().kind != RayKind::horizontal || c.right_ray().kind != RayKind::horizontal)
    return std::nullopt;
  const auto& v = c.vertices();
  if (v.size() != 2) return std::nullopt;
  if (v[0].x != v[1].x || v[0].y != 1.0 || v[1].y != 0.0) return std::nullopt;
  return v[0].x;
}

std::optional<double> detect_incr_pos(const MonoCurve& c) {
  if (c.empty() || c.orientation() != Orientation::down) return std::nullopt;
  if (c.left_ray().kind != RayKind::vertical || c.right_ray().kind != RayKind::horizontal)
    return std::nullopt;
  const auto& v = c.vertices();
  if (v.size() == 1 && v[0].x == 0.0 && v[0].y == 0.0) return 0.0;
  if (v.size() == 3 && v[0].x == 0.0 && v[0].y == 1.0 && v[1].y == 1.0 && v[2].y == 0.0 &&
      v[1].x == v[2].x && v[1].x > 0.0)
    return v[1].x;
  return std::nullopt;
}

bool is_prob_op(const Op& f) {
  if (f.is_empty() || f.orientation() != Orientation::down || !f.maximal()) return false;
  Interval r = f.range();
  return r.lo >= 0.0 && r.lo < 1.0 && r.hi >= 1.0;
}

bool is_prob_op_positive(const Op& f) { return is_prob_op(f) && f.domain().lo >= 0.0; }

// ---------------------------------------------------------------------------
// Algebra.

namespace {

MonoCurve lower(const Op& f, EnvelopeDir dir, double eps) { return f.to_curve(dir, eps); }

std::optional<double> incr_delta(const Op& f) {
  if (f.kind() != Op::Kind::pl) return std::nullopt;
  return detect_incr(f.pl());
}

std::optional<double> incr_pos_delta(const Op& f) {
  if (f.kind() != Op::Kind::pl) return std::nullopt;
  return detect_incr_pos(f.pl());
}

}  // namespace

Op op_shift_arg(const Op& f, double delta, double eps) {
  switch (f.kind()) {
    case Op::Kind::pl: return Op::curve(curve_shift_arg(f.pl(), delta));
    case Op::Kind::analytic: {
      AnalyticOp a = f.an();
      a.w = a.w.precompose_affine(1.0, delta);
      return Op::analytic(a);
    }
    case Op::Kind::power: return Op::curve(curve_shift_arg(f.to_curve(EnvelopeDir::upper, eps), delta));
  }
  return f;
}

Op op_scale_arg(const Op& f, double lambda, double eps) {
  if (!(lambda > 0.0)) throw BadParameter("op_scale_arg: lambda must be positive");
  switch (f.kind()) {
    case Op::Kind::pl: return Op::curve(curve_scale_arg(f.pl(), lambda));
    case Op::Kind::analytic: {
      AnalyticOp a = f.an();
      a.w = a.w.precompose_affine(lambda, 0.0);
      return Op::analytic(a);
    }
    case Op::Kind::power: return Op::curve(curve_scale_arg(f.to_curve(EnvelopeDir::upper, eps), lambda));
  }
  return f;
}

Op op_scale_range(const Op& f, double c, double eps) {
  if (!(c > 0.0)) throw BadParameter("op_scale_range: factor must be positive");
  if (c == 1.0) return f;
  switch (f.kind()) {
    case Op::Kind::pl: return Op::curve(curve_scale_range(f.pl(), c));
    case Op::Kind::analytic: {
      if (!f.an().cap_one) {
        AnalyticOp a = f.an();
        a.scale *= c;
        return Op::analytic(a);
      }
      return Op::curve(curve_scale_range(f.to_curve(EnvelopeDir::upper, eps), c));
    }
    case Op::Kind::power:
      return Op::curve(curve_scale_range(f.to_curve(EnvelopeDir::upper, eps), c));
  }
  return f;
}

Op op_cap_one(const Op& f, double eps) {
  switch (f.kind()) {
    case Op::Kind::pl: return Op::curve(curve_cap_one(f.pl()));
    case Op::Kind::analytic: {
      AnalyticOp a = f.an();
      a.cap_one = true;
      return Op::analytic(a);
    }
    case Op::Kind::power:
      if (f.orientation() != Orientation::down)
        throw OrientationMismatch("cap_one: operand must be nonincreasing");
      return Op::curve(curve_cap_one(f.to_curve(EnvelopeDir::upper, eps)));
  }
  return f;
}

Op op_invert(const Op& f) {
  switch (f.kind()) {
    case Op::Kind::pl: return Op::curve(invert(f.pl()));
    case Op::Kind::power: {
      double a = f.power_exp();
      if (a < 0.0) return Op::power(1.0 / a);
      switch (f.power_edge()) {
        case PowerEdge::convention: return Op::power(1.0 / a, PowerEdge::inverted);
        case PowerEdge::inverted: return Op::power(1.0 / a, PowerEdge::convention);
        case PowerEdge::modulus: return Op::power(1.0 / a, PowerEdge::modulus);
      }
      return f;
    }
    case Op::Kind::analytic: {
      const AnalyticOp& a = f.an();
      if (a.cap_one) return Op::curve(invert(f.to_curve(EnvelopeDir::upper, 1e-9)));
      SeedPtr base = a.base;
      ArgMap w = a.w;
      double edge = a.t_lo();
      auto ev = [base, w](double y) { return w.inv(base->inverse(y)); };
      auto in = [base, w](double x) { return base->eval(w.fwd(x)); };
      SeedPtr b2 = seed_opaque("inv:" + base->name(), ev, in, 0.0,
                               std::isfinite(edge) ? kInf : ev(1e-300));
      AnalyticOp r{b2, ArgMap::affine(1.0 / a.scale, 0.0), 1.0, false};
      return Op::analytic(r);
    }
  }
  return f;
}

Op op_restrict(const Op& f, const Interval& a, double eps) {
  if (f.kind() == Op::Kind::pl) return Op::curve(restrict_to(f.pl(), a));
  return Op::curve(restrict_to(f.to_curve(EnvelopeDir::upper, eps), a));
}

Op op_add(const Op& f, const Op& g, double eps) {
  if (f.kind() == Op::Kind::pl && g.kind() == Op::Kind::pl)
    return Op::curve(curve_add(f.pl(), g.pl()));
  return Op::curve(curve_add(lower(f, EnvelopeDir::upper, eps), lower(g, EnvelopeDir::upper, eps)));
}

Op op_mul(const Op& f, const Op& g, double eps) {
  // c * f for a constant operand (exact for analytic operands too)
  for (const Op* c : {&f, &g}) {
    const Op& other = (c == &f) ? g : f;
    if (c->kind() == Op::Kind::pl && !c->is_empty()) {
      const MonoCurve& pc = c->pl();
      if (pc.vertices().size() == 1 && pc.left_ray().kind == RayKind::horizontal &&
          pc.right_ray().kind == RayKind::horizontal && pc.vertices()[0].y > 0.0 &&
          other.orientation() == pc.orientation())
        return op_scale_range(other, pc.vertices()[0].y, eps);
    }
  }
  if (f.kind() == Op::Kind::power && g.kind() == Op::Kind::power &&
      f.power_edge() == PowerEdge::convention && g.power_edge() == PowerEdge::convention &&
      f.power_exp() > 0.0 && g.power_exp() > 0.0)
    return Op::power(f.power_exp() + g.power_exp());
  if (f.kind() == Op::Kind::pl && g.kind() == Op::Kind::pl)
    return Op::curve(curve_mul(f.pl(), g.pl()));
  return Op::curve(curve_mul(lower(f, EnvelopeDir::upper, eps), lower(g, EnvelopeDir::upper, eps)));
}

Op op_parallel_sum(const Op& f, const Op& g, double eps) {
  if (f.is_empty() || g.is_empty()) return named_empty(f.is_empty() ? g.orientation() : f.orientation());
  if (f.orientation() != g.orientation())
    throw OrientationMismatch("parallel sum: operands have different orientations");

  // alpha ⊞ Incr_delta = min(alpha o (id - delta), 1) for probabilistic alpha
  for (const Op* c : {&f, &g}) {
    const Op& other = (c == &f) ? g : f;
    if (auto d = incr_delta(*c); d && is_prob_op(other))
      return op_cap_one(op_shift_arg(other, -*d, eps), eps);
  }
  if (f.kind() == Op::Kind::analytic && g.kind() == Op::Kind::analytic) {
    const AnalyticOp &a = f.an(), &b = g.an();
    if (a.same_shape(b)) {  // f ⊞ f = f o (id/2), exact for any operator
      AnalyticOp r = a;
      r.w = r.w.precompose_affine(0.5, 0.0);
      return Op::analytic(r);
    }
    // translation pull-out: (h o (id+d1)) ⊞ (h o (id+d2)) = h o ((id+d1+d2)/2)
    if (a.base->same(*b.base) && a.scale == b.scale && a.cap_one == b.cap_one &&
        a.w.structured && b.w.structured && a.w.a == b.w.a && a.w.p == b.w.p) {
      double delta = (a.w.b - b.w.b) / a.w.a;  // f = g o (id + delta)
      AnalyticOp r = b;
      r.w = r.w.precompose_affine(0.5, delta / 2.0);
      return Op::analytic(r);
    }
  }
  if (f.kind() == Op::Kind::pl && g.kind() == Op::Kind::pl)
    return Op::curve(curve_psum(f.pl(), g.pl()));
  return Op::curve(
      curve_psum(lower(f, EnvelopeDir::upper, eps), lower(g, EnvelopeDir::upper, eps)));
}

Op op_parallel_product(const Op& f, const Op& g, double eps) {
  if (f.is_empty() || g.is_empty()) return named_empty(f.is_empty() ? g.orientation() : f.orientation());
  if (f.orientation() != g.orientation())
    throw OrientationMismatch("parallel product: operands have different orientations");
  if (f.domain().lo < 0.0 || g.domain().lo < 0.0)
    throw NegativeDomain("parallel product: operand domain leaves R+");

  // alpha ⊠ Incr_delta^{R+} = min(alpha o (id/delta), 1)
  for (const Op* c : {&f, &g}) {
    const Op& other = (c == &f) ? g : f;
    if (auto d = incr_pos_delta(*c); d && is_prob_op_positive(other) && *d > 0.0)
      return op_cap_one(op_scale_arg(other, 1.0 / *d, eps), eps);
  }
  if (f.kind() == Op::Kind::analytic && g.kind() == Op::Kind::analytic) {
    const AnalyticOp &a = f.an(), &b = g.an();
    if (a.same_shape(b)) {  // f ⊠ f = f o id^{1/2} on R+ domains
      AnalyticOp r = a;
      r.w = r.w.precompose_root(2.0);
      return Op::analytic(r);
    }
    // pure power families under a shared base merge exponents:
    // alpha o (id/s1)^{1/k1} ⊠ alpha o (id/s2)^{1/k2} = alpha o (id/(s1 s2))^{1/(k1+k2)}
    if (a.base->same(*b.base) && a.scale == b.scale && !a.cap_one && !b.cap_one &&
        a.w.pure_power() && b.w.pure_power() && a.base->u_lo() >= 0.0) {
      double k1 = 1.0 / a.w.p, k2 = 1.0 / b.w.p;
      AnalyticOp r = a;
      r.w = ArgMap::power_affine(a.w.a * b.w.a, 0.0, 1.0 / (k1 + k2));
      return Op::analytic(r);
    }
  }
  if (f.kind() == Op::Kind::pl && g.kind() == Op::Kind::pl)
    return Op::curve(curve_pprod(f.pl(), g.pl()));
  return Op::curve(
      curve_pprod(lower(f, EnvelopeDir::upper, eps), lower(g, EnvelopeDir::upper, eps)));
}

OpComposeResult op_compose(const Op& f, const Op& g, double eps) {
  // analytic f with an increasing argument operator stays analytic
  if (f.kind() == Op::Kind::analytic && g.kind() == Op::Kind::power && g.power_exp() > 0.0 &&
      g.power_edge() != PowerEdge::inverted) {
    AnalyticOp r = f.an();
    r.w = r.w.precompose_root(1.0 / g.power_exp());
    return {Op::analytic(r), ComposeVerdict::maximal};
  }
  if (f.kind() == Op::Kind::pl && g.kind() == Op::Kind::pl) {
    ComposeResult cr = curve_compose(f.pl(), g.pl());
    return {Op::curve(cr.curve), cr.verdict};
  }
  if (f.kind() != Op::Kind::power && g.kind() == Op::Kind::power && g.power_exp() > 0.0 &&
      f.orientation() == Orientation::down && g.power_edge() != PowerEdge::inverted) {
    // PL alpha composed with a power argument map, via the exact-breakpoint envelope
    ArgMap w = ArgMap::power_affine(1.0, 0.0, g.power_exp());
    EnvelopeOptions opt;
    opt.eps = eps;
    MonoCurve c = envelope_compose_map(f.to_curve(EnvelopeDir::upper, eps), w, EnvelopeDir::upper, opt);
    return {Op::curve(c), check_maximal(c) ? ComposeVerdict::maximal
                                           : ComposeVerdict::monotone_not_maximal};
  }
  ComposeResult cr = curve_compose(lower(f, EnvelopeDir::upper, eps),
                                   lower(g, EnvelopeDir::upper, eps));
  return {Op::curve(cr.curve), cr.verdict};
}

Op op_min(const std::vector<Op>& family, double eps) {
  std::vector<MonoCurve> cs;
  for (const Op& f : family) cs.push_back(lower(f, EnvelopeDir::upper, eps));
  return Op::curve(curve_min(cs));
}

Op op_max(const std::vector<Op>& family, double eps) {
  std::vector<MonoCurve> cs;
  for (const Op& f : family) cs.push_back(lower(f, EnvelopeDir::upper, eps));
  return Op::curve(curve_max(cs));
}

OrderVerdict op_leq_ops(const Op& f, const Op& g, OrderMode mode, double eps, double tol) {
  if (f.kind() == Op::Kind::pl && g.kind() == Op::Kind::pl)
    return op_leq(f.pl(), g.pl(), mode, tol);
  OrderVerdict strict = op_leq(f.to_curve(EnvelopeDir::upper, eps),
                               g.to_curve(EnvelopeDir::lower, eps), mode, tol);
  if (strict.leq) return strict;
  OrderVerdict loose = op_leq(f.to_curve(EnvelopeDir::lower, eps),
                              g.to_curve(EnvelopeDir::upper, eps), mode, tol);
  if (!loose.leq) return strict;  // genuinely false
  strict.envelope_limited = true;
  return strict;
}

}  // namespace concop
