#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "concop/curve.hpp"

namespace concop {

// Numeric utilities shared by the analytic layer.

// Root of a strictly monotone function: smallest x with fn(x) = target,
// bracket expanded from hint, bisection + secant refinement to ~1e-14 rel.
double solve_monotone(const std::function<double(double)>& fn, double target, double lo_hint,
                      double hi_hint, bool increasing);

// Adaptive Simpson quadrature.
double adaptive_quad(const std::function<double(double)>& fn, double a, double b,
                     double rel_tol = 1e-10, int max_depth = 48);

// ---------------------------------------------------------------------------
// Closed-form bases: strictly decreasing positive functions on [u_lo, inf)
// (u_lo may be -inf), tending to 0 at +inf. AnalyticOp composes a base with
// a monotone argument map into a maximally nonincreasing operator.

class SeedBase {
 public:
  virtual ~SeedBase() = default;
  virtual double eval(double u) const = 0;
  virtual double inverse(double y) const = 0;  // y in (0, sup_value)
  virtual double u_lo() const { return 0.0; }
  virtual double sup_value() const { return eval(u_lo()); }
  virtual std::string name() const = 0;
  virtual bool same(const SeedBase& other) const { return name() == other.name(); }
  // int_0^inf eval((a t^(1/q))^p) dt, when a closed form is registered
  virtual std::optional<double> power_moment(double /*p*/, double /*a*/, double /*q*/) const {
    return std::nullopt;
  }
};

using SeedPtr = std::shared_ptr<const SeedBase>;

SeedPtr seed_e1();  // e^-u on [0, inf), E1(0) completed to [1, inf)
SeedPtr seed_e2();  // 2 e^{-u^2/2} on [0, inf)
SeedPtr seed_power_decay(double q);  // u^-q on (0, inf)
SeedPtr seed_opaque(std::string name, std::function<double(double)> eval,
                    std::function<double(double)> inverse, double u_lo,
                    std::optional<double> sup = std::nullopt);

// Monotone increasing argument map u = w(t). Structured maps are
// (a t + b)^p with a > 0, p > 0 and support the closed-form rewrite rules;
// opaque maps carry forward/inverse callables.
struct ArgMap {
  bool structured = true;
  double a = 1.0, b = 0.0, p = 1.0;
  std::function<double(double)> fwd_fn, inv_fn;

  static ArgMap identity() { return {}; }
  static ArgMap affine(double a, double b);
  static ArgMap power_affine(double a, double b, double p);
  static ArgMap opaque(std::function<double(double)> fwd, std::function<double(double)> inv);

  double fwd(double t) const;
  double inv(double u) const;
  ArgMap precompose_affine(double s, double d) const;  // t -> w(s t + d)
  ArgMap precompose_root(double k) const;              // t -> w(t^(1/k)), k > 0
  bool pure_power() const { return structured && b == 0.0; }
};

// Down-oriented analytic operator: scale * base(w(t)) on [t_lo, inf), with
// the maximal completion at a finite domain edge, optionally min-capped at 1
// (which extends the domain to all of R with value 1 on the left).
struct AnalyticOp {
  SeedPtr base;
  ArgMap w;
  double scale = 1.0;
  bool cap_one = false;

  double t_lo() const;
  double value(double t) const;  // scale * base(w(t)), no cap
  Interval eval(double t) const;
  Interval domain() const;
  // smallest t with value(t) = y, y in the uncapped value range
  double solve_value(double y) const;
  bool same_shape(const AnalyticOp& o) const;  // base/scale/cap/arg equality
};

// int_0^inf min-capped value(t^(1/q)) dt; +inf when divergent.
double analytic_moment(const AnalyticOp& op, double q);

enum class EnvelopeDir { upper, lower };

struct EnvelopeOptions {
  double eps = 1e-9;
  double tail_residual = 1e-12;
  size_t max_vertices = 4000000;
};

// PL envelope of an analytic operator: dominates (upper) or is dominated by
// (lower) the operator in the pointwise resolvent order, with gap <= eps on
// the sampled window; conservative flat extension beyond it.
MonoCurve envelope_down(const AnalyticOp& op, EnvelopeDir dir, const EnvelopeOptions& opt = {});

// PL envelope of a nonincreasing PL curve composed with an increasing
// argument map (breakpoints land exactly; cells refined adaptively).
MonoCurve envelope_compose_map(const MonoCurve& alpha, const ArgMap& w, EnvelopeDir dir,
                               const EnvelopeOptions& opt = {});

}  // namespace concop
