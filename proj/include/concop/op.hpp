#pragma once

#include <vector>

#include "concop/curve_ops.hpp"
#include "concop/order.hpp"
#include "concop/seed.hpp"

namespace concop {

// User-facing operator value. Piecewise-linear curves are the exact kernel
// currency; analytic operators (closed forms behind a decreasing base and a
// monotone argument map) stay symbolic as long as the closed-form rewrite
// rules apply and are lowered to certified PL envelopes otherwise. Power
// operators id^a carry the convention id^a(0) = R_- for a > 0.

enum class PowerEdge { convention, inverted, modulus };

class Op {
 public:
  enum class Kind { pl, analytic, power };

  static Op curve(MonoCurve c);
  static Op analytic(AnalyticOp a);
  static Op power(double a, PowerEdge edge = PowerEdge::convention);

  Kind kind() const { return kind_; }
  const MonoCurve& pl() const { return pl_; }
  const AnalyticOp& an() const { return an_; }
  double power_exp() const { return power_a_; }
  PowerEdge power_edge() const { return power_edge_; }

  bool is_empty() const { return kind_ == Kind::pl && pl_.empty(); }
  Orientation orientation() const;
  bool maximal() const;
  Interval domain() const;
  Interval range() const;
  Interval eval(double t) const;

  MonoCurve to_curve(EnvelopeDir dir = EnvelopeDir::upper, double eps = 1e-9) const;
  MonoCurve to_curve_opts(EnvelopeDir dir, const EnvelopeOptions& opt,
                          Interval window = Interval::empty()) const;

 private:
  Kind kind_ = Kind::pl;
  MonoCurve pl_ = MonoCurve::empty_op(Orientation::up);
  AnalyticOp an_;
  double power_a_ = 1.0;
  PowerEdge power_edge_ = PowerEdge::convention;
};

// Named operators.
Op named_e1();
Op named_e2();
Op named_incr(double delta);
Op named_incr_pos(double delta);
Op named_power(double a);  // BadParameter for a == 0
Op named_const(double c, Orientation o = Orientation::up);
Op named_const_inv(double c, Orientation o = Orientation::up);
Op named_modulus_power(double k);  // omega(t) = t^k on R+, omega(0) = {0}
Op named_empty(Orientation o = Orientation::up);

// Algebra. Closed-form rewrite rules (parallel sums/products with increment
// operators, translation and homothety pull-outs, identical operands, pure
// power families under a shared base) are applied first; otherwise operands
// are lowered to PL envelopes (default upper, eps) and the exact PL kernel
// runs.
Op op_add(const Op& f, const Op& g, double eps = 1e-9);
Op op_mul(const Op& f, const Op& g, double eps = 1e-9);
Op op_parallel_sum(const Op& f, const Op& g, double eps = 1e-9);
Op op_parallel_product(const Op& f, const Op& g, double eps = 1e-9);

struct OpComposeResult {
  Op op;
  ComposeVerdict verdict;
};
OpComposeResult op_compose(const Op& f, const Op& g, double eps = 1e-9);

Op op_min(const std::vector<Op>& family, double eps = 1e-9);
Op op_max(const std::vector<Op>& family, double eps = 1e-9);

Op op_invert(const Op& f);
Op op_restrict(const Op& f, const Interval& a, double eps = 1e-9);
Op op_shift_arg(const Op& f, double delta, double eps = 1e-9);   // f o (id + delta)
Op op_scale_arg(const Op& f, double lambda, double eps = 1e-9);  // f o (lambda id)
Op op_scale_range(const Op& f, double c, double eps = 1e-9);     // c * f
Op op_cap_one(const Op& f, double eps = 1e-9);                   // min(f, 1)

// Order on Op values: exact on PL pairs; with analytic operands the check
// runs on certified envelopes in the conservative direction.
OrderVerdict op_leq_ops(const Op& f, const Op& g, OrderMode mode = OrderMode::resolvent,
                        double eps = 1e-9, double tol = 1e-9);

// Probabilistic-operator classification (classes M_P and M_P+).
bool is_prob_op(const Op& f);
bool is_prob_op_positive(const Op& f);

std::optional<double> detect_incr(const MonoCurve& c);      // Incr_delta shape
std::optional<double> detect_incr_pos(const MonoCurve& c);  // Incr restricted to R+

}  // namespace concop
