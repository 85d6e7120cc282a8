#pragma once

#include <vector>

#include "concop/curve.hpp"

namespace concop {

// Binary and unary operations on piecewise-linear monotone curves.
// Sum, parallel sum, composition, min/max, shifts and scalings are exact on
// this representation; the pointwise product is piecewise quadratic and is
// subdivided to a relative deviation bound (mul_rel_dev) before emission.

struct MulOptions {
  double rel_dev = 1e-11;     // chord deviation bound, relative to local value
  size_t max_extra = 200000;  // subdivision budget across the whole curve
};

MonoCurve curve_add(const MonoCurve& f, const MonoCurve& g);
MonoCurve curve_mul(const MonoCurve& f, const MonoCurve& g, const MulOptions& opt = {});

MonoCurve curve_psum(const MonoCurve& f, const MonoCurve& g);
MonoCurve curve_pprod(const MonoCurve& f, const MonoCurve& g, const MulOptions& opt = {});

enum class ComposeVerdict { maximal, monotone_not_maximal, not_monotone };

struct ComposeResult {
  MonoCurve curve;  // meaningful unless verdict == not_monotone
  ComposeVerdict verdict = ComposeVerdict::not_monotone;
};

// Relation composition f(g(.)) traced on graphs.
ComposeResult curve_compose(const MonoCurve& f, const MonoCurve& g);

MonoCurve curve_min(const std::vector<MonoCurve>& family);  // resolvent route
MonoCurve curve_max(const std::vector<MonoCurve>& family);

MonoCurve curve_shift_arg(const MonoCurve& f, double delta);   // f o (id + delta)
MonoCurve curve_scale_arg(const MonoCurve& f, double lambda);  // f o (lambda id), lambda > 0
MonoCurve curve_scale_range(const MonoCurve& f, double c);     // c * f, c > 0
MonoCurve curve_cap_one(const MonoCurve& f);                   // min(f, const 1), down only

MonoCurve const_curve(Orientation o, double c);
MonoCurve const_inverse_curve(Orientation o, double c);  // dom {c}, image R
MonoCurve incr_curve(double delta);                      // 1 before delta, 0 after (down)
MonoCurve incr_pos_curve(double delta);                  // Incr restricted to R+, delta >= 0
MonoCurve line_curve(double slope, double intercept);    // y = slope x + intercept

}  // namespace concop
