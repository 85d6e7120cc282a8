#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "concop/interval.hpp"

namespace concop {

// Exact piecewise-linear representation of a monotone set-valued operator
// on the real line. The graph is a connected monotone polyline plus up to
// two unbounded rays; vertical segments encode set-valued images.
//
// Orientation up: x and y nondecreasing along the vertex sequence.
// Orientation down: x nondecreasing, y nonincreasing.
//
// Ray semantics at the first vertex (x0, y0), walking away from the
// polyline (x decreasing):
//   horizontal : { (x, y0) : x <= x0 }
//   vertical   : { (x0, y) : y <= y0 }   (up)    / y >= y0 (down)
//   sloped m>0 : { (x0 - t, y0 -+ m t) : t >= 0 }  (- for up, + for down)
//   none       : the curve simply stops (operator cannot be maximal).
// Symmetrically at the last vertex with x increasing.
//
// Canonical form: consecutive duplicate vertices and collinear adjacent
// segments are merged (relative slope tolerance 1e-12), as are leading or
// trailing segments collinear with their ray. Curve equality is decidable
// on canonical forms.

enum class Orientation { up, down };

inline Orientation flip(Orientation o) {
  return o == Orientation::up ? Orientation::down : Orientation::up;
}

enum class RayKind { none, horizontal, vertical, sloped };

struct Ray {
  RayKind kind = RayKind::none;
  double slope = 0.0;  // positive magnitude, meaningful for sloped only

  static Ray none() { return {RayKind::none, 0.0}; }
  static Ray horizontal() { return {RayKind::horizontal, 0.0}; }
  static Ray vertical() { return {RayKind::vertical, 0.0}; }
  static Ray sloped(double m) { return {RayKind::sloped, m}; }
  bool unbounded_x() const { return kind == RayKind::horizontal || kind == RayKind::sloped; }
  bool unbounded_y() const { return kind == RayKind::vertical || kind == RayKind::sloped; }
};

struct Vertex {
  double x = 0.0, y = 0.0;
};

class MonoCurve {
 public:
  MonoCurve() = default;

  static MonoCurve empty_op(Orientation o);
  // Canonicalizes and validates; throws MonotonicityViolation naming the
  // offending vertex pair.
  static MonoCurve build(Orientation o, std::vector<Vertex> vs, Ray left, Ray right);

  bool empty() const { return empty_; }
  bool maximal() const { return maximal_; }
  Orientation orientation() const { return orient_; }
  const std::vector<Vertex>& vertices() const { return v_; }
  const Ray& left_ray() const { return left_; }
  const Ray& right_ray() const { return right_; }

  Interval domain() const;
  Interval range() const;
  Interval eval(double x) const;

  // For single-valued curves (resolvents): the unique y at x.
  double eval_scalar(double x) const;

 private:
  Orientation orient_ = Orientation::up;
  std::vector<Vertex> v_;
  Ray left_, right_;
  bool empty_ = true;
  bool maximal_ = false;

  void canonicalize();
  void validate() const;
  friend MonoCurve invert(const MonoCurve&);
};

// Kernel operations (module monotone_graph).
bool check_maximal(const MonoCurve& f);  // dom/ran criterion, agrees with Minty
MonoCurve invert(const MonoCurve& f);
MonoCurve restrict_to(const MonoCurve& f, const Interval& a);
MonoCurve resolvent_of(const MonoCurve& f);                    // throws NotMaximal
MonoCurve from_resolvent(const MonoCurve& j, Orientation o);   // throws NotAResolvent
std::pair<double, double> minty_param(const MonoCurve& f, double x);

// Functional equality of graphs at mixed absolute/relative tolerance.
bool curves_equal(const MonoCurve& a, const MonoCurve& b, double tol = 1e-9);

// y-interval of the two rays and the polyline at a given x; shared by the
// kernel ops. Exposed for tests.
std::vector<double> breakpoints(const MonoCurve& f);

}  // namespace concop
