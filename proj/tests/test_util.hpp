#pragma once

#include <random>
#include <vector>

#include "concop/curve.hpp"
#include "concop/curve_ops.hpp"

namespace concop::testutil {

// Random maximal PL operators for property tests. Shapes match the
// hypotheses of the propositions they exercise.

using Rng = std::mt19937_64;

inline double uni(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

// Maximal nondecreasing operator: random walk of sloped/vertical/horizontal
// pieces with random unbounded rays on both sides.
inline MonoCurve random_up_maximal(Rng& rng, int segments = 6) {
  double x = uni(rng, -3.0, 0.0), y = uni(rng, -3.0, 0.0);
  std::vector<Vertex> v{{x, y}};
  for (int i = 0; i < segments; ++i) {
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
      case 0: x += uni(rng, 0.1, 1.5); y += uni(rng, 0.1, 1.5); break;
      case 1: x += uni(rng, 0.1, 1.5); break;
      case 2: y += uni(rng, 0.1, 1.5); break;
    }
    v.push_back({x, y});
  }
  auto ray = [&]() {
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
      case 0: return Ray::horizontal();
      case 1: return Ray::vertical();
      default: return Ray::sloped(uni(rng, 0.2, 3.0));
    }
  };
  return MonoCurve::build(Orientation::up, v, ray(), ray());
}

// Maximal nonincreasing probabilistic-style operator (class M_P):
// nonincreasing from a level above 1 down to 0, domain all of R.
inline MonoCurve random_prob(Rng& rng, int segments = 5) {
  double x = uni(rng, -1.0, 0.5);
  double y = uni(rng, 1.0, 2.0);
  std::vector<Vertex> v{{x, y}};
  for (int i = 0; i < segments; ++i) {
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
      case 0: x += uni(rng, 0.1, 1.2); y = std::max(0.0, y - uni(rng, 0.05, 0.5)); break;
      case 1: x += uni(rng, 0.1, 1.2); break;
      case 2: y = std::max(0.0, y - uni(rng, 0.05, 0.5)); break;
    }
    v.push_back({x, y});
  }
  if (v.back().y > 0.0) v.push_back({v.back().x + uni(rng, 0.1, 1.0), 0.0});
  return MonoCurve::build(Orientation::down, v, Ray::horizontal(), Ray::horizontal());
}

// Positive-quadrant variant (graph in R+^2): positive support and values,
// the class where the inverse-integral identity lives.
inline MonoCurve random_prob_pos(Rng& rng, int segments = 5) {
  double x = uni(rng, 0.0, 0.6);
  double y = uni(rng, 1.0, 2.0);
  std::vector<Vertex> v{{x, y}};
  for (int i = 0; i < segments; ++i) {
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
      case 0: x += uni(rng, 0.1, 1.2); y = std::max(0.0, y - uni(rng, 0.05, 0.5)); break;
      case 1: x += uni(rng, 0.1, 1.2); break;
      case 2: y = std::max(0.0, y - uni(rng, 0.05, 0.5)); break;
    }
    v.push_back({x, y});
  }
  if (v.back().y > 0.0) v.push_back({v.back().x + uni(rng, 0.1, 1.0), 0.0});
  return MonoCurve::build(Orientation::down, v, Ray::horizontal(), Ray::horizontal());
}

// Maximal nonincreasing staircase in M_P+: domain [0, inf), vertical ray at
// 0, steps down to 0, flat at 0 afterwards. Parallel products of these stay
// piecewise linear exactly.
inline MonoCurve random_staircase_pos(Rng& rng, int steps = 4) {
  double x = 0.0;
  double y = uni(rng, 1.0, 2.5);
  std::vector<Vertex> v{{0.0, y}};
  for (int i = 0; i < steps; ++i) {
    x += uni(rng, 0.2, 1.5);
    double ny = i + 1 == steps ? 0.0 : std::max(0.0, y - uni(rng, 0.1, 0.8));
    v.push_back({x, y});
    v.push_back({x, ny});
    y = ny;
    if (y == 0.0) break;
  }
  if (v.back().y > 0.0) {
    x += uni(rng, 0.2, 1.0);
    v.push_back({x, v.back().y});
    v.push_back({x, 0.0});
  }
  return MonoCurve::build(Orientation::down, v, Ray::vertical(), Ray::horizontal());
}

// Down operator with full range R (sloped rays both sides), suitable as the
// outer operator in composition distributivity tests.
inline MonoCurve random_down_full_range(Rng& rng, int segments = 4) {
  double x = uni(rng, -2.0, 0.0), y = uni(rng, 0.0, 2.0);
  std::vector<Vertex> v{{x, y}};
  for (int i = 0; i < segments; ++i) {
    switch (std::uniform_int_distribution<int>(0, 1)(rng)) {
      case 0: x += uni(rng, 0.1, 1.2); y -= uni(rng, 0.1, 1.2); break;
      case 1: x += uni(rng, 0.1, 1.2); break;
    }
    v.push_back({x, y});
  }
  return MonoCurve::build(Orientation::down, v, Ray::sloped(uni(rng, 0.3, 2.0)),
                          Ray::sloped(uni(rng, 0.3, 2.0)));
}

}  // namespace concop::testutil
