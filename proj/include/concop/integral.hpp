#pragma once

#include "concop/curve.hpp"

namespace concop {

// Integral of a maximally nonincreasing operator between a and b: exact
// trapezoid area of the single-valued selection (vertical segments have
// zero width), with +-inf detection for the divergent cases.
double curve_integral(const MonoCurve& f, double a, double b);

// q-th moment of a positive probabilistic operator: int (f^{-1})^q via the
// inverse-integral identity, with closed-form segment integration.
double curve_moment(const MonoCurve& alpha, double q);

// Hoelder moment inequality (M_q)^(1/q) <= alpha0^((p-q)/(pq)) (M_p)^(1/p).
bool check_holder(const MonoCurve& alpha, double q, double p);

}  // namespace concop
