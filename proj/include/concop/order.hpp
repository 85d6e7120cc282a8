#pragma once

#include <optional>

#include "concop/curve.hpp"

namespace concop {

// Pointwise resolvent order and its equivalent characterizations.

enum class OrderMode { resolvent, intermediate, strong, weak };

struct OrderVerdict {
  bool leq = false;
  std::optional<double> witness;  // a point where the characterization fails
  bool tight = false;             // equality within tolerance somewhere
  bool envelope_limited = false;  // set by the Op layer when envelopes decide
};

OrderVerdict op_leq(const MonoCurve& f, const MonoCurve& g,
                    OrderMode mode = OrderMode::resolvent, double tol = 1e-9);

// Weak-characterization check of S <= alpha using the sufficient condition
// P(X > t)+ meets alpha(t) at every probe point.
OrderVerdict survival_leq(const MonoCurve& survival, const MonoCurve& alpha, double tol = 1e-9);

}  // namespace concop
