#pragma once

#include <vector>

#include "concop/op.hpp"

namespace concop {

// Probabilistic operator: a maximally nonincreasing operator whose range
// lives in R+ and reaches values arbitrarily close below 1 (class M_P);
// positive probabilistic operators (M_P+) also have domain in R+.
struct ProbOp {
  Op op;
  bool positive_class = false;  // M_P+ vs M_P
  bool trivial = false;         // degenerate constructor fallback (bound = 1)
};

// Class assignment with rejection reasons.
ProbOp classify_prob_op(const Op& f);  // throws NotProbabilistic

// Set-valued empirical survival operator S_X(t) = [P(X>t), P(X>=t)].
class EmpiricalSurvival {
 public:
  explicit EmpiricalSurvival(std::vector<double> samples);  // throws EmptySamples
  Interval eval(double t) const;   // [P(X>t), P(X>=t)]
  double upper(double t) const;    // P(X >= t)
  double lower(double t) const;    // P(X > t)
  double quantile(double p) const; // smallest x with P(X <= x) >= p
  const std::vector<double>& sorted() const { return x_; }
  MonoCurve curve() const;         // down step operator, one jump per value

 private:
  std::vector<double> x_;
};

EmpiricalSurvival survival_from_samples(std::vector<double> samples);

}  // namespace concop
