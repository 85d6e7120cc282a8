#include "concop/prob.hpp"

#include <algorithm>
#include <cmath>

namespace concop {

ProbOp classify_prob_op(const Op& f) {
  if (f.is_empty()) throw NotProbabilistic("classify: empty operator");
  if (f.orientation() != Orientation::down)
    throw NotProbabilistic("classify: operator is not nonincreasing");
  if (!f.maximal()) throw NotProbabilistic("classify: operator is not maximal");
  Interval r = f.range();
  if (r.lo < 0.0) throw NotProbabilistic("classify: range leaves R+");
  if (r.hi < 1.0) throw NotProbabilistic("classify: sup of range below 1");
  if (r.lo >= 1.0) throw NotProbabilistic("classify: no range values below 1");
  ProbOp p;
  p.op = f;
  p.positive_class = f.domain().lo >= 0.0;
  return p;
}

EmpiricalSurvival::EmpiricalSurvival(std::vector<double> samples) : x_(std::move(samples)) {
  if (x_.empty()) throw EmptySamples("empirical survival: no samples");
  std::sort(x_.begin(), x_.end());
}

double EmpiricalSurvival::lower(double t) const {
  size_t gt = x_.end() - std::upper_bound(x_.begin(), x_.end(), t);
  return static_cast<double>(gt) / static_cast<double>(x_.size());
}

double EmpiricalSurvival::upper(double t) const {
  size_t ge = x_.end() - std::lower_bound(x_.begin(), x_.end(), t);
  return static_cast<double>(ge) / static_cast<double>(x_.size());
}

Interval EmpiricalSurvival::eval(double t) const {
  return Interval::make(lower(t), upper(t), true, true);
}

double EmpiricalSurvival::quantile(double p) const {
  if (p <= 0.0) return x_.front();
  if (p >= 1.0) return x_.back();
  size_t k = static_cast<size_t>(std::ceil(p * static_cast<double>(x_.size())));
  k = std::min(std::max<size_t>(k, 1), x_.size());
  return x_[k - 1];
}

MonoCurve EmpiricalSurvival::curve() const {
  const double n = static_cast<double>(x_.size());
  std::vector<Vertex> v;
  v.reserve(2 * x_.size());
  size_t i = 0;
  while (i < x_.size()) {
    size_t j = i;
    while (j < x_.size() && x_[j] == x_[i]) ++j;
    double before = static_cast<double>(x_.size() - i) / n;  // P(X >= x_i)
    double after = static_cast<double>(x_.size() - j) / n;   // P(X > x_i)
    v.push_back({x_[i], before});
    v.push_back({x_[i], after});
    i = j;
  }
  return MonoCurve::build(Orientation::down, v, Ray::horizontal(), Ray::horizontal());
}

EmpiricalSurvival survival_from_samples(std::vector<double> samples) {
  return EmpiricalSurvival(std::move(samples));
}

}  // namespace concop
