#pragma once

#include <functional>
#include <memory>
#include <string>

#include "concop/seed.hpp"

namespace concop {

// Quantile transports between the benchmark densities: gaussian, laplace,
// q-subexponential nu_q and q-Cauchy kappa_q, with derivative bounds h(t)
// and the H_{a,b} function family.

enum class DensityKind { gaussian, laplace, subexp, cauchy };

class DensitySpec {
 public:
  static DensitySpec gaussian();
  static DensitySpec laplace();
  static DensitySpec subexp(double q);  // density q/(2 Gamma(1/q)) e^{-|t|^q}
  static DensitySpec cauchy(double q);  // density q/2 (1+|t|)^{-(q+1)}

  DensityKind kind() const { return kind_; }
  double q() const { return q_; }
  std::string name() const;
  double pdf(double t) const;
  double survival(double t) const;
  double survival_inverse(double p) const;  // quantile of the survival
  bool symmetric() const { return true; }

 private:
  DensityKind kind_ = DensityKind::gaussian;
  double q_ = 1.0;
  // nu_q survival has no closed form: quadrature cached on a monotone grid
  std::shared_ptr<const std::vector<std::pair<double, double>>> subexp_table_;
  void build_subexp_table();
};

double quantile_transport(const DensitySpec& source, const DensitySpec& target, double t);
double transport_derivative(const DensitySpec& source, const DensitySpec& target, double t);

struct HBound {
  std::function<double(double)> h;  // nondecreasing dominating function
  double h0 = 0.0;                  // plateau constant (subexponential form)
  double C = 0.0;                   // growth constant
  double exponent = 0.0;            // power-law exponent, subexponential form
};

// phi'_{source,nu_q}(t) <= C t^{1/q-1} (laplace) or C t^{2/q-1} (gaussian);
// h(t) = max(h0, C t^exponent). Constants certified by grid extremization.
HBound h_bound_subexp(double q, DensityKind source);

// phi'_{source,kappa_q}(t) <= C e^{t/q} (laplace; submultiplicative since
// C >= 1) or C (t+1)^{1+1/q} e^{t^2/2q} (gaussian).
HBound h_bound_cauchy(double q, DensityKind source);

// H_{a,b}(t) = (log t)^a t^b on [1, inf).
double h_ab(double a, double b, double t);
double h_ab_inverse(double a, double b, double u);
double h_ab_inverse_lower(double a, double b, double u);  // b^{a/b} H_{-a/b,1/b}(u)

}  // namespace concop
