#include "concop/transport.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace concop {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

double gauss_pdf(double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * M_PI); }
double gauss_survival(double t) { return 0.5 * std::erfc(t / kSqrt2); }

}  // namespace

DensitySpec DensitySpec::gaussian() {
  DensitySpec d;
  d.kind_ = DensityKind::gaussian;
  return d;
}

DensitySpec DensitySpec::laplace() {
  DensitySpec d;
  d.kind_ = DensityKind::laplace;
  d.q_ = 1.0;
  return d;
}

DensitySpec DensitySpec::subexp(double q) {
  if (!(q > 0.0)) throw BadParameter("subexp density: q must be positive");
  DensitySpec d;
  d.kind_ = DensityKind::subexp;
  d.q_ = q;
  d.build_subexp_table();
  return d;
}

DensitySpec DensitySpec::cauchy(double q) {
  if (!(q > 0.0)) throw BadParameter("cauchy density: q must be positive");
  DensitySpec d;
  d.kind_ = DensityKind::cauchy;
  d.q_ = q;
  return d;
}

std::string DensitySpec::name() const {
  switch (kind_) {
    case DensityKind::gaussian: return "gaussian";
    case DensityKind::laplace: return "laplace";
    case DensityKind::subexp: return "subexp(" + std::to_string(q_) + ")";
    case DensityKind::cauchy: return "cauchy(" + std::to_string(q_) + ")";
  }
  return "?";
}

double DensitySpec::pdf(double t) const {
  double a = std::abs(t);
  switch (kind_) {
    case DensityKind::gaussian: return gauss_pdf(t);
    case DensityKind::laplace: return 0.5 * std::exp(-a);
    case DensityKind::subexp:
      return q_ / (2.0 * std::tgamma(1.0 / q_)) * std::exp(-std::pow(a, q_));
    case DensityKind::cauchy: return 0.5 * q_ * std::pow(1.0 + a, -(q_ + 1.0));
  }
  return 0.0;
}

void DensitySpec::build_subexp_table() {
  // anchors for the quadrature-backed survival: S(0) = 1/2, then the tail
  // integral is accumulated cell by cell on a log-spaced grid
  double T = std::pow(45.0, 1.0 / q_);
  std::vector<std::pair<double, double>> tab;
  tab.reserve(1024);
  tab.push_back({0.0, 0.5});
  double prev_t = 0.0, acc = 0.5;
  const int n = 1000;
  for (int i = 0; i <= n; ++i) {
    double t = 1e-6 * std::pow(T / 1e-6, static_cast<double>(i) / n);
    acc -= adaptive_quad([this](double u) { return pdf(u); }, prev_t, t, 1e-12);
    acc = std::max(acc, 0.0);
    tab.push_back({t, acc});
    prev_t = t;
  }
  subexp_table_ = std::make_shared<const std::vector<std::pair<double, double>>>(std::move(tab));
}

double DensitySpec::survival(double t) const {
  if (t < 0.0) return 1.0 - survival(-t);
  switch (kind_) {
    case DensityKind::gaussian: return gauss_survival(t);
    case DensityKind::laplace: return 0.5 * std::exp(-t);
    case DensityKind::cauchy: return 0.5 * std::pow(1.0 + t, -q_);
    case DensityKind::subexp: {
      const auto& tab = *subexp_table_;
      if (t >= tab.back().first) return 0.0;
      auto it = std::upper_bound(tab.begin(), tab.end(), t,
                                 [](double x, const auto& e) { return x < e.first; });
      const auto& anchor = *(it - 1);
      double s = anchor.second -
                 adaptive_quad([this](double u) { return pdf(u); }, anchor.first, t, 1e-12);
      return std::max(s, 0.0);
    }
  }
  return 0.0;
}

double DensitySpec::survival_inverse(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw OutOfSupport("survival_inverse: p must be in (0,1)");
  switch (kind_) {
    case DensityKind::laplace:
      return p <= 0.5 ? -std::log(2.0 * p) : std::log(2.0 * (1.0 - p));
    case DensityKind::cauchy: {
      if (p <= 0.5) return std::pow(2.0 * p, -1.0 / q_) - 1.0;
      return -(std::pow(2.0 * (1.0 - p), -1.0 / q_) - 1.0);
    }
    default:
      return solve_monotone([this](double t) { return survival(t); }, p, -1.0, 1.0, false);
  }
}

double quantile_transport(const DensitySpec& source, const DensitySpec& target, double t) {
  if (source.kind() == target.kind() && source.q() == target.q()) return t;
  if (t == 0.0) return 0.0;  // symmetric median maps to the symmetric median
  if (t < 0.0) return -quantile_transport(source, target, -t);
  double s = source.survival(t);
  if (!(s > 0.0)) throw OutOfSupport("quantile_transport: source survival vanished");
  if (target.kind() == DensityKind::cauchy)
    return std::pow(2.0 * s, -1.0 / target.q()) - 1.0;
  return target.survival_inverse(s);
}

double transport_derivative(const DensitySpec& source, const DensitySpec& target, double t) {
  double phi = quantile_transport(source, target, t);
  double num = source.pdf(t);
  double den = target.pdf(phi);
  if (!(den > 0.0)) throw ZeroDensity("transport_derivative: target density vanished");
  return num / den;
}

HBound h_bound_subexp(double q, DensityKind source) {
  if (!(q > 0.0 && q < 1.0)) throw BadParameter("h_bound_subexp: q must be in (0,1)");
  if (source != DensityKind::laplace && source != DensityKind::gaussian)
    throw BadParameter("h_bound_subexp: source must be laplace or gaussian");
  DensitySpec src = source == DensityKind::laplace ? DensitySpec::laplace()
                                                   : DensitySpec::gaussian();
  DensitySpec tgt = DensitySpec::subexp(q);
  double exponent = (source == DensityKind::laplace ? 1.0 : 2.0) / q - 1.0;

  const double t0 = 1.0, T = 30.0;
  const int n = 10000;
  double h0 = 0.0, C = 0.0, swing = 1.0, prev_r = 0.0;
  for (int i = 1; i <= n; ++i) {
    double t = T * static_cast<double>(i) / n;
    double d = transport_derivative(src, tgt, t);
    if (t <= t0) {
      h0 = std::max(h0, d);
    } else {
      double r = d / std::pow(t, exponent);
      C = std::max(C, r);
      if (prev_r > 0.0) swing = std::max(swing, std::max(r / prev_r, prev_r / r));
      prev_r = r;
    }
  }
  // inflate by the worst adjacent-sample variation so the bound holds
  // between grid nodes as well
  h0 *= swing * (1.0 + 1e-9);
  C *= swing * (1.0 + 1e-9);
  HBound b;
  b.h0 = h0;
  b.C = C;
  b.exponent = exponent;
  b.h = [h0, C, exponent](double t) { return std::max(h0, C * std::pow(std::max(t, 0.0), exponent)); };
  return b;
}

HBound h_bound_cauchy(double q, DensityKind source) {
  if (!(q > 0.0)) throw BadParameter("h_bound_cauchy: q must be positive");
  if (source != DensityKind::laplace && source != DensityKind::gaussian)
    throw BadParameter("h_bound_cauchy: source must be laplace or gaussian");
  DensitySpec src = source == DensityKind::laplace ? DensitySpec::laplace()
                                                   : DensitySpec::gaussian();
  DensitySpec tgt = DensitySpec::cauchy(q);

  const double T = 30.0;
  const int n = 10000;
  HBound b;
  if (source == DensityKind::laplace) {
    // phi'(t) = (1/q) e^{t/q} exactly; C >= 1 keeps h submultiplicative
    double sup = 0.0, swing = 1.0, prev_r = 0.0;
    for (int i = 0; i <= n; ++i) {
      double t = T * static_cast<double>(i) / n;
      double r = transport_derivative(src, tgt, t) / std::exp(t / q);
      sup = std::max(sup, r);
      if (prev_r > 0.0) swing = std::max(swing, std::max(r / prev_r, prev_r / r));
      prev_r = r;
    }
    double C = std::max(1.0, sup * swing * (1.0 + 1e-9));
    b.C = C;
    b.h = [C, q](double t) { return C * std::exp(std::max(t, 0.0) / q); };
  } else {
    double sup = 0.0, swing = 1.0, prev_r = 0.0;
    for (int i = 0; i <= n; ++i) {
      double t = T * static_cast<double>(i) / n;
      double growth = std::pow(t + 1.0, 1.0 + 1.0 / q) * std::exp(t * t / (2.0 * q));
      double r = transport_derivative(src, tgt, t) / growth;
      sup = std::max(sup, r);
      if (prev_r > 0.0) swing = std::max(swing, std::max(r / prev_r, prev_r / r));
      prev_r = r;
    }
    double C = sup * swing * (1.0 + 1e-9);
    b.C = C;
    b.h = [C, q](double t) {
      double u = std::max(t, 0.0);
      return C * std::pow(u + 1.0, 1.0 + 1.0 / q) * std::exp(u * u / (2.0 * q));
    };
  }
  return b;
}

double h_ab(double a, double b, double t) {
  if (t < 1.0) throw OutOfDomain("H_ab: t must be >= 1");
  return std::pow(std::log(t), a) * std::pow(t, b);
}

double h_ab_inverse(double a, double b, double u) {
  if (!(a > 0.0 && b > 0.0)) throw BadParameter("H_ab inverse: need a, b > 0");
  if (u < 0.0) throw OutOfDomain("H_ab inverse: u must be >= 0");
  if (u == 0.0) return 1.0;
  return solve_monotone([a, b](double t) { return h_ab(a, b, std::max(t, 1.0)); }, u, 1.0, 2.0,
                        true);
}

double h_ab_inverse_lower(double a, double b, double u) {
  if (!(a > 0.0 && b > 0.0)) throw BadParameter("H_ab inverse bound: need a, b > 0");
  if (u < std::exp(b)) throw OutOfDomain("H_ab inverse bound: u must be >= e^b");
  return std::pow(b, a / b) * std::pow(std::log(u), -a / b) * std::pow(u, 1.0 / b);
}

}  // namespace concop
