#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "concop/rng.hpp"
#include "concop/transport.hpp"

using namespace concop;

TEST_CASE("density closed forms") {
  DensitySpec lap = DensitySpec::laplace();
  CHECK(lap.survival(0.0) == doctest::Approx(0.5));
  CHECK(lap.survival(2.0) == doctest::Approx(0.5 * std::exp(-2.0)));
  CHECK(lap.survival(-2.0) == doctest::Approx(1.0 - 0.5 * std::exp(-2.0)));

  DensitySpec c3 = DensitySpec::cauchy(3.0);
  CHECK(c3.survival(1.0) == doctest::Approx(0.5 / 8.0));
  CHECK(c3.pdf(1.0) == doctest::Approx(1.5 / 16.0));

  DensitySpec g = DensitySpec::gaussian();
  CHECK(g.survival(0.0) == doctest::Approx(0.5));
  CHECK(g.survival(1.96) == doctest::Approx(0.0249979).epsilon(1e-4));

  // subexp: density integrates to 1 and the cached survival matches fresh
  // quadrature
  DensitySpec s = DensitySpec::subexp(0.5);
  double total = adaptive_quad([&](double t) { return s.pdf(t); }, -2100.0, 2100.0, 1e-10);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
  for (double t : {0.1, 0.5, 1.0, 3.0, 7.0}) {
    double direct = adaptive_quad([&](double u) { return s.pdf(u); }, t, 2100.0, 1e-12);
    CHECK(s.survival(t) == doctest::Approx(direct).epsilon(1e-7));
  }
}

TEST_CASE("quantile transport closed forms") {
  DensitySpec lap = DensitySpec::laplace();
  DensitySpec c2 = DensitySpec::cauchy(2.0);
  // phi_{nu1,kappa_q}(t) = e^{t/q} - 1
  for (double t : {0.0, 0.5, 2.0, 4.0}) {
    CHECK(quantile_transport(lap, c2, t) == doctest::Approx(std::exp(t / 2.0) - 1.0));
  }
  CHECK(quantile_transport(lap, c2, 2.0) == doctest::Approx(std::exp(1.0) - 1.0));
  // identity transport
  CHECK(quantile_transport(lap, lap, 1.3) == 1.3);
  // median to median
  CHECK(quantile_transport(DensitySpec::gaussian(), c2, 0.0) == 0.0);
}

TEST_CASE("transport derivative matches the quantile calculus and finite differences") {
  DensitySpec lap = DensitySpec::laplace();
  DensitySpec c2 = DensitySpec::cauchy(2.0);
  // phi'_{nu1,kappa_q}(t) = (1/q) e^{t/q}
  for (double t : {0.2, 1.0, 3.0}) {
    CHECK(transport_derivative(lap, c2, t) == doctest::Approx(0.5 * std::exp(t / 2.0)));
  }
  // central finite differences, 1e-6 relative, for several pairs
  auto fd_check = [](const DensitySpec& a, const DensitySpec& b) {
    for (int i = 1; i <= 40; ++i) {
      double t = 0.25 * i;
      double h = 1e-5 * std::max(1.0, t);
      double fd = (quantile_transport(a, b, t + h) - quantile_transport(a, b, t - h)) / (2 * h);
      double an = transport_derivative(a, b, t);
      CHECK(an == doctest::Approx(fd).epsilon(1e-6));
    }
  };
  fd_check(lap, c2);
  fd_check(DensitySpec::gaussian(), DensitySpec::cauchy(3.0));
  fd_check(lap, DensitySpec::subexp(0.5));
}

TEST_CASE("h bounds dominate the transport derivative") {
  for (DensityKind src : {DensityKind::laplace, DensityKind::gaussian}) {
    HBound hb = h_bound_subexp(0.5, src);
    DensitySpec s = src == DensityKind::laplace ? DensitySpec::laplace()
                                                : DensitySpec::gaussian();
    DensitySpec t = DensitySpec::subexp(0.5);
    CHECK(hb.exponent ==
          doctest::Approx(src == DensityKind::laplace ? 1.0 : 3.0));
    for (int i = 1; i <= 400; ++i) {
      double x = 20.0 * i / 400.0;
      CHECK(hb.h(x) >= transport_derivative(s, t, x) * (1.0 - 1e-9));
    }
  }
  for (DensityKind src : {DensityKind::laplace, DensityKind::gaussian}) {
    HBound hb = h_bound_cauchy(2.0, src);
    DensitySpec s = src == DensityKind::laplace ? DensitySpec::laplace()
                                                : DensitySpec::gaussian();
    DensitySpec t = DensitySpec::cauchy(2.0);
    for (int i = 1; i <= 400; ++i) {
      double x = 20.0 * i / 400.0;
      CHECK(hb.h(x) >= transport_derivative(s, t, x) * (1.0 - 1e-9));
    }
    if (src == DensityKind::laplace) {
      CHECK(hb.C >= 1.0);
      // submultiplicativity h(x) h(y) >= h(x+y)
      for (double x : {0.0, 1.0, 3.0, 7.0})
        for (double y : {0.0, 2.0, 5.0}) CHECK(hb.h(x) * hb.h(y) >= hb.h(x + y) * (1 - 1e-12));
    }
  }
}

TEST_CASE("H_ab family and its inverse bound") {
  CHECK(h_ab(1.0, 1.0, std::exp(2.0)) == doctest::Approx(2.0 * std::exp(2.0)));
  // equality at u = e^b
  for (auto [a, b] : {std::pair{1.0, 1.0}, {2.0, 0.2}, {1.0, 0.5}}) {
    double u0 = std::exp(b);
    CHECK(h_ab_inverse(a, b, u0) == doctest::Approx(h_ab_inverse_lower(a, b, u0)).epsilon(1e-9));
    // dominance on a log grid up to 1e12
    for (double u = u0; u <= 1e12; u *= 3.7) {
      CHECK(h_ab_inverse(a, b, u) >= h_ab_inverse_lower(a, b, u) * (1.0 - 1e-9));
    }
  }
}

TEST_CASE("push-forward sampling matches the target survival within DKW slack") {
  const size_t N = 100000;
  double slack = std::sqrt(std::log(2.0 / 1e-3) / (2.0 * N));
  for (DensitySpec tgt : {DensitySpec::subexp(0.5), DensitySpec::cauchy(1.0),
                          DensitySpec::cauchy(2.0), DensitySpec::cauchy(3.0)}) {
    std::vector<double> xs = sample_iid(tgt, N, 42);
    std::sort(xs.begin(), xs.end());
    for (double p : {0.2, 0.4, 0.6, 0.8, 0.95, 0.999}) {
      double t = xs[static_cast<size_t>(p * (N - 1))];
      size_t gt = xs.end() - std::upper_bound(xs.begin(), xs.end(), t);
      double emp = static_cast<double>(gt) / N;
      CHECK(std::abs(emp - tgt.survival(t)) <= slack);
    }
  }
}

TEST_CASE("sampler sanity: laplace mean and seed repeatability") {
  std::vector<double> a = sample_iid(DensitySpec::laplace(), 100000, 7);
  std::vector<double> b = sample_iid(DensitySpec::laplace(), 100000, 7);
  CHECK(a == b);
  double mean = 0.0;
  for (double x : a) mean += x;
  mean /= static_cast<double>(a.size());
  CHECK(std::abs(mean) < 3.0 * std::sqrt(2.0) / std::sqrt(100000.0));
}

TEST_CASE("subexponential survival envelope constants") {
  // A1 (t+1)^{1-q} e^{-t^q} <= S(t) <= A2 (t+1)^{1-q} e^{-t^q} on [0, 30]
  double q = 0.5;
  DensitySpec s = DensitySpec::subexp(q);
  auto shape = [q](double t) { return std::pow(t + 1.0, 1.0 - q) * std::exp(-std::pow(t, q)); };
  double a1 = kInf, a2 = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    double t = 30.0 * i / 10000.0;
    double r = s.survival(t) / shape(t);
    a1 = std::min(a1, r);
    a2 = std::max(a2, r);
  }
  CHECK(a1 > 0.0);
  CHECK(a2 < kInf);
  // the extremized constants bracket the survival on a finer grid
  for (int i = 0; i <= 3000; ++i) {
    double t = 30.0 * (i + 0.37) / 3000.0;
    double v = s.survival(t);
    CHECK(v >= a1 * shape(t) * (1.0 - 1e-6));
    CHECK(v <= a2 * shape(t) * (1.0 + 1e-6));
  }
}

TEST_CASE("gaussian hazard bracket") {
  DensitySpec g = DensitySpec::gaussian();
  for (int i = 1; i <= 2000; ++i) {
    double t = 8.0 * i / 2000.0;
    double hazard = g.pdf(t) / g.survival(t);
    CHECK(hazard >= 1.0 / (2.0 * std::sqrt(2.0 * M_PI)));
    CHECK(hazard <= t + 1.0 / t);
  }
}
