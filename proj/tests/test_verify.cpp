#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "concop/verify.hpp"

using namespace concop;

TEST_CASE("dkw slack formula") {
  CHECK(dkw_slack(100000, 1e-3) == doctest::Approx(std::sqrt(std::log(2000.0) / 2e5)));
  CHECK(dkw_slack(100000, 1e-3) == doctest::Approx(0.00616).epsilon(1e-2));
  CHECK(dkw_slack(1u << 30, 1e-3) < 1e-4);
  CHECK_THROWS_AS(dkw_slack(0, 0.5), BadParameter);
}

TEST_CASE("matrix helpers and the vectorization identity") {
  RandomStream rs(123);
  Matrix m(3, 2), a(3, 3), b(2, 2);
  for (auto* mm : {&m, &a, &b})
    for (double& v : mm->a) v = rs.normal();
  // tr(B M^T A M) = vec(M)^T (B^T (x) A) vec(M)
  double lhs = quad_form_trace(b, a, m);
  Matrix k = kron(transpose(b), a);
  std::vector<double> vm = vec(m);
  std::vector<double> kv = matvec(k, vm);
  double rhs = 0.0;
  for (size_t i = 0; i < vm.size(); ++i) rhs += vm[i] * kv[i];
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));

  // ||A M B||_F = ||(B^T (x) A) vec M||
  Matrix amb = matmul(matmul(a, m), b);
  double fn = frobenius(amb);
  double vn = 0.0;
  for (double x : kv) vn += x * x;
  CHECK(fn == doctest::Approx(std::sqrt(vn)).epsilon(1e-10));

  // identity case: tr(M^T M) = ||M||_F^2
  Matrix i3 = Matrix::identity(3), i2 = Matrix::identity(2);
  CHECK(quad_form_trace(i2, i3, m) == doctest::Approx(frobenius(m) * frobenius(m)));
  CHECK_THROWS_AS(quad_form_trace(a, b, m), ShapeMismatch);

  // operator norm of a diagonal matrix
  Matrix d = Matrix::identity(3);
  d(1, 1) = -7.0;
  CHECK(op_norm(d) == doctest::Approx(7.0).epsilon(1e-6));
}

TEST_CASE("dominance checker and falsifier") {
  EmpiricalSurvival emp(sample_iid(DensitySpec::laplace(), 20000, 9));
  std::vector<double> xs;
  for (double x : emp.sorted())
    if (x > 0) xs.push_back(x);
  EmpiricalSurvival pos(std::move(xs));
  // |Laplace| has survival e^{-t}; E1 dominates P(X > t) for the positive part
  std::vector<double> grid{0.1, 0.5, 1.0, 2.0, 4.0};
  VerifyReport ok = check_dominance(pos, named_e1(), dkw_slack(20000, 1e-3), grid);
  CHECK(ok.pass);
  VerifyReport bad = check_dominance(pos, named_e1(), dkw_slack(20000, 1e-3), grid, 0.1);
  CHECK(!bad.pass);
  CHECK(!bad.violations.empty());
  VerifyReport empty = check_dominance(pos, named_e1(), 0.01, {});
  CHECK(empty.pass);
  CHECK(empty.vacuous);
}

TEST_CASE("scenarios pass at moderate size and fail when falsified") {
  ScenarioParams pr;
  pr.samples = 20000;
  pr.seed = 42;
  for (const std::string& name : scenario_names()) {
    ScenarioParams p = pr;
    VerifyReport r = run_scenario(name, p);
    INFO(name, " max_gap=", r.max_gap);
    CHECK(r.pass);
    p.scale_bound = 0.1;
    VerifyReport f = run_scenario(name, p);
    CHECK(!f.pass);
  }
  CHECK_THROWS_AS(run_scenario("NOPE", pr), UnknownScenario);
}

TEST_CASE("reports are deterministic") {
  ScenarioParams pr;
  pr.samples = 5000;
  pr.seed = 7;
  VerifyReport a = run_scenario("SUM3_EXP", pr);
  VerifyReport b = run_scenario("SUM3_EXP", pr);
  CHECK(a.to_json() == b.to_json());
}

TEST_CASE("moment bound checks against gaussian second moments") {
  // empirical second moment of a 1-Lipschitz observation of a gaussian
  // vector is below M_2 of its concentration function
  std::vector<double> u = collect_statistic(50000, 11, 0, [](RandomStream& rs) {
    return std::abs(rs.normal());  // |u^T (X - EX)| with unit u
  });
  double m2 = 0.0;
  for (double x : u) m2 += x * x;
  m2 /= static_cast<double>(u.size());
  ProbOp e2 = classify_prob_op(named_e2());
  CHECK(m2 <= moment_matrix_bound(e2, 2) + 3.0 / std::sqrt(50000.0));
}

TEST_CASE("frobenius bound on E||A X B||_F for gaussian matrices") {
  // E||A X B||_F <= ||A||_F ||B||_F sqrt(||E[vec X vec X^T]||); the second
  // moment matrix of a standard gaussian matrix is the identity
  RandomStream fixed(5);
  Matrix a(3, 3), b(2, 2);
  for (double& v : a.a) v = fixed.normal();
  for (double& v : b.a) v = fixed.normal();
  double rhs = frobenius(a) * frobenius(b);
  std::vector<double> stats = collect_statistic(20000, 6, 0, [&](RandomStream& rs) {
    Matrix x(3, 2);
    for (double& v : x.a) v = rs.normal();
    return frobenius(matmul(matmul(a, x), b));
  });
  double mean = 0.0;
  for (double s : stats) mean += s;
  mean /= static_cast<double>(stats.size());
  CHECK(mean <= rhs * (1.0 + 3.0 / std::sqrt(20000.0)));
}

TEST_CASE("gaussian increment dominance example") {
  // |Z - Z'| vs E2 o (id / sqrt 2)
  EmpiricalSurvival emp(collect_statistic(100000, 42, 0, [](RandomStream& rs) {
    return std::abs(rs.normal() - rs.normal());
  }));
  Op bound = op_scale_arg(named_e2(), 1.0 / std::sqrt(2.0));
  std::vector<double> grid;
  for (double t = 0.25; t < 6.0; t += 0.25) grid.push_back(t);
  VerifyReport r = check_dominance(emp, bound, dkw_slack(100000, 1e-3), grid);
  CHECK(r.pass);
  CHECK(dkw_slack(100000, 1.0) > 0.0);  // delta = 1 edge of the slack formula
}
