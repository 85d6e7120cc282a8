#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "concop/prob.hpp"
#include "concop/rng.hpp"
#include "concop/transport.hpp"

using namespace concop;

TEST_CASE("probabilistic classification") {
  ProbOp e2 = classify_prob_op(named_e2());
  CHECK(e2.positive_class);

  // a full-line analytic survival: in M_P, not M_P+
  DensitySpec g = DensitySpec::gaussian();
  SeedPtr base = seed_opaque(
      "gauss_surv", [g](double u) { return g.survival(u); },
      [g](double y) { return g.survival_inverse(y); }, -kInf, 1.0);
  Op surv = Op::analytic({base, ArgMap::identity(), 1.0, false});
  ProbOp sp = classify_prob_op(surv);
  CHECK(!sp.positive_class);
  CHECK(surv.range().hi <= 1.0);

  CHECK_THROWS_AS(classify_prob_op(named_const(2.0, Orientation::down)), NotProbabilistic);
  CHECK_THROWS_AS(classify_prob_op(named_power(1.0)), NotProbabilistic);
}

TEST_CASE("empirical survival from samples") {
  EmpiricalSurvival s({0.0, 1.0});
  CHECK(s.eval(0.0).lo == doctest::Approx(0.5));
  CHECK(s.eval(0.0).hi == doctest::Approx(1.0));
  CHECK(s.eval(0.5).lo == doctest::Approx(0.5));
  CHECK(s.eval(0.5).hi == doctest::Approx(0.5));
  CHECK(s.eval(1.0).lo == doctest::Approx(0.0));
  CHECK(s.eval(1.0).hi == doctest::Approx(0.5));

  EmpiricalSurvival m({1.0, 2.0, 2.0, 3.0});
  CHECK(m.eval(2.0).lo == doctest::Approx(0.25));
  CHECK(m.eval(2.0).hi == doctest::Approx(0.75));

  EmpiricalSurvival one({5.0});
  CHECK(one.eval(4.0).lo == doctest::Approx(1.0));
  CHECK(one.eval(5.0).lo == doctest::Approx(0.0));
  CHECK(one.eval(5.0).hi == doctest::Approx(1.0));
  CHECK(one.eval(6.0).hi == doctest::Approx(0.0));

  CHECK_THROWS_AS(EmpiricalSurvival({}), EmptySamples);

  // the derived curve is a valid probabilistic operator matching eval
  MonoCurve c = m.curve();
  CHECK(c.maximal());
  ProbOp cls = classify_prob_op(Op::curve(c));
  CHECK(!cls.trivial);
  for (double t : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0}) {
    CHECK(c.eval(t).lo == doctest::Approx(m.eval(t).lo));
    CHECK(c.eval(t).hi == doctest::Approx(m.eval(t).hi));
  }
}

TEST_CASE("empirical survival of a gaussian sample sits below the E2 envelope") {
  std::vector<double> z = sample_iid(DensitySpec::gaussian(), 100000, 42);
  for (double& x : z) x = std::abs(x);
  EmpiricalSurvival s(std::move(z));
  // S_{|Z|} <= E2 pointwise with DKW slack at a few grid points
  double slack = std::sqrt(std::log(2.0 / 1e-3) / (2.0 * 100000.0));
  for (double t = 0.0; t < 5.0; t += 0.25) {
    CHECK(s.lower(t) <= 2.0 * std::exp(-t * t / 2.0) + slack);
  }
}
