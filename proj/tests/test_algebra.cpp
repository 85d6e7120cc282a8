#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "concop/op.hpp"
#include "test_util.hpp"

using namespace concop;

TEST_CASE("sum of curves is the pointwise Minkowski sum") {
  MonoCurve line = line_curve(1.0, 0.0);
  MonoCurve two = curve_add(line, line);
  CHECK(curves_equal(two, line_curve(2.0, 0.0), 1e-12));

  MonoCurve inc = incr_curve(1.0);
  MonoCurve twoinc = curve_add(inc, inc);
  CHECK(twoinc.eval(0.5).lo == doctest::Approx(2.0));
  CHECK(twoinc.eval(1.0).lo == 0.0);
  CHECK(twoinc.eval(1.0).hi == doctest::Approx(2.0));
  CHECK(curves_equal(twoinc, curve_scale_range(inc, 2.0), 1e-12));

  // disjoint domains give the empty operator
  MonoCurve a = MonoCurve::build(Orientation::up, {{0, 0}, {1, 1}}, Ray::vertical(), Ray::vertical());
  MonoCurve b = MonoCurve::build(Orientation::up, {{2, 0}, {3, 1}}, Ray::vertical(), Ray::vertical());
  CHECK(curve_add(a, b).empty());

  // range of the sum is the Minkowski sum of ranges
  testutil::Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    MonoCurve f = testutil::random_prob(rng), g = testutil::random_prob(rng);
    MonoCurve s = curve_add(f, g);
    CHECK(s.maximal());
    Interval want = minkowski_add(f.range(), g.range());
    CHECK(interval_close(s.range(), want, 1e-9));
  }
}

TEST_CASE("product requires nonnegative ranges and multiplies images") {
  MonoCurve inc = incr_curve(1.0);
  MonoCurve sq = curve_mul(inc, inc);
  CHECK(sq.eval(0.0).is_point());
  CHECK(sq.eval(0.0).lo == doctest::Approx(1.0));
  CHECK(sq.eval(2.0).lo == 0.0);
  MonoCurve neg = const_curve(Orientation::down, -1.0);
  CHECK_THROWS_AS(curve_mul(inc, neg), NegativeRange);
}

TEST_CASE("parallel sum: commutative, associative, exact on PL") {
  testutil::Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    MonoCurve f = testutil::random_prob(rng);
    MonoCurve g = testutil::random_prob(rng);
    MonoCurve h = testutil::random_prob(rng);
    CHECK(curves_equal(curve_psum(f, g), curve_psum(g, f), 1e-9));
    CHECK(curves_equal(curve_psum(curve_psum(f, g), h), curve_psum(f, curve_psum(g, h)), 1e-9));
  }
  // Incr_1 ⊞ Incr_2 = Incr_3
  CHECK(curves_equal(curve_psum(incr_curve(1.0), incr_curve(2.0)), incr_curve(3.0), 1e-12));
}

TEST_CASE("parallel product on staircases: commutative, associative, domain product") {
  testutil::Rng rng(17);
  for (int i = 0; i < 300; ++i) {
    MonoCurve f = testutil::random_staircase_pos(rng);
    MonoCurve g = testutil::random_staircase_pos(rng);
    MonoCurve h = testutil::random_staircase_pos(rng);
    MonoCurve fg = curve_pprod(f, g);
    CHECK(curves_equal(fg, curve_pprod(g, f), 1e-9));
    CHECK(curves_equal(curve_pprod(fg, h), curve_pprod(f, curve_pprod(g, h)), 1e-9));
    CHECK(fg.maximal());
  }
  MonoCurve neg = MonoCurve::build(Orientation::down, {{-1, 1}, {0, 0}}, Ray::horizontal(),
                                   Ray::horizontal());
  CHECK_THROWS_AS(curve_pprod(neg, incr_pos_curve(1.0)), NegativeDomain);
}

TEST_CASE("distributivity of parallel product over parallel sum") {
  testutil::Rng rng(23);
  for (int i = 0; i < 300; ++i) {
    MonoCurve f = testutil::random_staircase_pos(rng);
    MonoCurve g = testutil::random_staircase_pos(rng);
    MonoCurve h = testutil::random_staircase_pos(rng);
    MonoCurve lhs = curve_pprod(f, curve_psum(g, h));
    if (lhs.empty()) continue;
    MonoCurve rhs = curve_psum(curve_pprod(f, g), curve_pprod(f, h));
    CHECK(curves_equal(lhs, rhs, 1e-9));
  }
}

TEST_CASE("composition distributes over parallel sum and product") {
  testutil::Rng rng(29);
  int ran_sum = 0, ran_prod = 0;
  for (int i = 0; i < 300; ++i) {
    MonoCurve f = testutil::random_down_full_range(rng);
    MonoCurve g = testutil::random_prob(rng);
    MonoCurve h = testutil::random_prob(rng);
    // ran(f) = R covers the domain-sum hypothesis
    MonoCurve gh = curve_psum(g, h);
    if (gh.empty()) continue;
    ComposeResult lhs = curve_compose(f, gh);
    ComposeResult fg = curve_compose(f, g);
    ComposeResult fh = curve_compose(f, h);
    if (lhs.verdict == ComposeVerdict::not_monotone) continue;
    MonoCurve rhs = curve_psum(fg.curve, fh.curve);
    CHECK(curves_equal(lhs.curve, rhs, 1e-9));
    ++ran_sum;

    MonoCurve gp = testutil::random_staircase_pos(rng);
    MonoCurve hp = testutil::random_staircase_pos(rng);
    MonoCurve gph = curve_pprod(gp, hp);
    ComposeResult l2 = curve_compose(f, gph);
    if (l2.verdict == ComposeVerdict::not_monotone) continue;
    MonoCurve r2 = curve_pprod(curve_compose(f, gp).curve, curve_compose(f, hp).curve);
    CHECK(curves_equal(l2.curve, r2, 1e-9));
    ++ran_prod;
  }
  CHECK(ran_sum > 100);
  CHECK(ran_prod > 100);
}

TEST_CASE("translation and homothety identities") {
  testutil::Rng rng(37);
  for (int i = 0; i < 300; ++i) {
    MonoCurve f = testutil::random_prob(rng);
    MonoCurve g = testutil::random_prob(rng);
    double d = testutil::uni(rng, -1.0, 1.0), l = testutil::uni(rng, -1.0, 1.0);
    MonoCurve lhs = curve_psum(curve_shift_arg(f, d), curve_shift_arg(g, l));
    MonoCurve rhs = curve_shift_arg(curve_psum(f, g), d + l);
    CHECK(curves_equal(lhs, rhs, 1e-9));

    MonoCurve fp = testutil::random_staircase_pos(rng);
    MonoCurve gp = testutil::random_staircase_pos(rng);
    double s1 = testutil::uni(rng, 0.3, 2.0), s2 = testutil::uni(rng, 0.3, 2.0);
    MonoCurve lhs2 = curve_pprod(curve_scale_arg(fp, s1), curve_scale_arg(gp, s2));
    MonoCurve rhs2 = curve_scale_arg(curve_pprod(fp, gp), s1 * s2);
    CHECK(curves_equal(lhs2, rhs2, 1e-9));
  }
  MonoCurve f = testutil::random_prob(rng);
  CHECK(curves_equal(curve_scale_arg(f, 1.0), f, 1e-12));
  CHECK_THROWS_AS(curve_scale_arg(f, 0.0), BadParameter);
}

TEST_CASE("min and max: convention, sandwich, distributivity") {
  testutil::Rng rng(41);
  MonoCurve e = MonoCurve::empty_op(Orientation::down);
  MonoCurve f0 = testutil::random_prob(rng);
  CHECK(curves_equal(curve_min({f0, e}), f0, 1e-12));
  CHECK(curves_equal(curve_max({f0, e}), f0, 1e-12));
  CHECK(curve_min({e, e}).empty());

  for (int i = 0; i < 200; ++i) {
    MonoCurve f = testutil::random_prob(rng);
    MonoCurve g = testutil::random_prob(rng);
    MonoCurve h = testutil::random_prob(rng);
    MonoCurve mn = curve_min({f, g});
    MonoCurve mx = curve_max({f, g});
    // commutativity and associativity
    CHECK(curves_equal(mn, curve_min({g, f}), 1e-9));
    CHECK(curves_equal(curve_min({curve_min({f, g}), h}), curve_min({f, curve_min({g, h})}),
                       1e-9));
    // f + min(g,h) = min(f+g, f+h)
    CHECK(curves_equal(curve_add(f, curve_min({g, h})),
                       curve_min({curve_add(f, g), curve_add(f, h)}), 1e-9));
    // f ⊞ min(g,h) = min(f⊞g, f⊞h)
    CHECK(curves_equal(curve_psum(f, curve_min({g, h})),
                       curve_min({curve_psum(f, g), curve_psum(f, h)}), 1e-9));
  }
  for (int i = 0; i < 200; ++i) {
    MonoCurve f = testutil::random_staircase_pos(rng);
    MonoCurve g = testutil::random_staircase_pos(rng);
    MonoCurve h = testutil::random_staircase_pos(rng);
    CHECK(curves_equal(curve_pprod(f, curve_min({g, h})),
                       curve_min({curve_pprod(f, g), curve_pprod(f, h)}), 1e-9));
  }
}

TEST_CASE("pointwise min/max oracle agrees with the resolvent route") {
  testutil::Rng rng(43);
  for (int i = 0; i < 1000; ++i) {
    MonoCurve f = testutil::random_prob(rng);
    MonoCurve g = testutil::random_prob(rng);
    MonoCurve mn = curve_min({f, g});
    // dom(min) = min of domains (nonincreasing case); here both are R
    for (double t : {-1.0, 0.0, 0.4, 1.3, 2.6, 5.0}) {
      Interval a = f.eval(t), b = g.eval(t);
      Interval want = interval_min(a, b);
      Interval got = mn.eval(t);
      CHECK(interval_close(got, want, 1e-9));
    }
  }
}

TEST_CASE("scalar product with a constant and named operator values") {
  // Const(2) * E1 = 2 e^-t on t>0
  Op two_e1 = op_mul(named_const(2.0, Orientation::down), named_e1());
  CHECK(two_e1.eval(1.0).lo == doctest::Approx(2.0 * std::exp(-1.0)));
  CHECK(two_e1.eval(0.0).lo == doctest::Approx(2.0));
  CHECK(two_e1.eval(0.0).hi == kInf);

  // Power(1) * Power(1) = Power(2) on t > 0
  Op p2 = op_mul(named_power(1.0), named_power(1.0));
  CHECK(p2.kind() == Op::Kind::power);
  CHECK(p2.eval(3.0).lo == doctest::Approx(9.0));
  CHECK(p2.eval(0.0).hi == 0.0);
  CHECK(p2.eval(0.0).lo == -kInf);
  CHECK(p2.eval(-1.0).is_empty);

  // make_named(E2).eval(0) = [2, inf)
  CHECK(named_e2().eval(0.0).lo == doctest::Approx(2.0));
  CHECK(named_e2().eval(0.0).hi == kInf);
  // id^1 != id at zero
  CHECK(named_power(1.0).eval(0.0).lo == -kInf);
  // IncrPos(1.5) at 0 is [1, inf)
  CHECK(named_incr_pos(1.5).eval(0.0).lo == doctest::Approx(1.0));
  CHECK(named_incr_pos(1.5).eval(0.0).hi == kInf);
  CHECK_THROWS_AS(named_power(0.0), BadParameter);
}

TEST_CASE("closed forms through the rewrite rules") {
  // E2 ⊞ E2 = E2 o (id/2): value at 2 is 2 e^{-1/2}
  Op s = op_parallel_sum(named_e2(), named_e2());
  CHECK(s.kind() == Op::Kind::analytic);
  CHECK(s.eval(2.0).lo == doctest::Approx(2.0 * std::exp(-0.5)));

  // E1 ⊞ Incr_2 = min(E1 o (id-2), 1): value at 3 is e^{-1}
  Op t = op_parallel_sum(named_e1(), named_incr(2.0));
  CHECK(t.eval(3.0).lo == doctest::Approx(std::exp(-1.0)));
  CHECK(t.eval(1.0).lo == doctest::Approx(1.0));

  // E2 ⊠ IncrPos_3 = min(E2 o (id/3), 1): value at 6 is 2 e^{-2}
  Op u = op_parallel_product(named_e2(), named_incr_pos(3.0));
  CHECK(u.eval(6.0).lo == doctest::Approx(2.0 * std::exp(-2.0)));

  // (E1 o id^{1/1}) ⊠ (E1 o id^{1/1}) = E1 o id^{1/2}: value at 4 is e^{-2}
  Op e1p = op_compose(named_e1(), named_power(1.0)).op;
  Op v = op_parallel_product(e1p, e1p);
  CHECK(v.kind() == Op::Kind::analytic);
  CHECK(v.eval(4.0).lo == doctest::Approx(std::exp(-2.0)));

  // translation pull-out: (E1 o (id+1)) ⊞ (E1 o (id+2)) = (E1 ⊞ E1) o (id+3)
  Op lhs = op_parallel_sum(op_shift_arg(named_e1(), 1.0), op_shift_arg(named_e1(), 2.0));
  Op rhs = op_shift_arg(op_parallel_sum(named_e1(), named_e1()), 3.0);
  for (double x : {0.0, 0.5, 1.0, 2.5, 7.0}) {
    CHECK(lhs.eval(x).lo == doctest::Approx(rhs.eval(x).lo));
    CHECK(lhs.eval(x).hi == doctest::Approx(rhs.eval(x).hi));
  }

  // homothety pull-out through the power-family rule:
  // (E2 o (2 id)) ⊠ (E2 o (3 id)) = (E2 ⊠ E2) o (6 id)
  Op l2 = op_parallel_product(op_scale_arg(named_e2(), 2.0), op_scale_arg(named_e2(), 3.0));
  Op r2 = op_scale_arg(op_parallel_product(named_e2(), named_e2()), 6.0);
  for (double x : {0.5, 1.0, 2.0, 4.0}) CHECK(l2.eval(x).lo == doctest::Approx(r2.eval(x).lo));
}

TEST_CASE("composition examples and verdicts") {
  // E2 o scale(1/2) = 2 e^{-t^2/8}
  Op c = op_scale_arg(named_e2(), 0.5);
  CHECK(c.eval(2.0).lo == doctest::Approx(2.0 * std::exp(-0.5)));

  // exp o log via windowed PL seeds is monotone but not maximal
  auto expc = [](double x) { return std::exp(x); };
  std::vector<Vertex> ev, lv;
  for (int i = 0; i <= 200; ++i) {
    double x = -3.0 + 6.0 * i / 200.0;
    ev.push_back({x, expc(x)});
    lv.push_back({expc(x), x});
  }
  MonoCurve expC = MonoCurve::build(Orientation::up, ev, Ray::none(), Ray::none());
  MonoCurve logC = MonoCurve::build(Orientation::up, lv, Ray::none(), Ray::none());
  ComposeResult r = curve_compose(expC, logC);
  CHECK(r.verdict == ComposeVerdict::monotone_not_maximal);

  // rectangle composite is not monotone: f(0)=R+, f((0,inf))={0}, g=-f
  MonoCurve f = MonoCurve::build(Orientation::down, {{0, 0}}, Ray::vertical(), Ray::horizontal());
  MonoCurve g = MonoCurve::build(Orientation::up, {{0, 0}}, Ray::horizontal(), Ray::vertical());
  // g o f: g's image R+ hits f's flat level 0 over an unbounded x-range
  ComposeResult rect = curve_compose(f, g);
  CHECK(rect.verdict == ComposeVerdict::not_monotone);
}

TEST_CASE("min of an ordered pair collapses to the smaller operator") {
  // min(E1, E1 o (id/2)) = E1 on the shared domain since e^-t <= e^{-t/2}
  MonoCurve e1 = named_e1().to_curve(EnvelopeDir::upper, 1e-9);
  MonoCurve e1half = op_scale_arg(named_e1(), 0.5).to_curve(EnvelopeDir::upper, 1e-9);
  MonoCurve mn = curve_min({e1, e1half});
  CHECK(curves_equal(mn, e1, 1e-6));
}

TEST_CASE("parallel sum sits between the min and max envelopes") {
  // theta_1 = theta_2 = 1/2 with equal operands: min = psum = max
  testutil::Rng rng(301);
  for (int i = 0; i < 100; ++i) {
    MonoCurve a = testutil::random_prob(rng);
    MonoCurve half = curve_scale_arg(a, 0.5);
    MonoCurve ps = curve_psum(a, a);
    CHECK(curves_equal(ps, half, 1e-9));
    CHECK(curves_equal(curve_min({half, half}), ps, 1e-9));
    // and generally min_i a_i o (theta_i id) <= a1 ⊞ a2 <= max_i
    MonoCurve b = testutil::random_prob(rng);
    MonoCurve bhalf = curve_scale_arg(b, 0.5);
    MonoCurve ahalf = curve_scale_arg(a, 0.5);
    MonoCurve sum = curve_psum(a, b);
    CHECK(op_leq(curve_min({ahalf, bhalf}), sum).leq);
    CHECK(op_leq(sum, curve_max({ahalf, bhalf})).leq);
  }
}

TEST_CASE("parallel operations are monotone in the resolvent order") {
  testutil::Rng rng(307);
  for (int i = 0; i < 150; ++i) {
    MonoCurve f = testutil::random_prob(rng);
    MonoCurve g = curve_scale_range(f, testutil::uni(rng, 1.01, 2.0));  // f <= g
    MonoCurve h = testutil::random_prob(rng);
    CHECK(op_leq(f, g).leq);
    CHECK(op_leq(curve_psum(f, h), curve_psum(g, h)).leq);
  }
  for (int i = 0; i < 150; ++i) {
    MonoCurve f = testutil::random_staircase_pos(rng);
    MonoCurve g = curve_scale_range(f, testutil::uni(rng, 1.01, 2.0));
    MonoCurve h = testutil::random_staircase_pos(rng);
    CHECK(op_leq(curve_pprod(f, h), curve_pprod(g, h)).leq);
  }
}

TEST_CASE("constants live in both monotone classes") {
  // scalar product through the CLI-style tree: const is orientation-free
  Op two_e1 = op_mul(named_const(2.0), named_e1());
  CHECK(two_e1.eval(1.0).lo == doctest::Approx(2.0 * std::exp(-1.0)));
  // min(const 1, E2) caps the operator
  Op capped = op_min({named_const(1.0), named_e2()});
  CHECK(capped.eval(0.5).lo == doctest::Approx(1.0));
  CHECK(capped.eval(2.0).lo == doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-6));
  // psum with a constant inverse: f ⊞ delta^{-1} = f o (id - delta)
  MonoCurve shifted = curve_psum(incr_curve(1.0), const_inverse_curve(Orientation::down, 2.0));
  CHECK(curves_equal(shifted, incr_curve(3.0), 1e-12));
  // while psum with the constant function itself is empty off its range
  CHECK(curve_psum(incr_curve(1.0), const_curve(Orientation::down, 2.0)).empty());
}

TEST_CASE("sloped parallel product against a pointwise oracle") {
  MonoCurve f = MonoCurve::build(Orientation::down, {{0.0, 2.0}, {2.0, 0.5}, {3.0, 0.0}},
                                 Ray::vertical(), Ray::horizontal());
  MonoCurve g = MonoCurve::build(Orientation::down, {{0.0, 1.6}, {1.0, 0.9}, {2.5, 0.0}},
                                 Ray::vertical(), Ray::horizontal());
  MonoCurve fg = curve_pprod(f, g);
  MonoCurve fi = invert(f), gi = invert(g);
  for (int i = 1; i < 400; ++i) {
    double y = 2.0 * i / 400.0 * 0.79;
    Interval a = fi.eval(y), b = gi.eval(y);
    if (a.is_empty || b.is_empty) continue;
    double x = 0.5 * (a.lo + a.hi) * 0.5 * (b.lo + b.hi);
    Interval img = fg.eval(x);
    REQUIRE(!img.is_empty);
    double dist = std::max(0.0, std::max(img.lo - y, y - img.hi));
    CHECK(dist <= 1e-8);
  }
}
