#include "concop/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "concop/integral.hpp"
#include "concop/transport.hpp"

namespace concop {

namespace {

ProbOp wrap(Op op, bool positive) {
  ProbOp p;
  p.op = std::move(op);
  p.positive_class = positive;
  return p;
}

ProbOp trivial_bound() {
  ProbOp p;
  p.op = named_const(1.0, Orientation::down);
  p.trivial = true;
  return p;
}

void require_prob(const ProbOp& a, bool positive, const char* who) {
  if (a.op.is_empty() || a.op.orientation() != Orientation::down)
    throw NotProbOp(std::string(who) + ": operand is not a probabilistic operator");
  if (positive && !a.positive_class)
    throw NotProbOp(std::string(who) + ": operand must be in M_P+");
}

}  // namespace

double op_moment(const Op& alpha, double q) {
  if (alpha.kind() == Op::Kind::analytic) return analytic_moment(alpha.an(), q);
  if (alpha.kind() == Op::Kind::pl) return curve_moment(alpha.pl(), q);
  throw NotProbOp("moment: operand is not a probabilistic operator");
}

double op_integral_alpha(const Op& alpha) { return op_moment(alpha, 1.0); }

ProbOp sum_tail_bound(const std::vector<ProbOp>& alphas, double eps) {
  if (alphas.empty()) throw BadParameter("sum_tail_bound: empty family");
  for (const ProbOp& a : alphas) require_prob(a, false, "sum_tail_bound");
  if (alphas.size() == 1) return alphas.front();
  Op acc = alphas.front().op;
  for (size_t i = 1; i < alphas.size(); ++i) acc = op_parallel_sum(acc, alphas[i].op, eps);
  if (acc.is_empty()) throw EmptyParallelSum("sum_tail_bound: ranges never intersect");
  bool positive = std::all_of(alphas.begin(), alphas.end(),
                              [](const ProbOp& a) { return a.positive_class; });
  return wrap(op_scale_range(acc, static_cast<double>(alphas.size()), eps), positive);
}

ProbOp product_tail_bound(const std::vector<ProbOp>& alphas, double eps) {
  if (alphas.empty()) throw BadParameter("product_tail_bound: empty family");
  for (const ProbOp& a : alphas) require_prob(a, true, "product_tail_bound");
  if (alphas.size() == 1) return alphas.front();
  Op acc = alphas.front().op;
  for (size_t i = 1; i < alphas.size(); ++i) acc = op_parallel_product(acc, alphas[i].op, eps);
  return wrap(op_scale_range(acc, static_cast<double>(alphas.size()), eps), true);
}

ProbOp pivot_sum_bound(const ProbOp& a, const ProbOp& b, double eps) {
  require_prob(a, true, "pivot_sum_bound");
  require_prob(b, true, "pivot_sum_bound");
  return wrap(op_scale_range(op_parallel_sum(a.op, b.op, eps), 2.0, eps), true);
}

ProbOp pivot_product_bound(const ProbOp& a, const ProbOp& b, double x_pivot, double y_pivot,
                           double eps) {
  require_prob(a, true, "pivot_product_bound");
  require_prob(b, true, "pivot_product_bound");
  if (x_pivot == 0.0 || y_pivot == 0.0)
    throw ZeroPivot("pivot_product_bound: pivots must be nonzero");
  Op cross = op_parallel_product(a.op, b.op, eps);
  Op ay = op_scale_arg(a.op, 1.0 / std::abs(y_pivot), eps);
  Op bx = op_scale_arg(b.op, 1.0 / std::abs(x_pivot), eps);
  Op sum = op_parallel_sum(op_parallel_sum(cross, ay, eps), bx, eps);
  return wrap(op_scale_range(sum, 4.0, eps), true);
}

ProbOp lipschitz_rescale(const ProbOp& a, double sigma) {
  if (!(sigma > 0.0)) throw BadParameter("lipschitz_rescale: sigma must be positive");
  if (sigma == 1.0) return a;
  ProbOp out = a;
  out.op = op_scale_arg(a.op, 1.0 / sigma);
  return out;
}

ProbOp median_from_copy_chain(const ProbOp& a, MedianStage stage, double eps) {
  require_prob(a, true, "median_from_copy_chain");
  if (stage == MedianStage::pivot_to_copy)
    return wrap(op_scale_range(op_scale_arg(a.op, 0.5, eps), 2.0, eps), a.positive_class);
  return wrap(op_scale_range(a.op, 2.0, eps), a.positive_class);
}

ProbOp mean_pivot_bound(const ProbOp& a, double eps) {
  require_prob(a, true, "mean_pivot_bound");
  double integral = op_integral_alpha(a.op);
  if (integral == kInf) throw NotIntegrable("mean_pivot_bound: operator is not integrable");
  Interval at = a.op.eval(integral);
  if (at.is_empty || at.hi <= 0.0) return trivial_bound();  // alpha(int alpha) = {0}
  // interval-valued denominator: keep the conservative (largest) bound
  double denom = std::min(1.0, at.lo);
  if (denom <= 0.0) return trivial_bound();
  Op half = op_scale_arg(a.op, 0.5, eps);
  return wrap(op_scale_range(half, 1.0 / denom, eps), a.positive_class);
}

ProbOp mean_concentration_factor(const ProbOp& a, double eps) { return mean_pivot_bound(a, eps); }

ProbOp tail_from_pivot(const ProbOp& a, double delta, double eps) {
  require_prob(a, true, "tail_from_pivot");
  return wrap(op_parallel_sum(a.op, named_incr(std::abs(delta)), eps), false);
}

ProbOp modulus_bound(const ProbOp& a, const Op& omega, double eps) {
  require_prob(a, false, "modulus_bound");
  if (omega.orientation() != Orientation::up)
    throw NotAModulus("modulus_bound: omega must be nondecreasing");
  Interval z = omega.eval(0.0);
  if (z.is_empty || z.lo != 0.0 || z.hi != 0.0)
    throw NotAModulus("modulus_bound: omega(0) must be {0}");
  Interval r = omega.range();
  if (r.lo < 0.0 || r.hi != kInf) throw NotAModulus("modulus_bound: ran(omega) must be R+");
  OpComposeResult c = op_compose(a.op, op_invert(omega), eps);
  if (c.verdict == ComposeVerdict::not_monotone ||
      (c.op.kind() == Op::Kind::pl && !c.op.maximal()))
    throw CompositionNotMaximal("modulus_bound: alpha o omega^{-1} is not maximal");
  return wrap(c.op, a.positive_class);
}

ProbOp randomized_lipschitz_bound(const ProbOp& a, const std::vector<ProbOp>& betas, double eps) {
  require_prob(a, true, "randomized_lipschitz_bound");
  if (betas.empty()) return a;
  Op acc = a.op;
  for (const ProbOp& b : betas) {
    require_prob(b, true, "randomized_lipschitz_bound");
    acc = op_parallel_product(acc, b.op, eps);
  }
  double factor = static_cast<double>(2 * betas.size() + 1);
  return wrap(op_scale_range(acc, factor, eps), true);
}

ProbOp max_abs_bound(MaxAbsBase base, double n, double eps) {
  if (!(n >= 1.0)) throw BadParameter("max_abs_bound: n must be >= 1");
  Op alpha = base == MaxAbsBase::e1 ? named_e1() : named_e2();
  double delta = base == MaxAbsBase::e1 ? std::log(n) : std::sqrt(2.0 * std::log(n));
  return wrap(op_parallel_sum(alpha, named_incr(delta), eps), false);
}

namespace {

// alpha o (id/sigma)^{1/k}; the conventions map a = 0 to IncrPos_sigma and
// sigma = 0 to IncrPos_0.
Op power_family_term(const Op& alpha, double sigma, double k, double eps) {
  if (k == 0.0) return named_incr_pos(sigma);
  if (sigma == 0.0) return named_incr_pos(0.0);
  Op composed = op_compose(alpha, named_power(1.0 / k), eps).op;
  return op_scale_arg(composed, 1.0 / sigma, eps);
}

}  // namespace

ProbOp multilevel_bound(const ProbOp& a, const std::vector<LevelFamily>& families, double eps) {
  require_prob(a, true, "multilevel_bound");
  size_t n = families.size();
  for (const LevelFamily& fam : families) {
    if (fam.terms.empty()) throw BadParameter("multilevel_bound: empty level family");
    bool has_zero = false;
    for (auto [aexp, sigma] : fam.terms) {
      if (aexp < 0.0 || sigma < 0.0)
        throw BadParameter("multilevel_bound: exponents and scales must be nonnegative");
      has_zero |= aexp == 0.0;
    }
    if (!has_zero) throw BadParameter("multilevel_bound: each family must contain exponent 0");
  }
  // parallel sum over all index tuples
  std::vector<size_t> idx(n, 0);
  Op acc = named_empty(Orientation::down);
  bool first = true;
  while (true) {
    double sigma_prod = 1.0, a_sum = 0.0;
    for (size_t k = 0; k < n; ++k) {
      sigma_prod *= families[k].terms[idx[k]].second;
      a_sum += families[k].terms[idx[k]].first;
    }
    if (sigma_prod > 0.0) {  // sigma = 0 terms contribute nothing to the sum
      Op term = power_family_term(a.op, sigma_prod, 1.0 + a_sum, eps);
      acc = first ? term : op_parallel_sum(acc, term, eps);
      first = false;
    }
    size_t k = 0;
    for (; k < n; ++k) {
      if (++idx[k] < families[k].terms.size()) break;
      idx[k] = 0;
    }
    if (k == n) break;
  }
  if (first) return wrap(named_incr_pos(0.0), true);
  double factor = static_cast<double>(2 * n + 1);
  return wrap(op_scale_range(acc, factor, eps), true);
}

namespace {

// Increasing map t -> W(t) with W^{-1}(u) = sum_k c_k u^k (the Taylor
// polynomial of the strong differentiable bound).
ArgMap poly_psum_map(std::vector<std::pair<double, double>> terms) {  // (c_k, k)
  auto poly = [terms](double u) {
    double s = 0.0;
    for (auto [c, k] : terms) s += c * std::pow(std::max(u, 0.0), k);
    return s;
  };
  auto fwd = [poly](double t) {
    if (t <= 0.0) return 0.0;
    return solve_monotone(poly, t, 0.0, 1.0, true);
  };
  return ArgMap::opaque(fwd, poly);
}

Op compose_with_map(const Op& alpha, const ArgMap& w, double eps) {
  if (alpha.kind() == Op::Kind::analytic) {
    AnalyticOp r = alpha.an();
    auto wa = r.w;
    r.w = ArgMap::opaque([wa, w](double t) { return wa.fwd(w.fwd(t)); },
                         [wa, w](double u) { return w.inv(wa.inv(u)); });
    return Op::analytic(r);
  }
  EnvelopeOptions opt;
  opt.eps = eps;
  MonoCurve c = envelope_compose_map(alpha.to_curve(EnvelopeDir::upper, eps), w,
                                     EnvelopeDir::upper, opt);
  return Op::curve(c);
}

}  // namespace

ProbOp differentiable_bound(const ProbOp& a, const std::vector<double>& medians, DiffForm form,
                            double eps) {
  require_prob(a, true, "differentiable_bound");
  int d = static_cast<int>(medians.size());
  if (d < 1) throw BadParameter("differentiable_bound: need at least one derivative level");
  for (double m : medians)
    if (m < 0.0) throw BadParameter("differentiable_bound: medians must be nonnegative");
  if (!(medians.back() > 0.0))
    throw BadParameter("differentiable_bound: top derivative bound must be positive");

  if (form == DiffForm::strong) {
    TaylorCoeffs tc = taylor_poly_coeffs(d);
    std::vector<std::pair<double, double>> terms;
    for (int k = 1; k <= d; ++k)
      if (medians[k - 1] > 0.0)
        terms.push_back({tc.a[k - 1] * medians[k - 1], static_cast<double>(k)});
    Op composed = compose_with_map(a.op, poly_psum_map(std::move(terms)), eps);
    return wrap(op_scale_range(composed, std::pow(2.0, d - 1), eps), true);
  }

  // weak form: 2^d alpha((1/e) min_k (t/(d m_k))^{1/k})
  std::vector<std::pair<double, double>> terms;  // (d*m_k, k)
  for (int k = 1; k <= d; ++k)
    if (medians[k - 1] > 0.0) terms.push_back({d * medians[k - 1], static_cast<double>(k)});
  auto fwd = [terms](double t) {
    double m = kInf;
    for (auto [s, k] : terms) m = std::min(m, std::pow(std::max(t, 0.0) / s, 1.0 / k));
    return m / M_E;
  };
  auto inv = [terms](double u) {
    double m = 0.0;
    for (auto [s, k] : terms) m = std::max(m, s * std::pow(std::max(u, 0.0) * M_E, k));
    return m;
  };
  Op composed = compose_with_map(a.op, ArgMap::opaque(fwd, inv), eps);
  return wrap(op_scale_range(composed, std::pow(2.0, d), eps), true);
}

ProbOp hanson_wright_bound(const ProbOp& a, double m, double norm_a, double norm_b, double eps) {
  if (m < 0.0 || !(norm_a > 0.0) || !(norm_b > 0.0))
    throw BadParameter("hanson_wright_bound: need m >= 0 and positive norms");
  return differentiable_bound(a, {m, 2.0 * norm_a * norm_b}, DiffForm::strong, eps);
}

ProbOp hanson_wright_mean_bound(const ProbOp& a, double frob_a, double frob_b, double norm_a,
                                double norm_b, double eps) {
  require_prob(a, true, "hanson_wright_mean_bound");
  if (!(frob_a > 0.0) || !(frob_b > 0.0) || !(norm_a > 0.0) || !(norm_b > 0.0))
    throw BadParameter("hanson_wright_mean_bound: norms must be positive");
  double m2 = op_moment(a.op, 2.0);
  if (m2 == kInf) throw NotIntegrable("hanson_wright_mean_bound: M_2 is infinite");
  Interval at = a.op.eval(std::sqrt(m2));
  double a0 = at.is_empty ? 0.0 : at.lo;
  if (!(a0 > 0.0))
    throw DegenerateDenominator("hanson_wright_mean_bound: alpha(sqrt(M_2)) vanishes");
  double sigma_alpha = 10.0 * std::sqrt(m2 / a0);
  double lin = sigma_alpha * frob_a * frob_b;
  double sq = 6.0 * norm_a * norm_b;
  auto fwd = [lin, sq](double t) {
    double u = std::max(t, 0.0);
    return std::min(u / lin, std::sqrt(u / sq));
  };
  auto inv = [lin, sq](double u) {
    double v = std::max(u, 0.0);
    return std::max(lin * v, sq * v * v);
  };
  Op composed = compose_with_map(a.op, ArgMap::opaque(fwd, inv), eps);
  return wrap(op_scale_range(composed, 2.0 / a0, eps), true);
}

ProbOp bahr_esseen_bound(double p, double pair_moment_sum) {
  if (!(p >= 1.0 && p <= 2.0)) throw BadParameter("bahr_esseen_bound: p must be in [1,2]");
  if (pair_moment_sum < 0.0) throw BadParameter("bahr_esseen_bound: moment sum must be >= 0");
  if (pair_moment_sum == 0.0) return wrap(named_incr(0.0), false);
  AnalyticOp an{seed_power_decay(p), ArgMap::identity(), 2.0 * pair_moment_sum, true};
  return wrap(Op::analytic(an), false);
}

ProbOp gaussian_transport_bound(const std::function<double(double)>& h, double n, double theta) {
  if (!(theta > 0.0 && theta < 1.0))
    throw BadParameter("gaussian_transport_bound: theta must be in (0,1)");
  if (!(n >= 1.0)) throw BadParameter("gaussian_transport_bound: n must be >= 1");
  if (!(h(0.0) >= 0.0) || h(1.0) < 0.0)
    throw BadParameter("gaussian_transport_bound: h must be nonnegative");
  double hc = h(std::sqrt(2.0 * std::log(std::max(n, 1.0))) / (1.0 - theta));
  double sq2 = std::sqrt(2.0);
  auto g1 = [h, theta, sq2](double u) { return sq2 / theta * u * h(u); };
  auto w1 = [g1](double t) {
    if (t <= 0.0) return 0.0;
    return solve_monotone(g1, t, 0.0, 1.0, true);
  };
  auto fwd = [w1, hc, sq2](double t) { return std::min(w1(t), t / (sq2 * hc)); };
  auto inv = [g1, hc, sq2](double u) { return std::max(g1(u), sq2 * hc * u); };
  AnalyticOp an{seed_e2(), ArgMap::opaque(fwd, inv), 3.0, false};
  return wrap(Op::analytic(an), true);
}

ProbOp laplace_transport_bound(const std::function<double(double)>& h, double n) {
  if (!(n >= 1.0)) throw BadParameter("laplace_transport_bound: n must be >= 1");
  // spot-check log-subadditivity h(x) h(y) >= h(x+y) on a coarse grid
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      double x = i, y = j;
      if (h(x) * h(y) < h(x + y) * (1.0 - 1e-9))
        throw NotLogSubadditive("laplace_transport_bound: witness pair (" + std::to_string(x) +
                                ", " + std::to_string(y) + ")");
    }
  }
  double scale = 8.0 * std::sqrt(3.0) * h(std::log(std::max(n, 1.0)));
  auto g = [h](double u) { return u * h(u); };
  auto fwd = [g, scale](double t) {
    if (t <= 0.0) return 0.0;
    return solve_monotone(g, t / scale, 0.0, 1.0, true);
  };
  auto inv = [g, scale](double u) { return scale * g(u); };
  AnalyticOp an{seed_e1(), ArgMap::opaque(fwd, inv), 3.0, false};
  return wrap(Op::analytic(an), true);
}

ProbOp moment_transport_bound(double q, double mq, double n) {
  if (!(q > 0.0) || !(mq > 0.0) || !(n >= 1.0))
    throw BadParameter("moment_transport_bound: need q, Mq > 0 and n >= 1");
  double s = std::pow(mq * n, 1.0 / q) / (8.0 * std::sqrt(3.0));
  // base: u -> 3 (q log u / u)^q, decreasing past the hump at u = e
  auto ev = [q](double u) {
    double uu = std::max(u, M_E);
    return 3.0 * std::pow(q * std::log(uu) / uu, q);
  };
  auto in = [ev](double y) {
    return solve_monotone(ev, y, M_E, 10.0, false);
  };
  SeedPtr base = seed_opaque("hq" + std::to_string(q), ev, in, M_E);
  AnalyticOp an{base, ArgMap::affine(1.0 / s, 0.0), 1.0, true};
  return wrap(Op::analytic(an), false);
}

EuclideanNormBound euclidean_norm_bound(double q, double mq_prime, double n, double theta,
                                        double eps) {
  if (!(q >= 4.0)) throw BadParameter("euclidean_norm_bound: q must be >= 4");
  if (!(mq_prime > 0.0) || !(n >= 1.0))
    throw BadParameter("euclidean_norm_bound: need Mq' > 0 and n >= 1");
  if (!(n * mq_prime >= 2.0))
    throw BadParameter("euclidean_norm_bound: proof hypothesis n Mq' >= 2 violated");
  double a_exp = (theta + 1.0) / theta;
  double nm = n * mq_prime;
  auto ev = [a_exp, nm, q, theta](double u) {
    double hinv = u <= 0.0 ? 1.0 : h_ab_inverse(a_exp, 1.0, u / theta);
    return nm / std::pow(hinv, q);
  };
  auto in = [a_exp, nm, q, theta](double y) {
    return theta * h_ab(a_exp, 1.0, std::pow(nm / y, 1.0 / q));
  };
  SeedPtr base = seed_opaque("alpha_theta", ev, in, 0.0);
  Op alpha_theta = Op::analytic({base, ArgMap::identity(), 1.0, false});
  Op talagrand = op_scale_arg(named_e2(), 0.5);  // copy form of Talagrand's bound
  Op chain = op_scale_range(op_parallel_product(talagrand, alpha_theta, eps), 3.0, eps);

  EuclideanNormBound out;
  out.chain = wrap(chain, true);
  out.c = 0.5;
  out.c_prime = 3.0 * nm;
  out.valid_from = std::exp(1.0 / q) / out.c;
  double cp = out.c_prime, c = out.c;
  out.display = [cp, c, q](double t) {
    double u = c * t;
    double lg = std::log(u);
    return cp * std::pow(q * q * lg * lg / u, q);
  };
  return out;
}

double moment_matrix_bound(const ProbOp& a, int d) {
  require_prob(a, true, "moment_matrix_bound");
  if (d < 1) throw BadParameter("moment_matrix_bound: d must be >= 1");
  double m = op_moment(a.op, static_cast<double>(d));
  if (m == kInf) throw NotIntegrable("moment_matrix_bound: moment diverges");
  return m;
}

}  // namespace concop
