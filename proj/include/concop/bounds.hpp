#pragma once

#include <functional>
#include <vector>

#include "concop/prob.hpp"
#include "concop/taylor.hpp"

namespace concop {

// Executable bound constructors: each maps input operators and parameters
// to the probabilistic operator that bounds the survival of the transformed
// quantity. Outputs may exceed 1; verification reports cap them on display.

double op_moment(const Op& alpha, double q);     // M_q = int alpha o id^{1/q}
double op_integral_alpha(const Op& alpha);       // int_0^inf alpha

// (1/n) S_{sum X_k} <= a_1 ⊞ ... ⊞ a_n, returned premultiplied by n.
ProbOp sum_tail_bound(const std::vector<ProbOp>& alphas, double eps = 1e-9);
// (1/n) S_{prod X_k} <= a_1 ⊠ ... ⊠ a_n, returned premultiplied by n.
ProbOp product_tail_bound(const std::vector<ProbOp>& alphas, double eps = 1e-9);

ProbOp pivot_sum_bound(const ProbOp& a, const ProbOp& b, double eps = 1e-9);  // 2 (a ⊞ b)
ProbOp pivot_product_bound(const ProbOp& a, const ProbOp& b, double x_pivot, double y_pivot,
                           double eps = 1e-9);

ProbOp lipschitz_rescale(const ProbOp& a, double sigma);  // a o (id/sigma)

enum class MedianStage { pivot_to_copy, copy_to_median };
ProbOp median_from_copy_chain(const ProbOp& a, MedianStage stage, double eps = 1e-9);

ProbOp mean_pivot_bound(const ProbOp& a, double eps = 1e-9);       // a(id/2)/min(1, a(int a))
ProbOp mean_concentration_factor(const ProbOp& a, double eps = 1e-9);  // shared kernel

ProbOp tail_from_pivot(const ProbOp& a, double delta, double eps = 1e-9);  // a ⊞ Incr_|delta|

ProbOp modulus_bound(const ProbOp& a, const Op& omega, double eps = 1e-9);  // a o omega^{-1}

// (2n+1) a ⊠ b_1 ⊠ ... ⊠ b_n (randomized Lipschitz control).
ProbOp randomized_lipschitz_bound(const ProbOp& a, const std::vector<ProbOp>& betas,
                                  double eps = 1e-9);

enum class MaxAbsBase { e1, e2 };
ProbOp max_abs_bound(MaxAbsBase base, double n, double eps = 1e-9);

// One level set per randomized factor: exponents a (containing 0) with their
// scales sigma_a.
struct LevelFamily {
  std::vector<std::pair<double, double>> terms;  // (a, sigma_a)
};
ProbOp multilevel_bound(const ProbOp& a, const std::vector<LevelFamily>& families,
                        double eps = 1e-9);

enum class DiffForm { strong, weak };
ProbOp differentiable_bound(const ProbOp& a, const std::vector<double>& medians, DiffForm form,
                            double eps = 1e-9);

ProbOp hanson_wright_bound(const ProbOp& a, double m, double norm_a, double norm_b,
                           double eps = 1e-9);
ProbOp hanson_wright_mean_bound(const ProbOp& a, double frob_a, double frob_b, double norm_a,
                                double norm_b, double eps = 1e-9);

ProbOp bahr_esseen_bound(double p, double pair_moment_sum);

// min(1, 2 sum / t^p) with validity caps; transports of Appendix A feed h.
ProbOp gaussian_transport_bound(const std::function<double(double)>& h, double n, double theta);
ProbOp laplace_transport_bound(const std::function<double(double)>& h, double n);
ProbOp moment_transport_bound(double q, double mq, double n);

struct EuclideanNormBound {
  ProbOp chain;                          // 3 (E2 o (id/2)) ⊠ alpha_theta, exact route
  std::function<double(double)> display; // C' n M'_q (q^2 log^2(c t)/(c t))^q
  double c = 0.5;                        // display argument scale
  double c_prime = 0.0;                  // display constant (3 n M'_q)
  double valid_from = 0.0;               // e^{1/q}/c
};
EuclideanNormBound euclidean_norm_bound(double q, double mq_prime, double n, double theta = 2.0,
                                        double eps = 1e-9);

double moment_matrix_bound(const ProbOp& a, int d);  // M_d as a moment-tensor norm bound

}  // namespace concop
