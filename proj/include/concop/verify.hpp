#pragma once

#include <string>
#include <vector>

#include "concop/bounds.hpp"
#include "concop/matrix.hpp"
#include "concop/rng.hpp"

namespace concop {

// Monte Carlo dominance checks: every "S <= bound" conclusion is verified on
// an empirical survival with the uniform DKW slack, so the checks are sound
// at finite sample size. Reports are deterministic functions of
// (scenario, parameters, seed).

double dkw_slack(size_t n_samples, double delta);

struct ScenarioParams {
  size_t samples = 100000;
  uint64_t seed = 0;
  int n = 0;     // scenario size (copies, max count, vector length)
  int p = 20;    // quadratic-form dimension
  double q = 0;  // tail index where applicable
  double scale_bound = 1.0;  // falsifier knob: multiplies the bound
  size_t grid_points = 200;
  double dkw_delta = 1e-3;
};

struct VerifyReport {
  std::string scenario;
  ScenarioParams params;
  std::vector<double> grid;
  std::vector<double> empirical;  // P(X > t) at each grid point
  std::vector<double> bound;      // capped, scaled bound values
  double slack = 0.0;
  std::vector<double> violations;  // grid points where dominance fails
  double max_gap = 0.0;            // max empirical - bound
  bool pass = false;
  bool vacuous = false;
  std::string note;
  std::string to_json() const;
};

// Sound dominance: at each grid t, P(X > t) <= bound(t) + slack.
VerifyReport check_dominance(const EmpiricalSurvival& emp, const Op& bound, double slack,
                             const std::vector<double>& grid, double scale_bound = 1.0);

std::vector<std::string> scenario_names();
VerifyReport run_scenario(const std::string& name, const ScenarioParams& params);

// Deterministic batched statistic collection; honors CONCOP_THREADS.
std::vector<double> collect_statistic(size_t n, uint64_t seed, uint64_t stream_base,
                                      const std::function<double(RandomStream&)>& per_sample);

}  // namespace concop
