#pragma once

#include <cstdint>
#include <vector>

#include "concop/transport.hpp"

namespace concop {

// Deterministic sampling: fixed bit-level algorithms on top of a
// splitmix-seeded xoshiro-style generator, so results are identical across
// platforms and standard-library versions. Batches draw from substreams
// derived from (seed, batch index) and are merged by index, which keeps
// parallel runs schedule-independent.

class RandomStream {
 public:
  explicit RandomStream(uint64_t seed, uint64_t stream = 0);
  uint64_t next_u64();
  double uniform();          // in (0, 1)
  double normal();           // Box-Muller, deterministic
  double laplace();          // inverse survival
  double exponential();      // rate 1
  double cauchy_q(double q); // |.|-free signed q-Cauchy
  double sample(const DensitySpec& d);  // nu_q via transport from laplace

 private:
  uint64_t s_[4];
  bool have_spare_ = false;
  double spare_ = 0.0;
};

std::vector<double> sample_iid(const DensitySpec& d, size_t n, uint64_t seed,
                               uint64_t stream = 0);

}  // namespace concop
