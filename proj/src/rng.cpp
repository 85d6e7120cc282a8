#include "concop/rng.hpp"

#include <cmath>

namespace concop {

namespace {

uint64_t splitmix64(uint64_t& x) {
  uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

RandomStream::RandomStream(uint64_t seed, uint64_t stream) {
  uint64_t x = seed ^ (0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL);
  for (auto& s : s_) s = splitmix64(x);
}

uint64_t RandomStream::next_u64() {
  // xoshiro256++
  uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RandomStream::uniform() {
  // 53-bit mantissa, shifted into (0,1)
  double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  return u == 0.0 ? 0x1.0p-54 : u;
}

double RandomStream::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform(), u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

double RandomStream::laplace() {
  double u = uniform();
  return u < 0.5 ? std::log(2.0 * u) : -std::log(2.0 * (1.0 - u));
}

double RandomStream::exponential() { return -std::log(uniform()); }

double RandomStream::cauchy_q(double q) {
  // inverse survival of the symmetric q-Cauchy law
  double u = uniform();
  if (u <= 0.5) return std::pow(2.0 * u, -1.0 / q) - 1.0;
  return -(std::pow(2.0 * (1.0 - u), -1.0 / q) - 1.0);
}

double RandomStream::sample(const DensitySpec& d) {
  switch (d.kind()) {
    case DensityKind::gaussian: return normal();
    case DensityKind::laplace: return laplace();
    case DensityKind::cauchy: return cauchy_q(d.q());
    case DensityKind::subexp: {
      // push-forward of a Laplace draw through the quantile transport
      double z = laplace();
      return quantile_transport(DensitySpec::laplace(), d, z);
    }
  }
  return 0.0;
}

std::vector<double> sample_iid(const DensitySpec& d, size_t n, uint64_t seed, uint64_t stream) {
  RandomStream rs(seed, stream);
  std::vector<double> out(n);
  for (size_t i = 0; i < n; ++i) out[i] = rs.sample(d);
  return out;
}

}  // namespace concop
