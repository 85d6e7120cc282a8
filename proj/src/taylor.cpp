#include "concop/taylor.hpp"

#include <map>
#include <numeric>

#include "concop/errors.hpp"

namespace concop {

namespace {

struct Rat {
  long long n = 0, d = 1;
  void norm() {
    if (d < 0) { n = -n; d = -d; }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
  }
  Rat operator+(const Rat& o) const {
    Rat r{n * o.d + o.n * d, d * o.d};
    r.norm();
    return r;
  }
  Rat operator*(const Rat& o) const {
    Rat r{n * o.n, d * o.d};
    r.norm();
    return r;
  }
  double value() const { return static_cast<double>(n) / static_cast<double>(d); }
};

long long factorial(int l) {
  long long f = 1;
  for (int i = 2; i <= l; ++i) f *= i;
  return f;
}

}  // namespace

TaylorCoeffs taylor_poly_coeffs(int d) {
  if (d < 1 || d > 16) throw BadParameter("taylor_poly_coeffs: need 1 <= d <= 16");
  // polys[k]: coefficient of m_j X^i
  using Key = std::pair<int, int>;
  std::vector<std::map<Key, Rat>> P(d + 1);
  for (int k = 1; k <= d; ++k) {
    for (int l = 1; l <= k; ++l) {
      Rat w{1, factorial(l)};
      P[k][{l, d - k + l}] = P[k][{l, d - k + l}] + w;
      for (const auto& [key, c] : P[k - l]) {
        Key shifted{key.first + l, key.second};
        P[k][shifted] = P[k][shifted] + w * c;
      }
    }
  }
  // P_d carries m_i exactly on the X^i monomial
  TaylorCoeffs out;
  out.a.resize(d);
  for (const auto& [key, c] : P[d]) {
    if (key.first != key.second) throw Error("taylor_poly_coeffs: unexpected monomial structure");
    out.a[key.first - 1] = c.value();
  }
  return out;
}

}  // namespace concop
