#pragma once

#include <vector>

namespace concop {

// Coefficients a_1..a_d of the Taylor polynomial family P_k built from the
// recursion P_k = sum_{l=1..k} X^l/l! (P_{k-l} + m_{d-k+l}); the medians m
// are treated as formal symbols, so P_k = sum_i a_i m_{d-k+i} X^i with
// coefficients independent of both k and the m values. Computed in exact
// rational arithmetic.
struct TaylorCoeffs {
  std::vector<double> a;  // a[0] = a_1 = 1, a[1] = a_2 = 3/2, ...
};

TaylorCoeffs taylor_poly_coeffs(int d);

}  // namespace concop
