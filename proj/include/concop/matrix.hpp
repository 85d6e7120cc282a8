#pragma once

#include <vector>

#include "concop/errors.hpp"

namespace concop {

// Small dense matrices for the Hanson-Wright scenarios.
struct Matrix {
  size_t rows = 0, cols = 0;
  std::vector<double> a;  // row-major

  Matrix() = default;
  Matrix(size_t r, size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
  double& operator()(size_t i, size_t j) { return a[i * cols + j]; }
  double operator()(size_t i, size_t j) const { return a[i * cols + j]; }
  static Matrix identity(size_t n);
};

std::vector<double> vec(const Matrix& m);                 // column-stacked
Matrix kron(const Matrix& b, const Matrix& a);            // B (x) A
double frobenius(const Matrix& m);
double op_norm(const Matrix& m);                          // largest singular value
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& m);
std::vector<double> matvec(const Matrix& m, const std::vector<double>& x);
double quad_form_trace(const Matrix& b, const Matrix& a, const Matrix& x);  // tr(B X^T A X)

}  // namespace concop
