#include "concop/matrix.hpp"

#include <cmath>

namespace concop {

Matrix Matrix::identity(size_t n) {
  Matrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> vec(const Matrix& m) {
  std::vector<double> v(m.rows * m.cols);
  for (size_t j = 0; j < m.cols; ++j)
    for (size_t i = 0; i < m.rows; ++i) v[i + m.rows * j] = m(i, j);
  return v;
}

Matrix kron(const Matrix& b, const Matrix& a) {
  Matrix k(b.rows * a.rows, b.cols * a.cols);
  for (size_t i = 0; i < b.rows; ++i)
    for (size_t j = 0; j < b.cols; ++j)
      for (size_t p = 0; p < a.rows; ++p)
        for (size_t q = 0; q < a.cols; ++q)
          k(i * a.rows + p, j * a.cols + q) = b(i, j) * a(p, q);
  return k;
}

double frobenius(const Matrix& m) {
  double s = 0.0;
  for (double x : m.a) s += x * x;
  return std::sqrt(s);
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols, m.rows);
  for (size_t i = 0; i < m.rows; ++i)
    for (size_t j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
  return t;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) throw ShapeMismatch("matmul: inner dimensions differ");
  Matrix c(a.rows, b.cols);
  for (size_t i = 0; i < a.rows; ++i)
    for (size_t k = 0; k < a.cols; ++k) {
      double aik = a(i, k);
      if (aik == 0.0) continue;
      for (size_t j = 0; j < b.cols; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

std::vector<double> matvec(const Matrix& m, const std::vector<double>& x) {
  if (m.cols != x.size()) throw ShapeMismatch("matvec: dimension mismatch");
  std::vector<double> y(m.rows, 0.0);
  for (size_t i = 0; i < m.rows; ++i)
    for (size_t j = 0; j < m.cols; ++j) y[i] += m(i, j) * x[j];
  return y;
}

double op_norm(const Matrix& m) {
  // power iteration on M^T M with a fixed deterministic start
  size_t n = m.cols;
  std::vector<double> v(n);
  for (size_t i = 0; i < n; ++i) v[i] = 1.0 / std::sqrt(static_cast<double>(n)) + 1e-3 * (i % 7);
  Matrix mt = transpose(m);
  double lambda = 0.0;
  for (int it = 0; it < 300; ++it) {
    std::vector<double> w = matvec(mt, matvec(m, v));
    double norm = 0.0;
    for (double x : w) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    for (size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
    lambda = norm;
  }
  return std::sqrt(lambda);
}

double quad_form_trace(const Matrix& b, const Matrix& a, const Matrix& x) {
  if (a.rows != a.cols || b.rows != b.cols || x.rows != a.rows || x.cols != b.rows)
    throw ShapeMismatch("quad_form_trace: incompatible shapes");
  // tr(B X^T A X)
  Matrix ax = matmul(a, x);
  Matrix xt_ax = matmul(transpose(x), ax);
  Matrix prod = matmul(b, xt_ax);
  double tr = 0.0;
  for (size_t i = 0; i < prod.rows; ++i) tr += prod(i, i);
  return tr;
}

}  // namespace concop
