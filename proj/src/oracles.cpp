#include "partialop/oracles.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

namespace partialop::oracle {

Matrix gauss_inverse(const Matrix& a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw std::runtime_error("gauss_inverse: matrix is not square");
  Matrix work = a;
  Matrix inv = Matrix::Identity(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    for (Eigen::Index r = col + 1; r < n; ++r)
      if (std::abs(work(r, col)) > std::abs(work(pivot, col))) pivot = r;
    if (work(pivot, col) == Complex{}) throw std::runtime_error("gauss_inverse: singular matrix");
    work.row(col).swap(work.row(pivot));
    inv.row(col).swap(inv.row(pivot));
    const Complex d = work(col, col);
    work.row(col) /= d;
    inv.row(col) /= d;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col) continue;
      const Complex f = work(r, col);
      if (f == Complex{}) continue;
      work.row(r) -= f * work.row(col);
      inv.row(r) -= f * inv.row(col);
    }
  }
  return inv;
}

std::vector<Complex> gauss_solve(const Matrix& a, const std::vector<Complex>& b) {
  const auto n = static_cast<Eigen::Index>(b.size());
  if (a.rows() != n || a.cols() != n) throw std::runtime_error("gauss_solve: shape mismatch");
  Matrix work = a;
  std::vector<Complex> rhs = b;
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    for (Eigen::Index r = col + 1; r < n; ++r)
      if (std::abs(work(r, col)) > std::abs(work(pivot, col))) pivot = r;
    if (work(pivot, col) == Complex{}) throw std::runtime_error("gauss_solve: singular matrix");
    if (pivot != col) {
      work.row(col).swap(work.row(pivot));
      std::swap(rhs[col], rhs[pivot]);
    }
    for (Eigen::Index r = col + 1; r < n; ++r) {
      const Complex f = work(r, col) / work(col, col);
      work.row(r) -= f * work.row(col);
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<Complex> x(b.size());
  for (Eigen::Index r = n; r-- > 0;) {
    Complex s = rhs[r];
    for (Eigen::Index c = r + 1; c < n; ++c) s -= work(r, c) * x[c];
    x[r] = s / work(r, r);
  }
  return x;
}

double largest_singular_value(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

double max_abs_col_sum(const Matrix& a) {
  double best = 0.0;
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    double s = 0.0;
    for (Eigen::Index r = 0; r < a.rows(); ++r) s += std::abs(a(r, c));
    best = std::max(best, s);
  }
  return best;
}

double max_abs_row_sum(const Matrix& a) {
  double best = 0.0;
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    double s = 0.0;
    for (Eigen::Index c = 0; c < a.cols(); ++c) s += std::abs(a(r, c));
    best = std::max(best, s);
  }
  return best;
}

Matrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = Complex(u(rng), u(rng));
  return m;
}

Complex random_complex(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(-radius, radius);
  return {u(rng), u(rng)};
}

std::vector<Complex> random_smooth_samples(std::mt19937_64& rng, std::size_t n) {
  Complex c[6];
  for (Complex& z : c) z = random_complex(rng, 1.0);
  const double pi = 3.14159265358979323846;
  std::vector<Complex> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = static_cast<double>(j) / static_cast<double>(n - 1);
    out[j] = c[0] + c[1] * x + c[2] * x * x + c[3] * std::sin(pi * x) +
             c[4] * std::cos(2.0 * pi * x) + c[5] * std::exp(x);
  }
  return out;
}

Matrix shifted_shift_matrix(Complex zeta, std::size_t n) {
  const auto size = static_cast<Eigen::Index>(n);
  Matrix m = Matrix::Zero(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    m(i, i) = zeta;
    if (i + 1 < size) m(i, i + 1) = -1.0;
  }
  return m;
}

}  // namespace partialop::oracle
