#pragma once

// Reference computations used by the property suites and tests. Nothing here
// is called by the library proper; each routine takes an independent route to
// a quantity the library computes another way.

#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace partialop::oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Gauss-Jordan elimination with partial pivoting. Throws std::runtime_error
/// on an exactly zero pivot.
Matrix gauss_inverse(const Matrix& a);

/// Solves a x = b by Gaussian elimination with partial pivoting.
std::vector<Complex> gauss_solve(const Matrix& a, const std::vector<Complex>& b);

/// Largest singular value from a full SVD.
double largest_singular_value(const Matrix& a);

double max_abs_col_sum(const Matrix& a);
double max_abs_row_sum(const Matrix& a);

/// Entries with real and imaginary parts uniform in [-1, 1].
Matrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols);
Complex random_complex(std::mt19937_64& rng, double radius);

/// Random smooth function on n nodes: a complex combination of 1, x, x^2,
/// sin(pi x), cos(2 pi x) and e^{x}.
std::vector<Complex> random_smooth_samples(std::mt19937_64& rng, std::size_t n);

/// Dense (zeta I - S_N) for the truncated left shift on N entries.
Matrix shifted_shift_matrix(Complex zeta, std::size_t n);

}  // namespace partialop::oracle
