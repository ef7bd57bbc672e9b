#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace partialop {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;

/// Exponent of the vector norm carried by a matrix domain or codomain.
enum class NormExponent { One, Two, Infinity };

const char* to_string(NormExponent p);

/// Dense complex matrix viewed as a bounded map between finite-dimensional
/// l^p spaces. Entries are finite and the shape is at least 1x1.
class MatrixOperator {
 public:
  MatrixOperator(DenseMatrix entries, NormExponent domain, NormExponent codomain);
  /// Same exponent on both sides.
  MatrixOperator(DenseMatrix entries, NormExponent p);

  static MatrixOperator identity(Eigen::Index n, NormExponent p);
  static MatrixOperator zero(Eigen::Index rows, Eigen::Index cols, NormExponent p);

  const DenseMatrix& entries() const noexcept { return entries_; }
  Eigen::Index rows() const noexcept { return entries_.rows(); }
  Eigen::Index cols() const noexcept { return entries_.cols(); }
  bool is_square() const noexcept { return rows() == cols(); }
  NormExponent domain_exponent() const noexcept { return domain_; }
  NormExponent codomain_exponent() const noexcept { return codomain_; }

 private:
  DenseMatrix entries_;
  NormExponent domain_;
  NormExponent codomain_;
};

/// Induced norm sup{ ||Mx|| : ||x|| <= 1 } for a (p, p) exponent pair.
///
/// p = 1 and p = inf use the exact column-sum and row-sum formulas. p = 2 runs
/// power iteration on M^H M from the all-ones vector until the Rayleigh
/// quotient moves by less than 1e-10 relative (at most 10000 iterations).
/// Throws UnsupportedNorm for mixed exponent pairs.
double operator_norm(const MatrixOperator& m);

/// Right-hand sides of the three perturbed-inverse inequalities for
/// ||a^-1|| and ||x||:
///   inverse_norm  >= ||(a-x)^-1||
///   first_order   >= ||(a-x)^-1 - a^-1||
///   second_order  >= ||(a-x)^-1 - a^-1 - a^-1 x a^-1||
struct NeumannBounds {
  double inverse_norm = 0.0;
  double first_order = 0.0;
  double second_order = 0.0;
};

/// Throws ContractionViolation unless norm_x * norm_a_inv < 1.
NeumannBounds neumann_bounds(double norm_a_inv, double norm_x);

struct NeumannResult {
  MatrixOperator inverse_approx;
  double bound_inverse_norm = 0.0;
  double bound_first_order = 0.0;
  double bound_second_order = 0.0;
  /// Number of summands x^0 .. x^n in the truncated series.
  std::size_t terms_used = 0;
  /// Certified bound on ||inverse_approx - exact inverse||.
  double truncation_tail_bound = 0.0;
  /// Contraction factor above 0.999: bounds are valid but large.
  bool near_contraction = false;
};

/// Contraction factor above which a result is flagged near_contraction.
inline constexpr double kNearContraction = 0.999;
/// Hard cap on series length; a request needing more throws ContractionViolation.
inline constexpr std::size_t kMaxNeumannTerms = 2'000'000;

/// (I - x)^-1 as the partial sum sum_{k<=n} x^k, with n the smallest index
/// such that ||x||^(n+1) / (1 - ||x||) <= tol.
NeumannResult invert_near_identity(const MatrixOperator& x, double tol);

/// (S - T)^-1 as (sum_k (S^-1 T)^k) S^-1, with the bounds instantiated from
/// ||S^-1|| and ||T||. Throws SingularOperator when S is not invertible or its
/// condition number reaches 1e12.
NeumannResult invert_perturbed(const MatrixOperator& s, const MatrixOperator& t, double tol);

inline constexpr double kMaxConditionNumber = 1e12;

}  // namespace partialop
