#include "partialop/neumann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "partialop/errors.hpp"

namespace partialop {

namespace {

constexpr double kPowerRelTol = 1e-10;
constexpr int kPowerMaxIter = 10000;

void require_single_exponent(const MatrixOperator& m) {
  if (m.domain_exponent() != m.codomain_exponent()) {
    throw UnsupportedNorm(std::string("induced norm for exponent pair (") +
                          to_string(m.domain_exponent()) + ", " +
                          to_string(m.codomain_exponent()) + ") is not implemented");
  }
}

// Rayleigh quotient of M^H M at the fixed point reached from `start`.
double power_iteration_gram(const DenseMatrix& m, DenseVector v) {
  double norm = v.norm();
  if (norm == 0.0) return 0.0;
  v /= norm;
  double lambda = 0.0;
  for (int it = 0; it < kPowerMaxIter; ++it) {
    DenseVector w = m.adjoint() * (m * v);
    const double next = v.dot(w).real();
    const double wn = w.norm();
    if (wn == 0.0) return 0.0;
    v = w / wn;
    if (it > 0 && std::abs(next - lambda) <= kPowerRelTol * std::abs(next)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  // One more quotient at the final direction.
  const DenseVector w = m * v;
  return std::max(lambda, w.squaredNorm());
}

double spectral_norm(const DenseMatrix& m) {
  const Eigen::Index n = m.cols();
  DenseVector ones = DenseVector::Ones(n);
  double lambda = power_iteration_gram(m, ones);

  // The all-ones start can be orthogonal to the dominant singular direction
  // (or lie in the kernel). A second fixed start with irregular phases covers
  // those cases; both quotients are lower bounds, so the max is kept.
  DenseVector alt(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double phase = 2.399963229728653 * static_cast<double>(j + 1);
    const double amp = 1.0 + static_cast<double>(j) / static_cast<double>(n);
    alt(j) = std::polar(amp, phase);
  }
  lambda = std::max(lambda, power_iteration_gram(m, alt));
  return std::sqrt(std::max(lambda, 0.0));
}

void check_finite(const DenseMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        throw InvalidArgument("matrix entry (" + std::to_string(i) + ", " + std::to_string(j) +
                              ") is not finite");
}

// Smallest n >= 0 with scale * q^(n+1) / (1 - q) <= tol.
std::size_t series_length(double q, double scale, double tol) {
  if (q == 0.0 || scale == 0.0) return 0;
  const double target = tol * (1.0 - q) / scale;
  double estimate = std::ceil(std::log(target) / std::log(q)) - 1.0;
  if (!(estimate >= 0.0)) estimate = 0.0;
  if (estimate + 1.0 > static_cast<double>(kMaxNeumannTerms)) {
    throw ContractionViolation("contraction factor " + std::to_string(q) + " needs more than " +
                               std::to_string(kMaxNeumannTerms) + " Neumann terms for tol " +
                               std::to_string(tol));
  }
  auto n = static_cast<std::size_t>(estimate);
  auto tail = [&](std::size_t k) {
    return scale * std::exp(static_cast<double>(k + 1) * std::log(q)) / (1.0 - q);
  };
  while (n > 0 && tail(n - 1) <= tol) --n;
  while (tail(n) > tol) ++n;
  return n;
}

double tail_bound(double q, double scale, std::size_t n) {
  if (q == 0.0 || scale == 0.0) return 0.0;
  return scale * std::exp(static_cast<double>(n + 1) * std::log(q)) / (1.0 - q);
}

// sum_{k=0}^{n} y^k by Horner: P <- I + y P.
DenseMatrix geometric_sum(const DenseMatrix& y, std::size_t n) {
  const DenseMatrix id = DenseMatrix::Identity(y.rows(), y.cols());
  DenseMatrix p = id;
  for (std::size_t k = 0; k < n; ++k) p = id + y * p;
  return p;
}

void check_tol(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw InvalidArgument("tol must be a positive finite real");
}

}  // namespace

const char* to_string(NormExponent p) {
  switch (p) {
    case NormExponent::One: return "1";
    case NormExponent::Two: return "2";
    case NormExponent::Infinity: return "inf";
  }
  return "?";
}

MatrixOperator::MatrixOperator(DenseMatrix entries, NormExponent domain, NormExponent codomain)
    : entries_(std::move(entries)), domain_(domain), codomain_(codomain) {
  if (entries_.rows() < 1 || entries_.cols() < 1)
    throw InvalidArgument("matrix operator needs at least one row and one column");
  check_finite(entries_);
}

MatrixOperator::MatrixOperator(DenseMatrix entries, NormExponent p)
    : MatrixOperator(std::move(entries), p, p) {}

MatrixOperator MatrixOperator::identity(Eigen::Index n, NormExponent p) {
  return MatrixOperator(DenseMatrix::Identity(n, n), p);
}

MatrixOperator MatrixOperator::zero(Eigen::Index rows, Eigen::Index cols, NormExponent p) {
  return MatrixOperator(DenseMatrix::Zero(rows, cols), p);
}

double operator_norm(const MatrixOperator& m) {
  require_single_exponent(m);
  const DenseMatrix& a = m.entries();
  switch (m.domain_exponent()) {
    case NormExponent::One:
      return a.cwiseAbs().colwise().sum().maxCoeff();
    case NormExponent::Infinity:
      return a.cwiseAbs().rowwise().sum().maxCoeff();
    case NormExponent::Two:
      return spectral_norm(a);
  }
  throw UnsupportedNorm("unknown exponent");
}

NeumannBounds neumann_bounds(double norm_a_inv, double norm_x) {
  if (!(norm_a_inv > 0.0) || !std::isfinite(norm_a_inv))
    throw InvalidArgument("norm_a_inv must be positive and finite");
  if (!(norm_x >= 0.0) || !std::isfinite(norm_x))
    throw InvalidArgument("norm_x must be nonnegative and finite");
  const double q = norm_x * norm_a_inv;
  if (!(q < 1.0))
    throw ContractionViolation("||x|| * ||a^-1|| = " + std::to_string(q) + " is not below 1");
  const double denom = 1.0 - q;
  NeumannBounds b;
  b.inverse_norm = norm_a_inv / denom;
  b.first_order = norm_a_inv * norm_a_inv * norm_x / denom;
  b.second_order = norm_a_inv * norm_a_inv * norm_a_inv * norm_x * norm_x / denom;
  return b;
}

NeumannResult invert_near_identity(const MatrixOperator& x, double tol) {
  check_tol(tol);
  if (!x.is_square()) throw InvalidArgument("invert_near_identity needs a square operator");
  const double q = operator_norm(x);
  if (!(q < 1.0))
    throw ContractionViolation("||x|| = " + std::to_string(q) + " is not below 1");

  const std::size_t n = series_length(q, 1.0, tol);
  const NeumannBounds b = neumann_bounds(1.0, q);
  return NeumannResult{
      .inverse_approx = MatrixOperator(geometric_sum(x.entries(), n), x.domain_exponent()),
      .bound_inverse_norm = b.inverse_norm,
      .bound_first_order = b.first_order,
      .bound_second_order = b.second_order,
      .terms_used = n + 1,
      .truncation_tail_bound = tail_bound(q, 1.0, n),
      .near_contraction = q > kNearContraction,
  };
}

NeumannResult invert_perturbed(const MatrixOperator& s, const MatrixOperator& t, double tol) {
  check_tol(tol);
  if (!s.is_square()) throw InvalidArgument("S must be square");
  if (t.rows() != s.rows() || t.cols() != s.cols())
    throw InvalidArgument("S and T must have the same shape");
  require_single_exponent(s);
  require_single_exponent(t);
  if (s.domain_exponent() != t.domain_exponent())
    throw UnsupportedNorm("S and T carry different norm exponents");
  const NormExponent p = s.domain_exponent();

  Eigen::FullPivLU<DenseMatrix> lu(s.entries());
  if (!lu.isInvertible()) throw SingularOperator("S is singular");
  const MatrixOperator s_inv(lu.inverse(), p);

  const double norm_s = operator_norm(s);
  const double norm_s_inv = operator_norm(s_inv);
  const double cond = norm_s * norm_s_inv;
  if (!(cond < kMaxConditionNumber))
    throw SingularOperator("condition number of S is " + std::to_string(cond));

  const double norm_t = operator_norm(t);
  const double q = norm_t * norm_s_inv;
  if (!(q < 1.0))
    throw ContractionViolation("||T|| * ||S^-1|| = " + std::to_string(q) + " is not below 1");

  const DenseMatrix y = s_inv.entries() * t.entries();
  const std::size_t n = series_length(q, norm_s_inv, tol);
  const NeumannBounds b = neumann_bounds(norm_s_inv, norm_t);
  return NeumannResult{
      .inverse_approx = MatrixOperator(geometric_sum(y, n) * s_inv.entries(), p),
      .bound_inverse_norm = b.inverse_norm,
      .bound_first_order = b.first_order,
      .bound_second_order = b.second_order,
      .terms_used = n + 1,
      .truncation_tail_bound = tail_bound(q, norm_s_inv, n),
      .near_contraction = q > kNearContraction,
  };
}

}  // namespace partialop
