#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "partialop/errors.hpp"
#include "partialop/neumann.hpp"
#include "partialop/oracles.hpp"

using namespace partialop;

namespace {

DenseMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  DenseMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

double norm_of(const DenseMatrix& m, NormExponent p) { return operator_norm(MatrixOperator(m, p)); }

}  // namespace

TEST(MatrixOperator, RejectsNonFiniteAndEmpty) {
  DenseMatrix m = DenseMatrix::Identity(2, 2);
  m(0, 1) = Complex(std::nan(""), 0.0);
  EXPECT_THROW(MatrixOperator(m, NormExponent::Two), InvalidArgument);
  EXPECT_THROW(MatrixOperator(DenseMatrix(0, 3), NormExponent::One), InvalidArgument);
}

TEST(OperatorNorm, IdentityInf) {
  EXPECT_DOUBLE_EQ(operator_norm(MatrixOperator::identity(3, NormExponent::Infinity)), 1.0);
}

TEST(OperatorNorm, ColumnSum) {
  EXPECT_DOUBLE_EQ(norm_of(mat2(0, 2, 0, 0), NormExponent::One), 2.0);
}

TEST(OperatorNorm, RowSum) {
  EXPECT_DOUBLE_EQ(norm_of(mat2(1, -2, Complex(0, 3), 0), NormExponent::Infinity), 3.0);
}

TEST(OperatorNorm, SpectralMatchesSvdOracle) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    const DenseMatrix m = oracle::random_matrix(rng, 4, 4);
    const double svd = oracle::largest_singular_value(m);
    EXPECT_NEAR(norm_of(m, NormExponent::Two), svd, 1e-8 * svd);
  }
}

TEST(OperatorNorm, SpectralRectangular) {
  std::mt19937_64 rng(8);
  const DenseMatrix m = oracle::random_matrix(rng, 3, 7);
  EXPECT_NEAR(norm_of(m, NormExponent::Two), oracle::largest_singular_value(m), 1e-8);
}

// MᴴM = [[5,-3],[-3,5]]: all-ones is the eigenvector of the smaller value 2,
// the norm is sqrt(8).
TEST(OperatorNorm, SpectralStartOrthogonalToDominantDirection) {
  EXPECT_NEAR(norm_of(mat2(2, -2, 1, 1), NormExponent::Two), std::sqrt(8.0), 1e-9);
}

TEST(OperatorNorm, SpectralStartInKernel) {
  DenseMatrix m(1, 2);
  m << 1, -1;
  EXPECT_NEAR(norm_of(m, NormExponent::Two), std::sqrt(2.0), 1e-9);
}

TEST(OperatorNorm, ZeroMatrix) {
  EXPECT_EQ(operator_norm(MatrixOperator::zero(3, 2, NormExponent::Two)), 0.0);
}

TEST(OperatorNorm, MixedExponentsUnsupported) {
  const MatrixOperator m(DenseMatrix::Identity(2, 2), NormExponent::One, NormExponent::Two);
  EXPECT_THROW(operator_norm(m), UnsupportedNorm);
}

TEST(NeumannBounds, Examples) {
  auto b = neumann_bounds(1.0, 0.5);
  EXPECT_DOUBLE_EQ(b.inverse_norm, 2.0);
  EXPECT_DOUBLE_EQ(b.first_order, 1.0);
  EXPECT_DOUBLE_EQ(b.second_order, 0.5);

  b = neumann_bounds(1.0, 0.0);
  EXPECT_DOUBLE_EQ(b.inverse_norm, 1.0);
  EXPECT_DOUBLE_EQ(b.first_order, 0.0);
  EXPECT_DOUBLE_EQ(b.second_order, 0.0);

  b = neumann_bounds(2.0, 0.25);
  EXPECT_DOUBLE_EQ(b.inverse_norm, 4.0);
  EXPECT_DOUBLE_EQ(b.first_order, 2.0);
  EXPECT_DOUBLE_EQ(b.second_order, 1.0);
}

TEST(NeumannBounds, ContractionViolation) {
  EXPECT_THROW(neumann_bounds(1.0, 1.0), ContractionViolation);
  EXPECT_THROW(neumann_bounds(2.0, 0.6), ContractionViolation);
  EXPECT_THROW(neumann_bounds(0.0, 0.1), InvalidArgument);
}

TEST(NeumannBounds, MonotoneInNormX) {
  for (double a_inv : {0.5, 1.0, 3.0}) {
    NeumannBounds prev = neumann_bounds(a_inv, 0.0);
    for (int k = 1; k < 50; ++k) {
      const NeumannBounds b = neumann_bounds(a_inv, 0.99 * k / (50.0 * a_inv));
      EXPECT_GE(b.inverse_norm, prev.inverse_norm);
      EXPECT_GE(b.first_order, prev.first_order);
      EXPECT_GE(b.second_order, prev.second_order);
      prev = b;
    }
  }
}

TEST(InvertNearIdentity, ZeroMatrix) {
  const auto r = invert_near_identity(MatrixOperator::zero(3, 3, NormExponent::Two), 1e-12);
  EXPECT_TRUE(r.inverse_approx.entries().isApprox(DenseMatrix::Identity(3, 3)));
  EXPECT_EQ(r.bound_inverse_norm, 1.0);
  EXPECT_EQ(r.bound_first_order, 0.0);
  EXPECT_EQ(r.bound_second_order, 0.0);
  EXPECT_LE(r.terms_used, 1u);
  EXPECT_EQ(r.truncation_tail_bound, 0.0);
}

TEST(InvertNearIdentity, ScalarHalf) {
  DenseMatrix x(1, 1);
  x << 0.5;
  const double tol = 1e-12;
  const auto r = invert_near_identity(MatrixOperator(x, NormExponent::One), tol);
  EXPECT_NEAR(r.inverse_approx.entries()(0, 0).real(), 2.0, tol);
  EXPECT_LE(r.truncation_tail_bound, tol);
  EXPECT_FALSE(r.near_contraction);
}

// Oracle: (I - x)^-1 = I + x for nilpotent x, from the direct 2x2 inverse.
TEST(InvertNearIdentity, NilpotentIsExact) {
  const DenseMatrix x = mat2(0, 0.9, 0, 0);
  const DenseMatrix direct = oracle::gauss_inverse(DenseMatrix::Identity(2, 2) - x);
  for (NormExponent p : {NormExponent::One, NormExponent::Two, NormExponent::Infinity}) {
    const auto r = invert_near_identity(MatrixOperator(x, p), 1e-10);
    EXPECT_EQ(r.inverse_approx.entries(), direct);
    EXPECT_EQ(r.inverse_approx.entries(), DenseMatrix::Identity(2, 2) + x);
  }
}

TEST(InvertNearIdentity, NotContraction) {
  DenseMatrix x(1, 1);
  x << 1.0;
  EXPECT_THROW(invert_near_identity(MatrixOperator(x, NormExponent::Two), 1e-6),
               ContractionViolation);
  EXPECT_THROW(invert_near_identity(MatrixOperator(DenseMatrix::Zero(2, 3), NormExponent::One), 1e-6),
               InvalidArgument);
}

TEST(InvertNearIdentity, NearContractionFlagged) {
  DenseMatrix x(1, 1);
  x << 0.9995;
  const auto r = invert_near_identity(MatrixOperator(x, NormExponent::Infinity), 1e-6);
  EXPECT_TRUE(r.near_contraction);
  EXPECT_GT(r.terms_used, 10000u);
  EXPECT_NEAR(r.inverse_approx.entries()(0, 0).real(), 2000.0, 1e-6);
}

// Property: error against a Gaussian-elimination inverse stays within
// tol / (1 - ||x||).
TEST(InvertNearIdentity, RandomAgainstGaussianElimination) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(1, 8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double tol = 1e-10;
  const NormExponent ps[] = {NormExponent::One, NormExponent::Two, NormExponent::Infinity};
  for (int t = 0; t < 100; ++t) {
    const int n = dim(rng);
    const NormExponent p = ps[t % 3];
    DenseMatrix x = oracle::random_matrix(rng, n, n);
    x *= 0.9 * unit(rng) / norm_of(x, p);
    const double q = norm_of(x, p);
    const auto r = invert_near_identity(MatrixOperator(x, p), tol);
    const DenseMatrix direct = oracle::gauss_inverse(DenseMatrix::Identity(n, n) - x);
    EXPECT_LE(norm_of(r.inverse_approx.entries() - direct, p), tol / (1.0 - q));
    EXPECT_LE(r.truncation_tail_bound, tol);
  }
}

TEST(InvertPerturbed, ScalarCase) {
  const auto r = invert_perturbed(MatrixOperator::identity(2, NormExponent::Two),
                                  MatrixOperator(0.5 * DenseMatrix::Identity(2, 2), NormExponent::Two),
                                  1e-12);
  EXPECT_TRUE(r.inverse_approx.entries().isApprox(2.0 * DenseMatrix::Identity(2, 2), 1e-11));
}

// Oracle: direct solve of (S - T) = diag(1, 3).
TEST(InvertPerturbed, DiagonalInf) {
  const DenseMatrix s = mat2(2, 0, 0, 4);
  const DenseMatrix t = DenseMatrix::Identity(2, 2);
  const double tol = 1e-12;
  const auto r = invert_perturbed(MatrixOperator(s, NormExponent::Infinity),
                                  MatrixOperator(t, NormExponent::Infinity), tol);
  const DenseMatrix expected = oracle::gauss_inverse(s - t);
  EXPECT_NEAR(expected(0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(expected(1, 1).real(), 1.0 / 3.0, 1e-15);
  EXPECT_LE((r.inverse_approx.entries() - expected).cwiseAbs().maxCoeff(), tol);
  // ||S^-1|| = 1/2, ||T|| = 1.
  EXPECT_DOUBLE_EQ(r.bound_inverse_norm, 1.0);
  EXPECT_DOUBLE_EQ(r.bound_first_order, 0.5);
  EXPECT_DOUBLE_EQ(r.bound_second_order, 0.25);
}

TEST(InvertPerturbed, ContractionViolation) {
  EXPECT_THROW(invert_perturbed(MatrixOperator::identity(2, NormExponent::Two),
                                MatrixOperator(1.5 * DenseMatrix::Identity(2, 2), NormExponent::Two),
                                1e-8),
               ContractionViolation);
}

TEST(InvertPerturbed, SingularS) {
  EXPECT_THROW(invert_perturbed(MatrixOperator(mat2(1, 2, 2, 4), NormExponent::One),
                                MatrixOperator::zero(2, 2, NormExponent::One), 1e-8),
               SingularOperator);
  EXPECT_THROW(invert_perturbed(MatrixOperator(mat2(1, 0, 0, 1e-13), NormExponent::One),
                                MatrixOperator::zero(2, 2, NormExponent::One), 1e-8),
               SingularOperator);
}

TEST(InvertPerturbed, MixedExponents) {
  EXPECT_THROW(invert_perturbed(MatrixOperator::identity(2, NormExponent::One),
                                MatrixOperator::zero(2, 2, NormExponent::Two), 1e-8),
               UnsupportedNorm);
}

// Property: the three oracle differences stay under their certified bounds.
TEST(InvertPerturbed, ThreeBoundsHoldOnRandomPairs) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> dim(1, 8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double tol = 1e-10;
  const NormExponent ps[] = {NormExponent::One, NormExponent::Two, NormExponent::Infinity};
  for (int t = 0; t < 100; ++t) {
    const int n = dim(rng);
    const NormExponent p = ps[t % 3];
    DenseMatrix a = oracle::random_matrix(rng, n, n) + 3.0 * DenseMatrix::Identity(n, n);
    const DenseMatrix a_inv = oracle::gauss_inverse(a);
    DenseMatrix x = oracle::random_matrix(rng, n, n);
    x *= 0.9 * unit(rng) / (norm_of(x, p) * norm_of(a_inv, p));
    const auto r = invert_perturbed(MatrixOperator(a, p), MatrixOperator(x, p), tol);
    const DenseMatrix exact = oracle::gauss_inverse(a - x);
    EXPECT_LE(norm_of(exact, p), r.bound_inverse_norm + 10 * tol);
    EXPECT_LE(norm_of(exact - a_inv, p), r.bound_first_order + 10 * tol);
    EXPECT_LE(norm_of(exact - a_inv - a_inv * x * a_inv, p), r.bound_second_order + 10 * tol);
    const DenseMatrix resid = (a - x) * r.inverse_approx.entries() - DenseMatrix::Identity(n, n);
    EXPECT_LE(norm_of(resid, p), 10 * tol * norm_of(a - x, p));
  }
}
