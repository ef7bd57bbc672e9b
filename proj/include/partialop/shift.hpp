#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace partialop {

using Complex = std::complex<double>;

/// Finitely supported element of l^p: entries beyond size() are zero.
class SeqVector {
 public:
  SeqVector(std::vector<Complex> values, double p);

  /// Unit vector e_k of length n.
  static SeqVector unit(std::size_t k, std::size_t n, double p);
  /// x_n = alpha^n, n = 0 .. length-1.
  static SeqVector geometric(Complex alpha, std::size_t length, double p);

  std::size_t size() const noexcept { return values_.size(); }
  double exponent() const noexcept { return p_; }
  const std::vector<Complex>& values() const noexcept { return values_; }
  const Complex& operator[](std::size_t i) const { return values_[i]; }
  /// Entry i, zero past the stored support.
  Complex at(std::size_t i) const noexcept { return i < values_.size() ? values_[i] : Complex{}; }

 private:
  std::vector<Complex> values_;
  double p_;
};

double lp_norm(const SeqVector& x);

/// ||a - b||_p over the union of supports.
double lp_distance(const SeqVector& a, const SeqVector& b);

/// (Sx)_n = x_{n+1}. A length-1 input maps to the single zero entry.
SeqVector shift_apply(const SeqVector& x);

/// Preimage x_0 = k, x_n = y_{n-1}; it lies in {x_0 = 0} iff k = 0.
SeqVector shift_section(const SeqVector& y, Complex k);

/// Relative residual bound checked by resolvent_shift.
inline constexpr double kShiftResidualTol = 1e-12;

/// (zeta I - S)^-1 x, y_n = sum_k zeta^{-k-1} x_{n+k}, evaluated by the
/// backward recurrence y_n = (x_n + y_{n+1}) / zeta; the sum is finite under
/// the zero-tail convention. Throws SpectralPoint for |zeta| <= 1, and
/// Error if the computed residual exceeds tol * ||x||.
SeqVector resolvent_shift(Complex zeta, const SeqVector& x, double tol = kShiftResidualTol);

/// ||zeta y - S y - x|| over the full support.
double shift_resolvent_residual(Complex zeta, const SeqVector& y, const SeqVector& x);

enum class SpectralStatus { Resolved, Spectral, Indeterminate };

const char* to_string(SpectralStatus s);

struct SpectralClassification {
  SpectralStatus status = SpectralStatus::Indeterminate;
  std::optional<SeqVector> witness;
  std::string note;
};

/// Length of eigenvector witnesses emitted by classify_shift.
inline constexpr std::size_t kWitnessLength = 64;
/// |zeta| within this distance of 1 counts as the unit circle.
inline constexpr double kCircleSlack = 1e-14;

/// Spectrum of the full left shift (the closed unit disk).
SpectralClassification classify_shift(Complex zeta, double p = 2.0,
                                      std::size_t witness_length = kWitnessLength);

/// Restriction T of S to F = {x_0 = 0}: 0 is resolved, |zeta| > 1 is
/// spectral with witness e_0, the punctured unit disk is left Indeterminate.
SpectralClassification classify_restricted(Complex zeta, double p = 2.0);

/// T x for x in F. Throws DomainError if x_0 != 0.
SeqVector restricted_apply(const SeqVector& x);

/// R_T(0) y = -T^{-1} y = (0, -y_0, -y_1, ...).
SeqVector restricted_resolvent_at_zero(const SeqVector& y);

}  // namespace partialop
