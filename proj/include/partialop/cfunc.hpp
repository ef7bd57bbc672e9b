#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace partialop {

using Complex = std::complex<double>;

/// Default grid size: odd and 1 mod 4, so 0, 1/4, 1/2 and 1 are nodes.
inline constexpr std::size_t kDefaultGridSize = 2001;
/// Default threshold for |Lambda(h_zeta)| to count as zero.
inline constexpr double kSpectralTol = 1e-9;

/// Uniform samples of a continuous function on [0, 1] at x_j = j / (n - 1).
class GridFunction {
 public:
  explicit GridFunction(std::vector<Complex> samples);
  /// Zero function on n nodes.
  static GridFunction zero(std::size_t n);
  static GridFunction sample(std::size_t n, const std::function<Complex(double)>& f);

  std::size_t size() const noexcept { return samples_.size(); }
  double node(std::size_t j) const noexcept {
    return static_cast<double>(j) / static_cast<double>(samples_.size() - 1);
  }
  double spacing() const noexcept { return 1.0 / static_cast<double>(samples_.size() - 1); }
  std::span<const Complex> samples() const noexcept { return samples_; }
  const Complex& operator[](std::size_t j) const { return samples_[j]; }
  Complex& operator[](std::size_t j) { return samples_[j]; }

  double sup_norm() const noexcept;

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(Complex s);

 private:
  std::vector<Complex> samples_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(Complex s, GridFunction a);

/// sup_norm(a - b).
double sup_distance(const GridFunction& a, const GridFunction& b);

/// Finite combination sum_k w_k delta_{t_k} of point evaluations on [0, 1].
class DiracFunctional {
 public:
  struct Atom {
    double point;
    Complex weight;
  };

  DiracFunctional() = default;
  explicit DiracFunctional(std::vector<Atom> atoms);

  /// The null functional (kernel is all of C([0,1])).
  static DiracFunctional null() { return DiracFunctional(); }
  static DiracFunctional dirac(double t, Complex weight = 1.0);
  /// delta_{1/2} - delta_0.
  static DiracFunctional half_minus_origin();

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  /// True when there are no atoms, or every weight is zero.
  bool is_null() const noexcept;

  /// Closed form of Lambda(h_zeta) = sum_k w_k exp(zeta t_k); needs no grid.
  Complex on_exponential(Complex zeta) const;

 private:
  std::vector<Atom> atoms_;
};

/// Largest distance, in cells, allowed between an atom and its grid node.
inline constexpr double kAtomNodeSlack = 1e-9;

/// sum_k w_k f(t_k), each t_k read at its grid node. Throws GridMismatch when
/// an atom does not sit on a node.
Complex apply_functional(const DiracFunctional& functional, const GridFunction& f);

/// Samples of h_zeta(x) = exp(zeta x).
GridFunction h_zeta(Complex zeta, std::size_t n);

/// K_zeta f(x) = exp(zeta x) * int_0^x exp(-zeta t) f(t) dt by the cumulative
/// composite trapezoid rule on the transformed integrand. The running sum is
/// kept rescaled by exp(zeta x_j), which is the same rule without overflow.
GridFunction k_zeta(Complex zeta, const GridFunction& f);

/// Exact sup-norm operator norm of K_zeta on C([0,1]): (e^a - 1)/a with
/// a = Re zeta, and 1 at a = 0.
double k_zeta_norm_exact(Complex zeta);

/// |Lambda(h_zeta)| <= tol, i.e. zeta is in the spectrum of the derivative
/// restricted by ker Lambda.
bool spectrum_member(const DiracFunctional& functional, Complex zeta, double tol = kSpectralTol);

/// Solution of zeta u - u' = f inside ker Lambda with its coefficients:
/// u = gamma h_zeta - K_zeta f, A = Lambda(h_zeta), B = Lambda(K_zeta f).
struct ResolveRecord {
  Complex zeta;
  Complex A;
  Complex B;
  Complex gamma;
  GridFunction solution;
};

/// Resolvent R(zeta) f for the restricted derivation operator.
/// Throws DomainError if |Lambda f| > tol * sup_norm(f) and SpectralPoint if
/// |Lambda(h_zeta)| <= tol.
ResolveRecord resolve_derivative(const DiracFunctional& functional, Complex zeta,
                                 const GridFunction& f, double tol = kSpectralTol);

/// First derivative by central differences, second-order one-sided at the ends.
GridFunction grid_derivative(const GridFunction& u);

/// max_j |zeta u(x_j) - u'(x_j) - f(x_j)|.
double residual_ode(Complex zeta, const GridFunction& u, const GridFunction& f);

/// Closed-form envelope of ||R(zeta)|| for real zeta > 0: example 2 (Lambda =
/// delta_0) gives both bounds, example 3 (Lambda = delta_1/2 - delta_0) only
/// the lower one.
struct ClosedFormBounds {
  double lower = 0.0;
  std::optional<double> upper;
};
ClosedFormBounds closed_form_bounds(int example_id, double zeta);

/// f(x) = x.
GridFunction example2_witness(std::size_t n);
/// f(x) = e^{zeta x} sin(4 pi x) on [0, 1/2], e^{zeta/2}(2x - 1) on [1/2, 1].
/// Requires odd n so that 1/2 is a node.
GridFunction example3_witness(double zeta, std::size_t n);

/// f - Lambda(f) g / Lambda(g). Requires Lambda(g) != 0.
GridFunction project_to_kernel(const DiracFunctional& functional, const GridFunction& f,
                               const GridFunction& g);

/// Fixed smooth test functions pushed into ker Lambda, for witness ratios at
/// points where no extremal witness is known.
std::vector<GridFunction> kernel_witnesses(const DiracFunctional& functional, std::size_t n);

/// max over witnesses of ||R(zeta) f|| / ||f||; 0 for an empty list.
double resolvent_norm_lower(const DiracFunctional& functional, Complex zeta,
                            std::span<const GridFunction> witnesses, double tol = kSpectralTol);

}  // namespace partialop
