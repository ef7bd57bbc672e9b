#include "partialop/cfunc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "partialop/errors.hpp"

namespace partialop {

namespace {

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_same_grid(const GridFunction& a, const GridFunction& b) {
  if (a.size() != b.size())
    throw InvalidArgument("grid sizes differ: " + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
}

void require_grid_size(std::size_t n, std::size_t min_n = 2) {
  if (n < min_n) throw InvalidArgument("grid needs at least " + std::to_string(min_n) + " nodes");
}

}  // namespace

GridFunction::GridFunction(std::vector<Complex> samples) : samples_(std::move(samples)) {
  require_grid_size(samples_.size());
  for (std::size_t j = 0; j < samples_.size(); ++j)
    if (!is_finite(samples_[j]))
      throw InvalidArgument("grid sample " + std::to_string(j) + " is not finite");
}

GridFunction GridFunction::zero(std::size_t n) {
  require_grid_size(n);
  return GridFunction(std::vector<Complex>(n, Complex{}));
}

GridFunction GridFunction::sample(std::size_t n, const std::function<Complex(double)>& f) {
  require_grid_size(n);
  std::vector<Complex> values(n);
  const auto denom = static_cast<double>(n - 1);
  for (std::size_t j = 0; j < n; ++j) values[j] = f(static_cast<double>(j) / denom);
  return GridFunction(std::move(values));
}

double GridFunction::sup_norm() const noexcept {
  double m = 0.0;
  for (const Complex& z : samples_) m = std::max(m, std::abs(z));
  return m;
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  require_same_grid(*this, other);
  for (std::size_t j = 0; j < samples_.size(); ++j) samples_[j] += other.samples_[j];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  require_same_grid(*this, other);
  for (std::size_t j = 0; j < samples_.size(); ++j) samples_[j] -= other.samples_[j];
  return *this;
}

GridFunction& GridFunction::operator*=(Complex s) {
  for (Complex& z : samples_) z *= s;
  return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(Complex s, GridFunction a) { return a *= s; }

double sup_distance(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a, b);
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

DiracFunctional::DiracFunctional(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  for (const Atom& a : atoms_) {
    if (!(a.point >= 0.0 && a.point <= 1.0))
      throw InvalidArgument("Dirac atom at " + std::to_string(a.point) + " is outside [0, 1]");
    if (!is_finite(a.weight)) throw InvalidArgument("Dirac atom weight is not finite");
  }
}

DiracFunctional DiracFunctional::dirac(double t, Complex weight) {
  return DiracFunctional({Atom{t, weight}});
}

DiracFunctional DiracFunctional::half_minus_origin() {
  return DiracFunctional({Atom{0.5, 1.0}, Atom{0.0, -1.0}});
}

bool DiracFunctional::is_null() const noexcept {
  return std::all_of(atoms_.begin(), atoms_.end(),
                     [](const Atom& a) { return a.weight == Complex{}; });
}

Complex DiracFunctional::on_exponential(Complex zeta) const {
  Complex sum{};
  for (const Atom& a : atoms_) sum += a.weight * std::exp(zeta * a.point);
  return sum;
}

Complex apply_functional(const DiracFunctional& functional, const GridFunction& f) {
  const auto cells = static_cast<double>(f.size() - 1);
  Complex sum{};
  for (const auto& atom : functional.atoms()) {
    const double pos = atom.point * cells;
    const double node = std::round(pos);
    if (std::abs(pos - node) > kAtomNodeSlack)
      throw GridMismatch("Dirac atom at " + std::to_string(atom.point) +
                         " is not a node of a grid with " + std::to_string(f.size()) + " points");
    sum += atom.weight * f[static_cast<std::size_t>(node)];
  }
  return sum;
}

GridFunction h_zeta(Complex zeta, std::size_t n) {
  return GridFunction::sample(n, [zeta](double x) { return std::exp(zeta * x); });
}

GridFunction k_zeta(Complex zeta, const GridFunction& f) {
  const std::size_t n = f.size();
  const double h = f.spacing();
  const Complex step = std::exp(zeta * h);
  std::vector<Complex> out(n);
  out[0] = 0.0;
  // K_j = e^{zeta h} K_{j-1} + h/2 (e^{zeta h} f_{j-1} + f_j)
  for (std::size_t j = 1; j < n; ++j)
    out[j] = step * out[j - 1] + 0.5 * h * (step * f[j - 1] + f[j]);
  return GridFunction(std::move(out));
}

double k_zeta_norm_exact(Complex zeta) {
  const double a = zeta.real();
  if (std::abs(a) < 1e-8) return 1.0 + a / 2.0 + a * a / 6.0;
  return std::expm1(a) / a;
}

bool spectrum_member(const DiracFunctional& functional, Complex zeta, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("spectral tolerance must be positive");
  return std::abs(functional.on_exponential(zeta)) <= tol;
}

ResolveRecord resolve_derivative(const DiracFunctional& functional, Complex zeta,
                                 const GridFunction& f, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  const Complex lf = apply_functional(functional, f);
  if (std::abs(lf) > tol * f.sup_norm())
    throw DomainError("right-hand side is not in ker Lambda: |Lambda f| = " +
                      std::to_string(std::abs(lf)));
  if (spectrum_member(functional, zeta, tol))
    throw SpectralPoint("zeta = (" + std::to_string(zeta.real()) + ", " +
                        std::to_string(zeta.imag()) + ") is in the spectrum");

  const GridFunction h = h_zeta(zeta, f.size());
  GridFunction k = k_zeta(zeta, f);
  // A read on the grid so that Lambda(solution) cancels to round-off.
  const Complex a = apply_functional(functional, h);
  const Complex b = apply_functional(functional, k);
  const Complex gamma = b / a;
  GridFunction u = gamma * h;
  u -= k;
  return ResolveRecord{zeta, a, b, gamma, std::move(u)};
}

GridFunction grid_derivative(const GridFunction& u) {
  const std::size_t n = u.size();
  require_grid_size(n, 3);
  const double h = u.spacing();
  std::vector<Complex> d(n);
  d[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
  for (std::size_t j = 1; j + 1 < n; ++j) d[j] = (u[j + 1] - u[j - 1]) / (2.0 * h);
  d[n - 1] = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * h);
  return GridFunction(std::move(d));
}

double residual_ode(Complex zeta, const GridFunction& u, const GridFunction& f) {
  require_same_grid(u, f);
  const GridFunction du = grid_derivative(u);
  double m = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j)
    m = std::max(m, std::abs(zeta * u[j] - du[j] - f[j]));
  return m;
}

ClosedFormBounds closed_form_bounds(int example_id, double zeta) {
  if (!(zeta > 0.0) || !std::isfinite(zeta))
    throw InvalidArgument("closed-form bounds need a positive real zeta");
  const double z2 = zeta * zeta;
  switch (example_id) {
    case 2: {
      // (e^z - 1 - z)/z^2 <= ||R(z)|| <= (e^z - 1)/z
      const double lower = zeta < 1e-3 ? 0.5 + zeta / 6.0 + z2 / 24.0
                                       : (std::expm1(zeta) - zeta) / z2;
      return ClosedFormBounds{lower, std::expm1(zeta) / zeta};
    }
    case 3: {
      // 2 e^{z/2}/z^2 - 1/z - 2/z^2 = (2 (e^{z/2} - 1) - z)/z^2
      const double lower = zeta < 1e-3 ? 0.25 + zeta / 24.0 + z2 / 192.0
                                       : (2.0 * std::expm1(zeta / 2.0) - zeta) / z2;
      return ClosedFormBounds{lower, std::nullopt};
    }
    default:
      throw InvalidArgument("no closed-form bounds for example " + std::to_string(example_id));
  }
}

GridFunction example2_witness(std::size_t n) {
  return GridFunction::sample(n, [](double x) { return Complex(x); });
}

GridFunction example3_witness(double zeta, std::size_t n) {
  if (!(zeta > 0.0)) throw InvalidArgument("example 3 witness needs zeta > 0");
  if (n % 2 == 0) throw InvalidArgument("example 3 witness needs an odd grid so 1/2 is a node");
  require_grid_size(n, 3);
  const std::size_t half = (n - 1) / 2;
  const double peak = std::exp(zeta / 2.0);
  std::vector<Complex> values(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = static_cast<double>(j) / static_cast<double>(n - 1);
    values[j] = j <= half ? std::exp(zeta * x) * std::sin(4.0 * std::numbers::pi * x)
                          : peak * (2.0 * x - 1.0);
  }
  // sin(2 pi) is not exactly zero in floating point.
  values[half] = 0.0;
  return GridFunction(std::move(values));
}

GridFunction project_to_kernel(const DiracFunctional& functional, const GridFunction& f,
                               const GridFunction& g) {
  const Complex lg = apply_functional(functional, g);
  if (lg == Complex{}) throw InvalidArgument("projection direction g has Lambda(g) = 0");
  const Complex lf = apply_functional(functional, f);
  return f - (lf / lg) * g;
}

std::vector<GridFunction> kernel_witnesses(const DiracFunctional& functional, std::size_t n) {
  std::vector<GridFunction> base;
  base.push_back(GridFunction::sample(n, [](double x) { return Complex(x); }));
  base.push_back(GridFunction::sample(n, [](double x) { return Complex(x * x); }));
  base.push_back(
      GridFunction::sample(n, [](double x) { return Complex(std::sin(std::numbers::pi * x)); }));
  base.push_back(GridFunction::sample(n, [](double x) { return Complex(std::cos(3.0 * x) - 1.0); }));
  if (functional.is_null()) return base;

  // Direction with the largest |Lambda(g)| among a few fixed candidates.
  std::vector<GridFunction> directions;
  directions.push_back(h_zeta(1.0, n));
  directions.push_back(GridFunction::sample(n, [](double) { return Complex(1.0); }));
  directions.push_back(GridFunction::sample(n, [](double x) { return Complex(x); }));
  directions.push_back(h_zeta(Complex(0.0, 3.0), n));
  const GridFunction* best = nullptr;
  double best_abs = 0.0;
  for (const auto& g : directions) {
    const double v = std::abs(apply_functional(functional, g));
    if (v > best_abs) {
      best_abs = v;
      best = &g;
    }
  }

  std::vector<GridFunction> out;
  for (auto& f : base) {
    GridFunction w = best ? project_to_kernel(functional, f, *best) : std::move(f);
    if (w.sup_norm() > 1e-12 &&
        std::abs(apply_functional(functional, w)) <= kSpectralTol * w.sup_norm())
      out.push_back(std::move(w));
  }
  return out;
}

double resolvent_norm_lower(const DiracFunctional& functional, Complex zeta,
                            std::span<const GridFunction> witnesses, double tol) {
  double best = 0.0;
  for (const GridFunction& f : witnesses) {
    const double fn = f.sup_norm();
    if (fn == 0.0) continue;
    const ResolveRecord rec = resolve_derivative(functional, zeta, f, tol);
    best = std::max(best, rec.solution.sup_norm() / fn);
  }
  return best;
}

}  // namespace partialop
