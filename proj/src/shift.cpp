#include "partialop/shift.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "partialop/errors.hpp"

namespace partialop {

namespace {

void check_exponent(double p) {
  if (!(p >= 1.0)) throw InvalidExponent("sequence exponent must lie in [1, inf]");
}

double norm_of(const std::vector<Complex>& v, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (const Complex& z : v) m = std::max(m, std::abs(z));
    return m;
  }
  // Scale by the largest entry so |x|^p stays representable.
  double scale = 0.0;
  for (const Complex& z : v) scale = std::max(scale, std::abs(z));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  if (p == 1.0) {
    for (const Complex& z : v) sum += std::abs(z);
    return sum;
  }
  if (p == 2.0) {
    for (const Complex& z : v) {
      const double r = std::abs(z) / scale;
      sum += r * r;
    }
    return scale * std::sqrt(sum);
  }
  for (const Complex& z : v) sum += std::pow(std::abs(z) / scale, p);
  return scale * std::pow(sum, 1.0 / p);
}

std::string format_complex(Complex z) {
  char buf[64];
  if (z.imag() == 0.0)
    std::snprintf(buf, sizeof buf, "%.6g", z.real());
  else
    std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
  return buf;
}

}  // namespace

SeqVector::SeqVector(std::vector<Complex> values, double p) : values_(std::move(values)), p_(p) {
  check_exponent(p);
  if (values_.empty()) throw InvalidArgument("sequence vector needs at least one entry");
  for (const Complex& z : values_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw InvalidArgument("sequence entry is not finite");
}

SeqVector SeqVector::unit(std::size_t k, std::size_t n, double p) {
  if (k >= n) throw InvalidArgument("unit vector index outside its length");
  std::vector<Complex> v(n);
  v[k] = 1.0;
  return SeqVector(std::move(v), p);
}

SeqVector SeqVector::geometric(Complex alpha, std::size_t length, double p) {
  std::vector<Complex> v(length);
  Complex power = 1.0;
  for (auto& z : v) {
    z = power;
    power *= alpha;
  }
  return SeqVector(std::move(v), p);
}

double lp_norm(const SeqVector& x) { return norm_of(x.values(), x.exponent()); }

double lp_distance(const SeqVector& a, const SeqVector& b) {
  const std::size_t n = std::max(a.size(), b.size());
  std::vector<Complex> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = a.at(i) - b.at(i);
  return norm_of(d, a.exponent());
}

SeqVector shift_apply(const SeqVector& x) {
  if (x.size() == 1) return SeqVector({Complex{}}, x.exponent());
  return SeqVector(std::vector<Complex>(x.values().begin() + 1, x.values().end()), x.exponent());
}

SeqVector shift_section(const SeqVector& y, Complex k) {
  std::vector<Complex> v;
  v.reserve(y.size() + 1);
  v.push_back(k);
  v.insert(v.end(), y.values().begin(), y.values().end());
  return SeqVector(std::move(v), y.exponent());
}

double shift_resolvent_residual(Complex zeta, const SeqVector& y, const SeqVector& x) {
  const std::size_t n = std::max(y.size(), x.size());
  std::vector<Complex> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = zeta * y.at(i) - y.at(i + 1) - x.at(i);
  return norm_of(r, x.exponent());
}

SeqVector resolvent_shift(Complex zeta, const SeqVector& x, double tol) {
  if (!(std::abs(zeta) > 1.0))
    throw SpectralPoint("|zeta| <= 1 lies in the spectrum of the shift");
  const std::size_t n = x.size();
  std::vector<Complex> y(n);
  y[n - 1] = x[n - 1] / zeta;
  for (std::size_t i = n - 1; i-- > 0;) y[i] = (x[i] + y[i + 1]) / zeta;
  SeqVector out(std::move(y), x.exponent());
  const double residual = shift_resolvent_residual(zeta, out, x);
  if (residual > tol * lp_norm(x))
    throw Error("shift resolvent residual " + std::to_string(residual) + " exceeds tolerance");
  return out;
}

const char* to_string(SpectralStatus s) {
  switch (s) {
    case SpectralStatus::Resolved: return "Resolved";
    case SpectralStatus::Spectral: return "Spectral";
    case SpectralStatus::Indeterminate: return "Indeterminate";
  }
  return "?";
}

SpectralClassification classify_shift(Complex zeta, double p, std::size_t witness_length) {
  check_exponent(p);
  const double r = std::abs(zeta);
  if (r > 1.0 + kCircleSlack) return {SpectralStatus::Resolved, std::nullopt, "|zeta| > 1"};
  if (std::abs(r - 1.0) <= kCircleSlack)
    return {SpectralStatus::Spectral, std::nullopt, "boundary, spectrum closed"};
  if (zeta == Complex{})
    return {SpectralStatus::Spectral, SeqVector::unit(0, 2, p), "not one-one"};
  return {SpectralStatus::Spectral, SeqVector::geometric(zeta, witness_length, p), "eigenvalue"};
}

SpectralClassification classify_restricted(Complex zeta, double p) {
  check_exponent(p);
  if (zeta == Complex{}) return {SpectralStatus::Resolved, std::nullopt, "resolvent is -T^-1"};
  const double r = std::abs(zeta);
  if (r > 1.0 + kCircleSlack) {
    return {SpectralStatus::Spectral, SeqVector::unit(0, 1, p),
            "unique candidate has x0 = " + format_complex(1.0 / zeta)};
  }
  return {SpectralStatus::Indeterminate, std::nullopt, "0 < |zeta| <= 1 not settled"};
}

SeqVector restricted_apply(const SeqVector& x) {
  if (x[0] != Complex{}) throw DomainError("x_0 != 0: argument is outside the domain of T");
  return shift_apply(x);
}

SeqVector restricted_resolvent_at_zero(const SeqVector& y) {
  std::vector<Complex> v;
  v.reserve(y.size() + 1);
  v.push_back(0.0);
  for (const Complex& z : y.values()) v.push_back(-z);
  return SeqVector(std::move(v), y.exponent());
}

}  // namespace partialop
