#include "partialop/graph_norm.hpp"

#include <algorithm>
#include <cmath>

namespace partialop {

namespace {

void check_inputs(double u_norm, double tu_norm, double p) {
  if (!(p >= 1.0)) throw InvalidExponent("graph norm exponent must lie in [1, inf]");
  if (!(u_norm >= 0.0) || !(tu_norm >= 0.0))
    throw InvalidArgument("graph norm inputs must be nonnegative");
}

double raw_value(double a, double b, double p) {
  if (std::isinf(p)) return std::max(a, b);
  if (p == 1.0) return a + b;
  if (p == 2.0) return std::hypot(a, b);
  // Factor out the larger term so a^p cannot overflow.
  const double big = std::max(a, b);
  if (big == 0.0) return 0.0;
  const double small = std::min(a, b);
  return big * std::pow(1.0 + std::pow(small / big, p), 1.0 / p);
}

}  // namespace

const char* to_string(ClosednessStatus s) {
  switch (s) {
    case ClosednessStatus::Consistent: return "Consistent";
    case ClosednessStatus::Violation: return "Violation";
    case ClosednessStatus::Inapplicable: return "Inapplicable";
  }
  return "?";
}

GraphNormValue graph_norm(double u_norm, double tu_norm, double p) {
  check_inputs(u_norm, tu_norm, p);
  const double value = raw_value(u_norm, tu_norm, p);
  // Clamp round-off so value stays inside [max, sum].
  const double clamped = std::clamp(value, std::max(u_norm, tu_norm), u_norm + tu_norm);
  return GraphNormValue{u_norm, tu_norm, p, clamped};
}

bool norm_sandwich_check(double u_norm, double tu_norm, double p) {
  check_inputs(u_norm, tu_norm, p);
  const double n_inf = raw_value(u_norm, tu_norm, kInfExponent);
  const double n_p = raw_value(u_norm, tu_norm, p);
  const double n_1 = raw_value(u_norm, tu_norm, 1.0);
  // pow() round-off is allowed a few ulps.
  const double slack = 4.0 * std::numeric_limits<double>::epsilon() * n_1;
  return n_inf <= n_p + slack && n_p <= n_1 + slack && n_1 <= 2.0 * n_inf + slack;
}

bool converges_below(std::span<const double> residuals, double tol) {
  if (residuals.empty()) return false;
  if (!(residuals.back() <= tol)) return false;
  const std::size_t start = (3 * residuals.size()) / 4;
  const double jitter = 1e-3 * tol;
  for (std::size_t i = std::max<std::size_t>(start, 1); i < residuals.size(); ++i)
    if (residuals[i] > residuals[i - 1] + jitter) return false;
  return true;
}

ClosednessVerdict classify_closedness(std::span<const double> u_distances,
                                      std::span<const double> tu_increments,
                                      double limit_residual, double tol) {
  if (u_distances.empty() || u_distances.size() != tu_increments.size())
    throw InvalidArgument("closedness residual sequences must be nonempty and of equal length");
  ClosednessVerdict verdict;
  verdict.residual = limit_residual;
  const bool u_converges = converges_below(u_distances, tol);
  const bool tu_converges = converges_below(tu_increments.subspan(1), tol);
  if (!u_converges || !tu_converges) {
    verdict.status = ClosednessStatus::Inapplicable;
  } else if (limit_residual <= tol) {
    verdict.status = ClosednessStatus::Consistent;
  } else {
    verdict.status = ClosednessStatus::Violation;
    verdict.witness_index = u_distances.size() - 1;
  }
  return verdict;
}

}  // namespace partialop
