#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "partialop/errors.hpp"

namespace partialop {

inline constexpr double kInfExponent = std::numeric_limits<double>::infinity();

/// N_p^T(u) = (||u||^p + ||Tu||^p)^(1/p), or max(||u||, ||Tu||) for p = inf.
/// u_norm alone is the induced topology; value is the graph topology.
struct GraphNormValue {
  double u_norm = 0.0;
  double tu_norm = 0.0;
  double exponent = 1.0;
  double value = 0.0;
};

/// Throws InvalidExponent for p < 1 (or NaN), InvalidArgument for negative norms.
GraphNormValue graph_norm(double u_norm, double tu_norm, double p);

/// N_inf <= N_p <= N_1 <= 2 N_inf at the given inputs.
bool norm_sandwich_check(double u_norm, double tu_norm, double p);

enum class ClosednessStatus { Consistent, Violation, Inapplicable };

const char* to_string(ClosednessStatus s);

struct ClosednessVerdict {
  ClosednessStatus status = ClosednessStatus::Inapplicable;
  std::optional<std::size_t> witness_index;
  double residual = 0.0;
};

/// True when the last entry is <= tol and the final quarter of the sequence
/// is nonincreasing.
bool converges_below(std::span<const double> residuals, double tol);

/// Decision step of the probe, on precomputed distances.
///   u_distances[i]  = ||u_i - u_limit||
///   tu_increments[i] = ||T u_i - T u_{i-1}||  (entry 0 unused)
///   limit_residual  = ||T u_limit - v_limit||
/// (T u_n) is judged by its Cauchy increments, so a sequence whose images
/// settle on a value other than v_limit is reported as a Violation. The
/// witness index of a Violation is the last sequence index.
ClosednessVerdict classify_closedness(std::span<const double> u_distances,
                                      std::span<const double> tu_increments,
                                      double limit_residual, double tol);

/// Sequence probe of the closed-graph condition for a partial operator:
/// if u_n -> u and T u_n converges, then T u must equal the claimed limit.
/// It can exhibit violations or consistency on the supplied sequence; it
/// cannot prove closedness. Exceptions thrown by `apply` are rethrown as
/// EvaluationError.
template <class Domain, class Codomain, class Apply, class DomainDist, class CodomainDist>
ClosednessVerdict closedness_probe(Apply&& apply, std::span<const Domain> u_seq,
                                   const Domain& u_limit, const Codomain& v_limit, double tol,
                                   DomainDist&& domain_distance,
                                   CodomainDist&& codomain_distance) {
  if (u_seq.empty()) throw InvalidArgument("closedness_probe needs a nonempty sequence");
  if (!(tol > 0.0)) throw InvalidArgument("closedness_probe tol must be positive");
  auto eval = [&](const Domain& u, std::size_t index) -> Codomain {
    try {
      return apply(u);
    } catch (const std::exception& e) {
      throw EvaluationError("evaluator failed at element " + std::to_string(index) + ": " +
                            e.what());
    }
  };

  std::vector<double> u_dist;
  std::vector<double> tu_inc;
  u_dist.reserve(u_seq.size());
  tu_inc.reserve(u_seq.size());
  std::optional<Codomain> prev;
  for (std::size_t i = 0; i < u_seq.size(); ++i) {
    Codomain tu = eval(u_seq[i], i);
    u_dist.push_back(domain_distance(u_seq[i], u_limit));
    tu_inc.push_back(prev ? codomain_distance(tu, *prev) : 0.0);
    prev = std::move(tu);
  }
  const Codomain t_limit = eval(u_limit, u_seq.size());
  const double residual = codomain_distance(t_limit, v_limit);
  return classify_closedness(u_dist, tu_inc, residual, tol);
}

}  // namespace partialop
