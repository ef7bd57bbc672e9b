#include "partialop/suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>

#include "partialop/cfunc.hpp"
#include "partialop/errors.hpp"
#include "partialop/graph_norm.hpp"
#include "partialop/neumann.hpp"
#include "partialop/oracles.hpp"
#include "partialop/scan.hpp"
#include "partialop/shift.hpp"

namespace partialop {

namespace {

using std::numbers::pi;

class Recorder {
 public:
  Recorder(std::string suite, const SuiteOptions& options, SuiteReport& report)
      : suite_(std::move(suite)), options_(options), report_(report) {}

  void record(std::string name, double measured, double allowed) {
    const bool ok = std::isfinite(measured) && measured <= allowed * options_.tolerance_scale;
    report_.checks.push_back(CheckResult{suite_, std::move(name), measured, allowed, ok});
  }

 private:
  std::string suite_;
  const SuiteOptions& options_;
  SuiteReport& report_;
};

constexpr NormExponent kExponents[] = {NormExponent::One, NormExponent::Two,
                                       NormExponent::Infinity};

double norm_of(const DenseMatrix& m, NormExponent p) { return operator_norm(MatrixOperator(m, p)); }

// ---------------------------------------------------------------- neumann

void neumann_suite(const SuiteOptions& opt, SuiteReport& report) {
  Recorder rec("neumann", opt, report);
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> dim(1, 8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr double tol = 1e-10;

  {
    double worst = 0.0;
    for (int t = 0; t < 30; ++t) {
      const DenseMatrix m = oracle::random_matrix(rng, dim(rng), dim(rng));
      const double svd = oracle::largest_singular_value(m);
      worst = std::max(worst, std::abs(norm_of(m, NormExponent::Two) - svd) / svd);
    }
    rec.record("operator_norm p=2 vs SVD (relative)", worst, 1e-8);
  }
  {
    double worst = 0.0;
    for (int t = 0; t < 30; ++t) {
      const DenseMatrix m = oracle::random_matrix(rng, dim(rng), dim(rng));
      worst = std::max(worst, std::abs(norm_of(m, NormExponent::One) - oracle::max_abs_col_sum(m)));
      worst = std::max(worst,
                       std::abs(norm_of(m, NormExponent::Infinity) - oracle::max_abs_row_sum(m)));
    }
    rec.record("operator_norm p=1,inf vs column/row sums", worst, 1e-13);
  }
  {
    // ||approx - (I - x)^-1|| <= tol / (1 - ||x||), reported as a ratio.
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      const int n = dim(rng);
      const NormExponent p = kExponents[t % 3];
      DenseMatrix x = oracle::random_matrix(rng, n, n);
      const double target = 0.9 * unit(rng);
      x *= target / norm_of(x, p);
      const double q = norm_of(x, p);
      const NeumannResult r = invert_near_identity(MatrixOperator(x, p), tol);
      const DenseMatrix direct = oracle::gauss_inverse(DenseMatrix::Identity(n, n) - x);
      const double err = norm_of(r.inverse_approx.entries() - direct, p);
      worst = std::max(worst, err / (tol / (1.0 - q)));
    }
    rec.record("near-identity inverse vs Gaussian elimination (err / allowed)", worst, 1.0);
  }
  {
    // Excess of each oracle difference over its certified bound.
    double worst = -1.0;
    double worst_residual = 0.0;
    for (int t = 0; t < 100; ++t) {
      const int n = dim(rng);
      const NormExponent p = kExponents[t % 3];
      DenseMatrix a = oracle::random_matrix(rng, n, n);
      a += 3.0 * DenseMatrix::Identity(n, n);
      const DenseMatrix a_inv = oracle::gauss_inverse(a);
      const double a_inv_norm = norm_of(a_inv, p);
      DenseMatrix x = oracle::random_matrix(rng, n, n);
      x *= 0.9 * unit(rng) / (norm_of(x, p) * a_inv_norm);
      const NeumannResult r = invert_perturbed(MatrixOperator(a, p), MatrixOperator(x, p), tol);
      const DenseMatrix exact = oracle::gauss_inverse(a - x);
      const double d1 = norm_of(exact, p);
      const double d2 = norm_of(exact - a_inv, p);
      const double d3 = norm_of(exact - a_inv - a_inv * x * a_inv, p);
      worst = std::max({worst, d1 - r.bound_inverse_norm, d2 - r.bound_first_order,
                        d3 - r.bound_second_order});
      const DenseMatrix resid = (a - x) * r.inverse_approx.entries() - DenseMatrix::Identity(n, n);
      worst_residual =
          std::max(worst_residual, norm_of(resid, p) / (10.0 * tol * norm_of(a - x, p)));
    }
    rec.record("perturbed inverse: max excess over the three bounds", worst, 10.0 * tol);
    rec.record("perturbed inverse residual / (10 tol ||S-T||)", worst_residual, 1.0);
  }
  {
    double worst = 0.0;
    for (double a_inv : {0.5, 1.0, 2.0}) {
      NeumannBounds prev = neumann_bounds(a_inv, 0.0);
      for (int k = 1; k < 50; ++k) {
        const double nx = 0.99 * static_cast<double>(k) / (50.0 * a_inv);
        const NeumannBounds b = neumann_bounds(a_inv, nx);
        worst = std::max({worst, prev.inverse_norm - b.inverse_norm,
                          prev.first_order - b.first_order, prev.second_order - b.second_order});
        prev = b;
      }
    }
    rec.record("neumann_bounds monotone in ||x|| (max decrease)", worst, 0.0);
  }
}

// ---------------------------------------------------------------- graph

GridFunction derivative_of(const GridFunction& u) { return grid_derivative(u); }

void graph_suite(const SuiteOptions& opt, SuiteReport& report) {
  Recorder rec("graph", opt, report);
  std::mt19937_64 rng(opt.seed + 1);
  std::uniform_real_distribution<double> mag(0.0, 10.0);
  const double exponents[] = {1.0, 1.5, 2.0, 3.0, kInfExponent};

  {
    int failures = 0;
    for (int t = 0; t < 1000; ++t)
      if (!norm_sandwich_check(mag(rng), mag(rng), exponents[t % 5])) ++failures;
    rec.record("sandwich N_inf <= N_p <= N_1 <= 2 N_inf (failures of 1000)", failures, 0.0);
  }
  {
    double worst = 0.0;
    std::uniform_real_distribution<double> alpha(-5.0, 5.0);
    for (int t = 0; t < 200; ++t) {
      const double u = mag(rng), tu = mag(rng), a = alpha(rng), p = exponents[t % 5];
      const double lhs = graph_norm(std::abs(a) * u, std::abs(a) * tu, p).value;
      const double rhs = std::abs(a) * graph_norm(u, tu, p).value;
      if (rhs > 0.0) worst = std::max(worst, std::abs(lhs - rhs) / rhs);
    }
    rec.record("homogeneity (relative)", worst, 1e-14);
  }
  {
    double worst = 0.0;
    const double ps[] = {1.0, 2.0, 4.0, kInfExponent};
    for (int t = 0; t < 200; ++t) {
      const double u = mag(rng), tu = mag(rng);
      for (int k = 0; k + 1 < 4; ++k) {
        const double a = graph_norm(u, tu, ps[k]).value;
        const double b = graph_norm(u, tu, ps[k + 1]).value;
        worst = std::max(worst, (b - a) / std::max(a, 1e-300));
      }
    }
    rec.record("nonincreasing in p over {1,2,4,inf} (max relative increase)", worst, 1e-15);
  }
  {
    // span{1, cos 2 pi x, sin 2 pi x}: Bernstein gives ||u'|| <= 2 pi ||u||;
    // the grid derivative is allowed 1e-4 relative on top.
    constexpr std::size_t n = 2001;
    const double c = 2.0 * pi * (1.0 + 1e-4);
    const GridFunction basis[] = {
        GridFunction::sample(n, [](double) { return Complex(1.0); }),
        GridFunction::sample(n, [](double x) { return Complex(std::cos(2 * pi * x)); }),
        GridFunction::sample(n, [](double x) { return Complex(std::sin(2 * pi * x)); })};
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      GridFunction u = GridFunction::zero(n);
      for (const auto& b : basis) u += oracle::random_complex(rng, 1.0) * b;
      const double un = u.sup_norm();
      if (un == 0.0) continue;
      const double n1 = graph_norm(un, derivative_of(u).sup_norm(), 1.0).value;
      worst = std::max(worst, n1 / ((1.0 + c) * un));
    }
    rec.record("bounded restriction: N_1(u) / ((1+C) ||u||)", worst, 1.0);
  }
  {
    constexpr std::size_t n = 2001;
    const GridFunction f = GridFunction::sample(n, [](double x) { return Complex(std::sin(3 * x)); });
    const GridFunction g = GridFunction::sample(n, [](double x) { return Complex(x * x); });
    std::vector<GridFunction> seq;
    for (int k = 1; k <= 200; ++k) seq.push_back(f + Complex(1.0 / k) * g);
    const GridFunction tf = derivative_of(f);
    const GridFunction one = GridFunction::sample(n, [](double) { return Complex(1.0); });
    const double tol = 1e-2;
    const std::span<const GridFunction> view(seq);
    const auto ok = closedness_probe<GridFunction, GridFunction>(derivative_of, view, f, tf, tol,
                                                                 sup_distance, sup_distance);
    const auto bad = closedness_probe<GridFunction, GridFunction>(
        derivative_of, view, f, tf + one, tol, sup_distance, sup_distance);
    std::vector<GridFunction> osc;
    for (int k = 1; k <= 200; ++k)
      osc.push_back(GridFunction::sample(
          n, [k](double x) { return Complex(std::sin(k * x) / k); }));
    const auto wild = closedness_probe<GridFunction, GridFunction>(
        derivative_of, std::span<const GridFunction>(osc), GridFunction::zero(n),
        GridFunction::zero(n), tol, sup_distance, sup_distance);
    int wrong = 0;
    wrong += ok.status != ClosednessStatus::Consistent;
    wrong += bad.status != ClosednessStatus::Violation || !bad.witness_index;
    wrong += wild.status != ClosednessStatus::Inapplicable;
    rec.record("closedness probe verdicts (wrong of 3)", wrong, 0.0);
    rec.record("closedness probe violation residual |r - 1|", std::abs(bad.residual - 1.0), 1e-9);
  }
}

// ---------------------------------------------------------------- cfunc

GridFunction random_in_kernel(std::mt19937_64& rng, const DiracFunctional& functional,
                              std::size_t n) {
  GridFunction f(oracle::random_smooth_samples(rng, n));
  if (functional.is_null()) return f;
  return project_to_kernel(functional, f, h_zeta(1.0, n));
}

void cfunc_suite(const SuiteOptions& opt, SuiteReport& report) {
  Recorder rec("cfunc", opt, report);
  std::mt19937_64 rng(opt.seed + 2);
  constexpr std::size_t n = 2001;

  {
    double worst = 0.0;
    for (double a : {-2.0, -1.0, 0.0, 0.5, 1.0, 2.0}) {
      for (double b : {0.0, 3.0}) {
        const Complex zeta(a, b);
        const GridFunction f = GridFunction::sample(n, [b](double x) {
          return std::exp(Complex(0.0, b * x));
        });
        const double ratio = k_zeta(zeta, f).sup_norm() / f.sup_norm();
        worst = std::max(worst, std::abs(ratio - k_zeta_norm_exact(zeta)));
      }
    }
    rec.record("||K_zeta|| witness ratio vs (e^a-1)/a", worst, 1e-3);
  }
  {
    const DiracFunctional functionals[] = {DiracFunctional::dirac(0.0),
                                           DiracFunctional::half_minus_origin()};
    double worst_ode = 0.0;
    double worst_lambda = 0.0;
    int done = 0;
    while (done < 50) {
      const DiracFunctional& functional = functionals[done % 2];
      const Complex zeta = oracle::random_complex(rng, 5.0);
      if (std::abs(zeta) > 5.0 || std::abs(functional.on_exponential(zeta)) < 1e-3) continue;
      const GridFunction f = random_in_kernel(rng, functional, n);
      const ResolveRecord r = resolve_derivative(functional, zeta, f);
      worst_ode = std::max(worst_ode, residual_ode(zeta, r.solution, f));
      worst_lambda = std::max(worst_lambda, std::abs(apply_functional(functional, r.solution)) /
                                                r.solution.sup_norm());
      ++done;
    }
    rec.record("resolvent ODE residual (50 random cases)", worst_ode, 50.0 / n);
    rec.record("|Lambda(R f)| / ||R f||", worst_lambda, 1e-8);
  }
  {
    const DiracFunctional d0 = DiracFunctional::dirac(0.0);
    const std::vector<GridFunction> witnesses = kernel_witnesses(d0, n);
    double worst = -1e300;
    for (double z : {1.0, 2.0, 4.0, 8.0}) {
      const ClosedFormBounds cf = closed_form_bounds(2, z);
      const double lb = resolvent_norm_lower(d0, z, witnesses);
      worst = std::max({worst, (cf.lower - 0.05) - lb, lb - (*cf.upper + 0.05)});
    }
    rec.record("example 2 envelope: max excursion outside [lower-0.05, upper+0.05]", worst, 0.0);
  }
  {
    const DiracFunctional d0 = DiracFunctional::dirac(0.0);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const Complex zeta = oracle::random_complex(rng, 3.0);
      const Complex eta = oracle::random_complex(rng, 3.0);
      const GridFunction f = random_in_kernel(rng, d0, n);
      const GridFunction rz = resolve_derivative(d0, zeta, f).solution;
      const GridFunction re = resolve_derivative(d0, eta, f).solution;
      const GridFunction rzre = resolve_derivative(d0, zeta, re).solution;
      const GridFunction defect = rz - re - (eta - zeta) * rzre;
      worst = std::max(worst, defect.sup_norm() / f.sup_norm());
    }
    rec.record("first resolvent identity, example 2 (relative)", worst, 1e-4);
  }
  {
    // Imaginary axis sampled at pi/... multiples so 0, +-4 pi, +-8 pi are nodes.
    const DiracFunctional l3 = DiracFunctional::half_minus_origin();
    const double im_cell = pi;
    const double re_cell = 0.25;
    int wrong = 0;
    for (int k = -10; k <= 10; ++k) {
      for (int j = -2; j <= 2; ++j) {
        const Complex zeta(j * re_cell, k * im_cell);
        const bool flagged = spectrum_member(l3, zeta);
        bool near = false;
        bool exact = false;
        for (int m = -3; m <= 3; ++m) {
          const double dist_im = std::abs(zeta.imag() - 4.0 * pi * m);
          if (std::abs(zeta.real()) <= re_cell && dist_im <= im_cell * (1 + 1e-12)) near = true;
          if (zeta.real() == 0.0 && k == 4 * m) exact = true;
        }
        if (flagged && !near) ++wrong;
        if (exact && !flagged) ++wrong;
      }
    }
    rec.record("example 3 zeros of Lambda(h_zeta) on a raster (misflagged cells)", wrong, 0.0);
  }
  {
    double worst_half = 0.0;
    double worst_sup = 0.0;
    double worst_lb = -1e300;
    const DiracFunctional l3 = DiracFunctional::half_minus_origin();
    for (double z : {2.0, 8.0}) {
      const GridFunction w = example3_witness(z, n);
      worst_half = std::max(worst_half, std::abs(k_zeta(z, w)[(n - 1) / 2]) / (10.0 / n));
      worst_sup = std::max(worst_sup, std::abs(w.sup_norm() - std::exp(z / 2)));
      const GridFunction ws[] = {w};
      worst_lb = std::max(worst_lb, (closed_form_bounds(3, z).lower - 0.05) -
                                        resolvent_norm_lower(l3, z, ws));
    }
    rec.record("example 3 witness |K f(1/2)| / (10/n)", worst_half, 1.0);
    rec.record("example 3 witness | ||f|| - e^{zeta/2} |", worst_sup, 1e-12);
    rec.record("example 3 lower bound shortfall below closed form - 0.05", worst_lb, 0.0);
  }
}

// ---------------------------------------------------------------- shift

SeqVector random_seq(std::mt19937_64& rng, std::size_t len, double p, bool in_domain) {
  std::vector<Complex> v(len);
  for (auto& z : v) z = oracle::random_complex(rng, 1.0);
  if (in_domain) v[0] = 0.0;
  return SeqVector(std::move(v), p);
}

void shift_suite(const SuiteOptions& opt, SuiteReport& report) {
  Recorder rec("shift", opt, report);
  std::mt19937_64 rng(opt.seed + 3);
  std::uniform_int_distribution<std::size_t> len(1, 50);
  const double ps[] = {1.0, 2.0, kInfExponent};

  {
    double worst = -1e300;
    for (int t = 0; t < 200; ++t)
      for (double p : ps) {
        const SeqVector x = random_seq(rng, len(rng), p, false);
        worst = std::max(worst, lp_norm(shift_apply(x)) - lp_norm(x));
      }
    rec.record("||Sx|| - ||x|| (max over 600)", worst, 0.0);
  }
  {
    double best = 1.0;
    for (double p : ps) {
      double ratio = 0.0;
      for (double alpha : {0.9, 0.99, 0.999}) {
        const SeqVector x = SeqVector::geometric(alpha, 10000, p);
        ratio = std::max(ratio, lp_norm(shift_apply(x)) / lp_norm(x));
      }
      best = std::min(best, ratio);
    }
    rec.record("norm attainment: 1 - sup ||Sx||/||x||", 1.0 - best, 0.01);
  }
  {
    double worst = 0.0;
    for (int t = 0; t < 200; ++t)
      for (double p : ps) {
        const SeqVector x = random_seq(rng, 1 + len(rng), p, true);
        worst = std::max(worst, std::abs(lp_norm(restricted_apply(x)) - lp_norm(x)));
      }
    rec.record("restricted shift isometry | ||Tx|| - ||x|| |", worst, 0.0);
  }
  {
    double worst = 0.0;
    std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
    for (double r : {1.1, 2.0, 10.0})
      for (int t = 0; t < 20; ++t) {
        const Complex zeta = std::polar(r, angle(rng));
        const SeqVector x = random_seq(rng, len(rng), ps[t % 3], false);
        const SeqVector y = resolvent_shift(zeta, x);
        worst = std::max(worst, shift_resolvent_residual(zeta, y, x) / lp_norm(x));
      }
    rec.record("shift resolvent residual (relative)", worst, 1e-12);
  }
  {
    double worst = 0.0;
    std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
    for (std::size_t n = 1; n <= 12; ++n)
      for (double r : {1.1, 2.0, 10.0}) {
        const Complex zeta = std::polar(r, angle(rng));
        const SeqVector x = random_seq(rng, n, kInfExponent, false);
        const SeqVector y = resolvent_shift(zeta, x);
        const std::vector<Complex> dense =
            oracle::gauss_solve(oracle::shifted_shift_matrix(zeta, n), x.values());
        worst = std::max(worst, lp_distance(y, SeqVector(dense, kInfExponent)) / lp_norm(x));
      }
    rec.record("series vs dense solve, N <= 12 (relative)", worst, 1e-12);
  }
  {
    double worst = 0.0;
    std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
    std::uniform_real_distribution<double> radius(1.1, 5.0);
    for (int t = 0; t < 20; ++t) {
      const Complex zeta = std::polar(radius(rng), angle(rng));
      const Complex eta = std::polar(radius(rng), angle(rng));
      const SeqVector x = random_seq(rng, len(rng), 2.0, false);
      const SeqVector rz = resolvent_shift(zeta, x);
      const SeqVector re = resolvent_shift(eta, x);
      const SeqVector rzre = resolvent_shift(zeta, re);
      std::vector<Complex> d(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) d[i] = rz[i] - re[i] - (eta - zeta) * rzre[i];
      worst = std::max(worst, lp_norm(SeqVector(std::move(d), 2.0)) / lp_norm(x));
    }
    rec.record("first resolvent identity, shift (relative)", worst, 1e-12);
  }
  {
    int wrong = 0;
    const Complex zeros[] = {Complex(0.0)};
    for (Complex z : zeros) wrong += classify_restricted(z).status != SpectralStatus::Resolved;
    for (Complex z : {Complex(2.0), Complex(0.0, -1.5), Complex(1.0, 1.0), Complex(10.0, 3.0)}) {
      const auto c = classify_restricted(z);
      wrong += c.status != SpectralStatus::Spectral || !c.witness ||
               lp_distance(*c.witness, SeqVector::unit(0, 1, 2.0)) != 0.0;
      const SeqVector pre = resolvent_shift(z, *c.witness);
      wrong += std::abs(pre[0] - 1.0 / z) > 1e-15;
    }
    for (Complex z : {Complex(0.5), Complex(0.0, 1.0), Complex(-0.3, 0.2), Complex(1.0)})
      wrong += classify_restricted(z).status != SpectralStatus::Indeterminate;
    for (Complex z : {Complex(0.5), Complex(0.0), Complex(0.0, 1.0)})
      wrong += classify_shift(z).status != SpectralStatus::Spectral;
    wrong += classify_shift(Complex(2.0)).status != SpectralStatus::Resolved;
    rec.record("shift classifications (wrong)", wrong, 0.0);
  }
}

// ---------------------------------------------------------------- scan

void scan_suite(const SuiteOptions& opt, SuiteReport& report) {
  Recorder rec("scan", opt, report);
  ScanConfig cfg;
  cfg.op = parse_operator_spec("example3");
  cfg.re = {-1.0, 1.0, 21};
  cfg.im = {-30.0, 30.0, 31};
  cfg.grid_n = 201;
  const SpectrumScan a = run_scan(cfg);
  const SpectrumScan b = run_scan(cfg);
  const bool same = scan_to_csv(a) == scan_to_csv(b) &&
                    render_heatmap(a, HeatmapChannel::Status) ==
                        render_heatmap(b, HeatmapChannel::Status) &&
                    render_heatmap(a, HeatmapChannel::InvResolventNorm) ==
                        render_heatmap(b, HeatmapChannel::InvResolventNorm);
  rec.record("determinism (differing outputs)", same ? 0.0 : 1.0, 0.0);

  const std::string csv = scan_to_csv(a);
  const auto lines = static_cast<double>(std::count(csv.begin(), csv.end(), '\n'));
  rec.record("CSV data rows - re_steps*im_steps", std::abs(lines - 1.0 - 21.0 * 31.0), 0.0);
}

}  // namespace

bool SuiteReport::all_passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string SuiteReport::text() const {
  std::string out;
  for (const CheckResult& c : checks) {
    char buf[64];
    out += c.passed ? "PASS  " : "FAIL  ";
    out += c.suite + ": " + c.name;
    std::snprintf(buf, sizeof buf, "  measured=%.6g", c.measured);
    out += buf;
    std::snprintf(buf, sizeof buf, " allowed=%.6g\n", c.allowed);
    out += buf;
  }
  const auto failed = std::count_if(checks.begin(), checks.end(),
                                    [](const CheckResult& c) { return !c.passed; });
  out += std::to_string(checks.size() - failed) + "/" + std::to_string(checks.size()) +
         " checks passed\n";
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"neumann", "graph", "cfunc", "shift", "all"};
  return names;
}

SuiteReport run_suite(std::string_view name, const SuiteOptions& options) {
  SuiteReport report;
  const bool all = name == "all";
  if (!all && std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
    throw InvalidArgument("unknown suite '" + std::string(name) + "'");
  if (all || name == "neumann") neumann_suite(options, report);
  if (all || name == "graph") graph_suite(options, report);
  if (all || name == "cfunc") cfunc_suite(options, report);
  if (all || name == "shift") shift_suite(options, report);
  if (all) scan_suite(options, report);
  return report;
}

}  // namespace partialop
