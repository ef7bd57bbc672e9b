#include "partialop/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "partialop/errors.hpp"
#include "partialop/neumann.hpp"

namespace partialop {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view text, const char* what) {
  const std::string s(trim(text));
  if (s.empty()) throw InvalidArgument(std::string("empty ") + what);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v))
    throw InvalidArgument(std::string("cannot parse ") + what + " '" + s + "'");
  return v;
}

// "1", "-0.5", "2i", "-i", "1-2i", "1e-3+4i".
Complex parse_complex(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw InvalidArgument("empty complex weight");
  if (s.back() != 'i') return {parse_real(s, "weight"), 0.0};
  s.remove_suffix(1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [](std::string_view t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_real(t, "imaginary part");
  };
  if (split == std::string_view::npos) return {0.0, imag_part(s)};
  return {parse_real(s.substr(0, split), "real part"), imag_part(s.substr(split))};
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

// Per-scan state: the functional and the fixed witness set are built once.
class CellClassifier {
 public:
  explicit CellClassifier(const ScanConfig& config) : config_(config) {
    if (config.op.is_grid_operator()) {
      functional_ = config.op.functional();
      witnesses_ = kernel_witnesses(functional_, config.grid_n);
      for (const GridFunction& w : witnesses_) witness_norms_.push_back(w.sup_norm());
    }
  }

  ScanCell operator()(Complex zeta) const {
    switch (config_.op.kind) {
      case OperatorKind::ShiftFull: return shift_full(zeta);
      case OperatorKind::ShiftRestricted: return shift_restricted(zeta);
      default: return grid_operator(zeta);
    }
  }

 private:
  ScanCell grid_operator(Complex zeta) const {
    ScanCell cell;
    cell.zeta = zeta;
    const double abs_a = std::abs(functional_.on_exponential(zeta));
    cell.abs_a = abs_a;
    if (abs_a <= config_.tol) {
      cell.status = SpectralStatus::Spectral;
      return cell;
    }
    if (abs_a <= kIndeterminateBand) {
      cell.status = SpectralStatus::Indeterminate;
      return cell;
    }
    cell.status = SpectralStatus::Resolved;

    const bool positive_real = zeta.imag() == 0.0 && zeta.real() > 0.0;
    const GridFunction h = h_zeta(zeta, config_.grid_n);
    const Complex a = apply_functional(functional_, h);
    double lower = 0.0;
    for (std::size_t i = 0; i < witnesses_.size(); ++i)
      lower = std::max(lower, witness_ratio(zeta, h, a, witnesses_[i], witness_norms_[i]));
    if (config_.op.kind == OperatorKind::Example3 && positive_real) {
      const GridFunction w = example3_witness(zeta.real(), config_.grid_n);
      lower = std::max(lower, witness_ratio(zeta, h, a, w, w.sup_norm()));
    }
    cell.norm_lower = lower;

    if (config_.op.kind == OperatorKind::Example2) {
      // R(zeta) = -K_zeta on ker delta_0; ||K_zeta|| bounds it everywhere.
      cell.bound_upper = k_zeta_norm_exact(zeta);
      if (positive_real) cell.bound_lower = closed_form_bounds(2, zeta.real()).lower;
    } else if (config_.op.kind == OperatorKind::Example3 && positive_real) {
      cell.bound_lower = closed_form_bounds(3, zeta.real()).lower;
    }
    return cell;
  }

  // ||gamma h - K f|| / ||f||, the resolvent applied to one kernel witness.
  double witness_ratio(Complex zeta, const GridFunction& h, Complex a, const GridFunction& f,
                       double fn) const {
    if (fn == 0.0) return 0.0;
    const GridFunction k = k_zeta(zeta, f);
    const Complex gamma = apply_functional(functional_, k) / a;
    double m = 0.0;
    for (std::size_t j = 0; j < k.size(); ++j) m = std::max(m, std::norm(gamma * h[j] - k[j]));
    return std::sqrt(m) / fn;
  }

  ScanCell shift_full(Complex zeta) const {
    ScanCell cell;
    cell.zeta = zeta;
    const double p = config_.seq_exponent;
    const SpectralClassification c = classify_shift(zeta, p);
    cell.status = c.status;
    if (c.status == SpectralStatus::Spectral) {
      if (c.witness) {
        const SeqVector& x = *c.witness;
        std::vector<Complex> r(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) r[i] = x.at(i + 1) - zeta * x[i];
        cell.abs_a = lp_norm(SeqVector(std::move(r), p)) / lp_norm(x);
      }
      return cell;
    }
    // Witness ratios: e_0 and the phase-aligned geometric vector.
    const Complex phase = zeta / std::abs(zeta);
    const SeqVector witnesses[] = {SeqVector::unit(0, 1, p),
                                   SeqVector::geometric(phase, kWitnessLength, p)};
    double lower = 0.0;
    for (const SeqVector& x : witnesses)
      lower = std::max(lower, lp_norm(resolvent_shift(zeta, x)) / lp_norm(x));
    cell.norm_lower = lower;
    cell.bound_upper = neumann_bounds(1.0 / std::abs(zeta), 1.0).inverse_norm;
    return cell;
  }

  ScanCell shift_restricted(Complex zeta) const {
    ScanCell cell;
    cell.zeta = zeta;
    const double p = config_.seq_exponent;
    const SpectralClassification c = classify_restricted(zeta, p);
    cell.status = c.status;
    if (c.status == SpectralStatus::Resolved) {
      const SeqVector y = SeqVector::unit(0, 1, p);
      cell.norm_lower = lp_norm(restricted_resolvent_at_zero(y)) / lp_norm(y);
      // -T^-1 is an isometry.
      cell.bound_lower = 1.0;
      cell.bound_upper = 1.0;
    } else if (c.status == SpectralStatus::Spectral) {
      // Distance of the unique l^p preimage of e_0 from {x_0 = 0}.
      cell.abs_a = 1.0 / std::abs(zeta);
    }
    return cell;
  }

  const ScanConfig& config_;
  DiracFunctional functional_;
  std::vector<GridFunction> witnesses_;
  std::vector<double> witness_norms_;
};

}  // namespace

DiracFunctional OperatorSpec::functional() const {
  switch (kind) {
    case OperatorKind::Example1: return DiracFunctional::null();
    case OperatorKind::Example2: return DiracFunctional::dirac(0.0);
    case OperatorKind::Example3: return DiracFunctional::half_minus_origin();
    case OperatorKind::CustomDirac: return DiracFunctional(atoms);
    default: throw InvalidArgument("shift operators carry no Dirac functional");
  }
}

bool OperatorSpec::is_grid_operator() const noexcept {
  return kind != OperatorKind::ShiftFull && kind != OperatorKind::ShiftRestricted;
}

OperatorSpec parse_operator_spec(std::string_view text) {
  text = trim(text);
  if (text == "example1") return {OperatorKind::Example1, {}};
  if (text == "example2") return {OperatorKind::Example2, {}};
  if (text == "example3") return {OperatorKind::Example3, {}};
  if (text == "shift_full") return {OperatorKind::ShiftFull, {}};
  if (text == "shift_restricted") return {OperatorKind::ShiftRestricted, {}};
  constexpr std::string_view prefix = "custom-dirac(";
  if (text.starts_with(prefix) && text.ends_with(")")) {
    std::string_view body = text.substr(prefix.size(), text.size() - prefix.size() - 1);
    std::vector<DiracFunctional::Atom> atoms;
    while (!trim(body).empty()) {
      const std::size_t comma = body.find(',');
      const std::string_view item = body.substr(0, comma);
      const std::size_t colon = item.find(':');
      if (colon == std::string_view::npos)
        throw InvalidArgument("custom-dirac atom '" + std::string(item) + "' is not point:weight");
      atoms.push_back({parse_real(item.substr(0, colon), "atom point"),
                       parse_complex(item.substr(colon + 1))});
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    // Validates the points.
    (void)DiracFunctional(atoms);
    return {OperatorKind::CustomDirac, std::move(atoms)};
  }
  throw InvalidArgument("unknown operator spec '" + std::string(text) + "'");
}

std::string to_string(const OperatorSpec& spec) {
  switch (spec.kind) {
    case OperatorKind::Example1: return "example1";
    case OperatorKind::Example2: return "example2";
    case OperatorKind::Example3: return "example3";
    case OperatorKind::ShiftFull: return "shift_full";
    case OperatorKind::ShiftRestricted: return "shift_restricted";
    case OperatorKind::CustomDirac: break;
  }
  std::string out = "custom-dirac(";
  for (std::size_t k = 0; k < spec.atoms.size(); ++k) {
    if (k) out += ',';
    const auto& a = spec.atoms[k];
    out += format_number(a.point) + ':' + format_number(a.weight.real());
    if (a.weight.imag() != 0.0) {
      if (a.weight.imag() >= 0.0) out += '+';
      out += format_number(a.weight.imag()) + 'i';
    }
  }
  return out + ')';
}

double AxisRange::at(std::size_t i) const noexcept {
  if (i + 1 >= steps) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

AxisRange parse_axis_range(std::string_view text) {
  const std::size_t a = text.find(':');
  const std::size_t b = a == std::string_view::npos ? a : text.find(':', a + 1);
  if (b == std::string_view::npos || text.find(':', b + 1) != std::string_view::npos)
    throw InvalidArgument("range '" + std::string(text) + "' is not min:max:steps");
  AxisRange r;
  r.min = parse_real(text.substr(0, a), "range min");
  r.max = parse_real(text.substr(a + 1, b - a - 1), "range max");
  const double steps = parse_real(text.substr(b + 1), "range steps");
  if (steps != std::floor(steps) || steps < 0 || steps > 1e7)
    throw InvalidArgument("range steps must be a nonnegative integer");
  r.steps = static_cast<std::size_t>(steps);
  return r;
}

HeatmapChannel parse_channel(std::string_view text) {
  if (text == "status") return HeatmapChannel::Status;
  if (text == "norm" || text == "inv_resolvent_norm") return HeatmapChannel::InvResolventNorm;
  throw InvalidArgument("unknown heatmap channel '" + std::string(text) + "'");
}

void ScanConfig::validate() const {
  for (const AxisRange* r : {&re, &im}) {
    if (r->steps < 2) throw InvalidArgument("range needs at least 2 steps");
    if (!(r->min < r->max)) throw InvalidArgument("range min must be below max");
  }
  if (grid_n < 5 || grid_n % 4 != 1) throw InvalidArgument("grid_n must be >= 5 and 1 mod 4");
  if (!(tol > 0.0) || !std::isfinite(tol)) throw InvalidArgument("tol must be positive");
  if (op.kind == OperatorKind::CustomDirac) {
    const DiracFunctional functional = op.functional();
    // Surfaces atoms that miss the grid before any cell is evaluated.
    (void)apply_functional(functional, GridFunction::zero(grid_n));
  }
  if (!(seq_exponent >= 1.0)) throw InvalidExponent("sequence exponent must lie in [1, inf]");
}

std::size_t SpectrumScan::count(SpectralStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [s](const ScanCell& c) { return c.status == s; }));
}

ScanCell classify_cell(const ScanConfig& config, Complex zeta) {
  config.validate();
  return CellClassifier(config)(zeta);
}

SpectrumScan run_scan(const ScanConfig& config) {
  config.validate();
  const CellClassifier classify(config);
  SpectrumScan scan;
  scan.width = config.re.steps;
  scan.height = config.im.steps;
  scan.cells.reserve(scan.width * scan.height);
  for (std::size_t row = 0; row < scan.height; ++row) {
    const double im = config.im.at(scan.height - 1 - row);
    for (std::size_t col = 0; col < scan.width; ++col)
      scan.cells.push_back(classify(Complex(config.re.at(col), im)));
  }
  if (!config.csv_path.empty()) write_csv(scan, config.csv_path);
  if (!config.pgm_path.empty()) write_heatmap(scan, config.channel, config.pgm_path);
  return scan;
}

std::string scan_to_csv(const SpectrumScan& scan) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const ScanCell& c : scan.cells) {
    out += format_number(c.zeta.real());
    out += ',';
    out += format_number(c.zeta.imag());
    out += ',';
    out += to_string(c.status);
    out += ',';
    out += format_optional(c.abs_a);
    out += ',';
    out += format_optional(c.norm_lower);
    out += ',';
    out += format_optional(c.bound_lower);
    out += ',';
    out += format_optional(c.bound_upper);
    out += '\n';
  }
  return out;
}

namespace {

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write to '" + path + "' failed");
}

unsigned char pixel(const ScanCell& c, HeatmapChannel channel) {
  if (channel == HeatmapChannel::Status) {
    switch (c.status) {
      case SpectralStatus::Resolved: return 255;
      case SpectralStatus::Indeterminate: return 128;
      case SpectralStatus::Spectral: return 0;
    }
  }
  if (c.status == SpectralStatus::Spectral) return 0;
  const double lower = c.norm_lower.value_or(0.0);
  const double v = 255.0 * std::min(1.0, 1.0 / (1.0 + lower));
  return static_cast<unsigned char>(std::floor(v + 0.5));
}

}  // namespace

void write_csv(const SpectrumScan& scan, const std::string& path) {
  write_file(path, scan_to_csv(scan));
}

std::string render_heatmap(const SpectrumScan& scan, HeatmapChannel channel) {
  if (scan.cells.empty()) throw InvalidArgument("cannot render an empty scan");
  std::string out = "P5\n" + std::to_string(scan.width) + " " + std::to_string(scan.height) +
                    "\n255\n";
  out.reserve(out.size() + scan.cells.size());
  for (const ScanCell& c : scan.cells) out.push_back(static_cast<char>(pixel(c, channel)));
  return out;
}

void write_heatmap(const SpectrumScan& scan, HeatmapChannel channel, const std::string& path) {
  write_file(path, render_heatmap(scan, channel));
}

}  // namespace partialop
