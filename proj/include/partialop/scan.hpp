#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "partialop/cfunc.hpp"
#include "partialop/shift.hpp"

namespace partialop {

enum class OperatorKind { Example1, Example2, Example3, ShiftFull, ShiftRestricted, CustomDirac };

struct OperatorSpec {
  OperatorKind kind = OperatorKind::Example2;
  /// Atoms of the functional; only read for CustomDirac.
  std::vector<DiracFunctional::Atom> atoms;

  /// Lambda for the grid examples; throws InvalidArgument for the shifts.
  DiracFunctional functional() const;
  bool is_grid_operator() const noexcept;
};

/// Accepts example1, example2, example3, shift_full, shift_restricted and
/// custom-dirac(t:w,t:w,...) where w is a real or a complex such as 1-2i.
OperatorSpec parse_operator_spec(std::string_view text);
std::string to_string(const OperatorSpec& spec);

struct AxisRange {
  double min = 0.0;
  double max = 1.0;
  std::size_t steps = 2;

  /// Value at index i, endpoints inclusive.
  double at(std::size_t i) const noexcept;
  double cell() const noexcept { return (max - min) / static_cast<double>(steps - 1); }
};

/// "min:max:steps".
AxisRange parse_axis_range(std::string_view text);

enum class HeatmapChannel { Status, InvResolventNorm };

HeatmapChannel parse_channel(std::string_view text);

/// Lower edge of |A(zeta)| for a grid point to count as Resolved; values in
/// (tol, kIndeterminateBand] are reported Indeterminate.
inline constexpr double kIndeterminateBand = 1e-6;

struct ScanConfig {
  OperatorSpec op;
  AxisRange re;
  AxisRange im;
  std::size_t grid_n = kDefaultGridSize;
  double tol = kSpectralTol;
  /// Exponent of l^p for the shift operators.
  double seq_exponent = 2.0;
  std::string csv_path;
  std::string pgm_path;
  HeatmapChannel channel = HeatmapChannel::Status;

  /// Throws InvalidArgument on a bad range, grid size or tolerance.
  void validate() const;
};

struct ScanCell {
  Complex zeta;
  SpectralStatus status = SpectralStatus::Indeterminate;
  /// |A(zeta)| for grid operators; witness residual for the shifts.
  std::optional<double> abs_a;
  /// Certified lower bound of ||R(zeta)|| from witness ratios.
  std::optional<double> norm_lower;
  std::optional<double> bound_lower;
  std::optional<double> bound_upper;
};

/// Cells are stored row-major, top row first: row r holds im.at(im.steps - 1 - r),
/// column c holds re.at(c).
struct SpectrumScan {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<ScanCell> cells;

  const ScanCell& cell(std::size_t row, std::size_t col) const { return cells[row * width + col]; }
  std::size_t count(SpectralStatus s) const;
};

/// One cell, without touching any output path.
ScanCell classify_cell(const ScanConfig& config, Complex zeta);

/// Builds the full raster. Writes the CSV and PGM files named in config
/// (empty paths are skipped). Throws IoError on unwritable paths.
SpectrumScan run_scan(const ScanConfig& config);

inline constexpr const char* kCsvHeader = "re,im,status,abs_A,norm_lower,bound_lower,bound_upper";

std::string scan_to_csv(const SpectrumScan& scan);
void write_csv(const SpectrumScan& scan, const std::string& path);

/// Binary PGM (P5, maxval 255), row-major, top row = largest imaginary part.
/// Status: Resolved 255, Indeterminate 128, Spectral 0. Norm channel:
/// round-half-up of 255 min(1, 1/(1 + lower)), where Spectral cells count as
/// an infinite norm and a missing lower bound counts as 0.
std::string render_heatmap(const SpectrumScan& scan, HeatmapChannel channel);
void write_heatmap(const SpectrumScan& scan, HeatmapChannel channel, const std::string& path);

}  // namespace partialop
