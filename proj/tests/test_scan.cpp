#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "partialop/errors.hpp"
#include "partialop/scan.hpp"

using namespace partialop;
using std::numbers::pi;

namespace {

ScanConfig small_config(const char* op, const char* re, const char* im, std::size_t grid_n = 201) {
  ScanConfig c;
  c.op = parse_operator_spec(op);
  c.re = parse_axis_range(re);
  c.im = parse_axis_range(im);
  c.grid_n = grid_n;
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST(ParseOperatorSpec, NamedOperators) {
  for (const char* name : {"example1", "example2", "example3", "shift_full", "shift_restricted"})
    EXPECT_EQ(to_string(parse_operator_spec(name)), name);
  EXPECT_FALSE(parse_operator_spec("shift_full").is_grid_operator());
  EXPECT_TRUE(parse_operator_spec("example2").is_grid_operator());
  EXPECT_THROW(parse_operator_spec("shift_full").functional(), InvalidArgument);
}

TEST(ParseOperatorSpec, CustomDirac) {
  const OperatorSpec s = parse_operator_spec("custom-dirac(0.5:1,0:-1)");
  ASSERT_EQ(s.atoms.size(), 2u);
  EXPECT_EQ(s.atoms[1].weight, Complex(-1.0));
  const OperatorSpec c = parse_operator_spec("custom-dirac(0.25:1-2i, 1:3i)");
  EXPECT_EQ(c.atoms[0].weight, Complex(1, -2));
  EXPECT_EQ(c.atoms[1].weight, Complex(0, 3));
  EXPECT_EQ(to_string(c), "custom-dirac(0.25:1-2i,1:0+3i)");
  EXPECT_EQ(parse_operator_spec("custom-dirac(1e-1:2e+0)").atoms[0].point, 0.1);
}

TEST(ParseOperatorSpec, Errors) {
  EXPECT_THROW(parse_operator_spec("example4"), InvalidArgument);
  EXPECT_THROW(parse_operator_spec("custom-dirac(0.5)"), InvalidArgument);
  EXPECT_THROW(parse_operator_spec("custom-dirac(2:1)"), InvalidArgument);
  EXPECT_THROW(parse_operator_spec("custom-dirac(0.5:x)"), InvalidArgument);
}

TEST(AxisRange, ParseAndEndpoints) {
  const AxisRange r = parse_axis_range("-30:30:241");
  EXPECT_EQ(r.steps, 241u);
  EXPECT_EQ(r.at(0), -30.0);
  EXPECT_EQ(r.at(240), 30.0);
  EXPECT_EQ(r.at(120), 0.0);
  EXPECT_DOUBLE_EQ(r.cell(), 0.25);
  EXPECT_THROW(parse_axis_range("1:2"), InvalidArgument);
  EXPECT_THROW(parse_axis_range("1:2:3:4"), InvalidArgument);
  EXPECT_THROW(parse_axis_range("1:2:2.5"), InvalidArgument);
  EXPECT_THROW(parse_axis_range("a:2:3"), InvalidArgument);
}

TEST(ParseChannel, Names) {
  EXPECT_EQ(parse_channel("status"), HeatmapChannel::Status);
  EXPECT_EQ(parse_channel("norm"), HeatmapChannel::InvResolventNorm);
  EXPECT_EQ(parse_channel("inv_resolvent_norm"), HeatmapChannel::InvResolventNorm);
  EXPECT_THROW(parse_channel("color"), InvalidArgument);
}

TEST(ScanConfig, Validation) {
  ScanConfig c = small_config("example2", "-1:1:3", "-1:1:3");
  EXPECT_NO_THROW(c.validate());
  c.grid_n = 200;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = small_config("example2", "1:-1:3", "-1:1:3");
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = small_config("example2", "-1:1:1", "-1:1:3");
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = small_config("custom-dirac(0.1234:1)", "-1:1:3", "-1:1:3", 201);
  EXPECT_THROW(c.validate(), GridMismatch);
  c = small_config("shift_full", "-1:1:3", "-1:1:3");
  c.seq_exponent = 0.5;
  EXPECT_THROW(c.validate(), InvalidExponent);
  c = small_config("example2", "-1:1:3", "-1:1:3");
  c.tol = 0.0;
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(ClassifyCell, GridExamples) {
  const ScanConfig e3 = small_config("example3", "-1:1:3", "-1:1:3", 401);
  EXPECT_EQ(classify_cell(e3, Complex(0, 4 * pi)).status, SpectralStatus::Spectral);
  EXPECT_EQ(classify_cell(e3, 0.0).status, SpectralStatus::Spectral);
  // |A| is of order 1e-7 here: inside the band between tol and 1e-6.
  EXPECT_EQ(classify_cell(e3, Complex(0, 4 * pi + 5e-8)).status, SpectralStatus::Indeterminate);
  const ScanCell r = classify_cell(e3, 8.0);
  EXPECT_EQ(r.status, SpectralStatus::Resolved);
  ASSERT_TRUE(r.norm_lower && r.bound_lower);
  EXPECT_GE(*r.norm_lower, *r.bound_lower - 0.05);
  EXPECT_FALSE(r.bound_upper);

  const ScanConfig e2 = small_config("example2", "-1:1:3", "-1:1:3", 401);
  const ScanCell c = classify_cell(e2, 4.0);
  ASSERT_TRUE(c.bound_lower && c.bound_upper && c.norm_lower);
  EXPECT_GE(*c.norm_lower, *c.bound_lower - 0.05);
  EXPECT_LE(*c.norm_lower, *c.bound_upper + 0.05);
  const ScanCell off_axis = classify_cell(e2, Complex(1, 1));
  EXPECT_FALSE(off_axis.bound_lower);
  EXPECT_TRUE(off_axis.bound_upper);

  EXPECT_EQ(classify_cell(small_config("example1", "-1:1:3", "-1:1:3"), 2.0).status,
            SpectralStatus::Spectral);
}

TEST(ClassifyCell, CustomDiracMatchesExample3) {
  const ScanConfig custom = small_config("custom-dirac(0.5:1,0:-1)", "-1:1:3", "-1:1:3", 401);
  const ScanConfig e3 = small_config("example3", "-1:1:3", "-1:1:3", 401);
  for (Complex z : {Complex(0, 4 * pi), Complex(0.5, 2.0), Complex(-1, 7)}) {
    const ScanCell a = classify_cell(custom, z);
    const ScanCell b = classify_cell(e3, z);
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.abs_a, b.abs_a);
  }
}

TEST(ClassifyCell, Shifts) {
  const ScanConfig full = small_config("shift_full", "-2:2:5", "-2:2:5");
  const ScanCell out = classify_cell(full, Complex(0, 2));
  EXPECT_EQ(out.status, SpectralStatus::Resolved);
  ASSERT_TRUE(out.norm_lower && out.bound_upper);
  EXPECT_LE(*out.norm_lower, *out.bound_upper * (1 + 1e-12));
  EXPECT_DOUBLE_EQ(*out.bound_upper, 1.0);
  const ScanCell in = classify_cell(full, 0.5);
  EXPECT_EQ(in.status, SpectralStatus::Spectral);
  ASSERT_TRUE(in.abs_a);
  EXPECT_LE(*in.abs_a, 1e-15);

  const ScanConfig restricted = small_config("shift_restricted", "-2:2:5", "-2:2:5");
  const ScanCell zero = classify_cell(restricted, 0.0);
  EXPECT_EQ(zero.status, SpectralStatus::Resolved);
  EXPECT_EQ(zero.norm_lower, 1.0);
  EXPECT_EQ(classify_cell(restricted, 2.0).status, SpectralStatus::Spectral);
  EXPECT_EQ(*classify_cell(restricted, 2.0).abs_a, 0.5);
  EXPECT_EQ(classify_cell(restricted, 0.5).status, SpectralStatus::Indeterminate);
}

TEST(RunScan, Example2HasNoSpectrum) {
  const SpectrumScan s = run_scan(small_config("example2", "-5:5:11", "-5:5:11"));
  EXPECT_EQ(s.count(SpectralStatus::Spectral), 0u);
  EXPECT_EQ(s.cells.size(), 121u);
}

TEST(RunScan, Example1IsAllSpectrum) {
  const SpectrumScan s = run_scan(small_config("example1", "-5:5:11", "-5:5:11"));
  EXPECT_EQ(s.count(SpectralStatus::Spectral), 121u);
}

TEST(RunScan, RowOrderTopIsMaxImaginary) {
  const SpectrumScan s = run_scan(small_config("example2", "-1:1:3", "-2:2:5"));
  EXPECT_EQ(s.width, 3u);
  EXPECT_EQ(s.height, 5u);
  EXPECT_EQ(s.cell(0, 0).zeta, Complex(-1, 2));
  EXPECT_EQ(s.cell(4, 2).zeta, Complex(1, -2));
}

TEST(RunScan, Example3DetectsRasterZeros) {
  // The imaginary axis holds 4 pi n exactly at every 10th step.
  ScanConfig c = small_config("example3", "-1:1:3", "-1:1:3");
  c.im = AxisRange{-8 * pi, 8 * pi, 41};
  const SpectrumScan s = run_scan(c);
  for (std::size_t row = 0; row < s.height; ++row) {
    for (std::size_t col = 0; col < s.width; ++col) {
      const ScanCell& cell = s.cell(row, col);
      const bool on_lattice = cell.zeta.real() == 0.0 && row % 10 == 0;
      EXPECT_EQ(cell.status == SpectralStatus::Spectral, on_lattice) << cell.zeta;
    }
  }
}

TEST(Csv, HeaderRowsAndEmptyFields) {
  const SpectrumScan s = run_scan(small_config("example3", "-1:1:5", "-2:2:3"));
  const std::string csv = scan_to_csv(s);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kCsvHeader);
  EXPECT_EQ(count_lines(csv), 1u + 15u);
  // The origin is spectral and has no norm estimates.
  EXPECT_NE(csv.find("\n0,0,Spectral,0,,,\n"), std::string::npos);
}

TEST(Csv, SeventeenDigits) {
  ScanConfig c = small_config("example2", "0:1:4", "0:1:2");
  const std::string csv = scan_to_csv(run_scan(c));
  EXPECT_NE(csv.find("0.33333333333333331,"), std::string::npos);
}

TEST(Heatmap, StatusChannelBytes) {
  const SpectrumScan s = run_scan(small_config("shift_full", "-2:2:3", "-2:2:3"));
  const std::string pgm = render_heatmap(s, HeatmapChannel::Status);
  const std::string header = "P5\n3 3\n255\n";
  ASSERT_EQ(pgm.size(), header.size() + 9);
  EXPECT_EQ(pgm.substr(0, header.size()), header);
  const auto* px = reinterpret_cast<const unsigned char*>(pgm.data() + header.size());
  for (int i = 0; i < 9; ++i) EXPECT_EQ(px[i], i == 4 ? 0 : 255) << i;
}

TEST(Heatmap, NormChannel) {
  const SpectrumScan s = run_scan(small_config("shift_restricted", "-2:2:3", "-2:2:3"));
  const std::string pgm = render_heatmap(s, HeatmapChannel::InvResolventNorm);
  const auto* px = reinterpret_cast<const unsigned char*>(pgm.data() + pgm.size() - 9);
  // Center: ||R(0)|| = 1 gives round(255 / 2) = 128.
  EXPECT_EQ(px[4], 128);
  EXPECT_EQ(px[0], 0);
}

TEST(Heatmap, NormChannelMissingBoundIsWhite) {
  SpectrumScan s;
  s.width = 1;
  s.height = 1;
  s.cells.push_back(ScanCell{Complex(1, 0), SpectralStatus::Resolved});
  const std::string pgm = render_heatmap(s, HeatmapChannel::InvResolventNorm);
  EXPECT_EQ(static_cast<unsigned char>(pgm.back()), 255);
}

TEST(RunScan, WritesFilesDeterministically) {
  const auto dir = std::filesystem::temp_directory_path() / "partialop_scan_test";
  std::filesystem::create_directories(dir);
  ScanConfig c = small_config("example3", "-1:1:9", "-13:13:27");
  c.csv_path = (dir / "a.csv").string();
  c.pgm_path = (dir / "a.pgm").string();
  run_scan(c);
  const std::string csv1 = slurp(dir / "a.csv"), pgm1 = slurp(dir / "a.pgm");
  run_scan(c);
  EXPECT_EQ(csv1, slurp(dir / "a.csv"));
  EXPECT_EQ(pgm1, slurp(dir / "a.pgm"));
  EXPECT_EQ(count_lines(csv1), 1u + 9u * 27u);
  std::filesystem::remove_all(dir);
}

TEST(RunScan, UnwritablePathThrows) {
  ScanConfig c = small_config("example2", "-1:1:3", "-1:1:3");
  c.csv_path = "/nonexistent-dir/out.csv";
  EXPECT_THROW(run_scan(c), IoError);
  c.csv_path.clear();
  c.pgm_path = "/nonexistent-dir/out.pgm";
  EXPECT_THROW(run_scan(c), IoError);
}
