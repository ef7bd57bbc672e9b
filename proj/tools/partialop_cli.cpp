// partialop: spectrum scans and property suites for the partial-operator library.
//
//   partialop scan --operator example3 --re -1:1:241 --im -30:30:241 \
//       --grid-n 2001 --tol 1e-9 --csv out.csv --pgm out.pgm [--channel status|norm]
//   partialop suite all [--seed 42]

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "partialop/errors.hpp"
#include "partialop/scan.hpp"
#include "partialop/suite.hpp"

int main(int argc, char** argv) {
  using namespace partialop;

  CLI::App app{"Spectrum scans and resolvent-norm envelopes for partial operators"};
  app.require_subcommand(1);
  std::uint64_t seed = SuiteOptions{}.seed;
  app.add_option("--seed", seed, "Seed for every randomized check");

  auto* scan_cmd = app.add_subcommand("scan", "Classify a raster of the complex plane");
  std::string op_text;
  std::string re_text;
  std::string im_text;
  std::string channel_text = "status";
  ScanConfig cfg;
  scan_cmd->add_option("--operator", op_text,
                       "example1|example2|example3|shift_full|shift_restricted|"
                       "custom-dirac(t:w,...)")
      ->required();
  scan_cmd->add_option("--re", re_text, "Real axis as min:max:steps")->required();
  scan_cmd->add_option("--im", im_text, "Imaginary axis as min:max:steps")->required();
  scan_cmd->add_option("--grid-n", cfg.grid_n, "Grid size on [0,1], 1 mod 4")
      ->capture_default_str();
  scan_cmd->add_option("--tol", cfg.tol, "Spectral tolerance on |Lambda(h_zeta)|")
      ->capture_default_str();
  scan_cmd->add_option("--p", cfg.seq_exponent, "l^p exponent for the shift operators")
      ->capture_default_str();
  scan_cmd->add_option("--csv", cfg.csv_path, "CSV output path");
  scan_cmd->add_option("--pgm", cfg.pgm_path, "PGM heatmap output path");
  scan_cmd->add_option("--channel", channel_text, "Heatmap channel: status or norm")
      ->capture_default_str();

  auto* suite_cmd = app.add_subcommand("suite", "Run property suites");
  std::string suite_name;
  double tol_scale = 1.0;
  suite_cmd->add_option("name", suite_name, "neumann|graph|cfunc|shift|all")->required();
  suite_cmd->add_option("--tol-scale", tol_scale, "Multiplier applied to every tolerance")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*scan_cmd) {
      cfg.op = parse_operator_spec(op_text);
      cfg.re = parse_axis_range(re_text);
      cfg.im = parse_axis_range(im_text);
      cfg.channel = parse_channel(channel_text);
      const SpectrumScan scan = run_scan(cfg);
      std::cout << to_string(cfg.op) << ": " << scan.cells.size() << " cells, "
                << scan.count(SpectralStatus::Spectral) << " Spectral, "
                << scan.count(SpectralStatus::Indeterminate) << " Indeterminate, "
                << scan.count(SpectralStatus::Resolved) << " Resolved\n";
      return 0;
    }
    const SuiteReport report = run_suite(suite_name, SuiteOptions{seed, tol_scale});
    std::cout << report.text();
    return report.exit_code();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
