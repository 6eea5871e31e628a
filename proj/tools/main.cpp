#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dqanet/config.hpp"

namespace fs = std::filesystem;
using namespace dqanet;

namespace {

int cmd_design_quantizer(int bits, const std::string& out_path) {
  QuantizerSpec spec = design_quantizer(bits);

  // Normalization check: 2 sum l^2 dPhi(sqrt(2) tau) should be 1.
  double power = 0.0;
  for (int p = 0; p < spec.levels(); ++p) {
    power += spec.labels[p] * spec.labels[p] *
             (normal_cdf(std::sqrt(2.0) * spec.thresholds[p + 1]) -
              normal_cdf(std::sqrt(2.0) * spec.thresholds[p]));
  }
  std::cerr << "alpha = " << spec.alpha
            << ", normalized power = " << 2.0 * power << "\n";

  if (out_path.empty() || out_path == "-") {
    write_quantizer_table(spec, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    write_quantizer_table(spec, out);
  }
  return 0;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            int threads, std::uint64_t seed, bool seed_given) {
  RunConfig config = load_config(config_path);
  if (seed_given) config.experiment.master_seed = seed;

  fs::create_directories(out_dir);
  std::string manifest = make_manifest(config);

  std::vector<MsdCurve> curves;
  try {
    curves = run_ensemble(config.experiment, threads);
  } catch (const std::runtime_error& e) {
    std::cerr << "error: simulation diverged: " << e.what() << "\n";
    return 2;
  }

  {
    std::ofstream out(fs::path(out_dir) / "msd.csv");
    if (!out) throw std::runtime_error("cannot write msd.csv in " + out_dir);
    write_msd_csv(curves, out);
  }
  {
    std::ofstream out(fs::path(out_dir) / "manifest.json");
    if (!out)
      throw std::runtime_error("cannot write manifest.json in " + out_dir);
    out << manifest;
  }
  std::cerr << "wrote " << curves.size() << " curves to " << out_dir
            << "/msd.csv\n";
  return 0;
}

int cmd_power_report(const PowerModel& model, const std::vector<int>& bits,
                     int reference, const std::string& out_path) {
  if (bits.empty()) throw std::runtime_error("power-report: empty bits list");
  for (int b : bits)
    if (b > reference)
      std::cerr << "warning: reference bit depth " << reference
                << " is below requested depth " << b << "\n";
  if (out_path.empty() || out_path == "-") {
    write_power_csv(model, bits, reference, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    write_power_csv(model, bits, reference, out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dqanet: diffusion-network parameter estimation with coarsely "
               "quantized signals"};
  app.require_subcommand(1);

  auto* design = app.add_subcommand(
      "design-quantizer", "Design a Lloyd-Max quantizer and print its table");
  int bits = 1;
  std::string out_path;
  design->add_option("--bits", bits, "Bit depth (1..8)")->required();
  design->add_option("--out", out_path, "Output file (default stdout)");

  auto* run = app.add_subcommand("run", "Run a configured experiment");
  std::string config_path, run_out = "out";
  int threads = 1;
  std::uint64_t seed = 0;
  run->add_option("--config", config_path, "Config or manifest JSON file")
      ->required();
  run->add_option("--out", run_out, "Output directory");
  run->add_option("--threads", threads, "Trial-level parallelism");
  auto* seed_opt =
      run->add_option("--seed", seed, "Override the master seed");

  auto* power = app.add_subcommand("power-report",
                                   "ADC power consumption per bit depth");
  PowerModel model;
  std::vector<int> report_bits;
  int reference = 12;
  std::string power_out;
  power->add_option("--bits", report_bits, "Bit depths to report")->required();
  power->add_option("--reference", reference, "Reference (full) bit depth");
  power->add_option("--bandwidth", model.bandwidth_hz, "Bandwidth B in Hz");
  power->add_option("--conversion-energy", model.conversion_energy_j,
                    "Energy per conversion step in J");
  power->add_option("--nodes", model.node_count, "Node count N");
  power->add_option("--adcs-per-node", model.adcs_per_node, "ADCs per node");
  power->add_option("--out", power_out, "Output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (design->parsed()) return cmd_design_quantizer(bits, out_path);
    if (run->parsed())
      return cmd_run(config_path, run_out, threads, seed, seed_opt->count() > 0);
    if (power->parsed())
      return cmd_power_report(model, report_bits, reference, power_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
