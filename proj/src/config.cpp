#include "dqanet/config.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace dqanet {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& section) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key()))
      throw std::runtime_error("unknown key \"" + it.key() + "\" in " +
                               section);
  }
}

std::string adapt_mode_name(AdaptMode m) {
  switch (m) {
    case AdaptMode::kUniform:
      return "uniform";
    case AdaptMode::kMetropolis:
      return "metropolis";
    case AdaptMode::kIdentity:
      return "identity";
  }
  throw std::logic_error("unknown adaptation mode");
}

AdaptMode adapt_mode_from_name(const std::string& s) {
  if (s == "uniform") return AdaptMode::kUniform;
  if (s == "metropolis") return AdaptMode::kMetropolis;
  if (s == "identity") return AdaptMode::kIdentity;
  throw std::runtime_error("unknown adaptation_mode: " + s);
}

json bits_to_json(int bits) {
  if (bits == kFullResolution) return json("full");
  return json(bits);
}

int bits_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "full") return kFullResolution;
    throw std::runtime_error("bit depth must be an integer or \"full\"");
  }
  return j.get<int>();
}

void parse_experiment(const json& j, ExperimentConfig& e) {
  check_keys(j,
             {"node_count", "filter_length", "forgetting",
              "regularization_delta", "bit_depths", "iterations", "trials",
              "master_seed", "input_variance_range", "noise_variance_range",
              "topology_radius", "adaptation_mode", "algorithms", "lms_step",
              "noise_weighting", "per_neighbor_gain", "smooth_variance",
              "smoothing_beta"},
             "experiment");
  if (j.contains("node_count")) e.node_count = j["node_count"].get<int>();
  if (j.contains("filter_length"))
    e.filter_length = j["filter_length"].get<int>();
  if (j.contains("forgetting")) e.forgetting = j["forgetting"].get<double>();
  if (j.contains("regularization_delta"))
    e.regularization_delta = j["regularization_delta"].get<double>();
  if (j.contains("bit_depths")) {
    e.bit_depths.clear();
    for (const json& b : j["bit_depths"]) e.bit_depths.push_back(bits_from_json(b));
  }
  if (j.contains("iterations")) e.iterations = j["iterations"].get<int>();
  if (j.contains("trials")) e.trials = j["trials"].get<int>();
  if (j.contains("master_seed"))
    e.master_seed = j["master_seed"].get<std::uint64_t>();
  if (j.contains("input_variance_range")) {
    e.input_variance_min = j["input_variance_range"].at(0).get<double>();
    e.input_variance_max = j["input_variance_range"].at(1).get<double>();
  }
  if (j.contains("noise_variance_range")) {
    e.noise_variance_min = j["noise_variance_range"].at(0).get<double>();
    e.noise_variance_max = j["noise_variance_range"].at(1).get<double>();
  }
  if (j.contains("topology_radius"))
    e.topology_radius = j["topology_radius"].get<double>();
  if (j.contains("adaptation_mode"))
    e.adaptation_mode =
        adapt_mode_from_name(j["adaptation_mode"].get<std::string>());
  if (j.contains("algorithms")) {
    e.algorithms.clear();
    for (const json& a : j["algorithms"])
      e.algorithms.push_back(algorithm_from_name(a.get<std::string>()));
  }
  if (j.contains("lms_step")) e.lms_step = j["lms_step"].get<double>();
  if (j.contains("noise_weighting")) {
    std::string w = j["noise_weighting"].get<std::string>();
    if (w == "oracle")
      e.oracle_noise_variances = true;
    else if (w == "unweighted")
      e.oracle_noise_variances = false;
    else
      throw std::runtime_error("noise_weighting must be oracle or unweighted");
  }
  if (j.contains("per_neighbor_gain"))
    e.per_neighbor_gain = j["per_neighbor_gain"].get<bool>();
  if (j.contains("smooth_variance"))
    e.smooth_variance = j["smooth_variance"].get<bool>();
  if (j.contains("smoothing_beta"))
    e.smoothing_beta = j["smoothing_beta"].get<double>();
}

void parse_power(const json& j, RunConfig& c) {
  check_keys(j,
             {"bandwidth_hz", "conversion_energy_j", "adcs_per_node",
              "reference_bits"},
             "power");
  if (j.contains("bandwidth_hz"))
    c.power.bandwidth_hz = j["bandwidth_hz"].get<double>();
  if (j.contains("conversion_energy_j"))
    c.power.conversion_energy_j = j["conversion_energy_j"].get<double>();
  if (j.contains("adcs_per_node"))
    c.power.adcs_per_node = j["adcs_per_node"].get<int>();
  if (j.contains("reference_bits"))
    c.power_reference_bits = j["reference_bits"].get<int>();
}

json experiment_to_json(const ExperimentConfig& e) {
  json j;
  j["node_count"] = e.node_count;
  j["filter_length"] = e.filter_length;
  j["forgetting"] = e.forgetting;
  j["regularization_delta"] = e.regularization_delta;
  json bits = json::array();
  for (int b : e.bit_depths) bits.push_back(bits_to_json(b));
  j["bit_depths"] = bits;
  j["iterations"] = e.iterations;
  j["trials"] = e.trials;
  j["master_seed"] = e.master_seed;
  j["input_variance_range"] = {e.input_variance_min, e.input_variance_max};
  j["noise_variance_range"] = {e.noise_variance_min, e.noise_variance_max};
  j["topology_radius"] = e.topology_radius;
  j["adaptation_mode"] = adapt_mode_name(e.adaptation_mode);
  json algs = json::array();
  for (Algorithm a : e.algorithms) algs.push_back(algorithm_name(a));
  j["algorithms"] = algs;
  j["lms_step"] = e.lms_step;
  j["noise_weighting"] = e.oracle_noise_variances ? "oracle" : "unweighted";
  j["per_neighbor_gain"] = e.per_neighbor_gain;
  j["smooth_variance"] = e.smooth_variance;
  j["smoothing_beta"] = e.smoothing_beta;
  return j;
}

json power_to_json(const RunConfig& c) {
  json j;
  j["bandwidth_hz"] = c.power.bandwidth_hz;
  j["conversion_energy_j"] = c.power.conversion_energy_j;
  j["adcs_per_node"] = c.power.adcs_per_node;
  j["reference_bits"] = c.power_reference_bits;
  return j;
}

}  // namespace

RunConfig parse_config(const std::string& json_text,
                       const std::string& origin) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(origin + ": " + e.what());
  }

  RunConfig config;
  bool is_manifest = j.contains("tool");
  if (is_manifest) {
    check_keys(j, {"tool", "tool_version", "created", "experiment", "power",
                   "quantizers", "seeds"},
               origin);
  } else {
    check_keys(j, {"experiment", "power"}, origin);
  }

  try {
    if (j.contains("experiment"))
      parse_experiment(j["experiment"], config.experiment);
    if (j.contains("power")) parse_power(j["power"], config);
  } catch (const json::exception& e) {
    throw std::runtime_error(origin + ": " + e.what());
  }
  config.power.node_count = config.experiment.node_count;
  config.experiment.validate();
  config.power.validate();
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

std::string make_manifest(const RunConfig& config) {
  json j;
  j["tool"] = "dqanet";
  j["tool_version"] = kToolVersion;
  auto now = std::chrono::system_clock::now();
  j["created"] = std::chrono::duration_cast<std::chrono::seconds>(
                     now.time_since_epoch())
                     .count();
  j["experiment"] = experiment_to_json(config.experiment);
  j["power"] = power_to_json(config);

  json seeds;
  seeds["master"] = config.experiment.master_seed;
  j["seeds"] = seeds;

  json quantizers = json::object();
  for (int b : config.experiment.bit_depths) {
    if (b == kFullResolution) continue;
    QuantizerSpec spec = design_quantizer(b);
    json q;
    q["bits"] = spec.bits;
    q["alpha"] = spec.alpha;
    // JSON has no infinities; only the finite thresholds are listed.
    std::vector<double> finite(spec.thresholds.begin() + 1,
                               spec.thresholds.end() - 1);
    q["finite_thresholds"] = finite;
    q["labels"] = spec.labels;
    quantizers[std::to_string(b)] = q;
  }
  j["quantizers"] = quantizers;
  return j.dump(2) + "\n";
}

void write_msd_csv(const std::vector<MsdCurve>& curves, std::ostream& out) {
  out << "iteration, algorithm, bits, msd_db\n";
  for (const MsdCurve& c : curves) {
    std::string bits =
        c.bits == kFullResolution ? "full" : std::to_string(c.bits);
    for (std::size_t i = 0; i < c.msd_db.size(); ++i)
      out << i << ", " << c.algorithm << ", " << bits << ", "
          << fmt_double(c.msd_db[i]) << "\n";
  }
}

void write_power_csv(const PowerModel& model, const std::vector<int>& bits,
                     int reference_bits, std::ostream& out) {
  out << "bits, power_watts, percent_saved_vs_reference\n";
  for (int b : bits) {
    SavingsReport r = savings_report(model, b, reference_bits);
    out << b << ", " << fmt_double(r.low.power_watts) << ", "
        << fmt_double(r.low.percent_saved) << "\n";
  }
}

void write_quantizer_table(const QuantizerSpec& spec, std::ostream& out) {
  out << "cell_index, tau_low, tau_high, label\n";
  for (int p = 0; p < spec.levels(); ++p) {
    auto fmt_tau = [](double t) -> std::string {
      if (std::isinf(t)) return t < 0 ? "-inf" : "+inf";
      return fmt_double(t);
    };
    out << p << ", " << fmt_tau(spec.thresholds[p]) << ", "
        << fmt_tau(spec.thresholds[p + 1]) << ", " << fmt_double(spec.labels[p])
        << "\n";
  }
}

}  // namespace dqanet
