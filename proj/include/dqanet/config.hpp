#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "dqanet/power.hpp"
#include "dqanet/quantizer.hpp"
#include "dqanet/simulation.hpp"

namespace dqanet {

inline constexpr const char* kToolVersion = "0.1.0";

// A full run description: the experiment plus the power model used for the
// energy summary in the manifest.
struct RunConfig {
  ExperimentConfig experiment;
  PowerModel power;
  int power_reference_bits = 12;
};

// Loads a JSON config file. Accepts either a bare config or a previously
// written run manifest (whose resolved config is reused). Unknown keys are
// errors. Throws std::runtime_error with a descriptive message.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text, const std::string& origin);

// Serializes the fully resolved config (all defaults materialized), the
// quantizer specs in use, derived seeds and tool version. Re-running from
// the manifest reproduces the same outputs.
std::string make_manifest(const RunConfig& config);

// CSV writers. Doubles are printed with %.12g so repeated runs are
// byte-identical.
void write_msd_csv(const std::vector<MsdCurve>& curves, std::ostream& out);
void write_power_csv(const PowerModel& model, const std::vector<int>& bits,
                     int reference_bits, std::ostream& out);

// Plain-text quantizer table: cell_index, tau_low, tau_high, label, with
// infinite thresholds rendered as -inf/+inf.
void write_quantizer_table(const QuantizerSpec& spec, std::ostream& out);

}  // namespace dqanet
