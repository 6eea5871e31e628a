#pragma once

namespace dqanet {

// ADC power model: P_ADC(b) = c * B * 2^b per converter.
struct PowerModel {
  double bandwidth_hz = 200e3;          // B
  double conversion_energy_j = 494e-15;  // c, per conversion step
  int node_count = 20;                   // N
  int adcs_per_node = 2;

  void validate() const;  // throws std::invalid_argument
};

// Power of a single ADC at the given bit depth, in watts.
double adc_power(const PowerModel& model, int bits);

// Total ADC power of the network: adcs_per_node * N * c * B * 2^b.
double network_power(const PowerModel& model, int bits);

struct SavingsEntry {
  int bits = 0;
  double power_watts = 0.0;
  double percent_saved = 0.0;  // vs the reference bit depth
};

struct SavingsReport {
  int reference_bits = 12;
  double reference_power_watts = 0.0;
  SavingsEntry low;
};

// Compares a low bit depth against a reference; percent saved is
// 100 * (1 - 2^(low - reference)), independent of c, B and N.
SavingsReport savings_report(const PowerModel& model, int low_bits,
                             int reference_bits);

}  // namespace dqanet
