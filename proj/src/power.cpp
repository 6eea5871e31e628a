#include "dqanet/power.hpp"

#include <cmath>
#include <stdexcept>

namespace dqanet {

void PowerModel::validate() const {
  if (!(bandwidth_hz > 0.0) || !(conversion_energy_j > 0.0) ||
      node_count < 1 || adcs_per_node < 1)
    throw std::invalid_argument("PowerModel: all fields must be positive");
}

double adc_power(const PowerModel& model, int bits) {
  model.validate();
  return model.conversion_energy_j * model.bandwidth_hz *
         std::pow(2.0, bits);
}

double network_power(const PowerModel& model, int bits) {
  return model.adcs_per_node * model.node_count * adc_power(model, bits);
}

SavingsReport savings_report(const PowerModel& model, int low_bits,
                             int reference_bits) {
  SavingsReport report;
  report.reference_bits = reference_bits;
  report.reference_power_watts = network_power(model, reference_bits);
  report.low.bits = low_bits;
  report.low.power_watts = network_power(model, low_bits);
  report.low.percent_saved =
      100.0 * (1.0 - std::pow(2.0, low_bits - reference_bits));
  return report;
}

}  // namespace dqanet
