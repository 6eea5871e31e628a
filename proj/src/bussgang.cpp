#include "dqanet/bussgang.hpp"

#include <cmath>
#include <stdexcept>

namespace dqanet {

namespace {

double exp_term(double threshold, double variance) {
  if (std::isinf(threshold)) return 0.0;
  return std::exp(-threshold * threshold / variance);
}

}  // namespace

double gain_scalar(const QuantizerSpec& spec, double variance) {
  if (!(variance > 0.0))
    throw std::invalid_argument("gain_scalar: variance must be > 0");
  double sum = 0.0;
  for (int j = 0; j < spec.levels(); ++j) {
    sum += spec.labels[j] * (exp_term(spec.thresholds[j], variance) -
                             exp_term(spec.thresholds[j + 1], variance));
  }
  return sum / (std::sqrt(variance) * std::sqrt(M_PI));
}

Eigen::VectorXd gain_diagonal(const QuantizerSpec& spec,
                              const Eigen::VectorXd& variances) {
  Eigen::VectorXd gains(variances.size());
  for (Eigen::Index i = 0; i < variances.size(); ++i)
    gains[i] = gain_scalar(spec, variances[i]);
  return gains;
}

double estimate_input_variance(const Eigen::VectorXcd& quantized_regressor,
                               int bits, double variance_floor) {
  double power = quantized_regressor.squaredNorm() /
                 static_cast<double>(quantized_regressor.size());
  if (power == 0.0) return variance_floor;
  return power * (1.0 + distortion_factor(bits));
}

}  // namespace dqanet
