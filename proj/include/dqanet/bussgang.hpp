#pragma once

#include <Eigen/Dense>
#include <complex>

#include "dqanet/quantizer.hpp"

namespace dqanet {

// Bussgang linear gain of the b-bit quantizer driven by a complex Gaussian
// signal of the given variance:
//   g = (1/sigma) * sum_j l_j / sqrt(pi) * (exp(-tau_j^2/sigma^2)
//                                           - exp(-tau_{j+1}^2/sigma^2)).
// Terms with infinite thresholds contribute zero.
double gain_scalar(const QuantizerSpec& spec, double variance);

// Elementwise gain_scalar over a vector of per-dimension variances.
Eigen::VectorXd gain_diagonal(const QuantizerSpec& spec,
                              const Eigen::VectorXd& variances);

// Estimates the unquantized input variance from a quantized regressor as
// (||x_Q||^2 / M) * (1 + rho_b), with rho_b the relative distortion factor.
// An all-zero regressor returns the floor value.
double estimate_input_variance(const Eigen::VectorXcd& quantized_regressor,
                               int bits, double variance_floor = 1e-12);

// Exponentially weighted blend of a previous estimate with a fresh
// instantaneous one; beta = 1 freezes the previous value.
inline double smooth_variance(double previous, double instantaneous,
                              double beta) {
  return beta * previous + (1.0 - beta) * instantaneous;
}

}  // namespace dqanet
