#pragma once

#include <complex>
#include <vector>

namespace dqanet {

// b-bit scalar quantizer for a unit-variance Gaussian source.
// thresholds[0] = -inf and thresholds[2^b] = +inf (stored as infinities);
// cell p is the half-open interval (thresholds[p], thresholds[p+1]] with
// reproduction label labels[p].
struct QuantizerSpec {
  int bits = 0;
  std::vector<double> thresholds;  // 2^b + 1 entries, strictly increasing
  std::vector<double> labels;      // 2^b entries, strictly increasing
  double alpha = 1.0;              // label rescale factor (1.0 before rescale)

  int levels() const { return static_cast<int>(labels.size()); }
};

// Standard normal pdf/CDF, shared by the quantizer design and tests.
double normal_pdf(double x);
double normal_cdf(double x);

// Lloyd-Max design for a unit-variance real Gaussian source using exact
// (closed-form) cell centroids. Labels are initialized at the Gaussian
// quantiles (p + 0.5) / 2^b. Throws std::invalid_argument for bits outside
// [1, 8] and std::runtime_error if the sweep does not converge. The default
// tolerance is the tightest value reachable at b = 8, where rounding noise in
// the centroid evaluation leaves the sweep cycling at the ~1e-11 level.
QuantizerSpec lloyd_max_design(int bits, int max_iterations = 200000,
                               double tolerance = 1e-10);

// Multiplies the raw labels by the power-normalizing factor alpha so that
// 2 * sum_j l_j^2 * (Phi(sqrt(2) tau_{j+1}) - Phi(sqrt(2) tau_j)) = 1.
QuantizerSpec rescale_labels(const QuantizerSpec& raw);

// lloyd_max_design followed by rescale_labels.
QuantizerSpec design_quantizer(int bits);

// Maps value to the label of the cell (tau_p, tau_{p+1}] containing it.
double quantize_real(const QuantizerSpec& spec, double value);

// Quantizes real and imaginary parts independently in the unit-variance
// domain: scale is the standard deviation of the complex sample, so each
// component is divided by scale, quantized, and rescaled.
std::complex<double> quantize_complex(const QuantizerSpec& spec,
                                      std::complex<double> value,
                                      double scale);

// Relative MSE of b-bit non-uniform quantization of a Gaussian signal,
// (pi * sqrt(3) / 2) * 2^(-2b).
double distortion_factor(int bits);

}  // namespace dqanet
