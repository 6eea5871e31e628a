#include "dqanet/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dqanet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Inverse standard normal CDF (Acklam's rational approximation plus one
// Halley refinement). Used only to seed the Lloyd-Max labels.
double normal_quantile(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double q, x;
  if (p < plow) {
    q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    q = p - 0.5;
    double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  double e = normal_cdf(x) - p;
  double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

// Conditional mean of a standard Gaussian over (lo, hi].
double cell_centroid(double lo, double hi) {
  double mass = normal_cdf(hi) - normal_cdf(lo);
  return (normal_pdf(lo) - normal_pdf(hi)) / mass;
}

}  // namespace

double normal_pdf(double x) {
  if (std::isinf(x)) return 0.0;
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

double normal_cdf(double x) {
  if (x == kInf) return 1.0;
  if (x == -kInf) return 0.0;
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

QuantizerSpec lloyd_max_design(int bits, int max_iterations, double tolerance) {
  if (bits < 1 || bits > 8)
    throw std::invalid_argument("lloyd_max_design: bits must be in [1, 8]");
  if (tolerance <= 0.0)
    throw std::invalid_argument("lloyd_max_design: tolerance must be > 0");

  const int levels = 1 << bits;
  std::vector<double> labels(levels);
  for (int p = 0; p < levels; ++p)
    labels[p] = normal_quantile((p + 0.5) / levels);

  std::vector<double> thresholds(levels + 1);
  thresholds.front() = -kInf;
  thresholds.back() = kInf;

  double change = kInf;
  for (int it = 0; it < max_iterations; ++it) {
    for (int j = 1; j < levels; ++j)
      thresholds[j] = 0.5 * (labels[j - 1] + labels[j]);
    change = 0.0;
    for (int p = 0; p < levels; ++p) {
      double next = cell_centroid(thresholds[p], thresholds[p + 1]);
      change = std::max(change, std::abs(next - labels[p]));
      labels[p] = next;
    }
    // The Gaussian source is symmetric; pin the labels to exact
    // negation pairs so quantization is bitwise odd.
    for (int p = 0; p < levels / 2; ++p) {
      double mag = 0.5 * (labels[levels - 1 - p] - labels[p]);
      labels[p] = -mag;
      labels[levels - 1 - p] = mag;
    }
    if (change < tolerance) {
      // Final threshold refresh so the midpoint condition holds exactly.
      for (int j = 1; j < levels; ++j)
        thresholds[j] = 0.5 * (labels[j - 1] + labels[j]);
      QuantizerSpec spec;
      spec.bits = bits;
      spec.thresholds = std::move(thresholds);
      spec.labels = std::move(labels);
      spec.alpha = 1.0;
      return spec;
    }
  }
  throw std::runtime_error(
      "lloyd_max_design: no convergence after " +
      std::to_string(max_iterations) +
      " sweeps (residual label change " + std::to_string(change) + ")");
}

QuantizerSpec rescale_labels(const QuantizerSpec& raw) {
  double power = 0.0;
  for (int p = 0; p < raw.levels(); ++p) {
    double mass = normal_cdf(std::sqrt(2.0) * raw.thresholds[p + 1]) -
                  normal_cdf(std::sqrt(2.0) * raw.thresholds[p]);
    power += raw.labels[p] * raw.labels[p] * mass;
  }
  double alpha = 1.0 / std::sqrt(2.0 * power);
  QuantizerSpec spec = raw;
  spec.alpha = alpha;
  for (double& l : spec.labels) l *= alpha;
  return spec;
}

QuantizerSpec design_quantizer(int bits) {
  return rescale_labels(lloyd_max_design(bits));
}

double quantize_real(const QuantizerSpec& spec, double value) {
  // Cell p is (tau_p, tau_{p+1}]; the first finite threshold >= value
  // identifies it.
  auto it = std::lower_bound(spec.thresholds.begin() + 1,
                             spec.thresholds.end() - 1, value);
  auto p = static_cast<std::size_t>(it - (spec.thresholds.begin() + 1));
  return spec.labels[p];
}

std::complex<double> quantize_complex(const QuantizerSpec& spec,
                                      std::complex<double> value,
                                      double scale) {
  if (!(scale > 0.0))
    throw std::invalid_argument("quantize_complex: scale must be > 0");
  return {scale * quantize_real(spec, value.real() / scale),
          scale * quantize_real(spec, value.imag() / scale)};
}

double distortion_factor(int bits) {
  if (bits < 1)
    throw std::invalid_argument("distortion_factor: bits must be >= 1");
  return (M_PI * std::sqrt(3.0) / 2.0) * std::pow(2.0, -2.0 * bits);
}

}  // namespace dqanet
