#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "dqanet/quantizer.hpp"

using namespace dqanet;

namespace {

// Independent oracle: Simpson quadrature of the standard normal over a cell,
// no reuse of the closed-form centroids in the implementation.
double simpson(double lo, double hi, int intervals, bool first_moment) {
  if (intervals % 2 != 0) ++intervals;
  double h = (hi - lo) / intervals;
  auto f = [&](double x) {
    double g = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
    return first_moment ? x * g : g;
  };
  double sum = f(lo) + f(hi);
  for (int i = 1; i < intervals; ++i)
    sum += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

double quad_centroid(double lo, double hi) {
  lo = std::max(lo, -10.0);
  hi = std::min(hi, 10.0);
  int n = std::max(2000, static_cast<int>((hi - lo) * 4000));
  return simpson(lo, hi, n, true) / simpson(lo, hi, n, false);
}

// Brute-force Lloyd-Max using only the quadrature centroids.
std::vector<double> brute_force_labels(int bits) {
  int levels = 1 << bits;
  std::vector<double> labels(levels);
  for (int p = 0; p < levels; ++p)
    labels[p] = -3.0 + 6.0 * (p + 0.5) / levels;
  std::vector<double> tau(levels + 1);
  for (int it = 0; it < 500; ++it) {
    tau.front() = -30.0;
    tau.back() = 30.0;
    for (int j = 1; j < levels; ++j) tau[j] = 0.5 * (labels[j - 1] + labels[j]);
    double change = 0.0;
    for (int p = 0; p < levels; ++p) {
      double next = quad_centroid(tau[p], tau[p + 1]);
      change = std::max(change, std::abs(next - labels[p]));
      labels[p] = next;
    }
    if (change < 1e-12) break;
  }
  return labels;
}

double empirical_mse(const std::vector<double>& samples,
                     const QuantizerSpec& spec) {
  double mse = 0.0;
  for (double s : samples) {
    double e = s - quantize_real(spec, s);
    mse += e * e;
  }
  return mse / samples.size();
}

std::vector<double> gaussian_samples(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> out(n);
  for (double& v : out) v = dist(rng);
  return out;
}

}  // namespace

TEST_CASE("bits=1 design has the closed-form half-line centroids") {
  QuantizerSpec raw = lloyd_max_design(1);
  double c = std::sqrt(2.0 / M_PI);
  REQUIRE(raw.levels() == 2);
  CHECK(raw.labels[0] == doctest::Approx(-c).epsilon(1e-12));
  CHECK(raw.labels[1] == doctest::Approx(c).epsilon(1e-12));
  CHECK(raw.thresholds[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::isinf(raw.thresholds[0]));
  CHECK(std::isinf(raw.thresholds[2]));
  // independent quadrature check of the half-line centroid
  CHECK(quad_centroid(0.0, 30.0) == doctest::Approx(c).epsilon(1e-9));
}

TEST_CASE("bits=2 design matches the brute-force quadrature oracle") {
  QuantizerSpec raw = lloyd_max_design(2);
  std::vector<double> oracle = brute_force_labels(2);
  for (int p = 0; p < 4; ++p)
    CHECK(raw.labels[p] == doctest::Approx(oracle[p]).epsilon(1e-8));
  // classic Max (1960) values
  CHECK(raw.labels[3] == doctest::Approx(1.510).epsilon(1e-3));
  CHECK(raw.labels[2] == doctest::Approx(0.4528).epsilon(1e-3));
  CHECK(raw.thresholds[3] == doctest::Approx(0.9816).epsilon(1e-3));
}

TEST_CASE("Lloyd-Max fixed point vs independent integration, b=1..6") {
  for (int b = 1; b <= 6; ++b) {
    QuantizerSpec raw = lloyd_max_design(b);
    for (int j = 1; j < raw.levels(); ++j)
      CHECK(std::abs(raw.thresholds[j] -
                     0.5 * (raw.labels[j - 1] + raw.labels[j])) < 1e-11);
    for (int p = 0; p < raw.levels(); ++p)
      CHECK(std::abs(raw.labels[p] -
                     quad_centroid(raw.thresholds[p], raw.thresholds[p + 1])) <
            1e-8);
  }
}

TEST_CASE("design rejects bad arguments and reports non-convergence") {
  CHECK_THROWS_AS(lloyd_max_design(0), std::invalid_argument);
  CHECK_THROWS_AS(lloyd_max_design(9), std::invalid_argument);
  CHECK_THROWS_AS(lloyd_max_design(4, 0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(lloyd_max_design(4, 2, 1e-15), std::runtime_error);
}

TEST_CASE("rescale: b=1 closed form") {
  QuantizerSpec spec = design_quantizer(1);
  double alpha = 1.0 / (std::sqrt(2.0) * std::sqrt(2.0 / M_PI));
  CHECK(spec.alpha == doctest::Approx(alpha).epsilon(1e-12));
  CHECK(spec.labels[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(spec.thresholds[1] == doctest::Approx(0.0));  // thresholds unchanged
}

TEST_CASE("rescale: unit complex power invariant for b=1..8, alpha > 0") {
  for (int b = 1; b <= 8; ++b) {
    QuantizerSpec spec = design_quantizer(b);
    CHECK(spec.alpha > 0.0);
    double power = 0.0;
    for (int p = 0; p < spec.levels(); ++p)
      power += spec.labels[p] * spec.labels[p] *
               (normal_cdf(std::sqrt(2.0) * spec.thresholds[p + 1]) -
                normal_cdf(std::sqrt(2.0) * spec.thresholds[p]));
    CHECK(std::abs(2.0 * power - 1.0) < 1e-10);
  }
}

TEST_CASE("quantize_real: cell convention, idempotence, monotone, symmetric") {
  QuantizerSpec b1 = design_quantizer(1);
  CHECK(quantize_real(b1, 0.3) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(quantize_real(b1, 0.0) ==
        doctest::Approx(-1.0 / std::sqrt(2.0)));  // 0 lands in the lower cell

  std::mt19937_64 rng(42);
  std::normal_distribution<double> dist(0.0, 1.5);
  for (int b : {1, 2, 3, 4}) {
    QuantizerSpec spec = design_quantizer(b);
    for (double l : spec.labels) CHECK(quantize_real(spec, l) == l);
    for (int i = 0; i < 2000; ++i) {
      double v1 = dist(rng), v2 = dist(rng);
      if (v1 > v2) std::swap(v1, v2);
      CHECK(quantize_real(spec, v1) <= quantize_real(spec, v2));
      bool on_threshold = false;
      for (double t : spec.thresholds) on_threshold |= (v1 == t);
      if (!on_threshold)
        CHECK(quantize_real(spec, -v1) == -quantize_real(spec, v1));
    }
  }
}

TEST_CASE("quantize_complex examples") {
  QuantizerSpec b1 = design_quantizer(1);
  auto q = quantize_complex(b1, {1.0, 1.0}, 1.0);
  CHECK(std::abs(q) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(q.real() == doctest::Approx(1.0 / std::sqrt(2.0)));

  QuantizerSpec b3 = design_quantizer(3);
  double low = quantize_real(b3, 0.0);
  auto z = quantize_complex(b3, {0.0, 0.0}, 2.5);
  CHECK(z.real() == doctest::Approx(2.5 * low));
  CHECK(z.imag() == doctest::Approx(2.5 * low));

  CHECK_THROWS_AS(quantize_complex(b1, {1.0, 0.0}, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(quantize_complex(b1, {1.0, 0.0}, -1.0),
                  std::invalid_argument);
}

TEST_CASE("quantized unit-variance complex Gaussian keeps unit power") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> comp(0.0, std::sqrt(0.5));
  for (int b : {1, 2, 3}) {
    QuantizerSpec spec = design_quantizer(b);
    double power = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) {
      std::complex<double> x(comp(rng), comp(rng));
      power += std::norm(quantize_complex(spec, x, 1.0));
    }
    CHECK(power / n == doctest::Approx(1.0).epsilon(0.02));
  }
}

TEST_CASE("MSE decreases with bit depth and beats uniform mid-rise") {
  auto samples = gaussian_samples(1000000, 99);
  double prev = 1e9;
  for (int b = 1; b <= 5; ++b) {
    QuantizerSpec raw = lloyd_max_design(b);
    double mse = empirical_mse(samples, raw);
    CHECK(mse < prev);
    prev = mse;

    // uniform mid-rise quantizer clipped at +-3
    QuantizerSpec uniform;
    uniform.bits = b;
    int levels = 1 << b;
    double step = 6.0 / levels;
    uniform.thresholds.push_back(-std::numeric_limits<double>::infinity());
    for (int j = 1; j < levels; ++j)
      uniform.thresholds.push_back(-3.0 + j * step);
    uniform.thresholds.push_back(std::numeric_limits<double>::infinity());
    for (int p = 0; p < levels; ++p)
      uniform.labels.push_back(-3.0 + (p + 0.5) * step);
    CHECK(mse < empirical_mse(samples, uniform));
  }
}

TEST_CASE("distortion_factor values") {
  CHECK(distortion_factor(1) == doctest::Approx(0.6802).epsilon(1e-4));
  CHECK(distortion_factor(3) == doctest::Approx(0.0425).epsilon(1e-2));
  for (int b = 1; b <= 6; ++b)
    CHECK(distortion_factor(b) / distortion_factor(b + 1) ==
          doctest::Approx(4.0).epsilon(1e-12));
  CHECK_THROWS_AS(distortion_factor(0), std::invalid_argument);
}
