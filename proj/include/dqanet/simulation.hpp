#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "dqanet/adaptive.hpp"
#include "dqanet/network.hpp"
#include "dqanet/quantizer.hpp"

namespace dqanet {

enum class Algorithm { kDrls, kDqaRls, kQaLms };

std::string algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);

// Bit-depth sentinel for unquantized (full-resolution) runs.
inline constexpr int kFullResolution = 0;

struct ExperimentConfig {
  int node_count = 20;
  int filter_length = 8;
  double forgetting = 0.98;
  double regularization_delta = 100.0;
  std::vector<int> bit_depths = {1, 2, 3, kFullResolution};
  int iterations = 1000;
  int trials = 100;
  std::uint64_t master_seed = 1;
  double input_variance_min = 0.5;
  double input_variance_max = 2.0;
  double noise_variance_min = 1e-3;
  double noise_variance_max = 1e-2;
  double topology_radius = 0.35;
  AdaptMode adaptation_mode = AdaptMode::kUniform;
  std::vector<Algorithm> algorithms = {Algorithm::kDrls, Algorithm::kDqaRls};
  double lms_step = 0.05;
  bool oracle_noise_variances = true;
  bool per_neighbor_gain = false;
  bool smooth_variance = false;
  double smoothing_beta = 0.95;

  void validate() const;  // throws std::invalid_argument
};

struct NodeProfiles {
  Eigen::VectorXd input_variance;
  Eigen::VectorXd noise_variance;
};

struct MsdCurve {
  std::string algorithm;
  int bits = kFullResolution;  // kFullResolution for unquantized
  std::vector<double> msd_db;
};

// Seed-stream derivation used throughout the simulator (splitmix64 hash of
// the parent seed and a tag), so algorithm choice never perturbs the draws.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag);

// Seed of one trial's data stream within an ensemble.
std::uint64_t trial_seed(std::uint64_t master_seed, int trial);

// Random complex system vector, normalized to unit Euclidean norm.
Eigen::VectorXcd generate_system(int filter_length, std::uint64_t seed);

// Per-node input/noise variances drawn uniformly from the given ranges.
NodeProfiles generate_node_profiles(int node_count, std::uint64_t seed,
                                    double input_min, double input_max,
                                    double noise_min, double noise_max);

// Everything a trial needs that is shared across trials of one experiment.
struct SimulationEnvironment {
  Topology topology;
  Eigen::MatrixXd combine_matrix;     // A (Metropolis)
  Eigen::MatrixXd adaptation_matrix;  // C
  NodeProfiles profiles;
  std::vector<std::vector<int>> neighborhoods;  // ascending, self included
};

SimulationEnvironment build_environment(const ExperimentConfig& config);

// The raw (unquantized) signal realizations of one trial; quantization is a
// deterministic post-map, so every algorithm/bit-depth pair sees the same
// draws.
struct TrialData {
  Eigen::VectorXcd system;                             // w_o
  std::vector<std::vector<Eigen::VectorXcd>> regressors;  // [iteration][node]
  Eigen::MatrixXcd desired;                            // iterations x nodes
};

TrialData generate_trial_data(const ExperimentConfig& config,
                              const NodeProfiles& profiles,
                              std::uint64_t trial_seed);

// Runs one (algorithm, bit depth) pair over prepared trial data. Returns the
// iterations x nodes matrix of squared deviations ||w_o - w_k(i)||^2.
Eigen::MatrixXd run_trial_on_data(const ExperimentConfig& config,
                                  const SimulationEnvironment& env,
                                  const TrialData& data, Algorithm algorithm,
                                  int bits);

// generate_trial_data + run_trial_on_data for a single trial seed.
Eigen::MatrixXd run_trial(const ExperimentConfig& config,
                          const SimulationEnvironment& env,
                          Algorithm algorithm, int bits,
                          std::uint64_t trial_seed);

// Ensemble-averaged MSD curves for every configured algorithm/bit-depth
// pair; full-resolution DQA-RLS is reported as DRLS and deduplicated.
// threads > 1 parallelizes over trials; reduction order is fixed, so the
// result does not depend on the thread count.
std::vector<MsdCurve> run_ensemble(const ExperimentConfig& config,
                                   int threads = 1);

}  // namespace dqanet
