#include "dqanet/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

#include "dqanet/bussgang.hpp"

namespace dqanet {

namespace {

constexpr std::uint64_t kTagSystem = 0x73797374;
constexpr std::uint64_t kTagTopology = 0x746f706f;
constexpr std::uint64_t kTagProfiles = 0x70726f66;
constexpr std::uint64_t kTagTrialBase = 0x7472696c;
constexpr double kMsdFloorDb = -200.0;

std::complex<double> draw_complex_gaussian(std::mt19937_64& rng,
                                           double variance) {
  std::normal_distribution<double> comp(0.0, std::sqrt(variance / 2.0));
  double re = comp(rng);
  double im = comp(rng);
  return {re, im};
}

struct PairSpec {
  Algorithm algorithm;
  int bits;
  std::string label;  // reported name after full-resolution dedup
};

std::vector<PairSpec> resolve_pairs(const ExperimentConfig& config) {
  std::vector<PairSpec> pairs;
  for (Algorithm alg : config.algorithms) {
    for (int bits : config.bit_depths) {
      std::string label = algorithm_name(alg);
      if (bits == kFullResolution && alg == Algorithm::kDqaRls)
        label = algorithm_name(Algorithm::kDrls);
      bool duplicate = false;
      for (const PairSpec& p : pairs)
        if (p.label == label && p.bits == bits) duplicate = true;
      if (!duplicate) pairs.push_back({alg, bits, label});
    }
  }
  return pairs;
}

}  // namespace

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kDrls:
      return "drls";
    case Algorithm::kDqaRls:
      return "dqa-rls";
    case Algorithm::kQaLms:
      return "qa-lms";
  }
  throw std::logic_error("algorithm_name: unknown algorithm");
}

Algorithm algorithm_from_name(const std::string& name) {
  if (name == "drls") return Algorithm::kDrls;
  if (name == "dqa-rls") return Algorithm::kDqaRls;
  if (name == "qa-lms") return Algorithm::kQaLms;
  throw std::invalid_argument("unknown algorithm: " + name);
}

void ExperimentConfig::validate() const {
  if (node_count < 2) throw std::invalid_argument("node_count must be >= 2");
  if (filter_length < 1)
    throw std::invalid_argument("filter_length must be >= 1");
  if (!(forgetting > 0.0 && forgetting < 1.0))
    throw std::invalid_argument("forgetting must be in (0, 1)");
  if (!(regularization_delta > 0.0))
    throw std::invalid_argument("regularization_delta must be > 0");
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (bit_depths.empty()) throw std::invalid_argument("bit_depths is empty");
  for (int b : bit_depths)
    if (b != kFullResolution && (b < 1 || b > 8))
      throw std::invalid_argument("bit depth must be in [1, 8] or full");
  if (algorithms.empty()) throw std::invalid_argument("algorithms is empty");
  if (!(input_variance_min > 0.0) || input_variance_max < input_variance_min)
    throw std::invalid_argument("invalid input variance range");
  if (!(noise_variance_min > 0.0) || noise_variance_max < noise_variance_min)
    throw std::invalid_argument("invalid noise variance range");
  if (!(lms_step > 0.0)) throw std::invalid_argument("lms_step must be > 0");
  if (!(smoothing_beta >= 0.0 && smoothing_beta <= 1.0))
    throw std::invalid_argument("smoothing_beta must be in [0, 1]");
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag) {
  // splitmix64 finalizer over the combined words
  std::uint64_t z = parent + 0x9e3779b97f4a7c15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t trial_seed(std::uint64_t master_seed, int trial) {
  return derive_seed(master_seed, kTagTrialBase + trial);
}

Eigen::VectorXcd generate_system(int filter_length, std::uint64_t seed) {
  if (filter_length < 1)
    throw std::invalid_argument("generate_system: filter_length must be >= 1");
  std::mt19937_64 rng(seed);
  Eigen::VectorXcd w(filter_length);
  for (int m = 0; m < filter_length; ++m)
    w[m] = draw_complex_gaussian(rng, 1.0);
  return w / w.norm();
}

NodeProfiles generate_node_profiles(int node_count, std::uint64_t seed,
                                    double input_min, double input_max,
                                    double noise_min, double noise_max) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> in(input_min, input_max);
  std::uniform_real_distribution<double> nz(noise_min, noise_max);
  NodeProfiles p;
  p.input_variance.resize(node_count);
  p.noise_variance.resize(node_count);
  for (int k = 0; k < node_count; ++k) p.input_variance[k] = in(rng);
  for (int k = 0; k < node_count; ++k) p.noise_variance[k] = nz(rng);
  return p;
}

SimulationEnvironment build_environment(const ExperimentConfig& config) {
  config.validate();
  SimulationEnvironment env;
  env.topology =
      random_geometric(config.node_count, config.topology_radius,
                       derive_seed(config.master_seed, kTagTopology));
  env.combine_matrix = metropolis_weights(env.topology);
  env.adaptation_matrix =
      adaptation_weights(env.topology, config.adaptation_mode);
  env.profiles = generate_node_profiles(
      config.node_count, derive_seed(config.master_seed, kTagProfiles),
      config.input_variance_min, config.input_variance_max,
      config.noise_variance_min, config.noise_variance_max);
  env.neighborhoods.resize(config.node_count);
  for (int k = 0; k < config.node_count; ++k) {
    // Support of C, not of the adjacency, so identity mode keeps only self.
    for (int l = 0; l < config.node_count; ++l)
      if (env.adaptation_matrix(l, k) != 0.0) env.neighborhoods[k].push_back(l);
  }
  return env;
}

TrialData generate_trial_data(const ExperimentConfig& config,
                              const NodeProfiles& profiles,
                              std::uint64_t trial_seed) {
  const int n = config.node_count;
  const int m = config.filter_length;
  const int t = config.iterations;

  TrialData data;
  data.system = generate_system(m, derive_seed(trial_seed, kTagSystem));
  data.regressors.assign(t, std::vector<Eigen::VectorXcd>(n));
  data.desired.resize(t, n);

  // Separate substreams per node for inputs and noise.
  for (int k = 0; k < n; ++k) {
    std::mt19937_64 x_rng(derive_seed(trial_seed, 2 * k));
    std::mt19937_64 v_rng(derive_seed(trial_seed, 2 * k + 1));
    double sx2 = profiles.input_variance[k];
    double sv2 = profiles.noise_variance[k];
    for (int i = 0; i < t; ++i) {
      Eigen::VectorXcd x(m);
      for (int j = 0; j < m; ++j) x[j] = draw_complex_gaussian(x_rng, sx2);
      std::complex<double> v = draw_complex_gaussian(v_rng, sv2);
      data.desired(i, k) = data.system.dot(x) + v;  // w_o^H x + v
      data.regressors[i][k] = std::move(x);
    }
  }
  return data;
}

Eigen::MatrixXd run_trial_on_data(const ExperimentConfig& config,
                                  const SimulationEnvironment& env,
                                  const TrialData& data, Algorithm algorithm,
                                  int bits) {
  const int n = config.node_count;
  const int m = config.filter_length;
  const int t = config.iterations;
  const bool quantized = bits != kFullResolution;

  QuantizerSpec spec;
  if (quantized) spec = design_quantizer(bits);

  // Per-node quantization scales: the ADC front end is gain-controlled with
  // the true signal standard deviations.
  Eigen::VectorXd x_scale(n), d_scale(n);
  for (int k = 0; k < n; ++k) {
    double sx2 = env.profiles.input_variance[k];
    double sv2 = env.profiles.noise_variance[k];
    x_scale[k] = std::sqrt(sx2);
    d_scale[k] = std::sqrt(sx2 * data.system.squaredNorm() + sv2);
  }

  AdaptOptions options;
  options.forgetting = config.forgetting;
  options.per_neighbor_gain = config.per_neighbor_gain;
  options.smooth_variance = config.smooth_variance;
  options.smoothing_beta = config.smoothing_beta;

  std::vector<NodeState> states;
  states.reserve(n);
  for (int k = 0; k < n; ++k)
    states.push_back(make_node_state(m, config.regularization_delta));

  std::vector<Eigen::VectorXcd> xq(n, Eigen::VectorXcd(m));
  Eigen::VectorXcd dq(n);
  Eigen::MatrixXd sq_dev(t, n);

  for (int i = 0; i < t; ++i) {
    for (int k = 0; k < n; ++k) {
      if (quantized) {
        for (int j = 0; j < m; ++j)
          xq[k][j] = quantize_complex(spec, data.regressors[i][k][j],
                                      x_scale[k]);
        dq[k] = quantize_complex(spec, data.desired(i, k), d_scale[k]);
      } else {
        xq[k] = data.regressors[i][k];
        dq[k] = data.desired(i, k);
      }
    }

    for (int k = 0; k < n; ++k) {
      std::vector<NeighborDatum> nbrs;
      nbrs.reserve(env.neighborhoods[k].size());
      for (int l : env.neighborhoods[k]) {
        NeighborDatum nd;
        nd.node = l;
        nd.weight = env.adaptation_matrix(l, k);
        nd.noise_variance = config.oracle_noise_variances
                                ? env.profiles.noise_variance[l]
                                : 1.0;
        nd.regressor = &xq[l];
        nd.desired = dq[l];
        nbrs.push_back(nd);
      }
      try {
        switch (algorithm) {
          case Algorithm::kDrls:
            drls_adapt(states[k], nbrs, config.forgetting);
            break;
          case Algorithm::kDqaRls:
            if (quantized)
              dqa_rls_adapt(states[k], k, nbrs, spec, options);
            else
              drls_adapt(states[k], nbrs, config.forgetting);
            break;
          case Algorithm::kQaLms:
            if (quantized)
              qa_lms_adapt(states[k], k, nbrs, spec, config.lms_step, options);
            else
              lms_adapt(states[k], nbrs, config.lms_step);
            break;
        }
      } catch (const std::runtime_error& e) {
        throw std::runtime_error("node " + std::to_string(k) + ", iteration " +
                                 std::to_string(i) + ": " + e.what());
      }
    }

    combine(states, env.combine_matrix);

    for (int k = 0; k < n; ++k) {
      double d2 = (data.system - states[k].w).squaredNorm();
      if (!std::isfinite(d2))
        throw std::runtime_error("diverged at iteration " + std::to_string(i) +
                                 ", node " + std::to_string(k));
      sq_dev(i, k) = d2;
    }
  }
  return sq_dev;
}

Eigen::MatrixXd run_trial(const ExperimentConfig& config,
                          const SimulationEnvironment& env,
                          Algorithm algorithm, int bits,
                          std::uint64_t trial_seed) {
  TrialData data = generate_trial_data(config, env.profiles, trial_seed);
  return run_trial_on_data(config, env, data, algorithm, bits);
}

std::vector<MsdCurve> run_ensemble(const ExperimentConfig& config,
                                   int threads) {
  config.validate();
  SimulationEnvironment env = build_environment(config);
  std::vector<PairSpec> pairs = resolve_pairs(config);
  const int t = config.iterations;
  const int trials = config.trials;

  // results[pair][trial] is the per-iteration network-average squared
  // deviation; the reduction over trials happens afterwards in trial order,
  // so threading cannot change the output.
  std::vector<std::vector<Eigen::VectorXd>> results(
      pairs.size(), std::vector<Eigen::VectorXd>(trials));

  auto run_trials = [&](int first, int last) {
    for (int trial = first; trial < last; ++trial) {
      TrialData data = generate_trial_data(
          config, env.profiles, trial_seed(config.master_seed, trial));
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        Eigen::MatrixXd sq = run_trial_on_data(config, env, data,
                                               pairs[p].algorithm,
                                               pairs[p].bits);
        results[p][trial] = sq.rowwise().mean();
      }
    }
  };

  threads = std::max(1, std::min(threads, trials));
  if (threads == 1) {
    run_trials(0, trials);
  } else {
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto guarded = [&](int first, int last) {
      try {
        run_trials(first, last);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    };
    std::vector<std::thread> pool;
    int chunk = (trials + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      int first = w * chunk;
      int last = std::min(trials, first + chunk);
      if (first < last) pool.emplace_back(guarded, first, last);
    }
    for (std::thread& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<MsdCurve> curves;
  curves.reserve(pairs.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(t);
    for (int trial = 0; trial < trials; ++trial) mean += results[p][trial];
    mean /= static_cast<double>(trials);
    MsdCurve curve;
    curve.algorithm = pairs[p].label;
    curve.bits = pairs[p].bits;
    curve.msd_db.resize(t);
    for (int i = 0; i < t; ++i)
      curve.msd_db[i] =
          std::max(kMsdFloorDb, 10.0 * std::log10(std::max(mean[i], 0.0)));
    curves.push_back(std::move(curve));
  }
  return curves;
}

}  // namespace dqanet
