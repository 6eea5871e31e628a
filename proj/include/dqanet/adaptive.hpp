#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

#include "dqanet/quantizer.hpp"

namespace dqanet {

// Per-node adaptive state. P is kept Hermitian by re-symmetrizing after
// every outer iteration.
struct NodeState {
  Eigen::VectorXcd w;  // estimate after the combine step
  Eigen::VectorXcd h;  // intermediate (pre-combine) estimate
  Eigen::MatrixXcd P;  // regularized inverse correlation
  double gain = 1.0;
  double variance_estimate = 1.0;

  // Scratch for the rank-one updates, sized with the state.
  Eigen::VectorXcd scratch;
};

NodeState make_node_state(int filter_length, double regularization_delta);

// One neighbor's contribution to node k's adapt step.
struct NeighborDatum {
  int node = 0;
  double weight = 0.0;          // c_lk
  double noise_variance = 1.0;  // sigma^2_{v,l}
  const Eigen::VectorXcd* regressor = nullptr;  // x_{l,Q}(i)
  std::complex<double> desired;                 // d_{l,Q}(i)
};

struct AdaptOptions {
  double forgetting = 0.98;  // lambda
  bool per_neighbor_gain = false;
  bool smooth_variance = false;
  double smoothing_beta = 0.95;
  double variance_floor = 1e-12;
  bool pin_unit_gain = false;  // forces g = 1 (reduction checks)
};

// DQA-RLS adapt step (rank-one inverse-correlation updates with Bussgang
// demodulation). neighbor_data must cover exactly the nonzero-c_lk
// neighbors in ascending node order; self_node selects the entry whose
// regressor refreshes the gain. Throws on non-finite updates.
void dqa_rls_adapt(NodeState& state, int self_node,
                   std::span<const NeighborDatum> neighbor_data,
                   const QuantizerSpec& spec, const AdaptOptions& options);

// Quantization-unaware diffusion RLS: the same recursion with g = 1.
void drls_adapt(NodeState& state,
                std::span<const NeighborDatum> neighbor_data,
                double forgetting);

// Quantization-aware LMS baseline:
//   h <- h + mu * sum_l c_lk * x_{l,Q} * conj(d_{l,Q} - g h^H x_{l,Q}).
void qa_lms_adapt(NodeState& state, int self_node,
                  std::span<const NeighborDatum> neighbor_data,
                  const QuantizerSpec& spec, double step,
                  const AdaptOptions& options);

// Unaware LMS step (g = 1), used for full-resolution LMS runs.
void lms_adapt(NodeState& state,
               std::span<const NeighborDatum> neighbor_data, double step);

// ATC combine: w_k = sum_l a_lk h_l for every node.
void combine(std::vector<NodeState>& states,
             const Eigen::MatrixXd& combine_matrix);

}  // namespace dqanet
