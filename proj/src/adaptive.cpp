#include "dqanet/adaptive.hpp"

#include <stdexcept>
#include <string>

#include "dqanet/bussgang.hpp"

namespace dqanet {

namespace {

// Shared rank-one recursion for DQA-RLS and DRLS; the two differ only in
// the demodulation gain. Update order matters: h is refreshed from w first,
// P is scaled by 1/lambda, then every neighbor applies the h update with
// the pre-update P of that inner step, followed by the P downdate.
void rls_core(NodeState& state, std::span<const NeighborDatum> neighbor_data,
              double forgetting, double gain,
              const QuantizerSpec* per_neighbor_spec) {
  state.h = state.w;
  state.P *= 1.0 / forgetting;

  for (const NeighborDatum& nb : neighbor_data) {
    const Eigen::VectorXcd& x = *nb.regressor;
    if (x.size() != state.h.size())
      throw std::invalid_argument("rls_core: regressor length mismatch");

    double g = gain;
    if (per_neighbor_spec != nullptr) {
      double var = estimate_input_variance(x, per_neighbor_spec->bits);
      g = gain_scalar(*per_neighbor_spec, var);
    }

    state.scratch.noalias() = state.P * x;  // P x, pre-update P
    double quad = x.dot(state.scratch).real();
    double den = nb.noise_variance + nb.weight * quad;

    std::complex<double> err = nb.desired - g * state.h.dot(x);
    state.h.noalias() += (nb.weight / den) * state.scratch * std::conj(err);
    state.P.noalias() -=
        (nb.weight / den) * state.scratch * state.scratch.adjoint();
  }

  state.P = 0.5 * (state.P + state.P.adjoint()).eval();

  if (!state.h.allFinite() || !state.P.allFinite())
    throw std::runtime_error("adaptive update diverged (non-finite state)");
}

// Gain refresh from the node's own quantized regressor.
void refresh_gain(NodeState& state, int self_node,
                  std::span<const NeighborDatum> neighbor_data,
                  const QuantizerSpec& spec, const AdaptOptions& options) {
  const Eigen::VectorXcd* own = nullptr;
  for (const NeighborDatum& nb : neighbor_data)
    if (nb.node == self_node) own = nb.regressor;
  if (own == nullptr)
    throw std::invalid_argument(
        "adapt: neighbor_data missing the node's own entry");

  double inst =
      estimate_input_variance(*own, spec.bits, options.variance_floor);
  state.variance_estimate =
      options.smooth_variance
          ? smooth_variance(state.variance_estimate, inst,
                            options.smoothing_beta)
          : inst;
  state.gain = options.pin_unit_gain
                   ? 1.0
                   : gain_scalar(spec, state.variance_estimate);
}

}  // namespace

NodeState make_node_state(int filter_length, double regularization_delta) {
  if (filter_length < 1)
    throw std::invalid_argument("make_node_state: filter_length must be >= 1");
  if (!(regularization_delta > 0.0))
    throw std::invalid_argument("make_node_state: delta must be > 0");
  NodeState s;
  s.w = Eigen::VectorXcd::Zero(filter_length);
  s.h = Eigen::VectorXcd::Zero(filter_length);
  s.P = regularization_delta *
        Eigen::MatrixXcd::Identity(filter_length, filter_length);
  s.scratch = Eigen::VectorXcd::Zero(filter_length);
  return s;
}

void dqa_rls_adapt(NodeState& state, int self_node,
                   std::span<const NeighborDatum> neighbor_data,
                   const QuantizerSpec& spec, const AdaptOptions& options) {
  refresh_gain(state, self_node, neighbor_data, spec, options);
  rls_core(state, neighbor_data, options.forgetting, state.gain,
           options.per_neighbor_gain && !options.pin_unit_gain ? &spec
                                                               : nullptr);
}

void drls_adapt(NodeState& state,
                std::span<const NeighborDatum> neighbor_data,
                double forgetting) {
  rls_core(state, neighbor_data, forgetting, 1.0, nullptr);
}

void qa_lms_adapt(NodeState& state, int self_node,
                  std::span<const NeighborDatum> neighbor_data,
                  const QuantizerSpec& spec, double step,
                  const AdaptOptions& options) {
  if (!(step >= 0.0))
    throw std::invalid_argument("qa_lms_adapt: step must be nonnegative");
  refresh_gain(state, self_node, neighbor_data, spec, options);

  state.h = state.w;
  Eigen::VectorXcd update = Eigen::VectorXcd::Zero(state.h.size());
  for (const NeighborDatum& nb : neighbor_data) {
    const Eigen::VectorXcd& x = *nb.regressor;
    if (x.size() != state.h.size())
      throw std::invalid_argument("qa_lms_adapt: regressor length mismatch");
    std::complex<double> err = nb.desired - state.gain * state.h.dot(x);
    update.noalias() += nb.weight * x * std::conj(err);
  }
  state.h.noalias() += step * update;

  if (!state.h.allFinite())
    throw std::runtime_error("qa_lms_adapt diverged (non-finite state)");
}

void lms_adapt(NodeState& state,
               std::span<const NeighborDatum> neighbor_data, double step) {
  state.h = state.w;
  Eigen::VectorXcd update = Eigen::VectorXcd::Zero(state.h.size());
  for (const NeighborDatum& nb : neighbor_data) {
    const Eigen::VectorXcd& x = *nb.regressor;
    std::complex<double> err = nb.desired - state.h.dot(x);
    update.noalias() += nb.weight * x * std::conj(err);
  }
  state.h.noalias() += step * update;
  if (!state.h.allFinite())
    throw std::runtime_error("lms_adapt diverged (non-finite state)");
}

void combine(std::vector<NodeState>& states,
             const Eigen::MatrixXd& combine_matrix) {
  const int n = static_cast<int>(states.size());
  if (combine_matrix.rows() != n || combine_matrix.cols() != n)
    throw std::invalid_argument("combine: matrix size mismatch");
  for (int k = 0; k < n; ++k) {
    states[k].w.setZero();
    for (int l = 0; l < n; ++l) {
      double a = combine_matrix(l, k);
      if (a != 0.0) states[k].w.noalias() += a * states[l].h;
    }
  }
}

}  // namespace dqanet
