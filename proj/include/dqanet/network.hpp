#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <ostream>
#include <vector>

namespace dqanet {

// Connected diffusion-network topology. The adjacency includes the diagonal
// (every node is its own neighbor).
struct Topology {
  int node_count = 0;
  std::vector<double> x;  // positions in the unit square
  std::vector<double> y;
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> adjacency;

  // Neighbors of k including k itself, ascending.
  std::vector<int> neighbors(int k) const;
  // Neighbor count excluding self.
  int degree(int k) const;
  bool connected() const;
};

enum class AdaptMode { kUniform, kMetropolis, kIdentity };

// Random geometric graph in the unit square: edge iff distance <= radius.
// Redraws positions (up to 1000 attempts) until the graph is connected.
Topology random_geometric(int node_count, double radius, std::uint64_t seed);

// Metropolis combination weights: a_lk = 1/max(deg_k, deg_l) for neighbors
// l != k, remainder on the diagonal. Columns sum to one.
Eigen::MatrixXd metropolis_weights(const Topology& topology);

// Adaptation weights c_lk over the neighborhood support.
Eigen::MatrixXd adaptation_weights(const Topology& topology, AdaptMode mode);

// Plain-text export: node coordinate rows followed by edge rows.
void export_topology(const Topology& topology, std::ostream& out);

}  // namespace dqanet
