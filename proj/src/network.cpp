#include "dqanet/network.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace dqanet {

std::vector<int> Topology::neighbors(int k) const {
  std::vector<int> out;
  for (int l = 0; l < node_count; ++l)
    if (adjacency(l, k)) out.push_back(l);
  return out;
}

int Topology::degree(int k) const {
  int d = 0;
  for (int l = 0; l < node_count; ++l)
    if (l != k && adjacency(l, k)) ++d;
  return d;
}

bool Topology::connected() const {
  if (node_count == 0) return false;
  std::vector<bool> seen(node_count, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int visited = 1;
  while (!stack.empty()) {
    int k = stack.back();
    stack.pop_back();
    for (int l = 0; l < node_count; ++l) {
      if (l != k && adjacency(l, k) && !seen[l]) {
        seen[l] = true;
        ++visited;
        stack.push_back(l);
      }
    }
  }
  return visited == node_count;
}

Topology random_geometric(int node_count, double radius, std::uint64_t seed) {
  if (node_count < 2)
    throw std::invalid_argument("random_geometric: node_count must be >= 2");
  if (!(radius > 0.0) || radius > std::sqrt(2.0))
    throw std::invalid_argument(
        "random_geometric: radius must be in (0, sqrt(2)]");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (int attempt = 0; attempt < 1000; ++attempt) {
    Topology t;
    t.node_count = node_count;
    t.x.resize(node_count);
    t.y.resize(node_count);
    for (int k = 0; k < node_count; ++k) {
      t.x[k] = unit(rng);
      t.y[k] = unit(rng);
    }
    t.adjacency.setConstant(node_count, node_count, false);
    for (int k = 0; k < node_count; ++k) {
      t.adjacency(k, k) = true;
      for (int l = k + 1; l < node_count; ++l) {
        double dx = t.x[k] - t.x[l];
        double dy = t.y[k] - t.y[l];
        if (std::hypot(dx, dy) <= radius) {
          t.adjacency(k, l) = true;
          t.adjacency(l, k) = true;
        }
      }
    }
    if (t.connected()) return t;
  }
  throw std::runtime_error(
      "random_geometric: no connected graph after 1000 attempts; "
      "increase the radius");
}

Eigen::MatrixXd metropolis_weights(const Topology& topology) {
  const int n = topology.node_count;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    double off_sum = 0.0;
    for (int l = 0; l < n; ++l) {
      if (l == k || !topology.adjacency(l, k)) continue;
      a(l, k) = 1.0 / std::max(topology.degree(k), topology.degree(l));
      off_sum += a(l, k);
    }
    a(k, k) = std::max(0.0, 1.0 - off_sum);
  }
  return a;
}

Eigen::MatrixXd adaptation_weights(const Topology& topology, AdaptMode mode) {
  const int n = topology.node_count;
  switch (mode) {
    case AdaptMode::kIdentity:
      return Eigen::MatrixXd::Identity(n, n);
    case AdaptMode::kMetropolis:
      return metropolis_weights(topology);
    case AdaptMode::kUniform: {
      Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
      for (int k = 0; k < n; ++k) {
        double w = 1.0 / static_cast<double>(topology.degree(k) + 1);
        for (int l = 0; l < n; ++l)
          if (topology.adjacency(l, k)) c(l, k) = w;
      }
      return c;
    }
  }
  throw std::logic_error("adaptation_weights: unknown mode");
}

void export_topology(const Topology& topology, std::ostream& out) {
  out << "node, x, y\n";
  for (int k = 0; k < topology.node_count; ++k)
    out << k << ", " << topology.x[k] << ", " << topology.y[k] << "\n";
  out << "edge_from, edge_to\n";
  for (int k = 0; k < topology.node_count; ++k)
    for (int l = k + 1; l < topology.node_count; ++l)
      if (topology.adjacency(l, k)) out << k << ", " << l << "\n";
}

}  // namespace dqanet
