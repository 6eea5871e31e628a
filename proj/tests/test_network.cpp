#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "dqanet/network.hpp"

using namespace dqanet;

namespace {

// Ring of n nodes (every degree 2), bypassing the geometric generator.
Topology make_ring(int n) {
  Topology t;
  t.node_count = n;
  t.x.assign(n, 0.0);
  t.y.assign(n, 0.0);
  t.adjacency.setConstant(n, n, false);
  for (int k = 0; k < n; ++k) {
    t.adjacency(k, k) = true;
    t.adjacency(k, (k + 1) % n) = true;
    t.adjacency((k + 1) % n, k) = true;
  }
  return t;
}

}  // namespace

TEST_CASE("two nodes at max radius form a complete graph") {
  Topology t = random_geometric(2, std::sqrt(2.0), 3);
  CHECK(t.adjacency(0, 1));
  CHECK(t.adjacency(1, 0));
  CHECK(t.adjacency(0, 0));
  CHECK(t.connected());
}

TEST_CASE("geometric generation: connected, deterministic, validated") {
  Topology a = random_geometric(20, 0.35, 7);
  Topology b = random_geometric(20, 0.35, 7);
  CHECK(a.connected());
  CHECK((a.adjacency.array() == b.adjacency.array()).all());
  double mean_degree = 0.0;
  for (int k = 0; k < 20; ++k) {
    mean_degree += a.degree(k);
    CHECK(a.adjacency(k, k));
    for (int l = 0; l < 20; ++l) CHECK(a.adjacency(k, l) == a.adjacency(l, k));
  }
  CHECK(mean_degree / 20.0 > 0.0);

  CHECK_THROWS_AS(random_geometric(1, 0.3, 0), std::invalid_argument);
  CHECK_THROWS_AS(random_geometric(5, 0.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(random_geometric(50, 0.01, 0), std::runtime_error);
}

TEST_CASE("Metropolis weights: 2-node line") {
  // Both degrees are 1 (self excluded), so the neighbor weight is
  // 1/max(1,1) = 1 and the diagonal absorbs the remainder, 0.
  Topology t = random_geometric(2, std::sqrt(2.0), 1);
  Eigen::MatrixXd a = metropolis_weights(t);
  CHECK(a(0, 0) == doctest::Approx(0.0));
  CHECK(a(1, 0) == doctest::Approx(1.0));
  CHECK(a(0, 1) == doctest::Approx(1.0));
  CHECK(a(1, 1) == doctest::Approx(0.0));
}

TEST_CASE("Metropolis weights: 4-ring is doubly stochastic and symmetric") {
  Topology t = make_ring(4);
  Eigen::MatrixXd a = metropolis_weights(t);
  for (int k = 0; k < 4; ++k) {
    CHECK(a.col(k).sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a.row(k).sum() == doctest::Approx(1.0).epsilon(1e-12));
  }
  // each neighbor weight 1/max(2,2) = 1/2, diagonal absorbs the rest (0)
  CHECK(a(1, 0) == doctest::Approx(0.5));
  CHECK(a(0, 0) == doctest::Approx(0.0));
  CHECK((a - a.transpose()).norm() < 1e-14);
}

TEST_CASE("Metropolis columns sum to one on random topologies") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    Topology t = random_geometric(15, 0.45, seed);
    Eigen::MatrixXd a = metropolis_weights(t);
    for (int k = 0; k < 15; ++k)
      CHECK(a.col(k).sum() == doctest::Approx(1.0).epsilon(1e-12));
    // support exactly equals the adjacency
    for (int k = 0; k < 15; ++k)
      for (int l = 0; l < 15; ++l) {
        if (t.adjacency(l, k))
          CHECK(a(l, k) >= 0.0);
        else
          CHECK(a(l, k) == 0.0);
      }
  }
}

TEST_CASE("adaptation weights: all modes satisfy the support constraints") {
  Topology t = make_ring(4);

  Eigen::MatrixXd id = adaptation_weights(t, AdaptMode::kIdentity);
  CHECK((id - Eigen::MatrixXd::Identity(4, 4)).norm() == 0.0);

  Eigen::MatrixXd uni = adaptation_weights(t, AdaptMode::kUniform);
  for (int k = 0; k < 4; ++k) {
    int entries = 0;
    for (int l = 0; l < 4; ++l) {
      if (t.adjacency(l, k)) {
        CHECK(uni(l, k) == doctest::Approx(1.0 / 3.0));
        ++entries;
      } else {
        CHECK(uni(l, k) == 0.0);
      }
    }
    CHECK(entries == 3);  // self plus two ring neighbors
  }

  Eigen::MatrixXd met = adaptation_weights(t, AdaptMode::kMetropolis);
  CHECK((met - metropolis_weights(t)).norm() == 0.0);
}

TEST_CASE("topology export lists nodes then edges") {
  Topology t = random_geometric(3, std::sqrt(2.0), 11);
  std::ostringstream out;
  export_topology(t, out);
  std::string s = out.str();
  CHECK(s.find("node, x, y") == 0);
  CHECK(s.find("edge_from, edge_to") != std::string::npos);
}
