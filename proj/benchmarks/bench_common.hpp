#pragma once

#include <random>
#include <vector>

#include "hodgerank/flows.hpp"
#include "hodgerank/graph.hpp"

namespace bench {

// Erdos-Renyi comparison graph with weights in [1, 20].
inline hodgerank::ComparisonGraph random_graph(std::size_t n, double p, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(p);
  std::uniform_int_distribution<int> weight(1, 20);
  std::vector<hodgerank::Edge> edges;
  std::vector<double> weights;
  for (hodgerank::Vertex i = 0; i < static_cast<hodgerank::Vertex>(n); ++i) {
    for (hodgerank::Vertex j = i + 1; j < static_cast<hodgerank::Vertex>(n); ++j) {
      if (!keep(rng)) continue;
      edges.push_back({i, j});
      weights.push_back(weight(rng));
    }
  }
  return hodgerank::ComparisonGraph::from_edges(n, edges, weights);
}

inline hodgerank::EdgeFlow random_flow(const hodgerank::ComparisonGraph& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  hodgerank::EdgeFlow x = hodgerank::EdgeFlow::zero(g);
  for (Eigen::Index e = 0; e < x.values.size(); ++e) x.values[e] = z(rng);
  return x;
}

}  // namespace bench
