#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hodgerank {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;

/// Unordered vertex pair stored in canonical orientation i < j.
struct Edge {
  Vertex i = 0;
  Vertex j = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Neighbor {
  Vertex vertex = 0;
  EdgeId edge = 0;
};

/// One aggregated comparison between alternatives i < j: total weight w_ij and
/// the skew flow value in the i -> j orientation.
struct PairwiseEntry {
  Vertex i = 0;
  Vertex j = 0;
  double weight = 0.0;
  double flow = 0.0;
};

struct PairwiseData {
  std::vector<std::string> labels;
  std::vector<PairwiseEntry> entries;
};

class EdgeFlow;

/**
 * Undirected comparison graph G = (V, E) with positive edge weights.
 *
 * Vertices are dense indices 0..n-1 carrying external labels. Edges are kept
 * sorted lexicographically in canonical orientation, so edge ids are stable
 * for a given edge set. Adjacency is stored CSR-style with neighbors sorted
 * by vertex index.
 */
class ComparisonGraph {
 public:
  ComparisonGraph() = default;

  /// Throws InputError on self-loops, duplicate pairs, out-of-range vertices
  /// or non-positive weights.
  ComparisonGraph(std::vector<std::string> labels, std::vector<Edge> edges,
                  std::vector<double> weights);

  /// Labels default to "0", "1", ...; weights default to 1.
  static ComparisonGraph from_edges(std::size_t vertex_count,
                                    std::vector<Edge> edges,
                                    std::vector<double> weights = {});
  static ComparisonGraph complete(std::size_t vertex_count);

  std::size_t vertex_count() const { return labels_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  std::span<const double> weights() const { return weights_; }
  double weight(EdgeId e) const { return weights_[static_cast<std::size_t>(e)]; }
  const std::vector<std::string>& labels() const { return labels_; }

  std::span<const Neighbor> neighbors(Vertex v) const;
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }

  /// Edge id of {a, b} in either argument order.
  std::optional<EdgeId> find_edge(Vertex a, Vertex b) const;

  bool is_complete() const;

 private:
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<double> weights_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
};

/// A 3-clique (i < j < k) with the ids of its edges ij, jk and ik.
struct Triangle {
  std::array<Vertex, 3> vertices{};
  std::array<EdgeId, 3> edges{};

  friend bool operator==(const Triangle&, const Triangle&) = default;
};

/// 2-skeleton of the clique complex: the graph plus a set of filled triangles.
class CliqueComplex {
 public:
  CliqueComplex() = default;
  CliqueComplex(ComparisonGraph graph, std::vector<Triangle> triangles);

  const ComparisonGraph& graph() const { return graph_; }
  std::span<const Triangle> triangles() const { return triangles_; }
  std::size_t triangle_count() const { return triangles_.size(); }

  /// Triangle id for {a, b, c} in any argument order, if filled.
  std::optional<std::size_t> find_triangle(Vertex a, Vertex b, Vertex c) const;

 private:
  ComparisonGraph graph_;
  std::vector<Triangle> triangles_;
};

struct Components {
  /// component_of[v] is the index of v's component.
  std::vector<int> component_of;
  /// Members of each component, sorted; components ordered by smallest member.
  std::vector<std::vector<Vertex>> members;

  std::size_t count() const { return members.size(); }
};

/// Graph on the pairs with w_ij > 0. Zero-weight pairs are dropped.
ComparisonGraph build_graph(const PairwiseData& pairwise);

/// Full 3-clique complex of the graph, triangles in lexicographic order.
CliqueComplex triangles(const ComparisonGraph& graph);

/// Subcomplex keeping the triangles with |X_ij + X_jk + X_ki| <= gamma.
/// gamma may be +infinity. Throws InputError for gamma < 0 or NaN.
CliqueComplex gamma_subcomplex(const CliqueComplex& complex, const EdgeFlow& flow,
                               double gamma);

Components connected_components(const ComparisonGraph& graph);

}  // namespace hodgerank
