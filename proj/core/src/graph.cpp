#include "hodgerank/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hodgerank/errors.hpp"
#include "hodgerank/flows.hpp"

namespace hodgerank {

ComparisonGraph::ComparisonGraph(std::vector<std::string> labels, std::vector<Edge> edges,
                                 std::vector<double> weights)
    : labels_(std::move(labels)) {
  if (edges.size() != weights.size()) {
    throw InputError("edge and weight counts differ");
  }
  const auto n = static_cast<Vertex>(labels_.size());

  std::vector<std::size_t> order(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto& [i, j] = edges[e];
    if (i < 0 || j < 0 || i >= n || j >= n) {
      throw InputError("edge endpoint out of range: " + std::to_string(i) + "," +
                       std::to_string(j));
    }
    if (i == j) {
      throw InputError("self-loop on vertex " + labels_[static_cast<std::size_t>(i)]);
    }
    if (!(weights[e] > 0.0) || !std::isfinite(weights[e])) {
      throw InputError("edge weights must be positive and finite");
    }
    if (i > j) std::swap(i, j);
    order[e] = e;
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });

  edges_.reserve(edges.size());
  weights_.reserve(edges.size());
  for (std::size_t e : order) {
    if (!edges_.empty() && edges_.back() == edges[e]) {
      throw InputError("duplicate edge " + std::to_string(edges[e].i) + "," +
                       std::to_string(edges[e].j));
    }
    edges_.push_back(edges[e]);
    weights_.push_back(weights[e]);
  }

  std::vector<std::size_t> degree(labels_.size() + 1, 0);
  for (const auto& [i, j] : edges_) {
    ++degree[static_cast<std::size_t>(i) + 1];
    ++degree[static_cast<std::size_t>(j) + 1];
  }
  offsets_.assign(labels_.size() + 1, 0);
  std::partial_sum(degree.begin(), degree.end(), offsets_.begin());
  adjacency_.resize(2 * edges_.size());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  // Edges are sorted, so each vertex's neighbor list comes out sorted too:
  // smaller neighbors arrive as the j-endpoint before larger ones as the i-endpoint.
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto [i, j] = edges_[e];
    adjacency_[cursor[static_cast<std::size_t>(i)]++] = {j, static_cast<EdgeId>(e)};
    adjacency_[cursor[static_cast<std::size_t>(j)]++] = {i, static_cast<EdgeId>(e)};
  }
  for (std::size_t v = 0; v < labels_.size(); ++v) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
  }
}

ComparisonGraph ComparisonGraph::from_edges(std::size_t vertex_count, std::vector<Edge> edges,
                                            std::vector<double> weights) {
  std::vector<std::string> labels(vertex_count);
  for (std::size_t v = 0; v < vertex_count; ++v) labels[v] = std::to_string(v);
  if (weights.empty()) weights.assign(edges.size(), 1.0);
  return ComparisonGraph(std::move(labels), std::move(edges), std::move(weights));
}

ComparisonGraph ComparisonGraph::complete(std::size_t vertex_count) {
  std::vector<Edge> edges;
  const auto n = static_cast<Vertex>(vertex_count);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) edges.push_back({i, j});
  return from_edges(vertex_count, std::move(edges));
}

std::span<const Neighbor> ComparisonGraph::neighbors(Vertex v) const {
  const auto u = static_cast<std::size_t>(v);
  return {adjacency_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
}

std::optional<EdgeId> ComparisonGraph::find_edge(Vertex a, Vertex b) const {
  const auto n = static_cast<Vertex>(vertex_count());
  if (a < 0 || b < 0 || a >= n || b >= n || a == b) return std::nullopt;
  auto nbrs = neighbors(a);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), b,
                             [](const Neighbor& x, Vertex target) { return x.vertex < target; });
  if (it == nbrs.end() || it->vertex != b) return std::nullopt;
  return it->edge;
}

bool ComparisonGraph::is_complete() const {
  const std::size_t n = vertex_count();
  return edge_count() == n * (n - (n > 0 ? 1 : 0)) / 2;
}

CliqueComplex::CliqueComplex(ComparisonGraph graph, std::vector<Triangle> triangles)
    : graph_(std::move(graph)), triangles_(std::move(triangles)) {
  for (const auto& t : triangles_) {
    const auto [a, b, c] = t.vertices;
    if (!(a < b && b < c)) throw InputError("triangle vertices must be sorted and distinct");
    const auto ab = graph_.find_edge(a, b);
    const auto bc = graph_.find_edge(b, c);
    const auto ac = graph_.find_edge(a, c);
    if (!ab || !bc || !ac || *ab != t.edges[0] || *bc != t.edges[1] || *ac != t.edges[2]) {
      throw InputError("triangle is not a 3-clique of the graph");
    }
  }
}

std::optional<std::size_t> CliqueComplex::find_triangle(Vertex a, Vertex b, Vertex c) const {
  std::array<Vertex, 3> key{a, b, c};
  std::sort(key.begin(), key.end());
  auto it = std::lower_bound(
      triangles_.begin(), triangles_.end(), key,
      [](const Triangle& t, const std::array<Vertex, 3>& k) { return t.vertices < k; });
  if (it == triangles_.end() || it->vertices != key) return std::nullopt;
  return static_cast<std::size_t>(it - triangles_.begin());
}

ComparisonGraph build_graph(const PairwiseData& pairwise) {
  const auto n = static_cast<Vertex>(pairwise.labels.size());
  std::vector<Edge> edges;
  std::vector<double> weights;
  for (const auto& entry : pairwise.entries) {
    if (entry.i == entry.j) {
      throw InputError("pairwise entry compares an item with itself");
    }
    if (entry.i < 0 || entry.j < 0 || entry.i >= n || entry.j >= n) {
      throw InputError("pairwise entry refers to an unknown item");
    }
    if (entry.weight < 0.0 || std::isnan(entry.weight)) {
      throw InputError("negative weight on pair " + pairwise.labels[entry.i] + "," +
                       pairwise.labels[entry.j]);
    }
    if (!std::isfinite(entry.flow)) {
      throw InputError("non-finite flow on pair " + pairwise.labels[entry.i] + "," +
                       pairwise.labels[entry.j]);
    }
    if (entry.weight == 0.0) continue;
    edges.push_back({entry.i, entry.j});
    weights.push_back(entry.weight);
  }
  return ComparisonGraph(pairwise.labels, std::move(edges), std::move(weights));
}

CliqueComplex triangles(const ComparisonGraph& graph) {
  // Forward enumeration: for each edge (i, j) with i < j, intersect the
  // upper neighborhoods of i and j above j. Yields each clique once, sorted.
  std::vector<Triangle> result;
  const auto n = static_cast<Vertex>(graph.vertex_count());
  for (Vertex i = 0; i < n; ++i) {
    auto ni = graph.neighbors(i);
    for (const Neighbor& ij : ni) {
      const Vertex j = ij.vertex;
      if (j <= i) continue;
      auto nj = graph.neighbors(j);
      auto a = std::upper_bound(ni.begin(), ni.end(), j,
                                [](Vertex t, const Neighbor& x) { return t < x.vertex; });
      auto b = std::upper_bound(nj.begin(), nj.end(), j,
                                [](Vertex t, const Neighbor& x) { return t < x.vertex; });
      while (a != ni.end() && b != nj.end()) {
        if (a->vertex < b->vertex) {
          ++a;
        } else if (b->vertex < a->vertex) {
          ++b;
        } else {
          result.push_back({{i, j, a->vertex}, {ij.edge, b->edge, a->edge}});
          ++a;
          ++b;
        }
      }
    }
  }
  return CliqueComplex(graph, std::move(result));
}

CliqueComplex gamma_subcomplex(const CliqueComplex& complex, const EdgeFlow& flow,
                               double gamma) {
  if (std::isnan(gamma) || gamma < 0.0) {
    throw InputError("gamma must be nonnegative");
  }
  if (static_cast<std::size_t>(flow.values.size()) != complex.graph().edge_count()) {
    throw InputError("flow is not defined on the complex's graph");
  }
  std::vector<Triangle> kept;
  for (const auto& t : complex.triangles()) {
    const double c = flow.values[t.edges[0]] + flow.values[t.edges[1]] - flow.values[t.edges[2]];
    if (std::abs(c) <= gamma) kept.push_back(t);
  }
  return CliqueComplex(complex.graph(), std::move(kept));
}

Components connected_components(const ComparisonGraph& graph) {
  const std::size_t n = graph.vertex_count();
  Components out;
  out.component_of.assign(n, -1);
  std::vector<Vertex> stack;
  for (std::size_t root = 0; root < n; ++root) {
    if (out.component_of[root] != -1) continue;
    const int id = static_cast<int>(out.members.size());
    auto& members = out.members.emplace_back();
    out.component_of[root] = id;
    stack.push_back(static_cast<Vertex>(root));
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (const Neighbor& nb : graph.neighbors(v)) {
        auto& c = out.component_of[static_cast<std::size_t>(nb.vertex)];
        if (c == -1) {
          c = id;
          stack.push_back(nb.vertex);
        }
      }
    }
    std::sort(members.begin(), members.end());
  }
  return out;
}

}  // namespace hodgerank
