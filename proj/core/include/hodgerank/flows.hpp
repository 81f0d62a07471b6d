#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "hodgerank/graph.hpp"

namespace hodgerank {

/// Score function s on the vertices (a 0-cochain).
struct Potential {
  Eigen::VectorXd values;

  double operator[](Vertex v) const { return values[v]; }
  std::size_t size() const { return static_cast<std::size_t>(values.size()); }
};

/**
 * Edge flow (1-cochain). values[e] holds X(i, j) for edge e = {i, j} with
 * i < j; the reverse orientation is implied by skew-symmetry.
 */
class EdgeFlow {
 public:
  EdgeFlow() = default;
  explicit EdgeFlow(Eigen::VectorXd values) : values(std::move(values)) {}

  static EdgeFlow zero(const ComparisonGraph& graph);

  /// X(from, to); zero when {from, to} is not an edge.
  double at(const ComparisonGraph& graph, Vertex from, Vertex to) const;
  /// Sets X(from, to) (and hence X(to, from) = -value). Throws InputError off E.
  void set(const ComparisonGraph& graph, Vertex from, Vertex to, double value);

  Eigen::VectorXd values;
};

/// Alternating function on the filled triangles (2-cochain).
class TriangleFlow {
 public:
  TriangleFlow() = default;
  explicit TriangleFlow(Eigen::VectorXd values) : values(std::move(values)) {}

  static TriangleFlow zero(const CliqueComplex& complex);

  /// Phi(a, b, c): sign follows the parity of the permutation to sorted order;
  /// zero when {a, b, c} is not a filled triangle.
  double at(const CliqueComplex& complex, Vertex a, Vertex b, Vertex c) const;

  Eigen::VectorXd values;
};

/// Weights of the C^1 inner product; C^0 and C^2 use the plain Euclidean one.
struct InnerProducts {
  Eigen::VectorXd edge_weights;

  static InnerProducts from_graph(const ComparisonGraph& graph);
  static InnerProducts unit(const ComparisonGraph& graph);

  /// Throws InputError unless sized to the graph with all weights > 0.
  void validate(const ComparisonGraph& graph) const;
};

double inner(const Potential& a, const Potential& b);
double inner(const EdgeFlow& x, const EdgeFlow& y, const InnerProducts& ip);
double inner(const TriangleFlow& a, const TriangleFlow& b);
double norm_squared(const EdgeFlow& x, const InnerProducts& ip);

/// (grad s)(i, j) = s_j - s_i.
EdgeFlow grad(const Potential& s, const ComparisonGraph& graph);

/// (curl X)(i, j, k) = X_ij + X_jk + X_ki on filled triangles.
TriangleFlow curl(const EdgeFlow& x, const CliqueComplex& complex);

/// (div X)(i) = sum_j w_ij X_ij. Equals -grad^* for the weighted product.
Potential div(const EdgeFlow& x, const ComparisonGraph& graph, const InnerProducts& ip);

/// (curl^* Phi)(i, j) = w_ij^{-1} sum_k Phi(i, j, k).
EdgeFlow curl_adjoint(const TriangleFlow& phi, const CliqueComplex& complex,
                      const InnerProducts& ip);

/// Coboundary delta_0 as an |E| x |V| matrix (row e: -1 at i, +1 at j).
Eigen::SparseMatrix<double> gradient_matrix(const ComparisonGraph& graph);

/// Coboundary delta_1 as a |T| x |E| matrix (row t: +1 at ij, +1 at jk, -1 at ik).
Eigen::SparseMatrix<double> curl_matrix(const CliqueComplex& complex);

/// Weighted graph Laplacian: off-diagonal -w_ij, diagonal sum_j w_ij.
Eigen::SparseMatrix<double> laplacian0(const ComparisonGraph& graph, const InnerProducts& ip);

/**
 * Graph Helmholtzian Delta_1 = curl^* curl - grad div acting on edge flows.
 *
 * In edge coordinates this is W^{-1} B^T B + D D^T W, where B is the curl
 * matrix, D the gradient matrix and W = diag(w). apply() never forms the
 * |E| x |E| matrix; assemble() does, for small complexes and tests.
 */
class Helmholtzian {
 public:
  Helmholtzian(const CliqueComplex& complex, const InnerProducts& ip);

  EdgeFlow apply(const EdgeFlow& x) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  Eigen::SparseMatrix<double> assemble() const;

 private:
  Eigen::SparseMatrix<double> curl_;
  Eigen::SparseMatrix<double> grad_;
  Eigen::VectorXd weights_;
};

Helmholtzian helmholtzian1(const CliqueComplex& complex, const InnerProducts& ip);

}  // namespace hodgerank
