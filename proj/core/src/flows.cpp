#include "hodgerank/flows.hpp"

#include <algorithm>
#include <cmath>

#include "hodgerank/errors.hpp"

namespace hodgerank {

namespace {

void require_edge_flow(const EdgeFlow& x, const ComparisonGraph& graph) {
  if (static_cast<std::size_t>(x.values.size()) != graph.edge_count()) {
    throw InputError("edge flow size does not match the graph");
  }
}

void require_triangle_flow(const TriangleFlow& phi, const CliqueComplex& complex) {
  if (static_cast<std::size_t>(phi.values.size()) != complex.triangle_count()) {
    throw InputError("triangle flow size does not match the complex");
  }
}

}  // namespace

EdgeFlow EdgeFlow::zero(const ComparisonGraph& graph) {
  return EdgeFlow(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(graph.edge_count())));
}

double EdgeFlow::at(const ComparisonGraph& graph, Vertex from, Vertex to) const {
  const auto e = graph.find_edge(from, to);
  if (!e) return 0.0;
  return from < to ? values[*e] : -values[*e];
}

void EdgeFlow::set(const ComparisonGraph& graph, Vertex from, Vertex to, double value) {
  const auto e = graph.find_edge(from, to);
  if (!e) throw InputError("edge flows vanish off the edge set");
  values[*e] = from < to ? value : -value;
}

TriangleFlow TriangleFlow::zero(const CliqueComplex& complex) {
  return TriangleFlow(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(complex.triangle_count())));
}

double TriangleFlow::at(const CliqueComplex& complex, Vertex a, Vertex b, Vertex c) const {
  const auto t = complex.find_triangle(a, b, c);
  if (!t) return 0.0;
  // Parity of the permutation taking (a, b, c) to sorted order.
  int inversions = (a > b) + (a > c) + (b > c);
  const double v = values[static_cast<Eigen::Index>(*t)];
  return inversions % 2 == 0 ? v : -v;
}

InnerProducts InnerProducts::from_graph(const ComparisonGraph& graph) {
  const auto w = graph.weights();
  return {Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()))};
}

InnerProducts InnerProducts::unit(const ComparisonGraph& graph) {
  return {Eigen::VectorXd::Ones(static_cast<Eigen::Index>(graph.edge_count()))};
}

void InnerProducts::validate(const ComparisonGraph& graph) const {
  if (static_cast<std::size_t>(edge_weights.size()) != graph.edge_count()) {
    throw InputError("inner product weights do not match the graph");
  }
  for (Eigen::Index e = 0; e < edge_weights.size(); ++e) {
    if (!(edge_weights[e] > 0.0) || !std::isfinite(edge_weights[e])) {
      throw InputError("inner product weights must be positive");
    }
  }
}

double inner(const Potential& a, const Potential& b) { return a.values.dot(b.values); }

double inner(const EdgeFlow& x, const EdgeFlow& y, const InnerProducts& ip) {
  return (x.values.array() * y.values.array() * ip.edge_weights.array()).sum();
}

double inner(const TriangleFlow& a, const TriangleFlow& b) { return a.values.dot(b.values); }

double norm_squared(const EdgeFlow& x, const InnerProducts& ip) { return inner(x, x, ip); }

EdgeFlow grad(const Potential& s, const ComparisonGraph& graph) {
  if (s.size() != graph.vertex_count()) {
    throw InputError("potential size does not match the graph");
  }
  EdgeFlow out = EdgeFlow::zero(graph);
  const auto edges = graph.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    out.values[static_cast<Eigen::Index>(e)] = s[edges[e].j] - s[edges[e].i];
  }
  return out;
}

TriangleFlow curl(const EdgeFlow& x, const CliqueComplex& complex) {
  require_edge_flow(x, complex.graph());
  TriangleFlow out = TriangleFlow::zero(complex);
  const auto tris = complex.triangles();
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const auto& e = tris[t].edges;
    // X_ij + X_jk + X_ki with X_ki = -X_ik.
    out.values[static_cast<Eigen::Index>(t)] = x.values[e[0]] + x.values[e[1]] - x.values[e[2]];
  }
  return out;
}

Potential div(const EdgeFlow& x, const ComparisonGraph& graph, const InnerProducts& ip) {
  require_edge_flow(x, graph);
  Potential out{Eigen::VectorXd::Zero(static_cast<Eigen::Index>(graph.vertex_count()))};
  const auto edges = graph.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const double f = ip.edge_weights[static_cast<Eigen::Index>(e)] *
                     x.values[static_cast<Eigen::Index>(e)];
    out.values[edges[e].i] += f;
    out.values[edges[e].j] -= f;
  }
  return out;
}

EdgeFlow curl_adjoint(const TriangleFlow& phi, const CliqueComplex& complex,
                      const InnerProducts& ip) {
  require_triangle_flow(phi, complex);
  EdgeFlow out = EdgeFlow::zero(complex.graph());
  const auto tris = complex.triangles();
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const double p = phi.values[static_cast<Eigen::Index>(t)];
    const auto& e = tris[t].edges;
    out.values[e[0]] += p;
    out.values[e[1]] += p;
    out.values[e[2]] -= p;
  }
  out.values.array() /= ip.edge_weights.array();
  return out;
}

Eigen::SparseMatrix<double> gradient_matrix(const ComparisonGraph& graph) {
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(2 * graph.edge_count());
  const auto edges = graph.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto row = static_cast<int>(e);
    entries.emplace_back(row, edges[e].i, -1.0);
    entries.emplace_back(row, edges[e].j, 1.0);
  }
  Eigen::SparseMatrix<double> d(static_cast<Eigen::Index>(graph.edge_count()),
                                static_cast<Eigen::Index>(graph.vertex_count()));
  d.setFromTriplets(entries.begin(), entries.end());
  return d;
}

Eigen::SparseMatrix<double> curl_matrix(const CliqueComplex& complex) {
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(3 * complex.triangle_count());
  const auto tris = complex.triangles();
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const auto row = static_cast<int>(t);
    entries.emplace_back(row, tris[t].edges[0], 1.0);
    entries.emplace_back(row, tris[t].edges[1], 1.0);
    entries.emplace_back(row, tris[t].edges[2], -1.0);
  }
  Eigen::SparseMatrix<double> b(static_cast<Eigen::Index>(complex.triangle_count()),
                                static_cast<Eigen::Index>(complex.graph().edge_count()));
  b.setFromTriplets(entries.begin(), entries.end());
  return b;
}

Eigen::SparseMatrix<double> laplacian0(const ComparisonGraph& graph, const InnerProducts& ip) {
  ip.validate(graph);
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(4 * graph.edge_count());
  const auto edges = graph.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const double w = ip.edge_weights[static_cast<Eigen::Index>(e)];
    const auto [i, j] = edges[e];
    entries.emplace_back(i, i, w);
    entries.emplace_back(j, j, w);
    entries.emplace_back(i, j, -w);
    entries.emplace_back(j, i, -w);
  }
  const auto n = static_cast<Eigen::Index>(graph.vertex_count());
  Eigen::SparseMatrix<double> l(n, n);
  l.setFromTriplets(entries.begin(), entries.end());
  return l;
}

Helmholtzian::Helmholtzian(const CliqueComplex& complex, const InnerProducts& ip)
    : curl_(curl_matrix(complex)), grad_(gradient_matrix(complex.graph())),
      weights_(ip.edge_weights) {
  ip.validate(complex.graph());
}

Eigen::VectorXd Helmholtzian::apply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd up = curl_.transpose() * (curl_ * x);
  up.array() /= weights_.array();
  Eigen::VectorXd wx = weights_.cwiseProduct(x);
  Eigen::VectorXd down = grad_ * (grad_.transpose() * wx);
  return up + down;
}

EdgeFlow Helmholtzian::apply(const EdgeFlow& x) const { return EdgeFlow(apply(x.values)); }

Eigen::SparseMatrix<double> Helmholtzian::assemble() const {
  Eigen::SparseMatrix<double> winv(weights_.size(), weights_.size());
  Eigen::SparseMatrix<double> w(weights_.size(), weights_.size());
  winv.reserve(Eigen::VectorXi::Constant(weights_.size(), 1));
  w.reserve(Eigen::VectorXi::Constant(weights_.size(), 1));
  for (Eigen::Index e = 0; e < weights_.size(); ++e) {
    winv.insert(e, e) = 1.0 / weights_[e];
    w.insert(e, e) = weights_[e];
  }
  Eigen::SparseMatrix<double> btb = curl_.transpose() * curl_;
  Eigen::SparseMatrix<double> ddt = grad_ * grad_.transpose();
  Eigen::SparseMatrix<double> result = winv * btb + ddt * w;
  return result;
}

Helmholtzian helmholtzian1(const CliqueComplex& complex, const InnerProducts& ip) {
  return Helmholtzian(complex, ip);
}

}  // namespace hodgerank
