#include "hodgerank/l1.hpp"

#include <algorithm>
#include <cmath>

#include "hodgerank/errors.hpp"

namespace hodgerank {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double max_abs(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

// Vertex -> column index, -1 for the root (smallest member) of each component.
std::vector<Eigen::Index> free_vertex_columns(const Components& components, std::size_t n) {
  std::vector<Eigen::Index> column(n, -1);
  Eigen::Index next = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const auto& members = components.members[static_cast<std::size_t>(components.component_of[v])];
    if (members.front() != static_cast<Vertex>(v)) column[v] = next++;
  }
  return column;
}

void center_components(Eigen::VectorXd& s, const Components& components) {
  for (const auto& members : components.members) {
    double mean = 0.0;
    for (Vertex u : members) mean += s[u];
    mean /= static_cast<double>(members.size());
    for (Vertex u : members) s[u] -= mean;
  }
}

std::vector<EdgeId> nonzero_support(const EdgeFlow& x, double reference) {
  const double threshold = 1e-9 * std::max(1.0, reference);
  std::vector<EdgeId> out;
  for (Eigen::Index e = 0; e < x.values.size(); ++e) {
    if (std::abs(x.values[e]) > threshold) out.push_back(static_cast<EdgeId>(e));
  }
  return out;
}

void finish_gradient(LpSolution& out, const EdgeFlow& flow, const ComparisonGraph& graph,
                     const InnerProducts& ip, const Components& components) {
  center_components(out.potential.values, components);
  out.generator = EdgeFlow(flow.values - grad(out.potential, graph).values);
  out.primal_objective = ip.edge_weights.dot(out.generator.values.cwiseAbs());
  out.support = nonzero_support(out.generator, max_abs(flow.values));
  out.dual_objective = inner(out.dual, flow, ip);
  out.duality_gap = std::abs(out.primal_objective - out.dual_objective);
  out.dual_box_violation = std::max(0.0, max_abs(out.dual.values) - 1.0);
  out.dual_equality_residual = max_abs(div(out.dual, graph, ip).values);
}

void finish_sparse(LpSolution& out, const EdgeFlow& residual_flow, const CliqueComplex& complex,
                   const InnerProducts& ip) {
  out.generator = EdgeFlow(residual_flow.values -
                           curl_adjoint(out.vector_potential, complex, ip).values);
  out.primal_objective = out.generator.values.cwiseAbs().sum();
  out.support = nonzero_support(out.generator, max_abs(residual_flow.values));
  out.dual_objective = inner(out.dual, residual_flow, ip);
  out.duality_gap = std::abs(out.primal_objective - out.dual_objective);
  out.dual_box_violation =
      std::max(0.0, max_abs(out.dual.values.cwiseProduct(ip.edge_weights)) - 1.0);
  out.dual_equality_residual = max_abs(curl(out.dual, complex).values);
}

void check_sizes(const EdgeFlow& flow, const ComparisonGraph& graph, const InnerProducts& ip) {
  if (static_cast<std::size_t>(flow.values.size()) != graph.edge_count()) {
    throw InputError("flow size does not match the graph");
  }
  ip.validate(graph);
}

void check_divergence_free(const EdgeFlow& r, const ComparisonGraph& graph,
                           const InnerProducts& ip) {
  const double scale = std::max(1.0, max_abs(ip.edge_weights.cwiseProduct(r.values)));
  if (max_abs(div(r, graph, ip).values) > 1e-8 * scale) {
    throw InputError("sparse cycle search needs a divergence-free flow");
  }
}

}  // namespace

LpSolution l1_project_gradient(const EdgeFlow& flow, const ComparisonGraph& graph,
                               const InnerProducts& ip, const SimplexOptions& options) {
  check_sizes(flow, graph, ip);
  const Components components = connected_components(graph);
  const std::size_t n = graph.vertex_count();
  const auto m = static_cast<Eigen::Index>(graph.edge_count());
  const auto column = free_vertex_columns(components, n);
  const auto free = static_cast<Eigen::Index>(n - components.count());

  // Columns: s+ (free), s- (free), u+ (m), u- (m).
  LinearProgram lp;
  const Eigen::Index cols = 2 * free + 2 * m;
  lp.constraints = Eigen::MatrixXd::Zero(m, cols);
  lp.cost = Eigen::VectorXd::Zero(cols);
  lp.rhs = flow.values;
  lp.lower = Eigen::VectorXd::Zero(cols);
  lp.upper = Eigen::VectorXd::Constant(cols, kInf);
  for (Eigen::Index e = 0; e < m; ++e) {
    const Edge& ed = graph.edge(static_cast<EdgeId>(e));
    if (const auto c = column[static_cast<std::size_t>(ed.j)]; c >= 0) {
      lp.constraints(e, c) += 1.0;
      lp.constraints(e, free + c) -= 1.0;
    }
    if (const auto c = column[static_cast<std::size_t>(ed.i)]; c >= 0) {
      lp.constraints(e, c) -= 1.0;
      lp.constraints(e, free + c) += 1.0;
    }
    lp.constraints(e, 2 * free + e) = -1.0;
    lp.constraints(e, 2 * free + m + e) = 1.0;
    lp.cost[2 * free + e] = ip.edge_weights[e];
    lp.cost[2 * free + m + e] = ip.edge_weights[e];
  }

  const LpResult res = solve_lp(lp, options);
  LpSolution out;
  out.status = res.status;
  out.iterations = res.iterations;
  if (!out.optimal()) return out;

  out.potential.values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t v = 0; v < n; ++v) {
    if (const auto c = column[v]; c >= 0) out.potential.values[static_cast<Eigen::Index>(v)] = res.x[c] - res.x[free + c];
  }
  out.dual = EdgeFlow(res.duals.cwiseQuotient(ip.edge_weights));
  finish_gradient(out, flow, graph, ip, components);
  return out;
}

LpSolution l1_dual_gradient(const EdgeFlow& flow, const ComparisonGraph& graph,
                            const InnerProducts& ip, const SimplexOptions& options) {
  check_sizes(flow, graph, ip);
  const Components components = connected_components(graph);
  const std::size_t n = graph.vertex_count();
  const auto m = static_cast<Eigen::Index>(graph.edge_count());
  const auto column = free_vertex_columns(components, n);
  const auto free = static_cast<Eigen::Index>(n - components.count());

  // Rows: div X = 0 at every non-root vertex; the root rows are implied.
  LinearProgram lp;
  lp.constraints = Eigen::MatrixXd::Zero(free, m);
  lp.rhs = Eigen::VectorXd::Zero(free);
  lp.cost = -ip.edge_weights.cwiseProduct(flow.values);
  lp.lower = Eigen::VectorXd::Constant(m, -1.0);
  lp.upper = Eigen::VectorXd::Constant(m, 1.0);
  for (Eigen::Index e = 0; e < m; ++e) {
    const Edge& ed = graph.edge(static_cast<EdgeId>(e));
    if (const auto r = column[static_cast<std::size_t>(ed.i)]; r >= 0) lp.constraints(r, e) += ip.edge_weights[e];
    if (const auto r = column[static_cast<std::size_t>(ed.j)]; r >= 0) lp.constraints(r, e) -= ip.edge_weights[e];
  }

  const LpResult res = solve_lp(lp, options);
  LpSolution out;
  out.status = res.status;
  out.iterations = res.iterations;
  if (!out.optimal()) return out;

  out.dual = EdgeFlow(res.x);
  // Reduced cost of X_e is w_e (y_j - y_i - flow_e), so y is an optimal potential.
  out.potential.values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t v = 0; v < n; ++v) {
    if (const auto r = column[v]; r >= 0) out.potential.values[static_cast<Eigen::Index>(v)] = res.duals[r];
  }
  finish_gradient(out, flow, graph, ip, components);
  return out;
}

LpSolution l1_sparse_cyclic(const EdgeFlow& residual_flow, const CliqueComplex& complex,
                            const InnerProducts& ip, const SimplexOptions& options) {
  const auto& graph = complex.graph();
  check_sizes(residual_flow, graph, ip);
  check_divergence_free(residual_flow, graph, ip);
  const auto m = static_cast<Eigen::Index>(graph.edge_count());
  const auto t = static_cast<Eigen::Index>(complex.triangle_count());

  // Columns: Phi+ (t), Phi- (t), u+ (m), u- (m).
  LinearProgram lp;
  const Eigen::Index cols = 2 * t + 2 * m;
  lp.constraints = Eigen::MatrixXd::Zero(m, cols);
  lp.cost = Eigen::VectorXd::Zero(cols);
  lp.cost.tail(2 * m).setOnes();
  lp.rhs = residual_flow.values;
  lp.lower = Eigen::VectorXd::Zero(cols);
  lp.upper = Eigen::VectorXd::Constant(cols, kInf);
  const auto tris = complex.triangles();
  for (Eigen::Index k = 0; k < t; ++k) {
    const auto& edges = tris[static_cast<std::size_t>(k)].edges;
    const std::array<double, 3> sign{1.0, 1.0, -1.0};
    for (std::size_t a = 0; a < 3; ++a) {
      const Eigen::Index e = edges[a];
      const double coeff = sign[a] / ip.edge_weights[e];
      lp.constraints(e, k) += coeff;
      lp.constraints(e, t + k) -= coeff;
    }
  }
  for (Eigen::Index e = 0; e < m; ++e) {
    lp.constraints(e, 2 * t + e) = -1.0;
    lp.constraints(e, 2 * t + m + e) = 1.0;
  }

  const LpResult res = solve_lp(lp, options);
  LpSolution out;
  out.status = res.status;
  out.iterations = res.iterations;
  if (!out.optimal()) return out;

  out.vector_potential = TriangleFlow(res.x.head(t) - res.x.segment(t, t));
  out.dual = EdgeFlow(res.duals.cwiseQuotient(ip.edge_weights));
  finish_sparse(out, residual_flow, complex, ip);
  return out;
}

LpSolution l1_dual_sparse(const EdgeFlow& residual_flow, const CliqueComplex& complex,
                          const InnerProducts& ip, const SimplexOptions& options) {
  const auto& graph = complex.graph();
  check_sizes(residual_flow, graph, ip);
  check_divergence_free(residual_flow, graph, ip);
  const auto t = static_cast<Eigen::Index>(complex.triangle_count());

  LinearProgram lp;
  lp.constraints = Eigen::MatrixXd(curl_matrix(complex));
  lp.rhs = Eigen::VectorXd::Zero(t);
  lp.cost = -ip.edge_weights.cwiseProduct(residual_flow.values);
  lp.upper = ip.edge_weights.cwiseInverse();
  lp.lower = -lp.upper;

  const LpResult res = solve_lp(lp, options);
  LpSolution out;
  out.status = res.status;
  out.iterations = res.iterations;
  if (!out.optimal()) return out;

  out.dual = EdgeFlow(res.x);
  // Reduced cost of X_e is -w_e (R + W^{-1} B^T y)_e, so Phi = -y is optimal.
  out.vector_potential = TriangleFlow(-res.duals);
  finish_sparse(out, residual_flow, complex, ip);
  return out;
}

}  // namespace hodgerank
