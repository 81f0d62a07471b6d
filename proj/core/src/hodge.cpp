#include "hodgerank/hodge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "hodgerank/errors.hpp"

namespace hodgerank {

namespace {

void remove_component_means(Eigen::VectorXd& v, const Components& components) {
  for (const auto& members : components.members) {
    double mean = 0.0;
    for (Vertex u : members) mean += v[u];
    mean /= static_cast<double>(members.size());
    for (Vertex u : members) v[u] -= mean;
  }
}

double max_abs(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

Eigen::VectorXd singular_values(const Eigen::SparseMatrix<double>& b) {
  const Eigen::Index rows = b.rows();
  const Eigen::Index cols = b.cols();
  if (rows == 0 || cols == 0) return {};
  if (rows * cols <= 4'000'000) {
    Eigen::MatrixXd dense(b);
    return Eigen::BDCSVD<Eigen::MatrixXd>(dense).singularValues();
  }
  // Large complexes: eigenvalues of the smaller Gram matrix.
  Eigen::MatrixXd gram = rows <= cols ? Eigen::MatrixXd(b * b.transpose())
                                      : Eigen::MatrixXd(b.transpose() * b);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
  Eigen::VectorXd s = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  std::sort(s.data(), s.data() + s.size(), std::greater<>());
  return s;
}

}  // namespace

GlobalRanking global_rank(const EdgeFlow& flow, const ComparisonGraph& graph,
                          const InnerProducts& ip, const HodgeOptions& options) {
  if (graph.vertex_count() == 0) throw InputError("cannot rank an empty graph");
  ip.validate(graph);
  const Components components = connected_components(graph);
  const Eigen::SparseMatrix<double> lap = laplacian0(graph, ip);

  // The divergence sums to zero on each component; cleaning the rounding
  // error keeps the right-hand side in range(Delta_0).
  Eigen::VectorXd rhs = -div(flow, graph, ip).values;
  remove_component_means(rhs, components);

  SolveResult solved = conjugate_gradient(
      [&lap](const Eigen::VectorXd& x) -> Eigen::VectorXd { return lap * x; }, rhs,
      options.solver);
  if (!solved.diagnostics.converged) {
    throw SolverError("graph Laplacian solve did not converge", solved.diagnostics.iterations,
                      solved.diagnostics.relative_residual);
  }
  remove_component_means(solved.x, components);
  return {Potential{std::move(solved.x)}, solved.diagnostics};
}

EdgeFlow residual(const EdgeFlow& flow, const Potential& s_star, const ComparisonGraph& graph) {
  EdgeFlow g = grad(s_star, graph);
  if (g.values.size() != flow.values.size()) {
    throw InputError("flow size does not match the graph");
  }
  return EdgeFlow(flow.values - g.values);
}

CurlProjection curl_component(const EdgeFlow& flow, const CliqueComplex& complex,
                              const InnerProducts& ip, const HodgeOptions& options) {
  ip.validate(complex.graph());
  CurlProjection out{TriangleFlow::zero(complex), EdgeFlow::zero(complex.graph()), {}};
  out.diagnostics.converged = true;
  if (complex.triangle_count() == 0) return out;

  const Eigen::SparseMatrix<double> b = curl_matrix(complex);
  const Eigen::VectorXd inv_w = ip.edge_weights.cwiseInverse();
  const Eigen::VectorXd rhs = curl(flow, complex).values;

  // Rounding in curl(flow) can leave a component in ker(curl^*) that no
  // iterate can remove; residuals below that level count as converged.
  SolverOptions solver = options.solver;
  const double eps = std::numeric_limits<double>::epsilon();
  solver.absolute_tolerance = std::max(
      solver.absolute_tolerance,
      64.0 * eps * max_abs(flow.values) * std::sqrt(static_cast<double>(rhs.size())));

  SolveResult solved = conjugate_gradient(
      [&](const Eigen::VectorXd& phi) -> Eigen::VectorXd {
        Eigen::VectorXd up = b.transpose() * phi;
        return b * inv_w.cwiseProduct(up);
      },
      rhs, solver);
  if (!solved.diagnostics.converged) {
    throw SolverError("curl system did not converge", solved.diagnostics.iterations,
                      solved.diagnostics.relative_residual);
  }
  out.vector_potential = TriangleFlow(std::move(solved.x));
  out.flow = curl_adjoint(out.vector_potential, complex, ip);
  out.diagnostics = solved.diagnostics;
  return out;
}

EdgeFlow harmonic_component(const EdgeFlow& flow, const EdgeFlow& gradient_part,
                            const EdgeFlow& curl_part) {
  if (flow.values.size() != gradient_part.values.size() ||
      flow.values.size() != curl_part.values.size()) {
    throw InputError("component sizes differ");
  }
  return EdgeFlow(flow.values - gradient_part.values - curl_part.values);
}

BettiNumber betti1(const CliqueComplex& complex, const HodgeOptions& options) {
  const auto& graph = complex.graph();
  BettiNumber out;
  out.component_count = static_cast<int>(connected_components(graph).count());

  const Eigen::VectorXd sigma = singular_values(curl_matrix(complex));
  if (sigma.size() > 0) {
    out.largest_singular_value = sigma.maxCoeff();
    const double cutoff = options.rank_cutoff * out.largest_singular_value;
    for (Eigen::Index k = 0; k < sigma.size(); ++k) {
      if (sigma[k] > cutoff) ++out.curl_rank;
      if (sigma[k] > cutoff / 10.0 && sigma[k] < cutoff * 10.0) out.rank_ambiguous = true;
    }
  }
  out.value = static_cast<int>(graph.edge_count()) -
              (static_cast<int>(graph.vertex_count()) - out.component_count) - out.curl_rank;
  return out;
}

std::optional<double> cyclicity_ratio(const EdgeFlow& flow, const EdgeFlow& residual_flow,
                                      const InnerProducts& ip) {
  const double total = norm_squared(flow, ip);
  if (!(total > 0.0)) return std::nullopt;
  return norm_squared(residual_flow, ip) / total;
}

std::vector<RelativeCurl> relative_curl(const EdgeFlow& flow, const Potential& s_star,
                                        const CliqueComplex& complex) {
  const TriangleFlow c = curl(flow, complex);
  const double scale = std::max(1.0, max_abs(s_star.values));
  const double zero_gap = 1e-9 * scale;

  std::vector<RelativeCurl> out;
  out.reserve(3 * complex.triangle_count());
  const auto tris = complex.triangles();
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const auto [a, b, d] = tris[t].vertices;
    const double cv = c.values[static_cast<Eigen::Index>(t)];
    // curl(a,b,d) is positively oriented for (a,b), (b,d) and (d,a); the
    // canonical (a,d) orientation flips the sign of both numerator and the
    // gradient difference, so the ratio only needs the oriented numerator.
    const std::array<std::pair<Vertex, Vertex>, 3> pairs{{{a, b}, {b, d}, {a, d}}};
    const std::array<double, 3> numerators{cv, cv, -cv};
    for (int k = 0; k < 3; ++k) {
      const auto [i, j] = pairs[static_cast<std::size_t>(k)];
      RelativeCurl entry{{i, j}, tris[t].vertices, std::nullopt, true};
      const double gap = s_star[j] - s_star[i];
      if (std::abs(gap) > zero_gap) {
        entry.value = numerators[static_cast<std::size_t>(k)] / (3.0 * gap);
        entry.unreliable = std::abs(*entry.value) > 1.0;
      }
      out.push_back(entry);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const RelativeCurl& x, const RelativeCurl& y) {
    if (x.value.has_value() != y.value.has_value()) return !x.value.has_value();
    if (!x.value) return false;
    return std::abs(*x.value) > std::abs(*y.value);
  });
  return out;
}

HodgeReport decompose(const EdgeFlow& flow, const CliqueComplex& complex,
                      const InnerProducts& ip, const HodgeOptions& options) {
  const auto& graph = complex.graph();
  if (static_cast<std::size_t>(flow.values.size()) != graph.edge_count()) {
    throw InputError("flow size does not match the complex");
  }
  HodgeReport report;
  report.components = connected_components(graph);

  GlobalRanking ranking = global_rank(flow, graph, ip, options);
  report.global_scores = std::move(ranking.scores);
  report.gradient_solve = ranking.diagnostics;
  report.gradient_component = grad(report.global_scores, graph);

  CurlProjection cp = curl_component(flow, complex, ip, options);
  report.vector_potential = std::move(cp.vector_potential);
  report.curl_component = std::move(cp.flow);
  report.curl_solve = cp.diagnostics;

  report.harmonic_component =
      harmonic_component(flow, report.gradient_component, report.curl_component);
  report.betti1 = betti1(complex, options);

  auto& norms = report.norms;
  norms.input = norm_squared(flow, ip);
  norms.gradient = norm_squared(report.gradient_component, ip);
  norms.curl = norm_squared(report.curl_component, ip);
  norms.harmonic = norm_squared(report.harmonic_component, ip);

  const EdgeFlow r = residual(flow, report.global_scores, graph);
  report.cyclicity_ratio = cyclicity_ratio(flow, r, ip);

  auto& checks = report.checks;
  const double denom = norms.input > 0.0 ? norms.input : 1.0;
  checks.pythagoras_relative_error =
      std::abs(norms.input - norms.gradient - norms.curl - norms.harmonic) / denom;
  const Eigen::VectorXd rebuilt = report.gradient_component.values +
                                  report.curl_component.values +
                                  report.harmonic_component.values;
  checks.reconstruction_relative_error =
      std::sqrt(norm_squared(EdgeFlow(rebuilt - flow.values), ip) / denom);
  checks.max_residual_divergence = max_abs(div(r, graph, ip).values);
  checks.max_harmonic_curl = max_abs(curl(report.harmonic_component, complex).values);
  checks.max_harmonic_divergence = max_abs(div(report.harmonic_component, graph, ip).values);
  return report;
}

}  // namespace hodgerank
