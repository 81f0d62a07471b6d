#pragma once

#include <optional>
#include <vector>

#include "hodgerank/flows.hpp"
#include "hodgerank/graph.hpp"
#include "hodgerank/solvers.hpp"

namespace hodgerank {

struct HodgeOptions {
  SolverOptions solver{};
  /// Singular values of the curl matrix below cutoff * sigma_max count as zero.
  double rank_cutoff = 1e-8;
};

struct GlobalRanking {
  /// Minimum-norm least-squares potential: zero mean on every component.
  Potential scores;
  SolverDiagnostics diagnostics;
};

/// Solves Delta_0 s = -div(flow) for the minimum-norm s.
/// Throws SolverError if CG misses the tolerance, InputError on an empty graph.
GlobalRanking global_rank(const EdgeFlow& flow, const ComparisonGraph& graph,
                          const InnerProducts& ip, const HodgeOptions& options = {});

/// R* = flow - grad(s_star).
EdgeFlow residual(const EdgeFlow& flow, const Potential& s_star, const ComparisonGraph& graph);

struct CurlProjection {
  /// Minimum-norm Phi* solving (curl curl^*) Phi = curl(flow).
  TriangleFlow vector_potential;
  /// curl^* Phi*, the projection of the flow onto im(curl^*).
  EdgeFlow flow;
  SolverDiagnostics diagnostics;
};

CurlProjection curl_component(const EdgeFlow& flow, const CliqueComplex& complex,
                              const InnerProducts& ip, const HodgeOptions& options = {});

/// What is left after removing the gradient and curl components.
EdgeFlow harmonic_component(const EdgeFlow& flow, const EdgeFlow& gradient_part,
                            const EdgeFlow& curl_part);

struct BettiNumber {
  int value = 0;
  int curl_rank = 0;
  int component_count = 0;
  /// Some singular value sits within a factor 10 of the rank cutoff.
  bool rank_ambiguous = false;
  double largest_singular_value = 0.0;
};

/// dim ker(Delta_1) = |E| - (|V| - #components) - rank(curl).
BettiNumber betti1(const CliqueComplex& complex, const HodgeOptions& options = {});

/// ||R*||_w^2 / ||flow||_w^2; nullopt for a zero flow.
std::optional<double> cyclicity_ratio(const EdgeFlow& flow, const EdgeFlow& residual_flow,
                                      const InnerProducts& ip);

struct RelativeCurl {
  /// Edge in canonical orientation (edge.i < edge.j).
  Edge edge;
  /// Sorted vertices of the triangle.
  std::array<Vertex, 3> triangle{};
  /// curl(i, j, k) / (3 (s_j - s_i)); nullopt when s_i == s_j.
  std::optional<double> value;
  /// Undefined or |value| > 1.
  bool unreliable = false;
};

/// One entry per (edge, incident filled triangle) pair, sorted by |value|
/// descending with undefined entries first.
std::vector<RelativeCurl> relative_curl(const EdgeFlow& flow, const Potential& s_star,
                                        const CliqueComplex& complex);

struct ComponentNorms {
  double input = 0.0;
  double gradient = 0.0;
  double curl = 0.0;
  double harmonic = 0.0;
};

/// Residual invariant checks recorded for each decomposition.
struct InvariantChecks {
  double pythagoras_relative_error = 0.0;
  double reconstruction_relative_error = 0.0;
  double max_residual_divergence = 0.0;
  double max_harmonic_curl = 0.0;
  double max_harmonic_divergence = 0.0;
};

struct HodgeReport {
  Potential global_scores;
  EdgeFlow gradient_component;
  EdgeFlow curl_component;
  EdgeFlow harmonic_component;
  TriangleFlow vector_potential;
  ComponentNorms norms;
  std::optional<double> cyclicity_ratio;
  BettiNumber betti1;
  Components components;
  SolverDiagnostics gradient_solve;
  SolverDiagnostics curl_solve;
  InvariantChecks checks;

  bool multi_component() const { return components.count() > 1; }
};

/// Orthogonal split flow = grad s* + curl^* Phi* + harmonic.
HodgeReport decompose(const EdgeFlow& flow, const CliqueComplex& complex,
                      const InnerProducts& ip, const HodgeOptions& options = {});

}  // namespace hodgerank
