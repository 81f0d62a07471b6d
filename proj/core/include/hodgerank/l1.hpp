#pragma once

#include <vector>

#include "hodgerank/flows.hpp"
#include "hodgerank/graph.hpp"
#include "hodgerank/simplex.hpp"

namespace hodgerank {

/**
 * Outcome of one of the l1 linear programs, carrying both sides.
 *
 * For the gradient problem the primal variable is `potential`; for the
 * sparse-cycle problem it is `vector_potential`. In both cases `dual` is the
 * edge flow X of the dual program and `generator` is the primal residual
 * (flow - grad s, or R - curl^* Phi).
 */
struct LpSolution {
  LpStatus status = LpStatus::iteration_limit;
  Potential potential;
  TriangleFlow vector_potential;
  EdgeFlow generator;
  /// Edges where the generator is nonzero (relative threshold 1e-9).
  std::vector<EdgeId> support;
  double primal_objective = 0.0;

  EdgeFlow dual;
  double dual_objective = 0.0;
  double duality_gap = 0.0;
  /// Largest violation of the dual box constraint, scaled to the unit box.
  double dual_box_violation = 0.0;
  /// max |div X| for the gradient problem, max |curl X| for the sparse one.
  double dual_equality_residual = 0.0;
  int iterations = 0;

  bool optimal() const { return status == LpStatus::optimal; }
};

/// min_s sum_ij w_ij |s_j - s_i - flow_ij|, s zero mean on every component.
/// The dual flow is read off the simplex multipliers.
LpSolution l1_project_gradient(const EdgeFlow& flow, const ComparisonGraph& graph,
                               const InnerProducts& ip, const SimplexOptions& options = {});

/// max <X, flow>_w  s.t.  |X_ij| <= 1, div X = 0, solved directly. The
/// potential is recovered from the multipliers of the divergence rows.
LpSolution l1_dual_gradient(const EdgeFlow& flow, const ComparisonGraph& graph,
                            const InnerProducts& ip, const SimplexOptions& options = {});

/// min_Phi sum_ij |R_ij - (curl^* Phi)_ij| (unweighted). Throws InputError
/// when R is not divergence-free.
LpSolution l1_sparse_cyclic(const EdgeFlow& residual_flow, const CliqueComplex& complex,
                            const InnerProducts& ip, const SimplexOptions& options = {});

/// max <X, R>_w  s.t.  |X_ij| <= 1 / w_ij, curl X = 0, solved directly.
LpSolution l1_dual_sparse(const EdgeFlow& residual_flow, const CliqueComplex& complex,
                          const InnerProducts& ip, const SimplexOptions& options = {});

}  // namespace hodgerank
