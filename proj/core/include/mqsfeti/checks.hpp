#pragma once

#include "mqsfeti/solve_feti.hpp"
#include "mqsfeti/source.hpp"

namespace mqsfeti {

/// Relative infinity-norm differences between two solutions (denominators
/// guarded by the absolute norm for near-zero fields).
struct EquivalenceResult {
  double rel_A = 0.0;
  double rel_phi = 0.0;
};

EquivalenceResult check_equivalence(const MonoSolution& reference, const MonoSolution& other);

/// Dense spectral diagnostics: kernel dimensions of the ungauged curl-curl
/// operators (the kernels are spanned by gradients, so the expected dimension
/// is the vertex count of the region minus one) and smallest eigenvalues of
/// the cotree-restricted blocks. Intended for desk-scale meshes.
struct KernelDiagnostics {
  Index kernel_dim_insulator = 0;
  Index expected_insulator = 0;
  Index kernel_dim_global = 0;
  Index expected_global = 0;
  double lambda_min_K = 0.0, lambda_max_K = 0.0;
  double lambda_min_KI = 0.0, lambda_max_KI = 0.0;
  double lambda_min_KC = 0.0, lambda_max_KC = 0.0;
};

KernelDiagnostics check_kernel_dims(const Mesh& mesh, const EntityLabels& labels,
                                    const DofPartition& partition, const Materials& materials,
                                    const OperatorBlocks& blocks);

/// Max entry-wise deviations of the splitting relations
/// K = R^T blockdiag(K_C, K_I) R, M = R^T blockdiag(M_C, 0) R,
/// S = [S_C 0] R, J = R^T [J_C; J_I], each scaled by max(1, |block|_max).
struct SplittingDeviations {
  double dev_K = 0.0, dev_M = 0.0, dev_S = 0.0, dev_J = 0.0;
};

SplittingDeviations check_splitting_identities(const OperatorBlocks& blocks,
                                               const TearingOperator& tearing);

/// Tearing algebra: B R must vanish identically, R^T B^T likewise, and R has
/// full column rank with rank(R) + rank(B^T) = dim V_C + dim V_I (dense rank
/// checks; desk scale).
struct TearingDiagnostics {
  double max_BR = 0.0;
  double max_RtBt = 0.0;
  Index rank_R = 0;
  Index rank_Bt = 0;
};

TearingDiagnostics check_tearing(const OperatorBlocks& blocks, const TearingOperator& tearing,
                                 bool dense_ranks);

/// Max residual of the conductor charge-balance equation tested against all
/// conductor nodal functions including the pinned one, relative to
/// max(1, |j|_inf). Uses the reconstructed per-tet electric field.
double current_balance_residual(const MonoSolution& solution, const Mesh& mesh,
                                const EntityLabels& labels, const DofPartition& partition,
                                const Materials& materials, const IncidenceGradient& gradient,
                                const SourceVectors& source);

/// Max |K_full G| over all entries, scaled by max(1, |K_full|_max): the
/// discrete gradient fields must lie in the kernel of the ungauged curl-curl
/// operator.
double de_rham_residual(const Mesh& mesh, const EntityLabels& labels, const Materials& materials,
                        const IncidenceGradient& gradient);

/// Max |A - A^T| of the symmetrized monolithic matrix (phi = i w phi~).
double symmetrized_gap(const OperatorBlocks& blocks, const Materials& materials);

} // namespace mqsfeti
