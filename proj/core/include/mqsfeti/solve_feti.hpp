#pragma once

#include "mqsfeti/solve_mono.hpp"

namespace mqsfeti {

/// Tearing operator R: V -> V_C x V_I. Every global cotree DOF maps to its
/// copy in each subdomain containing the edge; interface cotree edges get one
/// entry in each block. R is injective and range(R) = ker([B_C B_I]).
struct TearingOperator {
  SpMatR R; // (dim V_C + dim V_I) x dim V, entries in {0, 1}
  Index dim_VC = 0, dim_VI = 0, dim_V = 0;
};

TearingOperator build_tearing(const DofPartition& partition);

struct FetiSolution {
  VecC A_I;    // over V_I
  VecC A_C;    // over V_C
  VecC phi;    // over U_C
  VecC lambda; // over the interface cotree multipliers
  double residual = 0.0;
  double jump_norm = 0.0; // ||B_C A_C + B_I A_I||_inf
  int iterations = 0;     // dual path only
  std::string method;
};

/// Full saddle-point matrix with unknown order (A_I, A_C, phi, lambda):
/// [[K_I, 0, 0, B_I^T], [0, K_C + i w M_C, S_C^T, B_C^T],
///  [0, i w S_C, C_C, 0], [B_I, B_C, 0, 0]].
SpMatC build_feti_matrix(const OperatorBlocks& blocks, const Materials& materials);
VecC build_feti_rhs(const OperatorBlocks& blocks);

/// Direct factorization of the saddle-point system.
FetiSolution solve_feti_direct(const OperatorBlocks& blocks, const Materials& materials,
                               double tol);

/// Dual path: factorizes the insulator block and the conductor block
/// independently, reduces to the interface multipliers, and solves the dense
/// dual operator equation with unrestarted GMRES (finite termination in at
/// most dim V_G steps in exact arithmetic). Throws SolverError with the
/// residual history on non-convergence.
FetiSolution solve_feti_dual(const OperatorBlocks& blocks, const Materials& materials, double tol,
                             int max_iterations);

/// Reassembles a global solution from the torn one; interface values are
/// taken from the conductor side. Throws GluingError when the interface jump
/// exceeds tol * max(1, coefficient scale).
MonoSolution glue(const FetiSolution& solution, const DofPartition& partition, double tol);

/// Relative infinity-norm residual of the saddle-point system.
double feti_residual(const OperatorBlocks& blocks, const Materials& materials,
                     const FetiSolution& solution);

} // namespace mqsfeti
