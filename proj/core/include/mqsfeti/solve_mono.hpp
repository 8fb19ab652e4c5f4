#pragma once

#include "mqsfeti/operator_blocks.hpp"

#include <string>

namespace mqsfeti {

struct MonoSolution {
  VecC A;   // over V
  VecC phi; // over U_C
  double residual = 0.0;
  std::string method;
};

/// System matrix [[K + i w M, S^T], [i w S, C]]. With `symmetrized` the
/// substitution phi = i w phi~ is applied (valid for w > 0), yielding
/// [[K + i w M, i w S^T], [i w S, i w C]], which is complex-symmetric.
SpMatC build_mono_matrix(const OperatorBlocks& blocks, const Materials& materials,
                         bool symmetrized = false);

/// Direct solve of the gauged monolithic system. For w = 0 the system is
/// block-triangular and is solved in two stages (C phi = j, then
/// K A = J - S^T phi). Throws SolverError on singular factorization or if the
/// relative residual exceeds tol.
MonoSolution solve_monolithic(const OperatorBlocks& blocks, const Materials& materials, double tol);

/// Relative infinity-norm residual of the unsymmetrized block system.
double mono_residual(const OperatorBlocks& blocks, const Materials& materials,
                     const VecC& A, const VecC& phi);

/// Per-tet constant electric field -grad(phi) - i w A on the conductor
/// (A entering through its tet average).
struct ConductorEField {
  std::vector<Index> tets; // ascending conductor tet ids
  std::vector<Vec3c> values;

  /// Throws DomainError when `tet` is not a conductor tet.
  const Vec3c& at_tet(Index tet) const;
};

ConductorEField electric_field(const MonoSolution& solution, const Mesh& mesh,
                               const EntityLabels& labels, const DofPartition& partition,
                               const Materials& materials);

} // namespace mqsfeti
