#pragma once

#include "mqsfeti/dof_partition.hpp"

namespace mqsfeti {

/// Magnetic flux density reconstructed from edge coefficients; the curl of
/// the lowest-order edge interpolant is constant per tet, so the field is
/// stored as one complex vector per tet (divergence-free within each tet by
/// construction).
struct BField {
  std::vector<Vec3c> per_tet;

  double max_norm() const; // max over tets of the component-wise magnitude
};

/// From a gauged global coefficient vector over V (tree edges carry zero).
BField reconstruct_B(const VecC& A, const Mesh& mesh, const DofPartition& partition);

/// From torn coefficients: conductor tets read V_C, insulator tets read V_I.
BField reconstruct_B_torn(const VecC& A_C, const VecC& A_I, const Mesh& mesh,
                          const EntityLabels& labels, const DofPartition& partition);

/// Diagnostic: from a full edge-space coefficient vector (size n_edges).
BField reconstruct_B_full(const VecC& edge_coefficients, const Mesh& mesh);

/// Worst normal jump of B across faces, absolute and split by face kind.
/// Conformity of the global field makes all jumps vanish; for the torn field
/// the claim under test is that even the interface jumps vanish.
struct ContinuityReport {
  double worst_jump_all = 0.0;       // over all interior faces (incl. interface)
  double worst_jump_interface = 0.0; // over interface faces only
  Index worst_face_all = kInvalidIndex;
  Index worst_face_interface = kInvalidIndex;
  double scale = 1.0; // max(1, ||B||_inf)
};

ContinuityReport check_normal_continuity(const BField& field, const Mesh& mesh,
                                         const EntityLabels& labels);

} // namespace mqsfeti
