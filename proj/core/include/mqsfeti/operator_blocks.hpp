#pragma once

#include "mqsfeti/dof_partition.hpp"
#include "mqsfeti/materials.hpp"

#include <span>

namespace mqsfeti {

struct AssemblyOptions {
  int threads = 1;
};

/// All operator blocks of the gauged monolithic system and of the torn
/// system, plus the assembled source functionals. Entries of the bilinear
/// forms are real; the frequency factors i*omega enter when a solve matrix is
/// formed.
///
/// Global blocks (on V and U_C):
///   K curl-curl, M conductor mass, S mixed sigma (A, grad q), C conductor
///   nodal stiffness.
/// Torn blocks:
///   K_I on V_I; K_C, M_C on V_C; S_C, C_C on V_C/U_C; signed boolean jump
///   maps B_C (+1) and B_I (-1) indexed by interface cotree edges.
/// Sources: J on V, J_C/J_I on V_C/V_I, nodal functional j on U_C.
struct OperatorBlocks {
  SpMatR K, M, S, C;
  SpMatR K_I, K_C, M_C, S_C, C_C;
  SpMatR B_C, B_I;
  VecR J, J_C, J_I, j;
};

/// Assembles the global blocks K, M, S, C restricted to the cotree/pinned
/// DOF numbering of `partition`.
OperatorBlocks assemble_global(const Mesh& mesh, const EntityLabels& labels,
                               const DofPartition& partition, const Materials& materials,
                               const AssemblyOptions& options = {});

/// Fills the torn blocks (K_I, K_C, M_C, S_C, C_C, B_C, B_I) of `blocks`.
/// Throws AssemblyError if an interface cotree edge is missing from either
/// subdomain numbering (the splitting would not be compatible).
void assemble_torn(const Mesh& mesh, const EntityLabels& labels, const DofPartition& partition,
                   const Materials& materials, OperatorBlocks& blocks,
                   const AssemblyOptions& options = {});

enum class RegionFilter { All, ConductorOnly, InsulatorOnly };

/// Diagnostic assembly of the curl-curl form over an explicit edge list
/// (compact numbering = position in `edge_list`), restricted to tets of the
/// selected region. Used for kernel-dimension and coercivity checks on the
/// ungauged space.
SpMatR assemble_curl_curl_on_edges(const Mesh& mesh, const EntityLabels& labels,
                                   const Materials& materials, RegionFilter region,
                                   std::span<const Index> edge_list,
                                   const AssemblyOptions& options = {});

} // namespace mqsfeti
