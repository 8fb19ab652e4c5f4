#pragma once

#include "mqsfeti/dof_partition.hpp"
#include "mqsfeti/materials.hpp"

#include <functional>

namespace mqsfeti {

/// How conductor nodal test functions are extended into the insulator when
/// evaluating the nodal source functional j. For a solenoidal source the
/// result is independent of this choice.
enum class NodalExtension { Zero, GraphHarmonic };

/// A current excitation. Volumetric sources are analytic fields J_i(x);
/// sources tagged conductor_support_only are integrated over conductor tets
/// only (the field must vanish outside the conductor). Boundary sources are
/// tangential surface currents J_s(x, n, mu_local) on the outer boundary.
/// Raw sources provide the edge functional directly, one value per mesh edge.
struct SourceSpec {
  enum class Kind { Volumetric, Boundary, Raw };

  Kind kind = Kind::Volumetric;
  std::function<Vec3(const Vec3&)> volumetric;
  bool conductor_support_only = false;
  std::function<Vec3(const Vec3&, const Vec3&, double)> boundary;
  VecR raw;

  int quadrature_order = 4;
  bool project = false;          // project onto the discretely solenoidal set
  double solenoidal_tol = 1e-10; // relative acceptance threshold when not projecting
};

struct SourceOptions {
  NodalExtension extension = NodalExtension::Zero;
  double interface_split = 1.0; // fraction of interface-edge values assigned to J_C
  int threads = 1;
};

struct SourceVectors {
  VecR full;          // functional against every edge basis function
  VecR J;             // restriction to V
  VecR J_C, J_I;      // distributed restrictions to V_C / V_I
  VecR j;             // nodal functional on U_C
  double solenoidal_residual = 0.0; // relative, after projection if any
};

/// Relative magnitude of the source functional on gradients of nodal
/// functions supported outside the conductor closure; zero means discretely
/// solenoidal.
double solenoidal_residual(const IncidenceGradient& gradient, const VecR& full);

/// Removes the gradient component supported outside the conductor closure:
/// returns full - G0 c with c solving the graph normal equations.
VecR project_solenoidal(const IncidenceGradient& gradient, const VecR& full);

/// Nodal functional <J, grad(extension of hat_v)> for every conductor-closure
/// vertex (including the pinned root), in the order of
/// labels.conductor_vertices.
VecR nodal_source_values(const EntityLabels& labels, const IncidenceGradient& gradient,
                         const VecR& full, NodalExtension extension);

/// Assembles the functional and all its restrictions. Enforces the discrete
/// solenoidality condition: anywhere-supported sources must either pass the
/// test or be projected; otherwise a SourceError names the worst offending
/// vertex functional. Guarantees R^T [J_C; J_I] = J exactly for any
/// interface_split in [0, 1].
SourceVectors assemble_source(const Mesh& mesh, const EntityLabels& labels,
                              const DofPartition& partition, const IncidenceGradient& gradient,
                              const SourceSpec& source, const Materials& materials,
                              const SourceOptions& options = {});

} // namespace mqsfeti
