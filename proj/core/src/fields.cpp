#include "mqsfeti/fields.hpp"

#include "mqsfeti/local_matrices.hpp"

#include <algorithm>

namespace mqsfeti {

namespace {

// Curl of the interpolant on one tet from per-edge coefficients looked up
// through `edge_to_dof`; missing DOFs contribute zero.
template <typename Lookup>
BField reconstruct(const Mesh& mesh, Lookup&& coefficient) {
  BField field;
  field.per_tet.resize(static_cast<std::size_t>(mesh.n_tets()), Vec3c::Zero());
  for (Index t = 0; t < mesh.n_tets(); ++t) {
    const TetFrame frame(mesh, t);
    const auto& edges = mesh.tet_edges[static_cast<std::size_t>(t)];
    const auto& signs = mesh.tet_edge_signs[static_cast<std::size_t>(t)];
    Vec3c b = Vec3c::Zero();
    for (int e = 0; e < 6; ++e) {
      const Cplx c = coefficient(t, edges[e]);
      if (c == Cplx{0.0, 0.0}) continue;
      b += c * static_cast<double>(signs[e]) * frame.edge_basis_curl(e);
    }
    field.per_tet[static_cast<std::size_t>(t)] = b;
  }
  return field;
}

} // namespace

double BField::max_norm() const {
  double m = 0.0;
  for (const auto& b : per_tet) m = std::max(m, b.cwiseAbs().maxCoeff());
  return m;
}

BField reconstruct_B(const VecC& A, const Mesh& mesh, const DofPartition& partition) {
  return reconstruct(mesh, [&](Index, Index edge) {
    const Index dof = partition.edge_to_V[static_cast<std::size_t>(edge)];
    return dof == kInvalidIndex ? Cplx{0.0, 0.0} : A[dof];
  });
}

BField reconstruct_B_torn(const VecC& A_C, const VecC& A_I, const Mesh& mesh,
                          const EntityLabels& labels, const DofPartition& partition) {
  return reconstruct(mesh, [&](Index tet, Index edge) {
    const bool conductor = labels.tet_region[static_cast<std::size_t>(tet)] == Region::Conductor;
    const Index dof = conductor ? partition.edge_to_VC[static_cast<std::size_t>(edge)]
                                : partition.edge_to_VI[static_cast<std::size_t>(edge)];
    if (dof == kInvalidIndex) return Cplx{0.0, 0.0};
    return conductor ? A_C[dof] : A_I[dof];
  });
}

BField reconstruct_B_full(const VecC& edge_coefficients, const Mesh& mesh) {
  return reconstruct(mesh, [&](Index, Index edge) { return edge_coefficients[edge]; });
}

ContinuityReport check_normal_continuity(const BField& field, const Mesh& mesh,
                                         const EntityLabels& labels) {
  ContinuityReport report;
  report.scale = std::max(1.0, field.max_norm());
  for (Index f = 0; f < mesh.n_faces(); ++f) {
    const auto owners = mesh.face_tets[static_cast<std::size_t>(f)];
    if (owners[1] == kInvalidIndex) continue;
    const auto& fv = mesh.faces[static_cast<std::size_t>(f)];
    const Vec3 p0 = mesh.vertices[static_cast<std::size_t>(fv[0])];
    Vec3 n = (mesh.vertices[static_cast<std::size_t>(fv[1])] - p0)
                 .cross(mesh.vertices[static_cast<std::size_t>(fv[2])] - p0)
                 .normalized();
    const Vec3c diff = field.per_tet[static_cast<std::size_t>(owners[0])] -
                       field.per_tet[static_cast<std::size_t>(owners[1])];
    const double jump = std::abs(diff.dot(n.cast<Cplx>()));
    if (jump > report.worst_jump_all) {
      report.worst_jump_all = jump;
      report.worst_face_all = f;
    }
    if (labels.face_class[static_cast<std::size_t>(f)] == EntityClass::Interface &&
        jump > report.worst_jump_interface) {
      report.worst_jump_interface = jump;
      report.worst_face_interface = f;
    }
  }
  return report;
}

} // namespace mqsfeti
