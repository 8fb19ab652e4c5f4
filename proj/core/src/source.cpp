#include "mqsfeti/source.hpp"

#include "mqsfeti/errors.hpp"
#include "mqsfeti/local_matrices.hpp"
#include "mqsfeti/parallel.hpp"
#include "mqsfeti/quadrature.hpp"

#include <Eigen/SparseCholesky>

#include <string>

namespace mqsfeti {

namespace {

using EdgeLoad = std::array<double, 6>;

std::vector<EdgeLoad> volumetric_loads(const Mesh& mesh, const EntityLabels& labels,
                                       const SourceSpec& source, const SourceOptions& options) {
  const auto rule = tet_rule(source.quadrature_order);
  std::vector<EdgeLoad> loads(static_cast<std::size_t>(mesh.n_tets()), EdgeLoad{});
  parallel_chunks(loads.size(), options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      if (source.conductor_support_only && labels.tet_region[t] != Region::Conductor) continue;
      const TetFrame frame(mesh, static_cast<Index>(t));
      for (const auto& qp : rule) {
        const Vec3 x = frame.point(qp.bary);
        const Vec3 ji = source.volumetric(x);
        if (ji.isZero(0.0)) continue;
        const double w = qp.weight * frame.volume;
        for (int e = 0; e < 6; ++e) loads[t][e] += w * ji.dot(frame.edge_basis(e, x));
      }
    }
  });
  return loads;
}

std::vector<EdgeLoad> boundary_loads(const Mesh& mesh, const EntityLabels& labels,
                                     const SourceSpec& source, const Materials& materials,
                                     std::vector<Index>& boundary_faces) {
  for (Index f = 0; f < mesh.n_faces(); ++f)
    if (mesh.face_tets[static_cast<std::size_t>(f)][1] == kInvalidIndex) boundary_faces.push_back(f);

  const auto rule = tri_rule(source.quadrature_order);
  std::vector<EdgeLoad> loads(boundary_faces.size(), EdgeLoad{});
  for (std::size_t fi = 0; fi < boundary_faces.size(); ++fi) {
    const Index f = boundary_faces[fi];
    const Index owner = mesh.face_tets[static_cast<std::size_t>(f)][0];
    const auto& fv = mesh.faces[static_cast<std::size_t>(f)];
    const Vec3 p0 = mesh.vertices[static_cast<std::size_t>(fv[0])];
    const Vec3 p1 = mesh.vertices[static_cast<std::size_t>(fv[1])];
    const Vec3 p2 = mesh.vertices[static_cast<std::size_t>(fv[2])];

    Vec3 normal = (p1 - p0).cross(p2 - p0);
    const double area = 0.5 * normal.norm();
    normal.normalize();
    const TetFrame frame(mesh, owner);
    const Vec3 tet_center = 0.25 * (frame.vertex[0] + frame.vertex[1] + frame.vertex[2] + frame.vertex[3]);
    if (normal.dot((p0 + p1 + p2) / 3.0 - tet_center) < 0.0) normal = -normal;

    const double mu = materials.mu(labels.tet_region[static_cast<std::size_t>(owner)]);
    for (const auto& qp : rule) {
      const Vec3 x = qp.bary[0] * p0 + qp.bary[1] * p1 + qp.bary[2] * p2;
      const Vec3 js = source.boundary(x, normal, mu);
      const double w = qp.weight * area;
      for (int e = 0; e < 6; ++e) loads[fi][e] += w * js.dot(frame.edge_basis(e, x));
    }
  }
  return loads;
}

} // namespace

double solenoidal_residual(const IncidenceGradient& gradient, const VecR& full) {
  if (gradient.G0.cols() == 0) return 0.0;
  const VecR r = gradient.G0.transpose() * full;
  const double scale = std::max(1.0, full.lpNorm<Eigen::Infinity>());
  return r.lpNorm<Eigen::Infinity>() / scale;
}

VecR project_solenoidal(const IncidenceGradient& gradient, const VecR& full) {
  if (gradient.G0.cols() == 0) return full;
  const SpMatR laplacian = SpMatR(gradient.G0.transpose()) * gradient.G0;
  Eigen::SimplicialLDLT<SpMatR> solver(laplacian);
  if (solver.info() != Eigen::Success)
    throw SolverError("graph Laplacian of the insulator-interior vertices is singular");
  const VecR c = solver.solve(VecR(gradient.G0.transpose() * full));
  return full - gradient.G0 * c;
}

VecR nodal_source_values(const EntityLabels& labels, const IncidenceGradient& gradient,
                         const VecR& full, NodalExtension extension) {
  VecR per_vertex = gradient.G_full.transpose() * full; // <J, grad hat_v> for every vertex
  if (extension == NodalExtension::GraphHarmonic && gradient.G0.cols() > 0) {
    const SpMatR laplacian = SpMatR(gradient.G0.transpose()) * gradient.G0;
    Eigen::SimplicialLDLT<SpMatR> solver(laplacian);
    if (solver.info() != Eigen::Success)
      throw SolverError("graph Laplacian of the insulator-interior vertices is singular");
    const VecR z = solver.solve(VecR(gradient.G0.transpose() * full));
    per_vertex -= gradient.G_full.transpose() * (gradient.G0 * z);
  }
  VecR out(static_cast<Eigen::Index>(labels.conductor_vertices.size()));
  for (std::size_t i = 0; i < labels.conductor_vertices.size(); ++i)
    out[static_cast<Eigen::Index>(i)] = per_vertex[labels.conductor_vertices[i]];
  return out;
}

SourceVectors assemble_source(const Mesh& mesh, const EntityLabels& labels,
                              const DofPartition& partition, const IncidenceGradient& gradient,
                              const SourceSpec& source, const Materials& materials,
                              const SourceOptions& options) {
  if (options.interface_split < 0.0 || options.interface_split > 1.0)
    throw ConfigError("interface_split must lie in [0, 1]");

  SourceVectors out;
  out.full = VecR::Zero(mesh.n_edges());

  switch (source.kind) {
    case SourceSpec::Kind::Volumetric: {
      if (!source.volumetric) throw ConfigError("volumetric source requires a field");
      const auto loads = volumetric_loads(mesh, labels, source, options);
      for (Index t = 0; t < mesh.n_tets(); ++t) {
        const auto& edges = mesh.tet_edges[static_cast<std::size_t>(t)];
        const auto& signs = mesh.tet_edge_signs[static_cast<std::size_t>(t)];
        for (int e = 0; e < 6; ++e)
          out.full[edges[e]] += signs[e] * loads[static_cast<std::size_t>(t)][e];
      }
      break;
    }
    case SourceSpec::Kind::Boundary: {
      if (!source.boundary) throw ConfigError("boundary source requires a surface field");
      std::vector<Index> boundary_faces;
      const auto loads = boundary_loads(mesh, labels, source, materials, boundary_faces);
      for (std::size_t fi = 0; fi < boundary_faces.size(); ++fi) {
        const Index owner = mesh.face_tets[static_cast<std::size_t>(boundary_faces[fi])][0];
        const auto& edges = mesh.tet_edges[static_cast<std::size_t>(owner)];
        const auto& signs = mesh.tet_edge_signs[static_cast<std::size_t>(owner)];
        for (int e = 0; e < 6; ++e) out.full[edges[e]] += signs[e] * loads[fi][e];
      }
      break;
    }
    case SourceSpec::Kind::Raw: {
      if (source.raw.size() != mesh.n_edges())
        throw ConfigError("raw source vector has " + std::to_string(source.raw.size()) +
                          " entries, mesh has " + std::to_string(mesh.n_edges()) + " edges");
      out.full = source.raw;
      break;
    }
  }

  out.solenoidal_residual = solenoidal_residual(gradient, out.full);
  if (source.project) {
    out.full = project_solenoidal(gradient, out.full);
    out.solenoidal_residual = solenoidal_residual(gradient, out.full);
  } else if (out.solenoidal_residual > source.solenoidal_tol) {
    const VecR r = gradient.G0.transpose() * out.full;
    Eigen::Index worst = 0;
    r.cwiseAbs().maxCoeff(&worst);
    throw SourceError(
        "source is not discretely solenoidal outside the conductor (relative residual " +
        std::to_string(out.solenoidal_residual) + ", worst vertex " +
        std::to_string(gradient.outside_conductor_vertices[static_cast<std::size_t>(worst)]) +
        "); enable projection or fix the source");
  }

  out.J = VecR(partition.dim_V());
  for (Index d = 0; d < partition.dim_V(); ++d)
    out.J[d] = out.full[partition.V_edges[static_cast<std::size_t>(d)]];

  // Distribute onto V_C/V_I. Interface cotree edges are shared; their value
  // is split (default: wholly to the conductor). The glued identity
  // R^T [J_C; J_I] = J holds exactly for any split.
  out.J_C = VecR::Zero(partition.dim_VC());
  out.J_I = VecR::Zero(partition.dim_VI());
  for (Index d = 0; d < partition.dim_V(); ++d) {
    const Index e = partition.V_edges[static_cast<std::size_t>(d)];
    const Index c = partition.edge_to_VC[static_cast<std::size_t>(e)];
    const Index i = partition.edge_to_VI[static_cast<std::size_t>(e)];
    const double v = out.full[e];
    if (c != kInvalidIndex && i != kInvalidIndex) {
      out.J_C[c] = options.interface_split * v;
      out.J_I[i] = v - out.J_C[c];
    } else if (c != kInvalidIndex) {
      out.J_C[c] = v;
    } else if (i != kInvalidIndex) {
      out.J_I[i] = v;
    } else {
      throw AssemblyError("cotree edge belongs to neither subdomain closure");
    }
  }

  const VecR nodal = nodal_source_values(labels, gradient, out.full, options.extension);
  out.j = VecR(partition.dim_UC());
  for (std::size_t i = 0; i < labels.conductor_vertices.size(); ++i) {
    const Index dof = partition.vertex_to_UC[static_cast<std::size_t>(labels.conductor_vertices[i])];
    if (dof != kInvalidIndex) out.j[dof] = nodal[static_cast<Eigen::Index>(i)];
  }
  return out;
}

} // namespace mqsfeti
