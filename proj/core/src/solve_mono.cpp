#include "mqsfeti/solve_mono.hpp"

#include "mqsfeti/errors.hpp"
#include "mqsfeti/local_matrices.hpp"
#include "mqsfeti/sparse_util.hpp"

#include <Eigen/SparseLU>

#include <algorithm>
#include <string>

namespace mqsfeti {

namespace {

constexpr Cplx kI{0.0, 1.0};

void emit_block(TripletBuffer<Cplx>& buf, const SpMatR& m, Index row0, Index col0, Cplx factor,
                bool transpose = false) {
  for (int k = 0; k < m.outerSize(); ++k)
    for (SpMatR::InnerIterator it(m, k); it; ++it) {
      const Index r = transpose ? static_cast<Index>(it.col()) : static_cast<Index>(it.row());
      const Index c = transpose ? static_cast<Index>(it.row()) : static_cast<Index>(it.col());
      buf.add(row0 + r, col0 + c, factor * it.value());
    }
}

VecC solve_lu(const SpMatC& m, const VecC& rhs, const char* what) {
  Eigen::SparseLU<SpMatC> lu(m);
  if (lu.info() != Eigen::Success)
    throw SolverError(std::string("singular factorization of ") + what);
  return lu.solve(rhs);
}

} // namespace

SpMatC build_mono_matrix(const OperatorBlocks& blocks, const Materials& materials,
                         bool symmetrized) {
  const Index nv = static_cast<Index>(blocks.K.rows());
  const Index nu = static_cast<Index>(blocks.C.rows());
  const Cplx iw = kI * materials.omega;

  TripletBuffer<Cplx> buf;
  emit_block(buf, blocks.K, 0, 0, 1.0);
  emit_block(buf, blocks.M, 0, 0, iw);
  emit_block(buf, blocks.S, 0, nv, symmetrized ? iw : Cplx{1.0}, /*transpose=*/true);
  emit_block(buf, blocks.S, nv, 0, iw);
  emit_block(buf, blocks.C, nv, nv, symmetrized ? iw : Cplx{1.0});
  return buf.build(nv + nu, nv + nu);
}

double mono_residual(const OperatorBlocks& blocks, const Materials& materials, const VecC& A,
                     const VecC& phi) {
  const SpMatC m = build_mono_matrix(blocks, materials, false);
  VecC x(A.size() + phi.size());
  x << A, phi;
  VecC rhs(A.size() + phi.size());
  rhs << blocks.J.cast<Cplx>(), blocks.j.cast<Cplx>();
  const double nr = (m * x - rhs).lpNorm<Eigen::Infinity>();
  const double dr = rhs.lpNorm<Eigen::Infinity>();
  return dr > 0.0 ? nr / dr : nr;
}

MonoSolution solve_monolithic(const OperatorBlocks& blocks, const Materials& materials,
                              double tol) {
  if (!(tol > 0.0)) throw ConfigError("solver tolerance must be positive");
  const Index nv = static_cast<Index>(blocks.K.rows());
  const Index nu = static_cast<Index>(blocks.C.rows());

  MonoSolution sol;
  if (materials.omega == 0.0) {
    // Static limit: the phi-equation decouples; solve C phi = j first, then
    // the gauged curl-curl problem with the coupling moved to the right.
    sol.phi = solve_lu(blocks.C.cast<Cplx>(), blocks.j.cast<Cplx>(), "C");
    const VecC rhs = blocks.J.cast<Cplx>() - blocks.S.transpose().cast<Cplx>() * sol.phi;
    sol.A = solve_lu(blocks.K.cast<Cplx>(), rhs, "K");
    sol.method = "direct_lu_staged";
  } else {
    const SpMatC m = build_mono_matrix(blocks, materials, false);
    VecC rhs(nv + nu);
    rhs << blocks.J.cast<Cplx>(), blocks.j.cast<Cplx>();
    const VecC x = solve_lu(m, rhs, "monolithic block system");
    sol.A = x.head(nv);
    sol.phi = x.tail(nu);
    sol.method = "direct_lu";
  }

  sol.residual = mono_residual(blocks, materials, sol.A, sol.phi);
  if (!(sol.residual <= tol))
    throw SolverError("monolithic solve residual " + std::to_string(sol.residual) +
                      " exceeds tolerance " + std::to_string(tol));
  return sol;
}

const Vec3c& ConductorEField::at_tet(Index tet) const {
  const auto it = std::lower_bound(tets.begin(), tets.end(), tet);
  if (it == tets.end() || *it != tet)
    throw DomainError("electric field requested on tet " + std::to_string(tet) +
                      ", which is not in the conductor");
  return values[static_cast<std::size_t>(it - tets.begin())];
}

ConductorEField electric_field(const MonoSolution& solution, const Mesh& mesh,
                               const EntityLabels& labels, const DofPartition& partition,
                               const Materials& materials) {
  ConductorEField field;
  const Cplx iw = kI * materials.omega;
  for (Index t = 0; t < mesh.n_tets(); ++t) {
    if (labels.tet_region[static_cast<std::size_t>(t)] != Region::Conductor) continue;
    const TetFrame frame(mesh, t);
    const auto& verts = mesh.tets[static_cast<std::size_t>(t)];
    const auto& edges = mesh.tet_edges[static_cast<std::size_t>(t)];
    const auto& signs = mesh.tet_edge_signs[static_cast<std::size_t>(t)];

    Vec3c grad_phi = Vec3c::Zero();
    for (int v = 0; v < 4; ++v) {
      const Index dof = partition.vertex_to_UC[static_cast<std::size_t>(verts[v])];
      if (dof == kInvalidIndex) continue; // pinned root carries value zero
      grad_phi += solution.phi[dof] * frame.grad_bary[v];
    }

    // Tet average of the edge interpolant (the interpolant is linear, so the
    // centroid value is the mean).
    const Vec3 centroid = 0.25 * (frame.vertex[0] + frame.vertex[1] + frame.vertex[2] + frame.vertex[3]);
    Vec3c a_mean = Vec3c::Zero();
    for (int e = 0; e < 6; ++e) {
      const Index dof = partition.edge_to_V[static_cast<std::size_t>(edges[e])];
      if (dof == kInvalidIndex) continue;
      a_mean += solution.A[dof] * static_cast<double>(signs[e]) * frame.edge_basis(e, centroid);
    }

    field.tets.push_back(t);
    field.values.push_back((-grad_phi - iw * a_mean).eval());
  }
  return field;
}

} // namespace mqsfeti
