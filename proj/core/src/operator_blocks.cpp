#include "mqsfeti/operator_blocks.hpp"

#include "mqsfeti/local_matrices.hpp"
#include "mqsfeti/parallel.hpp"
#include "mqsfeti/sparse_util.hpp"

#include <string>

namespace mqsfeti {

namespace {

struct LocalSet {
  Mat6 k;
  Mat6 m;
  Mat46 s;
  Mat4 c;
  bool conductor = false;
};

// Per-tet local matrices, computed in parallel; emission into the global
// triplet stream stays serial and in tet order so assembly is deterministic.
std::vector<LocalSet> compute_locals(const Mesh& mesh, const EntityLabels& labels,
                                     const Materials& materials, const AssemblyOptions& options) {
  std::vector<LocalSet> locals(static_cast<std::size_t>(mesh.n_tets()));
  parallel_chunks(locals.size(), options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      const TetFrame frame(mesh, static_cast<Index>(t));
      const Region region = labels.tet_region[t];
      auto& out = locals[t];
      out.conductor = region == Region::Conductor;
      out.k = local_curl_curl(frame, materials.mu(region));
      if (out.conductor) {
        const double sigma = materials.sigma(region);
        out.m = local_mass(frame, sigma);
        out.s = local_mixed(frame, sigma);
        out.c = local_p1_stiffness(frame, sigma);
      }
    }
  });
  return locals;
}

} // namespace

OperatorBlocks assemble_global(const Mesh& mesh, const EntityLabels& labels,
                               const DofPartition& partition, const Materials& materials,
                               const AssemblyOptions& options) {
  const auto locals = compute_locals(mesh, labels, materials, options);

  TripletBuffer<double> bk, bm, bs, bc;
  for (Index t = 0; t < mesh.n_tets(); ++t) {
    const auto& lm = locals[static_cast<std::size_t>(t)];
    const auto& edges = mesh.tet_edges[static_cast<std::size_t>(t)];
    const auto& signs = mesh.tet_edge_signs[static_cast<std::size_t>(t)];
    const auto& verts = mesh.tets[static_cast<std::size_t>(t)];

    std::array<Index, 6> vdof{};
    for (int e = 0; e < 6; ++e) vdof[e] = partition.edge_to_V[static_cast<std::size_t>(edges[e])];

    for (int i = 0; i < 6; ++i) {
      if (vdof[i] == kInvalidIndex) continue;
      for (int j = 0; j < 6; ++j) {
        if (vdof[j] == kInvalidIndex) continue;
        const double ss = signs[i] * signs[j];
        bk.add(vdof[i], vdof[j], ss * lm.k(i, j));
        if (lm.conductor) bm.add(vdof[i], vdof[j], ss * lm.m(i, j));
      }
    }
    if (!lm.conductor) continue;

    std::array<Index, 4> udof{};
    for (int v = 0; v < 4; ++v) udof[v] = partition.vertex_to_UC[static_cast<std::size_t>(verts[v])];
    for (int v = 0; v < 4; ++v) {
      if (udof[v] == kInvalidIndex) continue;
      for (int j = 0; j < 6; ++j)
        if (vdof[j] != kInvalidIndex) bs.add(udof[v], vdof[j], signs[j] * lm.s(v, j));
      for (int w = 0; w < 4; ++w)
        if (udof[w] != kInvalidIndex) bc.add(udof[v], udof[w], lm.c(v, w));
    }
  }

  OperatorBlocks blocks;
  blocks.K = bk.build(partition.dim_V(), partition.dim_V());
  blocks.M = bm.build(partition.dim_V(), partition.dim_V());
  blocks.S = bs.build(partition.dim_UC(), partition.dim_V());
  blocks.C = bc.build(partition.dim_UC(), partition.dim_UC());
  return blocks;
}

void assemble_torn(const Mesh& mesh, const EntityLabels& labels, const DofPartition& partition,
                   const Materials& materials, OperatorBlocks& blocks,
                   const AssemblyOptions& options) {
  const auto locals = compute_locals(mesh, labels, materials, options);

  TripletBuffer<double> bki, bkc, bmc, bsc, bcc;
  for (Index t = 0; t < mesh.n_tets(); ++t) {
    const auto& lm = locals[static_cast<std::size_t>(t)];
    const auto& edges = mesh.tet_edges[static_cast<std::size_t>(t)];
    const auto& signs = mesh.tet_edge_signs[static_cast<std::size_t>(t)];
    const auto& verts = mesh.tets[static_cast<std::size_t>(t)];

    const auto& edge_to_dof = lm.conductor ? partition.edge_to_VC : partition.edge_to_VI;
    std::array<Index, 6> dof{};
    for (int e = 0; e < 6; ++e) dof[e] = edge_to_dof[static_cast<std::size_t>(edges[e])];

    auto& bkk = lm.conductor ? bkc : bki;
    for (int i = 0; i < 6; ++i) {
      if (dof[i] == kInvalidIndex) continue;
      for (int j = 0; j < 6; ++j) {
        if (dof[j] == kInvalidIndex) continue;
        const double ss = signs[i] * signs[j];
        bkk.add(dof[i], dof[j], ss * lm.k(i, j));
        if (lm.conductor) bmc.add(dof[i], dof[j], ss * lm.m(i, j));
      }
    }
    if (!lm.conductor) continue;

    std::array<Index, 4> udof{};
    for (int v = 0; v < 4; ++v) udof[v] = partition.vertex_to_UC[static_cast<std::size_t>(verts[v])];
    for (int v = 0; v < 4; ++v) {
      if (udof[v] == kInvalidIndex) continue;
      for (int j = 0; j < 6; ++j)
        if (dof[j] != kInvalidIndex) bsc.add(udof[v], dof[j], signs[j] * lm.s(v, j));
      for (int w = 0; w < 4; ++w)
        if (udof[w] != kInvalidIndex) bcc.add(udof[v], udof[w], lm.c(v, w));
    }
  }

  blocks.K_I = bki.build(partition.dim_VI(), partition.dim_VI());
  blocks.K_C = bkc.build(partition.dim_VC(), partition.dim_VC());
  blocks.M_C = bmc.build(partition.dim_VC(), partition.dim_VC());
  blocks.S_C = bsc.build(partition.dim_UC(), partition.dim_VC());
  blocks.C_C = bcc.build(partition.dim_UC(), partition.dim_UC());

  // Jump operators: one row per interface cotree edge, +1 against the
  // conductor copy and -1 against the insulator copy of the same globally
  // oriented edge DOF.
  TripletBuffer<double> bbc, bbi;
  for (Index g = 0; g < partition.dim_VG(); ++g) {
    const Index e = partition.VG_edges[static_cast<std::size_t>(g)];
    const Index c = partition.edge_to_VC[static_cast<std::size_t>(e)];
    const Index i = partition.edge_to_VI[static_cast<std::size_t>(e)];
    if (c == kInvalidIndex || i == kInvalidIndex)
      throw AssemblyError("interface cotree edge " + std::to_string(e) +
                          " is missing from a subdomain cotree numbering");
    bbc.add(g, c, +1.0);
    bbi.add(g, i, -1.0);
  }
  blocks.B_C = bbc.build(partition.dim_VG(), partition.dim_VC());
  blocks.B_I = bbi.build(partition.dim_VG(), partition.dim_VI());
}

SpMatR assemble_curl_curl_on_edges(const Mesh& mesh, const EntityLabels& labels,
                                   const Materials& materials, RegionFilter region,
                                   std::span<const Index> edge_list,
                                   const AssemblyOptions& options) {
  std::vector<Index> edge_to_dof(static_cast<std::size_t>(mesh.n_edges()), kInvalidIndex);
  for (Index d = 0; d < static_cast<Index>(edge_list.size()); ++d)
    edge_to_dof[static_cast<std::size_t>(edge_list[d])] = d;

  std::vector<Mat6> locals(static_cast<std::size_t>(mesh.n_tets()));
  std::vector<std::uint8_t> active(static_cast<std::size_t>(mesh.n_tets()), 0);
  parallel_chunks(locals.size(), options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      const Region r = labels.tet_region[t];
      if (region == RegionFilter::ConductorOnly && r != Region::Conductor) continue;
      if (region == RegionFilter::InsulatorOnly && r != Region::Insulator) continue;
      active[t] = 1;
      locals[t] = local_curl_curl(TetFrame(mesh, static_cast<Index>(t)), materials.mu(r));
    }
  });

  TripletBuffer<double> buf;
  for (Index t = 0; t < mesh.n_tets(); ++t) {
    if (!active[static_cast<std::size_t>(t)]) continue;
    const auto& edges = mesh.tet_edges[static_cast<std::size_t>(t)];
    const auto& signs = mesh.tet_edge_signs[static_cast<std::size_t>(t)];
    const auto& lm = locals[static_cast<std::size_t>(t)];
    for (int i = 0; i < 6; ++i) {
      const Index di = edge_to_dof[static_cast<std::size_t>(edges[i])];
      if (di == kInvalidIndex) continue;
      for (int j = 0; j < 6; ++j) {
        const Index dj = edge_to_dof[static_cast<std::size_t>(edges[j])];
        if (dj == kInvalidIndex) continue;
        buf.add(di, dj, signs[i] * signs[j] * lm(i, j));
      }
    }
  }
  return buf.build(static_cast<Index>(edge_list.size()), static_cast<Index>(edge_list.size()));
}

} // namespace mqsfeti
