#include "mqsfeti/checks.hpp"

#include "mqsfeti/local_matrices.hpp"
#include "mqsfeti/sparse_util.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace mqsfeti {

namespace {

double guarded_rel(double diff, double reference_norm) {
  return diff / std::max(1.0, reference_norm);
}

struct Spectrum {
  double min = 0.0, max = 0.0;
  Index near_zero = 0;
};

Spectrum dense_spectrum(const SpMatR& m) {
  Spectrum s;
  if (m.rows() == 0) return s;
  const Eigen::MatrixXd dense(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense);
  const auto& values = eig.eigenvalues();
  s.min = values.minCoeff();
  s.max = values.maxCoeff();
  const double threshold = 1e-8 * std::max(1.0, s.max);
  for (Eigen::Index i = 0; i < values.size(); ++i)
    if (std::abs(values[i]) < threshold) ++s.near_zero;
  return s;
}

} // namespace

EquivalenceResult check_equivalence(const MonoSolution& reference, const MonoSolution& other) {
  EquivalenceResult r;
  r.rel_A = guarded_rel((reference.A - other.A).lpNorm<Eigen::Infinity>(),
                        reference.A.lpNorm<Eigen::Infinity>());
  r.rel_phi = guarded_rel((reference.phi - other.phi).lpNorm<Eigen::Infinity>(),
                          reference.phi.lpNorm<Eigen::Infinity>());
  return r;
}

KernelDiagnostics check_kernel_dims(const Mesh& mesh, const EntityLabels& labels,
                                    const DofPartition& partition, const Materials& materials,
                                    const OperatorBlocks& blocks) {
  KernelDiagnostics d;

  const SpMatR k_full_insulator = assemble_curl_curl_on_edges(
      mesh, labels, materials, RegionFilter::InsulatorOnly, labels.insulator_edges);
  d.kernel_dim_insulator = dense_spectrum(k_full_insulator).near_zero;
  d.expected_insulator = static_cast<Index>(labels.insulator_vertices.size()) - 1;

  std::vector<Index> all_edges(static_cast<std::size_t>(mesh.n_edges()));
  for (Index e = 0; e < mesh.n_edges(); ++e) all_edges[static_cast<std::size_t>(e)] = e;
  const SpMatR k_full =
      assemble_curl_curl_on_edges(mesh, labels, materials, RegionFilter::All, all_edges);
  d.kernel_dim_global = dense_spectrum(k_full).near_zero;
  d.expected_global = mesh.n_vertices() - 1;

  const Spectrum sk = dense_spectrum(blocks.K);
  d.lambda_min_K = sk.min;
  d.lambda_max_K = sk.max;
  const Spectrum ski = dense_spectrum(blocks.K_I);
  d.lambda_min_KI = ski.min;
  d.lambda_max_KI = ski.max;
  const Spectrum skc = dense_spectrum(blocks.K_C);
  d.lambda_min_KC = skc.min;
  d.lambda_max_KC = skc.max;
  (void)partition;
  return d;
}

SplittingDeviations check_splitting_identities(const OperatorBlocks& blocks,
                                               const TearingOperator& tearing) {
  const Index nc = tearing.dim_VC, ni = tearing.dim_VI;

  const auto blockdiag = [&](const SpMatR& top, const SpMatR* bottom) {
    TripletBuffer<double> buf;
    for (int k = 0; k < top.outerSize(); ++k)
      for (SpMatR::InnerIterator it(top, k); it; ++it)
        buf.add(static_cast<Index>(it.row()), static_cast<Index>(it.col()), it.value());
    if (bottom)
      for (int k = 0; k < bottom->outerSize(); ++k)
        for (SpMatR::InnerIterator it(*bottom, k); it; ++it)
          buf.add(nc + static_cast<Index>(it.row()), nc + static_cast<Index>(it.col()), it.value());
    return buf.build(nc + ni, nc + ni);
  };

  SplittingDeviations dev;
  const SpMatR k_glued = SpMatR(tearing.R.transpose() * blockdiag(blocks.K_C, &blocks.K_I)) * tearing.R;
  dev.dev_K = guarded_rel(max_abs(SpMatR(blocks.K - k_glued)), max_abs(blocks.K));

  const SpMatR m_glued = SpMatR(tearing.R.transpose() * blockdiag(blocks.M_C, nullptr)) * tearing.R;
  dev.dev_M = guarded_rel(max_abs(SpMatR(blocks.M - m_glued)), max_abs(blocks.M));

  SpMatR s_wide(blocks.S_C.rows(), nc + ni);
  {
    TripletBuffer<double> buf;
    for (int k = 0; k < blocks.S_C.outerSize(); ++k)
      for (SpMatR::InnerIterator it(blocks.S_C, k); it; ++it)
        buf.add(static_cast<Index>(it.row()), static_cast<Index>(it.col()), it.value());
    s_wide = buf.build(static_cast<Index>(blocks.S_C.rows()), nc + ni);
  }
  const SpMatR s_glued = SpMatR(s_wide * tearing.R);
  dev.dev_S = guarded_rel(max_abs(SpMatR(blocks.S - s_glued)), max_abs(blocks.S));

  VecR j_cat(nc + ni);
  j_cat << blocks.J_C, blocks.J_I;
  const VecR j_glued = tearing.R.transpose() * j_cat;
  dev.dev_J = guarded_rel((blocks.J - j_glued).lpNorm<Eigen::Infinity>(),
                          blocks.J.lpNorm<Eigen::Infinity>());
  return dev;
}

TearingDiagnostics check_tearing(const OperatorBlocks& blocks, const TearingOperator& tearing,
                                 bool dense_ranks) {
  TearingDiagnostics d;
  const Index nc = tearing.dim_VC, ni = tearing.dim_VI;
  const Index ng = static_cast<Index>(blocks.B_C.rows());

  SpMatR b(ng, nc + ni);
  {
    TripletBuffer<double> buf;
    for (int k = 0; k < blocks.B_C.outerSize(); ++k)
      for (SpMatR::InnerIterator it(blocks.B_C, k); it; ++it)
        buf.add(static_cast<Index>(it.row()), static_cast<Index>(it.col()), it.value());
    for (int k = 0; k < blocks.B_I.outerSize(); ++k)
      for (SpMatR::InnerIterator it(blocks.B_I, k); it; ++it)
        buf.add(static_cast<Index>(it.row()), nc + static_cast<Index>(it.col()), it.value());
    b = buf.build(ng, nc + ni);
  }

  d.max_BR = max_abs(SpMatR(b * tearing.R));
  d.max_RtBt = max_abs(SpMatR(SpMatR(tearing.R.transpose()) * SpMatR(b.transpose())));
  if (dense_ranks) {
    d.rank_R = static_cast<Index>(Eigen::FullPivLU<Eigen::MatrixXd>(Eigen::MatrixXd(tearing.R)).rank());
    d.rank_Bt =
        static_cast<Index>(Eigen::FullPivLU<Eigen::MatrixXd>(Eigen::MatrixXd(b.transpose())).rank());
  }
  return d;
}

double current_balance_residual(const MonoSolution& solution, const Mesh& mesh,
                                const EntityLabels& labels, const DofPartition& partition,
                                const Materials& materials, const IncidenceGradient& gradient,
                                const SourceVectors& source) {
  const auto efield = electric_field(solution, mesh, labels, partition, materials);

  // <sigma E, grad hat_v> per conductor vertex, tested against every
  // conductor nodal function including the pinned one.
  std::vector<Cplx> lhs(labels.conductor_vertices.size(), Cplx{0.0, 0.0});
  std::vector<Index> vertex_to_slot(static_cast<std::size_t>(mesh.n_vertices()), kInvalidIndex);
  for (std::size_t i = 0; i < labels.conductor_vertices.size(); ++i)
    vertex_to_slot[static_cast<std::size_t>(labels.conductor_vertices[i])] = static_cast<Index>(i);

  for (std::size_t fi = 0; fi < efield.tets.size(); ++fi) {
    const Index t = efield.tets[fi];
    const TetFrame frame(mesh, t);
    const Vec3c sigma_e = materials.sigma_conductor * efield.values[fi];
    for (int v = 0; v < 4; ++v) {
      const Index slot = vertex_to_slot[static_cast<std::size_t>(mesh.tets[static_cast<std::size_t>(t)][v])];
      const Cplx pairing = (sigma_e.array() * frame.grad_bary[v].cast<Cplx>().array()).sum();
      lhs[static_cast<std::size_t>(slot)] += frame.volume * pairing;
    }
  }

  const VecR rhs = nodal_source_values(labels, gradient, source.full, NodalExtension::Zero);
  double worst = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i)
    worst = std::max(worst, std::abs(lhs[i] + rhs[static_cast<Eigen::Index>(i)]));
  return guarded_rel(worst, rhs.lpNorm<Eigen::Infinity>());
}

double de_rham_residual(const Mesh& mesh, const EntityLabels& labels, const Materials& materials,
                        const IncidenceGradient& gradient) {
  std::vector<Index> all_edges(static_cast<std::size_t>(mesh.n_edges()));
  for (Index e = 0; e < mesh.n_edges(); ++e) all_edges[static_cast<std::size_t>(e)] = e;
  const SpMatR k_full =
      assemble_curl_curl_on_edges(mesh, labels, materials, RegionFilter::All, all_edges);
  const SpMatR product = SpMatR(k_full * gradient.G);
  return guarded_rel(max_abs(product), max_abs(k_full));
}

double symmetrized_gap(const OperatorBlocks& blocks, const Materials& materials) {
  const SpMatC sym = build_mono_matrix(blocks, materials, /*symmetrized=*/true);
  return max_abs(SpMatC(sym - SpMatC(sym.transpose())));
}

} // namespace mqsfeti
