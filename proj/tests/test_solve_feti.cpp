#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mqsfeti/errors.hpp"
#include "mqsfeti/fields.hpp"
#include "mqsfeti/pipeline.hpp"
#include "mqsfeti/sparse_util.hpp"

#include <Eigen/LU>

#include <random>

using namespace mqsfeti;

namespace {

RunConfig base_config(int n, double omega, const std::string& kind = "conductor_loop") {
  RunConfig c;
  c.geometry.conductor_max = {0.5, 1, 1};
  c.geometry.resolution = n;
  c.materials.omega = omega;
  c.source.kind = kind;
  if (kind == "conductor_loop") {
    c.source.center = {0.25, 0.5, 0.5};
  } else if (kind == "insulator_coil") {
    c.source.center = {0.75, 0.5, 0.5};
    c.source.project_solenoidal = true;
  } else if (kind == "boundary_uniform_B") {
    c.source.b0 = {0, 0, 1};
  }
  c.source.axis = {0, 0, 1};
  c.source.radius = 0.15;
  return c;
}

} // namespace

TEST_CASE("tearing operator structure and rank") {
  const auto ws = build_workspace(base_config(2, 0.0));
  const auto& R = ws.tearing.R;

  // One entry per interior DOF column, two per interface cotree DOF column.
  const Eigen::MatrixXd dense(R);
  for (Index v = 0; v < ws.partition.dim_V(); ++v) {
    const Index e = ws.partition.V_edges[static_cast<std::size_t>(v)];
    const int expected = ws.labels.edge_on_interface[static_cast<std::size_t>(e)] ? 2 : 1;
    CHECK(dense.col(v).cwiseAbs().sum() == expected);
  }

  CHECK(Eigen::FullPivLU<Eigen::MatrixXd>(dense).rank() == ws.partition.dim_V());

  const auto diag = check_tearing(ws.blocks, ws.tearing, /*dense_ranks=*/true);
  CHECK(diag.max_BR == 0.0);
  CHECK(diag.max_RtBt == 0.0);
  CHECK(diag.rank_R == ws.partition.dim_V());
  CHECK(diag.rank_R + diag.rank_Bt == ws.partition.dim_VC() + ws.partition.dim_VI());
}

TEST_CASE("zero sources solve to zero in both paths") {
  RunConfig c = base_config(2, 314.0);
  c.source.magnitude = 0.0;
  const auto ws = build_workspace(c);

  const auto direct = solve_feti_direct(ws.blocks, ws.materials, 1e-10);
  CHECK(direct.A_I.lpNorm<Eigen::Infinity>() == 0.0);
  CHECK(direct.A_C.lpNorm<Eigen::Infinity>() == 0.0);
  CHECK(direct.lambda.lpNorm<Eigen::Infinity>() == 0.0);

  const auto dual = solve_feti_dual(ws.blocks, ws.materials, 1e-10, 50);
  CHECK(dual.iterations == 0);
  CHECK(dual.A_I.lpNorm<Eigen::Infinity>() == 0.0);
  CHECK(dual.lambda.lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("patch test through the torn formulation") {
  const auto c = base_config(2, 0.0, "boundary_uniform_B");
  const auto ws = build_workspace(c);

  const auto mono = solve_monolithic(ws.blocks, ws.materials, 1e-10);
  const auto feti = solve_feti_direct(ws.blocks, ws.materials, 1e-10);
  const auto glued = glue(feti, ws.partition, 1e-10);

  const auto b = reconstruct_B_torn(feti.A_C, feti.A_I, ws.mesh, ws.labels, ws.partition);
  for (const auto& bt : b.per_tet) {
    CHECK(std::abs(bt[2] - 1.0) < 1e-10);
    CHECK(std::abs(bt[0]) < 1e-10);
    CHECK(std::abs(bt[1]) < 1e-10);
  }

  const auto eq = check_equivalence(mono, glued);
  CHECK(eq.rel_A <= 1e-10);
  CHECK(eq.rel_phi <= 1e-10);

  // The multiplier carries exactly the subdomain equation residuals with the
  // coupling removed.
  const VecC t_i = ws.blocks.J_I.cast<Cplx>() - ws.blocks.K_I.cast<Cplx>() * feti.A_I;
  const VecC bt_lambda_i = ws.blocks.B_I.transpose().cast<Cplx>() * feti.lambda;
  CHECK((t_i - bt_lambda_i).lpNorm<Eigen::Infinity>() <=
        1e-10 * std::max(1.0, feti.lambda.lpNorm<Eigen::Infinity>()));
}

TEST_CASE("equivalence of monolithic and torn solutions") {
  for (const auto& kind : {std::string("conductor_loop"), std::string("insulator_coil")}) {
    for (double omega : {0.0, 2.0 * M_PI * 50.0}) {
      const auto ws = build_workspace(base_config(2, omega, kind));
      const auto mono = solve_monolithic(ws.blocks, ws.materials, 1e-10);
      const auto feti = solve_feti_direct(ws.blocks, ws.materials, 1e-10);
      const auto glued = glue(feti, ws.partition, 1e-10);
      const auto eq = check_equivalence(mono, glued);
      CHECK(eq.rel_A <= 1e-8);
      CHECK(eq.rel_phi <= 1e-8);
      CHECK(feti.jump_norm <= 1e-10 * std::max(1.0, feti.A_C.lpNorm<Eigen::Infinity>()));
    }
  }
}

TEST_CASE("interface source distribution does not change the fields") {
  const auto ws = build_workspace(base_config(2, 2.0 * M_PI * 50.0, "insulator_coil"));

  SourceOptions opt;
  opt.interface_split = 1.0;
  const auto sv_full = assemble_source(ws.mesh, ws.labels, ws.partition, ws.gradient,
                                       ws.source_spec, ws.materials, opt);
  opt.interface_split = 0.5;
  const auto sv_half = assemble_source(ws.mesh, ws.labels, ws.partition, ws.gradient,
                                       ws.source_spec, ws.materials, opt);

  OperatorBlocks blocks = ws.blocks;
  blocks.J_C = sv_full.J_C;
  blocks.J_I = sv_full.J_I;
  const auto a = solve_feti_direct(blocks, ws.materials, 1e-10);
  blocks.J_C = sv_half.J_C;
  blocks.J_I = sv_half.J_I;
  const auto b = solve_feti_direct(blocks, ws.materials, 1e-10);

  const auto rel = [](const VecC& x, const VecC& y) {
    return (x - y).lpNorm<Eigen::Infinity>() / std::max(1.0, x.lpNorm<Eigen::Infinity>());
  };
  CHECK(rel(a.A_C, b.A_C) <= 1e-10);
  CHECK(rel(a.A_I, b.A_I) <= 1e-10);
  CHECK(rel(a.phi, b.phi) <= 1e-10);
  // The multipliers absorb the redistribution; they are allowed to differ.
}

TEST_CASE("dual path matches the direct factorization") {
  const auto ws = build_workspace(base_config(2, 2.0 * M_PI * 50.0));
  const auto direct = solve_feti_direct(ws.blocks, ws.materials, 1e-10);
  const auto dual = solve_feti_dual(ws.blocks, ws.materials, 1e-10, 100);

  CHECK(dual.iterations <= ws.partition.dim_VG() + 1);

  const auto rel = [](const VecC& x, const VecC& y) {
    return (x - y).lpNorm<Eigen::Infinity>() / std::max(1.0, x.lpNorm<Eigen::Infinity>());
  };
  CHECK(rel(direct.lambda, dual.lambda) <= 1e-8);
  CHECK(rel(direct.A_C, dual.A_C) <= 1e-8);
  CHECK(rel(direct.A_I, dual.A_I) <= 1e-8);
  CHECK(rel(direct.phi, dual.phi) <= 1e-8);
}

TEST_CASE("dual path reports non-convergence with history") {
  const auto ws = build_workspace(base_config(2, 314.0));
  CHECK_THROWS_AS(solve_feti_dual(ws.blocks, ws.materials, 1e-10, 1), SolverError);
  try {
    solve_feti_dual(ws.blocks, ws.materials, 1e-10, 1);
  } catch (const SolverError& e) {
    CHECK(std::string(e.what()).find("history") != std::string::npos);
  }
}

TEST_CASE("glue is a left inverse of tearing") {
  const auto ws = build_workspace(base_config(2, 0.0));
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  VecC global(ws.partition.dim_V());
  for (Eigen::Index i = 0; i < global.size(); ++i) global[i] = Cplx{dist(rng), dist(rng)};

  VecR torn_re = ws.tearing.R * global.real();
  VecR torn_im = ws.tearing.R * global.imag();
  FetiSolution torn;
  torn.A_C = (torn_re.head(ws.partition.dim_VC()) +
              Cplx{0, 1} * torn_im.head(ws.partition.dim_VC()));
  torn.A_I = (torn_re.tail(ws.partition.dim_VI()) +
              Cplx{0, 1} * torn_im.tail(ws.partition.dim_VI()));
  torn.phi = VecC::Zero(ws.partition.dim_UC());
  torn.lambda = VecC::Zero(ws.partition.dim_VG());
  torn.jump_norm = 0.0;

  const auto glued = glue(torn, ws.partition, 1e-12);
  CHECK((glued.A - global).lpNorm<Eigen::Infinity>() == 0.0);

  // Violating the constraint on one interface edge trips the gluing error.
  FetiSolution broken = torn;
  const Index g = ws.partition.VG_edges.front();
  broken.A_I[ws.partition.edge_to_VI[static_cast<std::size_t>(g)]] += 1.0;
  broken.jump_norm = 1.0;
  CHECK_THROWS_AS(glue(broken, ws.partition, 1e-12), GluingError);
}
