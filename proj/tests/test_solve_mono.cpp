#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mqsfeti/errors.hpp"
#include "mqsfeti/fields.hpp"
#include "mqsfeti/pipeline.hpp"

#include "mqsfeti/sparse_util.hpp"

#include <Eigen/LU>
#include <Eigen/SparseLU>

using namespace mqsfeti;

namespace {

RunConfig base_config(int n, double omega) {
  RunConfig c;
  c.geometry.domain_min = {0, 0, 0};
  c.geometry.domain_max = {1, 1, 1};
  c.geometry.conductor_min = {0, 0, 0};
  c.geometry.conductor_max = {0.5, 1, 1};
  c.geometry.resolution = n;
  c.materials.mu_conductor = 1.0;
  c.materials.mu_insulator = 1.0;
  c.materials.sigma_conductor = 1.0;
  c.materials.omega = omega;
  c.source.kind = "conductor_loop";
  c.source.center = {0.25, 0.5, 0.5};
  c.source.axis = {0, 0, 1};
  c.source.radius = 0.15;
  c.source.magnitude = 1.0;
  return c;
}

RunConfig patch_config(int n, double mu) {
  RunConfig c = base_config(n, 0.0);
  c.materials.mu_conductor = mu;
  c.materials.mu_insulator = mu;
  c.source.kind = "boundary_uniform_B";
  c.source.b0 = {0, 0, 1};
  return c;
}

} // namespace

TEST_CASE("zero source yields the zero solution") {
  RunConfig c = base_config(2, 314.0);
  c.source.magnitude = 0.0;
  const auto ws = build_workspace(c);
  const auto sol = solve_monolithic(ws.blocks, ws.materials, 1e-10);
  CHECK(sol.A.lpNorm<Eigen::Infinity>() == 0.0);
  CHECK(sol.phi.lpNorm<Eigen::Infinity>() == 0.0);
  CHECK(sol.residual == 0.0);
}

TEST_CASE("patch test: uniform B reproduced exactly at omega = 0") {
  for (double mu : {1.0, 2.5}) {
    const RunConfig c = patch_config(2, mu);
    const auto ws = build_workspace(c);
    const auto sol = solve_monolithic(ws.blocks, ws.materials, 1e-10);
    CHECK(sol.method == "direct_lu_staged");

    const auto b = reconstruct_B(sol.A, ws.mesh, ws.partition);
    for (const auto& bt : b.per_tet) {
      CHECK(std::abs(bt[0]) < 1e-11);
      CHECK(std::abs(bt[1]) < 1e-11);
      CHECK(std::abs(bt[2] - 1.0) < 1e-11);
    }
    // The boundary excitation drives no conductor currents at omega = 0.
    CHECK(sol.phi.lpNorm<Eigen::Infinity>() < 1e-12);
  }
}

TEST_CASE("time-harmonic solve meets the residual contract") {
  const RunConfig c = base_config(2, 2.0 * M_PI * 50.0);
  const auto ws = build_workspace(c);
  const auto sol = solve_monolithic(ws.blocks, ws.materials, 1e-10);
  CHECK(sol.residual <= 1e-10);
  CHECK(sol.A.lpNorm<Eigen::Infinity>() > 0.0);

  // The eddy-current coupling makes the solution genuinely complex.
  double max_imag = 0.0;
  for (Eigen::Index i = 0; i < sol.A.size(); ++i)
    max_imag = std::max(max_imag, std::abs(sol.A[i].imag()));
  CHECK(max_imag > 0.0);
}

TEST_CASE("monolithic matrix has full rank for omega >= 0") {
  const RunConfig c = base_config(2, 0.0);
  const auto ws = build_workspace(c);
  for (double omega : {0.0, 314.159}) {
    Materials mat = ws.materials;
    mat.omega = omega;
    const Eigen::MatrixXcd dense(build_mono_matrix(ws.blocks, mat, false));
    CHECK(Eigen::FullPivLU<Eigen::MatrixXcd>(dense).rank() == dense.rows());
  }
}

TEST_CASE("charge balance holds against all conductor nodal functions") {
  const RunConfig c = base_config(2, 2.0 * M_PI * 50.0);
  const auto ws = build_workspace(c);
  const auto sol = solve_monolithic(ws.blocks, ws.materials, 1e-10);
  const double residual = current_balance_residual(sol, ws.mesh, ws.labels, ws.partition,
                                                   ws.materials, ws.gradient, ws.source);
  CHECK(residual <= 1e-10);
}

TEST_CASE("electric field reconstruction") {
  const RunConfig c = base_config(2, 0.0);
  const auto ws = build_workspace(c);

  // phi = 0, omega = 0 -> E = 0.
  MonoSolution zero;
  zero.A = VecC::Zero(ws.partition.dim_V());
  zero.phi = VecC::Zero(ws.partition.dim_UC());
  const auto e0 = electric_field(zero, ws.mesh, ws.labels, ws.partition, ws.materials);
  for (const auto& v : e0.values) CHECK(v.cwiseAbs().maxCoeff() == 0.0);

  // phi interpolating the coordinate x (relative to the pinned root) has the
  // constant gradient (1,0,0), so E = (-1,0,0) on every conductor tet.
  MonoSolution linear = zero;
  const double x_root = ws.mesh.vertices[static_cast<std::size_t>(ws.partition.root)][0];
  for (Index d = 0; d < ws.partition.dim_UC(); ++d) {
    const Index v = ws.partition.UC_vertices[static_cast<std::size_t>(d)];
    linear.phi[d] = ws.mesh.vertices[static_cast<std::size_t>(v)][0] - x_root;
  }
  const auto e1 = electric_field(linear, ws.mesh, ws.labels, ws.partition, ws.materials);
  for (const auto& v : e1.values) {
    CHECK(std::abs(v[0] - Cplx{-1.0, 0.0}) < 1e-13);
    CHECK(std::abs(v[1]) < 1e-13);
    CHECK(std::abs(v[2]) < 1e-13);
  }

  // Insulator tets are outside the field's domain.
  Index insulator_tet = kInvalidIndex;
  for (Index t = 0; t < ws.mesh.n_tets(); ++t)
    if (ws.labels.tet_region[static_cast<std::size_t>(t)] == Region::Insulator) {
      insulator_tet = t;
      break;
    }
  REQUIRE(insulator_tet != kInvalidIndex);
  CHECK_THROWS_AS(e1.at_tet(insulator_tet), DomainError);
}

TEST_CASE("symmetrized solve maps back to the same solution") {
  const RunConfig c = base_config(2, 2.0 * M_PI * 50.0);
  const auto ws = build_workspace(c);
  const auto sol = solve_monolithic(ws.blocks, ws.materials, 1e-10);

  const SpMatC sym = build_mono_matrix(ws.blocks, ws.materials, /*symmetrized=*/true);
  CHECK(max_abs(SpMatC(sym - SpMatC(sym.transpose()))) == 0.0);

  VecC rhs(ws.partition.dim_V() + ws.partition.dim_UC());
  rhs << ws.blocks.J.cast<Cplx>(), ws.blocks.j.cast<Cplx>();
  Eigen::SparseLU<SpMatC> lu(sym);
  REQUIRE(lu.info() == Eigen::Success);
  const VecC x = lu.solve(rhs);
  const VecC a = x.head(ws.partition.dim_V());
  const VecC phi = Cplx{0.0, ws.materials.omega} * x.tail(ws.partition.dim_UC());

  CHECK((a - sol.A).lpNorm<Eigen::Infinity>() /
            std::max(1.0, sol.A.lpNorm<Eigen::Infinity>()) <=
        1e-10);
  CHECK((phi - sol.phi).lpNorm<Eigen::Infinity>() /
            std::max(1.0, sol.phi.lpNorm<Eigen::Infinity>()) <=
        1e-10);
}

TEST_CASE("invalid tolerance is rejected") {
  const RunConfig c = base_config(2, 0.0);
  const auto ws = build_workspace(c);
  CHECK_THROWS_AS(solve_monolithic(ws.blocks, ws.materials, 0.0), ConfigError);
}
