#include "mqsfeti/solve_feti.hpp"

#include "mqsfeti/errors.hpp"
#include "mqsfeti/sparse_util.hpp"

#include <Eigen/QR>
#include <Eigen/SparseLU>

#include <sstream>
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

struct GmresOutcome {
  VecC x;
  std::vector<double> history; // relative residual per iteration
  int iterations = 0;
  bool converged = false;
};

// Unrestarted GMRES with modified Gram-Schmidt; the small least-squares
// problem is re-solved densely each step (the Krylov space is at most the
// number of interface multipliers, so this stays cheap).
GmresOutcome gmres(const std::function<VecC(const VecC&)>& apply, const VecC& rhs, double tol,
                   int max_iterations) {
  GmresOutcome out;
  const Eigen::Index n = rhs.size();
  const double rhs_norm = rhs.norm();
  out.x = VecC::Zero(n);
  if (rhs_norm == 0.0) {
    out.converged = true;
    return out;
  }

  std::vector<VecC> basis;
  basis.push_back(rhs / rhs_norm);
  Eigen::MatrixXcd hess = Eigen::MatrixXcd::Zero(max_iterations + 1, max_iterations);

  for (int k = 0; k < max_iterations; ++k) {
    VecC w = apply(basis[static_cast<std::size_t>(k)]);
    for (int i = 0; i <= k; ++i) {
      const Cplx h = basis[static_cast<std::size_t>(i)].dot(w); // conjugated dot
      hess(i, k) = h;
      w -= h * basis[static_cast<std::size_t>(i)];
    }
    const double wnorm = w.norm();
    hess(k + 1, k) = wnorm;

    // Least squares min || beta e1 - H y ||.
    VecC beta_e1 = VecC::Zero(k + 2);
    beta_e1[0] = rhs_norm;
    const Eigen::MatrixXcd hk = hess.topLeftCorner(k + 2, k + 1);
    const VecC y = hk.colPivHouseholderQr().solve(beta_e1);
    const double rel = (beta_e1 - hk * y).norm() / rhs_norm;
    out.history.push_back(rel);
    out.iterations = k + 1;

    const bool breakdown = wnorm <= 1e-14 * rhs_norm;
    if (rel <= tol || breakdown || k + 1 == max_iterations) {
      VecC x = VecC::Zero(n);
      for (int i = 0; i <= k; ++i) x += y[i] * basis[static_cast<std::size_t>(i)];
      out.x = x;
      out.converged = rel <= tol || breakdown;
      return out;
    }
    basis.push_back(w / wnorm);
  }
  return out;
}

} // namespace

TearingOperator build_tearing(const DofPartition& partition) {
  TearingOperator tear;
  tear.dim_VC = partition.dim_VC();
  tear.dim_VI = partition.dim_VI();
  tear.dim_V = partition.dim_V();

  TripletBuffer<double> buf;
  for (Index v = 0; v < partition.dim_V(); ++v) {
    const Index e = partition.V_edges[static_cast<std::size_t>(v)];
    const Index c = partition.edge_to_VC[static_cast<std::size_t>(e)];
    const Index i = partition.edge_to_VI[static_cast<std::size_t>(e)];
    if (c != kInvalidIndex) buf.add(c, v, 1.0);
    if (i != kInvalidIndex) buf.add(tear.dim_VC + i, v, 1.0);
  }
  tear.R = buf.build(tear.dim_VC + tear.dim_VI, tear.dim_V);
  return tear;
}

SpMatC build_feti_matrix(const OperatorBlocks& blocks, const Materials& materials) {
  const Index ni = static_cast<Index>(blocks.K_I.rows());
  const Index nc = static_cast<Index>(blocks.K_C.rows());
  const Index nu = static_cast<Index>(blocks.C_C.rows());
  const Index ng = static_cast<Index>(blocks.B_C.rows());
  const Cplx iw = kI * materials.omega;

  const Index oc = ni, ou = ni + nc, og = ni + nc + nu;
  TripletBuffer<Cplx> buf;
  emit_block(buf, blocks.K_I, 0, 0, 1.0);
  emit_block(buf, blocks.B_I, 0, og, 1.0, /*transpose=*/true);
  emit_block(buf, blocks.K_C, oc, oc, 1.0);
  emit_block(buf, blocks.M_C, oc, oc, iw);
  emit_block(buf, blocks.S_C, oc, ou, 1.0, /*transpose=*/true);
  emit_block(buf, blocks.B_C, oc, og, 1.0, /*transpose=*/true);
  emit_block(buf, blocks.S_C, ou, oc, iw);
  emit_block(buf, blocks.C_C, ou, ou, 1.0);
  emit_block(buf, blocks.B_I, og, 0, 1.0);
  emit_block(buf, blocks.B_C, og, oc, 1.0);
  return buf.build(og + ng, og + ng);
}

VecC build_feti_rhs(const OperatorBlocks& blocks) {
  const Index ni = static_cast<Index>(blocks.K_I.rows());
  const Index nc = static_cast<Index>(blocks.K_C.rows());
  const Index nu = static_cast<Index>(blocks.C_C.rows());
  const Index ng = static_cast<Index>(blocks.B_C.rows());
  VecC rhs = VecC::Zero(ni + nc + nu + ng);
  rhs.segment(0, ni) = blocks.J_I.cast<Cplx>();
  rhs.segment(ni, nc) = blocks.J_C.cast<Cplx>();
  rhs.segment(ni + nc, nu) = blocks.j.cast<Cplx>();
  return rhs;
}

double feti_residual(const OperatorBlocks& blocks, const Materials& materials,
                     const FetiSolution& solution) {
  const SpMatC m = build_feti_matrix(blocks, materials);
  VecC x(m.rows());
  x << solution.A_I, solution.A_C, solution.phi, solution.lambda;
  const VecC rhs = build_feti_rhs(blocks);
  const double nr = (m * x - rhs).lpNorm<Eigen::Infinity>();
  const double dr = rhs.lpNorm<Eigen::Infinity>();
  return dr > 0.0 ? nr / dr : nr;
}

FetiSolution solve_feti_direct(const OperatorBlocks& blocks, const Materials& materials,
                               double tol) {
  if (!(tol > 0.0)) throw ConfigError("solver tolerance must be positive");
  const Index ni = static_cast<Index>(blocks.K_I.rows());
  const Index nc = static_cast<Index>(blocks.K_C.rows());
  const Index nu = static_cast<Index>(blocks.C_C.rows());
  const Index ng = static_cast<Index>(blocks.B_C.rows());

  const SpMatC m = build_feti_matrix(blocks, materials);
  Eigen::SparseLU<SpMatC> lu(m);
  if (lu.info() != Eigen::Success)
    throw SolverError("singular factorization of the torn saddle-point system");
  const VecC x = lu.solve(build_feti_rhs(blocks));

  FetiSolution sol;
  sol.A_I = x.segment(0, ni);
  sol.A_C = x.segment(ni, nc);
  sol.phi = x.segment(ni + nc, nu);
  sol.lambda = x.segment(ni + nc + nu, ng);
  sol.method = "direct_lu";
  sol.residual = feti_residual(blocks, materials, sol);
  sol.jump_norm = (blocks.B_C.cast<Cplx>() * sol.A_C + blocks.B_I.cast<Cplx>() * sol.A_I)
                      .lpNorm<Eigen::Infinity>();
  if (!(sol.residual <= tol))
    throw SolverError("torn solve residual " + std::to_string(sol.residual) +
                      " exceeds tolerance " + std::to_string(tol));
  return sol;
}

FetiSolution solve_feti_dual(const OperatorBlocks& blocks, const Materials& materials, double tol,
                             int max_iterations) {
  if (!(tol > 0.0)) throw ConfigError("solver tolerance must be positive");
  if (max_iterations < 1) throw ConfigError("max_iterations must be at least 1");
  const Index ni = static_cast<Index>(blocks.K_I.rows());
  const Index nc = static_cast<Index>(blocks.K_C.rows());
  const Index nu = static_cast<Index>(blocks.C_C.rows());
  const Cplx iw = kI * materials.omega;

  // Independent subdomain factorizations; this is the point of the torn
  // formulation, both local operators are invertible.
  Eigen::SparseLU<SpMatC> lu_insulator(blocks.K_I.cast<Cplx>());
  if (lu_insulator.info() != Eigen::Success)
    throw SolverError("singular factorization of the insulator block");

  SpMatC conductor;
  {
    TripletBuffer<Cplx> buf;
    emit_block(buf, blocks.K_C, 0, 0, 1.0);
    emit_block(buf, blocks.M_C, 0, 0, iw);
    emit_block(buf, blocks.S_C, 0, nc, 1.0, /*transpose=*/true);
    emit_block(buf, blocks.S_C, nc, 0, iw);
    emit_block(buf, blocks.C_C, nc, nc, 1.0);
    conductor = buf.build(nc + nu, nc + nu);
  }
  Eigen::SparseLU<SpMatC> lu_conductor(conductor);
  if (lu_conductor.info() != Eigen::Success)
    throw SolverError("singular factorization of the conductor block");

  const SpMatC BC = blocks.B_C.cast<Cplx>();
  const SpMatC BI = blocks.B_I.cast<Cplx>();

  const auto solve_insulator = [&](const VecC& rhs) { return VecC(lu_insulator.solve(rhs)); };
  const auto solve_conductor = [&](const VecC& rhs_a, const VecC& rhs_u) {
    VecC rhs(nc + nu);
    rhs << rhs_a, rhs_u;
    return VecC(lu_conductor.solve(rhs));
  };

  const VecC d = BI * solve_insulator(blocks.J_I.cast<Cplx>()) +
                 BC * solve_conductor(blocks.J_C.cast<Cplx>(), blocks.j.cast<Cplx>()).head(nc);

  const auto dual_operator = [&](const VecC& lambda) {
    const VecC xi = solve_insulator(BI.transpose() * lambda);
    const VecC xc = solve_conductor(BC.transpose() * lambda, VecC::Zero(nu));
    return VecC(BI * xi + BC * xc.head(nc));
  };

  const double gmres_tol = std::max(1e-14, 0.01 * tol);
  const auto outcome = gmres(dual_operator, d, gmres_tol, max_iterations);
  if (!outcome.converged) {
    std::ostringstream msg;
    msg << "dual interface iteration did not converge within " << max_iterations
        << " iterations; relative residual history:";
    for (double r : outcome.history) msg << ' ' << r;
    throw SolverError(msg.str());
  }

  FetiSolution sol;
  sol.lambda = outcome.x;
  sol.iterations = outcome.iterations;
  sol.A_I = solve_insulator(blocks.J_I.cast<Cplx>() - BI.transpose() * sol.lambda);
  const VecC xc =
      solve_conductor(blocks.J_C.cast<Cplx>() - BC.transpose() * sol.lambda, blocks.j.cast<Cplx>());
  sol.A_C = xc.head(nc);
  sol.phi = xc.tail(nu);
  sol.method = "dual_gmres";
  sol.residual = feti_residual(blocks, materials, sol);
  sol.jump_norm = (BC * sol.A_C + BI * sol.A_I).lpNorm<Eigen::Infinity>();
  if (!(sol.residual <= tol))
    throw SolverError("dual solve residual " + std::to_string(sol.residual) +
                      " exceeds tolerance " + std::to_string(tol));
  return sol;
}

MonoSolution glue(const FetiSolution& solution, const DofPartition& partition, double tol) {
  const double scale = std::max({1.0, solution.A_C.lpNorm<Eigen::Infinity>(),
                                 solution.A_I.lpNorm<Eigen::Infinity>()});
  if (!(solution.jump_norm <= tol * scale))
    throw GluingError("interface jump " + std::to_string(solution.jump_norm) +
                      " exceeds gluing tolerance " + std::to_string(tol * scale));

  MonoSolution glued;
  glued.A = VecC::Zero(partition.dim_V());
  for (Index v = 0; v < partition.dim_V(); ++v) {
    const Index e = partition.V_edges[static_cast<std::size_t>(v)];
    const Index c = partition.edge_to_VC[static_cast<std::size_t>(e)];
    // Interface values are taken from the conductor side; the insulator copy
    // agrees within the constraint tolerance checked above.
    if (c != kInvalidIndex)
      glued.A[v] = solution.A_C[c];
    else
      glued.A[v] = solution.A_I[partition.edge_to_VI[static_cast<std::size_t>(e)]];
  }
  glued.phi = solution.phi;
  glued.residual = solution.residual;
  glued.method = solution.method + "+glue";
  return glued;
}

} // namespace mqsfeti
