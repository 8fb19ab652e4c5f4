#include "mqsfeti/pipeline.hpp"

#include "mqsfeti/errors.hpp"
#include "mqsfeti/vtk_export.hpp"

#include <Eigen/SparseLU>

#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <set>

namespace mqsfeti {

namespace {

constexpr double kTolEquivalence = 1e-8;
constexpr double kTolContinuity = 1e-11;
constexpr double kTolPatch = 1e-10;
constexpr double kTolSplitting = 1e-12;
constexpr double kTolExtension = 1e-12;
constexpr double kTolDistribution = 1e-10;
constexpr double kTolDeRham = 1e-12;
constexpr double kTolSymmetrizedSolve = 1e-10;
constexpr double kTolCoercivity = 1e-10;
constexpr double kTolDualMatch = 1e-8;
constexpr Index kDenseGateEdges = 2500;

class Stopwatch {
public:
  explicit Stopwatch(std::vector<std::pair<std::string, double>>& sink) : sink_(sink) {}
  template <typename F>
  auto time(const std::string& stage, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      sink_.emplace_back(stage, seconds_since(start));
    } else {
      auto out = f();
      sink_.emplace_back(stage, seconds_since(start));
      return out;
    }
  }

private:
  static double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  std::vector<std::pair<std::string, double>>& sink_;
};

double rel_inf(const VecC& diff, const VecC& reference) {
  return diff.lpNorm<Eigen::Infinity>() / std::max(1.0, reference.lpNorm<Eigen::Infinity>());
}

// Lazily computed products shared between checks.
struct PipelineState {
  const RunConfig& config;
  Workspace& ws;

  std::optional<MonoSolution> mono;
  std::optional<FetiSolution> feti_direct, feti_dual;
  std::optional<MonoSolution> glued_direct, glued_dual;

  std::optional<BField> b_mono, b_direct, b_dual;
  std::optional<KernelDiagnostics> kernel;
  std::optional<TearingDiagnostics> tearing_dense, tearing_sparse;
  std::optional<SplittingDeviations> splitting;

  bool dense_ok() const { return ws.mesh.n_edges() <= kDenseGateEdges; }

  const BField& field_mono() {
    if (!b_mono) b_mono = reconstruct_B(mono->A, ws.mesh, ws.partition);
    return *b_mono;
  }
  const BField& field_direct() {
    if (!b_direct)
      b_direct = reconstruct_B_torn(feti_direct->A_C, feti_direct->A_I, ws.mesh, ws.labels,
                                    ws.partition);
    return *b_direct;
  }
  const BField& field_dual() {
    if (!b_dual)
      b_dual = reconstruct_B_torn(feti_dual->A_C, feti_dual->A_I, ws.mesh, ws.labels, ws.partition);
    return *b_dual;
  }
  const KernelDiagnostics& kernel_diag() {
    if (!kernel)
      kernel = check_kernel_dims(ws.mesh, ws.labels, ws.partition, ws.materials, ws.blocks);
    return *kernel;
  }
  const SplittingDeviations& splitting_dev() {
    if (!splitting) splitting = check_splitting_identities(ws.blocks, ws.tearing);
    return *splitting;
  }
  const TearingDiagnostics& tearing_diag(bool dense) {
    auto& slot = dense ? tearing_dense : tearing_sparse;
    if (!slot) slot = check_tearing(ws.blocks, ws.tearing, dense);
    return *slot;
  }
};

struct CheckDef {
  std::string name;
  std::string provenance;
  std::function<bool(PipelineState&)> applicable;
  std::function<CheckResult(PipelineState&)> compute;
};

CheckResult make_result(const CheckDef& def, double value, double tol, bool pass) {
  return CheckResult{def.name, value, tol, pass, def.provenance};
}

std::vector<CheckDef> check_registry() {
  std::vector<CheckDef> defs;
  const auto add = [&](std::string name, std::string provenance,
                       std::function<bool(PipelineState&)> applicable,
                       std::function<double(PipelineState&)> value, double tol,
                       bool pass_is_leq = true) {
    CheckDef def;
    def.name = std::move(name);
    def.provenance = std::move(provenance);
    def.applicable = std::move(applicable);
    // A negative tol is a placeholder for the configured solver tolerance.
    def.compute = [def_name = def.name, value = std::move(value), tol,
                   pass_is_leq](PipelineState& st) {
      const double v = value(st);
      const double t = tol < 0.0 ? st.config.solver_tol : tol;
      const bool pass = pass_is_leq ? v <= t : v > t;
      return CheckResult{def_name, v, t, pass, ""};
    };
    defs.push_back(std::move(def));
  };

  const auto has_mono = [](PipelineState& st) { return st.mono.has_value(); };
  const auto has_direct = [](PipelineState& st) { return st.feti_direct.has_value(); };
  const auto has_dual = [](PipelineState& st) { return st.feti_dual.has_value(); };
  const auto always = [](PipelineState&) { return true; };
  const auto dense = [](PipelineState& st) { return st.dense_ok(); };

  add("residual_mono", "solvability of the gauged monolithic block system", has_mono,
      [](PipelineState& st) { return st.mono->residual; }, -1.0);
  add("residual_feti_direct", "solvability of the torn saddle-point system", has_direct,
      [](PipelineState& st) { return st.feti_direct->residual; }, -1.0);
  add("residual_feti_dual", "solvability of the dual interface reduction", has_dual,
      [](PipelineState& st) { return st.feti_dual->residual; }, -1.0);
  add("jump_feti_direct", "interface constraint satisfied by the torn solution", has_direct,
      [](PipelineState& st) {
        const double scale = std::max({1.0, st.feti_direct->A_C.lpNorm<Eigen::Infinity>(),
                                       st.feti_direct->A_I.lpNorm<Eigen::Infinity>()});
        return st.feti_direct->jump_norm / scale;
      },
      -1.0);
  add("jump_feti_dual", "interface constraint satisfied by the dual-path solution", has_dual,
      [](PipelineState& st) {
        const double scale = std::max({1.0, st.feti_dual->A_C.lpNorm<Eigen::Infinity>(),
                                       st.feti_dual->A_I.lpNorm<Eigen::Infinity>()});
        return st.feti_dual->jump_norm / scale;
      },
      -1.0);

  add("normal_continuity_mono", "flux density of the conforming solution is normally continuous",
      has_mono,
      [](PipelineState& st) {
        const auto r = check_normal_continuity(st.field_mono(), st.ws.mesh, st.ws.labels);
        return r.worst_jump_all / r.scale;
      },
      kTolContinuity);
  add("normal_continuity_feti_direct",
      "flux density stays normally continuous across the interface although the torn potential "
      "is discontinuous",
      has_direct,
      [](PipelineState& st) {
        const auto r = check_normal_continuity(st.field_direct(), st.ws.mesh, st.ws.labels);
        return r.worst_jump_all / r.scale;
      },
      kTolContinuity);
  add("normal_continuity_feti_dual",
      "flux density of the dual-path torn solution is normally continuous", has_dual,
      [](PipelineState& st) {
        const auto r = check_normal_continuity(st.field_dual(), st.ws.mesh, st.ws.labels);
        return r.worst_jump_all / r.scale;
      },
      kTolContinuity);

  const auto both = [](PipelineState& st) { return st.mono && st.glued_direct; };
  add("equivalence_A", "monolithic and torn formulations produce the same vector potential", both,
      [](PipelineState& st) { return check_equivalence(*st.mono, *st.glued_direct).rel_A; },
      kTolEquivalence);
  add("equivalence_phi", "monolithic and torn formulations produce the same scalar potential",
      both,
      [](PipelineState& st) { return check_equivalence(*st.mono, *st.glued_direct).rel_phi; },
      kTolEquivalence);

  const auto both_feti = [](PipelineState& st) { return st.feti_direct && st.feti_dual; };
  add("dual_vs_direct_lambda", "interface multipliers agree between direct and dual paths",
      both_feti,
      [](PipelineState& st) { return rel_inf(st.feti_direct->lambda - st.feti_dual->lambda, st.feti_direct->lambda); },
      kTolDualMatch);
  add("dual_vs_direct_A", "torn potentials agree between direct and dual paths", both_feti,
      [](PipelineState& st) {
        return std::max(rel_inf(st.feti_direct->A_C - st.feti_dual->A_C, st.feti_direct->A_C),
                        rel_inf(st.feti_direct->A_I - st.feti_dual->A_I, st.feti_direct->A_I));
      },
      kTolDualMatch);
  add("dual_vs_direct_phi", "scalar potentials agree between direct and dual paths", both_feti,
      [](PipelineState& st) { return rel_inf(st.feti_direct->phi - st.feti_dual->phi, st.feti_direct->phi); },
      kTolDualMatch);
  {
    CheckDef def;
    def.name = "dual_iterations";
    def.provenance = "Krylov reduction terminates within the interface multiplier count";
    def.applicable = has_dual;
    def.compute = [](PipelineState& st) {
      const double iters = st.feti_dual->iterations;
      const double bound = st.ws.partition.dim_VG() + 1;
      return CheckResult{"dual_iterations", iters, bound, iters <= bound, ""};
    };
    defs.push_back(std::move(def));
  }

  add("patch_test", "uniform-flux boundary excitation is reproduced exactly at omega = 0",
      [](PipelineState& st) {
        return st.config.source.kind == "boundary_uniform_B" && (st.mono || st.glued_direct);
      },
      [](PipelineState& st) {
        const Vec3c b0 = st.config.source.b0.cast<Cplx>();
        double worst = 0.0;
        const auto measure = [&](const BField& field) {
          for (const auto& b : field.per_tet)
            worst = std::max(worst, (b - b0).cwiseAbs().maxCoeff());
        };
        if (st.mono) measure(st.field_mono());
        if (st.feti_direct) measure(st.field_direct());
        return worst / std::max(1.0, st.config.source.b0.cwiseAbs().maxCoeff());
      },
      kTolPatch);

  add("current_balance",
      "charge balance holds against every conductor nodal function including the pinned one",
      has_mono,
      [](PipelineState& st) {
        return current_balance_residual(*st.mono, st.ws.mesh, st.ws.labels, st.ws.partition,
                                        st.ws.materials, st.ws.gradient, st.ws.source);
      },
      -1.0);

  add("source_extension_invariance",
      "nodal source functional is independent of the extension operator", always,
      [](PipelineState& st) {
        const VecR zero_ext = nodal_source_values(st.ws.labels, st.ws.gradient, st.ws.source.full,
                                                  NodalExtension::Zero);
        const VecR harmonic = nodal_source_values(st.ws.labels, st.ws.gradient, st.ws.source.full,
                                                  NodalExtension::GraphHarmonic);
        return (zero_ext - harmonic).lpNorm<Eigen::Infinity>() /
               std::max(1.0, zero_ext.lpNorm<Eigen::Infinity>());
      },
      kTolExtension);

  const auto distribution = [](PipelineState& st) {
    SourceOptions opt;
    opt.threads = st.config.threads;
    opt.interface_split = 1.0;
    auto sv_full = assemble_source(st.ws.mesh, st.ws.labels, st.ws.partition, st.ws.gradient,
                                   st.ws.source_spec, st.ws.materials, opt);
    opt.interface_split = 0.5;
    auto sv_half = assemble_source(st.ws.mesh, st.ws.labels, st.ws.partition, st.ws.gradient,
                                   st.ws.source_spec, st.ws.materials, opt);
    OperatorBlocks blocks = st.ws.blocks;
    blocks.J_C = sv_full.J_C;
    blocks.J_I = sv_full.J_I;
    const auto sol_full =
        solve_feti_direct(blocks, st.ws.materials, st.config.solver_tol);
    blocks.J_C = sv_half.J_C;
    blocks.J_I = sv_half.J_I;
    const auto sol_half =
        solve_feti_direct(blocks, st.ws.materials, st.config.solver_tol);
    return std::pair{sol_full, sol_half};
  };
  add("distribution_invariance_A",
      "fields are invariant under redistributing interface source values between subdomains",
      has_direct,
      [distribution](PipelineState& st) {
        const auto [full, half] = distribution(st);
        return std::max(rel_inf(full.A_C - half.A_C, full.A_C),
                        rel_inf(full.A_I - half.A_I, full.A_I));
      },
      kTolDistribution);
  add("distribution_invariance_phi",
      "scalar potential is invariant under redistributing interface source values", has_direct,
      [distribution](PipelineState& st) {
        const auto [full, half] = distribution(st);
        return rel_inf(full.phi - half.phi, full.phi);
      },
      kTolDistribution);

  add("splitting_K", "curl-curl block splits through the tearing operator", always,
      [](PipelineState& st) { return st.splitting_dev().dev_K; }, kTolSplitting);
  add("splitting_M", "conductor mass block splits through the tearing operator", always,
      [](PipelineState& st) { return st.splitting_dev().dev_M; }, kTolSplitting);
  add("splitting_S", "mixed block splits through the tearing operator", always,
      [](PipelineState& st) { return st.splitting_dev().dev_S; }, kTolSplitting);
  add("splitting_J", "source functional splits through the tearing operator", always,
      [](PipelineState& st) { return st.splitting_dev().dev_J; }, kTolSplitting);

  add("tearing_BR", "the range of the tearing operator lies in the jump kernel", always,
      [](PipelineState& st) { return st.tearing_diag(false).max_BR; }, 0.0);
  add("tearing_kerRt", "transposed tearing annihilates transposed jumps", always,
      [](PipelineState& st) { return st.tearing_diag(false).max_RtBt; }, 0.0);
  add("tearing_rank", "tearing operator is injective and complements the jump range", dense,
      [](PipelineState& st) {
        const auto& d = st.tearing_diag(true);
        const double rank_defect = std::abs(double(d.rank_R) - double(st.ws.partition.dim_V()));
        const double split_defect = std::abs(double(d.rank_R) + double(d.rank_Bt) -
                                             double(st.ws.partition.dim_VC()) -
                                             double(st.ws.partition.dim_VI()));
        return std::max(rank_defect, split_defect);
      },
      0.0);

  add("de_rham", "discrete gradients lie in the kernel of the ungauged curl-curl operator",
      always,
      [](PipelineState& st) {
        return de_rham_residual(st.ws.mesh, st.ws.labels, st.ws.materials, st.ws.gradient);
      },
      kTolDeRham);

  const auto harmonic = [](PipelineState& st) { return st.config.materials.omega > 0.0; };
  add("symmetrized_symmetry", "the scaled substitution renders the block system complex-symmetric",
      harmonic,
      [](PipelineState& st) { return symmetrized_gap(st.ws.blocks, st.ws.materials); },
      0.0);
  add("symmetrization_solve",
      "solving the symmetrized system and mapping back reproduces the solution",
      [](PipelineState& st) { return st.config.materials.omega > 0.0 && st.mono.has_value(); },
      [](PipelineState& st) {
        const Materials& mat = st.ws.materials;
        const SpMatC sym = build_mono_matrix(st.ws.blocks, mat, /*symmetrized=*/true);
        VecC rhs(st.ws.partition.dim_V() + st.ws.partition.dim_UC());
        rhs << st.ws.blocks.J.cast<Cplx>(), st.ws.blocks.j.cast<Cplx>();
        Eigen::SparseLU<SpMatC> lu(sym);
        if (lu.info() != Eigen::Success)
          throw SolverError("singular factorization of the symmetrized system");
        const VecC x = lu.solve(rhs);
        const VecC a = x.head(st.ws.partition.dim_V());
        const VecC phi = Cplx{0.0, mat.omega} * x.tail(st.ws.partition.dim_UC());
        return std::max(rel_inf(a - st.mono->A, st.mono->A), rel_inf(phi - st.mono->phi, st.mono->phi));
      },
      kTolSymmetrizedSolve);

  add("coercivity_K", "curl-curl operator is coercive on the gauged global space", dense,
      [](PipelineState& st) {
        const auto& k = st.kernel_diag();
        return k.lambda_min_K / std::max(1.0, k.lambda_max_K);
      },
      kTolCoercivity, /*pass_is_leq=*/false);
  add("coercivity_K_I", "insulator operator is invertible on its cotree space", dense,
      [](PipelineState& st) {
        const auto& k = st.kernel_diag();
        return k.lambda_min_KI / std::max(1.0, k.lambda_max_KI);
      },
      kTolCoercivity, /*pass_is_leq=*/false);
  add("coercivity_K_C", "conductor curl-curl block is coercive on its cotree space", dense,
      [](PipelineState& st) {
        const auto& k = st.kernel_diag();
        return k.lambda_min_KC / std::max(1.0, k.lambda_max_KC);
      },
      kTolCoercivity, /*pass_is_leq=*/false);
  add("kernel_dim_insulator",
      "ungauged insulator curl-curl kernel is spanned by the nodal gradients", dense,
      [](PipelineState& st) {
        const auto& k = st.kernel_diag();
        return std::abs(double(k.kernel_dim_insulator) - double(k.expected_insulator));
      },
      0.0);
  add("kernel_dim_global", "ungauged global curl-curl kernel is spanned by the nodal gradients",
      dense,
      [](PipelineState& st) {
        const auto& k = st.kernel_diag();
        return std::abs(double(k.kernel_dim_global) - double(k.expected_global));
      },
      0.0);

  return defs;
}

} // namespace


Workspace build_workspace(const RunConfig& config) {
  Workspace ws;
  ws.mesh = build_box_mesh(config.geometry);
  ws.labels = classify_entities(ws.mesh, config.geometry);
  ws.trees = build_tree_cotree(ws.mesh, ws.labels);
  ws.partition = build_partition(ws.mesh, ws.labels, ws.trees);
  ws.gradient = build_gradient(ws.mesh, ws.labels, ws.partition);

  AssemblyOptions asm_opt;
  asm_opt.threads = config.threads;
  ws.blocks = assemble_global(ws.mesh, ws.labels, ws.partition, config.materials, asm_opt);
  assemble_torn(ws.mesh, ws.labels, ws.partition, config.materials, ws.blocks, asm_opt);
  ws.tearing = build_tearing(ws.partition);

  ws.source_spec = make_source_spec(config);
  SourceOptions src_opt;
  src_opt.threads = config.threads;
  src_opt.interface_split = config.source.interface_split;
  ws.source = assemble_source(ws.mesh, ws.labels, ws.partition, ws.gradient, ws.source_spec,
                              config.materials, src_opt);
  ws.blocks.J = ws.source.J;
  ws.blocks.J_C = ws.source.J_C;
  ws.blocks.J_I = ws.source.J_I;
  ws.blocks.j = ws.source.j;
  ws.materials = config.materials;
  return ws;
}

std::vector<std::string> available_checks() {
  std::vector<std::string> names;
  for (const auto& def : check_registry()) names.push_back(def.name);
  return names;
}

RunResult run(const RunConfig& config) {
  RunResult result;
  result.report.config_echo = config.to_json();
  Stopwatch watch(result.report.timings);

  try {
    Workspace ws = watch.time("build", [&] { return build_workspace(config); });
    PipelineState st{config, ws};

    if (config.wants("mono"))
      st.mono = watch.time("solve_mono",
                           [&] { return solve_monolithic(ws.blocks, config.materials, config.solver_tol); });
    if (config.wants("feti_direct")) {
      st.feti_direct = watch.time("solve_feti_direct", [&] {
        return solve_feti_direct(ws.blocks, config.materials, config.solver_tol);
      });
      st.glued_direct = glue(*st.feti_direct, ws.partition, config.solver_tol);
    }
    if (config.wants("feti_dual")) {
      st.feti_dual = watch.time("solve_feti_dual", [&] {
        return solve_feti_dual(ws.blocks, config.materials, config.solver_tol,
                               config.max_iterations);
      });
      st.glued_dual = glue(*st.feti_dual, ws.partition, config.solver_tol);
    }

    const auto defs = check_registry();
    std::set<std::string> requested(config.checks.begin(), config.checks.end());
    const bool run_all = requested.empty() || requested.count("all");
    requested.erase("all");
    for (const auto& name : requested) {
      const bool known = std::any_of(defs.begin(), defs.end(),
                                     [&](const CheckDef& d) { return d.name == name; });
      if (!known) throw ConfigError("unknown check '" + name + "'");
    }

    watch.time("checks", [&] {
      for (const auto& def : defs) {
        const bool explicit_request = requested.count(def.name) > 0;
        if (!run_all && !explicit_request) continue;
        if (!def.applicable(st)) {
          if (explicit_request)
            throw ConfigError("check '" + def.name +
                              "' is not applicable to this configuration (missing formulation, "
                              "source kind, or mesh too large for dense diagnostics)");
          continue;
        }
        auto res = def.compute(st);
        res.provenance = def.provenance;
        result.report.checks.push_back(std::move(res));
      }
    });

    if (!config.export_dir.empty()) {
      watch.time("export", [&] {
        std::error_code ec;
        std::filesystem::create_directories(config.export_dir, ec);
        if (ec) throw IoError("cannot create export directory " + config.export_dir);
        const auto path = [&](const std::string& name) {
          return config.export_dir + "/fields_" + name + ".vtk";
        };
        if (st.mono) {
          const auto e = electric_field(*st.mono, ws.mesh, ws.labels, ws.partition, config.materials);
          export_fields(path("mono"), ws.mesh, ws.labels, st.field_mono(), &e);
        }
        if (st.feti_direct) {
          const auto e = electric_field(*st.glued_direct, ws.mesh, ws.labels, ws.partition,
                                        config.materials);
          export_fields(path("feti_direct"), ws.mesh, ws.labels, st.field_direct(), &e);
        }
        if (st.feti_dual) {
          const auto e = electric_field(*st.glued_dual, ws.mesh, ws.labels, ws.partition,
                                        config.materials);
          export_fields(path("feti_dual"), ws.mesh, ws.labels, st.field_dual(), &e);
        }
      });
    }

    if (!config.report_path.empty()) result.report.write(config.report_path);
    result.exit_code = result.report.all_pass() ? 0 : 1;
  } catch (const ConfigError& e) {
    result.exit_code = 2;
    result.error = e.what();
  } catch (const SourceError& e) {
    result.exit_code = 2;
    result.error = e.what();
  } catch (const IoError& e) {
    result.exit_code = 2;
    result.error = e.what();
  } catch (const std::exception& e) {
    result.exit_code = 3;
    result.error = e.what();
  }
  return result;
}

} // namespace mqsfeti
