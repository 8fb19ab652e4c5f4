#pragma once

#include "mqsfeti/checks.hpp"
#include "mqsfeti/config.hpp"
#include "mqsfeti/report.hpp"

namespace mqsfeti {

/// Everything the solvers and checks consume, built once per run.
struct Workspace {
  Mesh mesh;
  EntityLabels labels;
  TreeCotree trees;
  DofPartition partition;
  IncidenceGradient gradient;
  OperatorBlocks blocks;
  TearingOperator tearing;
  SourceSpec source_spec;
  SourceVectors source;
  Materials materials;
};

/// Mesh -> labels -> trees -> partition -> gradient -> operators -> source.
Workspace build_workspace(const RunConfig& config);

struct RunResult {
  int exit_code = 0; // 0 ok, 1 check failure, 2 config/source/io error, 3 solver/topology error
  Report report;
  std::string error;
};

/// Full pipeline: builds the workspace, runs the requested formulations and
/// checks, writes the report and field exports. Never throws; failures are
/// mapped onto the exit-code contract.
RunResult run(const RunConfig& config);

/// Names accepted in RunConfig::checks, in report order.
std::vector<std::string> available_checks();

} // namespace mqsfeti
