#pragma once

#include <stdexcept>
#include <string>

namespace mqsfeti {

/// Invalid user-facing configuration (geometry, materials, run options).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Mesh/graph structure violates a topological precondition.
struct TopologyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Element-level assembly failure (degenerate geometry, bad index maps).
struct AssemblyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Source functional rejected (e.g. fails the discrete solenoidality test).
struct SourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Factorization or iteration failure.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Torn solution violates the interface constraint beyond tolerance.
struct GluingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Field requested outside its domain of definition.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File output failure.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace mqsfeti
