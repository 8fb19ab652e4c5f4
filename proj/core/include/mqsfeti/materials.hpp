#pragma once

#include "mqsfeti/errors.hpp"
#include "mqsfeti/labels.hpp"

namespace mqsfeti {

/// Per-subdomain constant material coefficients for the time-harmonic
/// eddy-current problem. The conductivity vanishes identically in the
/// insulator by construction.
struct Materials {
  double mu_conductor = 1.0;    // magnetic permeability in the conductor [H/m]
  double mu_insulator = 1.0;    // magnetic permeability in the insulator [H/m]
  double sigma_conductor = 1.0; // electric conductivity in the conductor [S/m]
  double omega = 0.0;           // angular frequency [rad/s]

  double mu(Region r) const { return r == Region::Conductor ? mu_conductor : mu_insulator; }
  double sigma(Region r) const { return r == Region::Conductor ? sigma_conductor : 0.0; }

  void validate() const {
    if (!(mu_conductor > 0.0) || !(mu_insulator > 0.0))
      throw ConfigError("permeability must be uniformly positive");
    if (!(sigma_conductor > 0.0))
      throw ConfigError("conductivity must be positive in the conductor");
    if (omega < 0.0) throw ConfigError("angular frequency must be nonnegative");
  }
};

} // namespace mqsfeti
