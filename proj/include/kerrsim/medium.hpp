#pragma once

#include "kerrsim/errors.hpp"
#include "kerrsim/units.hpp"

namespace kerrsim {

// Localized Kerr medium: occupies [z0, z0+l] with coupling eta, acting on
// M = 2*n_max+1 modes per field. The bare interaction strength is
// Phi = eta*M*l in simulation units (L = c = 1).
struct MediumConfig {
  double z0 = 0.5;
  double l = 0.5;
  double eta = 0.0;
  int n_max = 8;

  int modes() const { return 2 * n_max + 1; }
  double phi() const { return eta * static_cast<double>(modes()) * l; }

  void validate() const {
    if (!(z0 >= 0.0 && z0 < 1.0)) throw ConfigError("MediumConfig: z0 must lie in [0, 1)");
    if (!(l > 0.0 && l <= 1.0)) throw ConfigError("MediumConfig: l must lie in (0, 1]");
    if (z0 + l > 1.0 + 1e-12) throw ConfigError("MediumConfig: medium must fit in the period (z0 + l <= 1)");
    if (n_max < 0) throw ConfigError("MediumConfig: n_max must be >= 0");
  }

  static MediumConfig from_phi(double Phi, double z0, double l, int n_max) {
    MediumConfig m;
    m.z0 = z0;
    m.l = l;
    m.n_max = n_max;
    m.eta = Phi / (static_cast<double>(m.modes()) * l);
    m.validate();
    return m;
  }

  static MediumConfig from_eta(double eta, double z0, double l, int n_max) {
    MediumConfig m;
    m.z0 = z0;
    m.l = l;
    m.n_max = n_max;
    m.eta = eta;
    m.validate();
    return m;
  }
};

}  // namespace kerrsim
