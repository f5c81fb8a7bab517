#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "kerrsim/detail/rk4.hpp"
#include "kerrsim/errors.hpp"
#include "kerrsim/pulse.hpp"
#include "kerrsim/units.hpp"

namespace kerrsim {

// Four-level giant-Kerr atom driven by a single-photon wavepacket in field a,
// with the coupling field Omega_c holding the transparency window open.
// g13 is the single-photon Rabi coupling of the 1-3 transition, gamma31 the
// total 1-3 coherence decay, Gamma31 <= gamma31 the radiative part.
struct EitConfig {
  double g13 = 1.0;
  double Omega_c = 100.0;
  double gamma31 = 50.0;
  double Gamma31 = 50.0;
  int steps = 20000;

  // Decay rate of the bright superposition after eliminating level 3.
  double dark_state_rate() const { return Omega_c * Omega_c / (2.0 * gamma31); }

  void validate() const {
    if (!(g13 >= 0.0)) throw ConfigError("EitConfig: g13 must be >= 0");
    if (!(Omega_c > 0.0)) throw ConfigError("EitConfig: Omega_c must be > 0");
    if (!(gamma31 >= 0.0)) throw ConfigError("EitConfig: gamma31 must be >= 0");
    if (!(Gamma31 >= 0.0 && Gamma31 <= gamma31)) {
      throw ConfigError("EitConfig: need 0 <= Gamma31 <= gamma31");
    }
    if (steps < 1) throw ConfigError("EitConfig: steps must be >= 1");
  }
};

struct EitResult {
  double loss_numeric = 0.0;    // integral of gamma31 |C3(t)|^2 over the run
  double loss_adiabatic = 0.0;  // closed-form prediction (see adiabatic_loss)
  double c3_max_sq = 0.0;       // peak |C3|^2 along the trajectory
  double survival = 0.0;        // sum |c_n(T)|^2
  bool regime_ok = false;       // adiabatic-regime flag (not a hard error)
  double c2_final_sq = 0.0;
  double c3_final_sq = 0.0;
  std::vector<double> c3_traj_times;
  std::vector<double> c3_traj_sq;
  std::vector<std::complex<double>> final_mode_amps;  // c_n(T), interaction picture
};

// Optical-depth bookkeeping for the macroscopic medium.
struct MediumPhysical {
  double rho_sigma_l = 0.0;    // rho * sigma_a * l
  double sigma_a_over_A = 0.0; // absorption cross-section over beam area
  double n_atoms = 0.0;        // rho * A * l

  void validate() const {
    if (rho_sigma_l < 0.0 || sigma_a_over_A < 0.0 || n_atoms < 0.0) {
      throw ConfigError("MediumPhysical: all entries must be >= 0");
    }
  }
};

// Standard deviation of the mode frequency, sqrt(sum (n w)^2 |c_n|^2).
inline double pulse_delta_omega_std(const PulseSpectrum& p) {
  double acc = 0.0;
  for (int n = -p.n_max; n <= p.n_max; ++n) {
    acc += static_cast<double>(n) * static_cast<double>(n) * std::norm(p.amp(n));
  }
  return units::mode_spacing * std::sqrt(acc);
}

// Both elimination rates must dominate the pulse bandwidth for the adiabatic
// chain (3 first, then 2) to be trustworthy.
inline bool eit_regime_ok(const PulseSpectrum& p, const EitConfig& cfg) {
  const double dw = pulse_delta_omega_std(p);
  return cfg.gamma31 >= 10.0 * dw && cfg.dark_state_rate() >= 10.0 * dw;
}

// Closed-form single-atom loss over one quantization time,
//   (16 gamma31 g13^2 / Omega_c^4) * T * sum_n (n w)^2 |c_n(0)|^2.
inline double adiabatic_loss(const PulseSpectrum& p, const EitConfig& cfg) {
  cfg.validate();
  double sum_w2 = 0.0;
  for (int n = -p.n_max; n <= p.n_max; ++n) {
    const double nw = units::mode_spacing * static_cast<double>(n);
    sum_w2 += nw * nw * std::norm(p.amp(n));
  }
  const double o2 = cfg.Omega_c * cfg.Omega_c;
  return 16.0 * cfg.gamma31 * cfg.g13 * cfg.g13 / (o2 * o2) * units::period * sum_w2;
}

// Predicted |C3(t)|^2 = (16 g13^2 / Omega_c^4) |sum_n n*w c_n e^{-i n w t}|^2:
// proportional to the squared time derivative of the field envelope at the
// atom, so it vanishes at envelope extrema.
inline double adiabatic_c3_profile(const PulseSpectrum& p, const EitConfig& cfg, double t) {
  cfg.validate();
  std::complex<double> deriv = 0.0;
  for (int n = -p.n_max; n <= p.n_max; ++n) {
    const double nw = units::mode_spacing * static_cast<double>(n);
    deriv += nw * p.amp(n) * std::polar(1.0, -nw * t);
  }
  const double o2 = cfg.Omega_c * cfg.Omega_c;
  return 16.0 * cfg.g13 * cfg.g13 / (o2 * o2) * std::norm(deriv);
}

// Exact integration of the non-Hermitian single-atom amplitude equations
//   dc_n/dt = i g13 C3 e^{i n w t}
//   dC3/dt  = -(gamma31/2) C3 + i g13 sum_n c_n e^{-i n w t} - i (Omega_c/2) C2
//   dC2/dt  = -i (Omega_c/2) C3
// from C2(0) = C3(0) = 0 over t in [0, T = 1], atom at z = 0. The loss
// integral gamma31 |C3|^2 rides along as an extra state variable so the
// bookkeeping identity holds to integrator accuracy.
inline EitResult evolve_atom(const PulseSpectrum& p, const EitConfig& cfg) {
  cfg.validate();
  if (std::abs(p.norm_sq() - 1.0) > 1e-9) {
    throw ConfigError("evolve_atom: spectrum is not normalized");
  }
  const double dt = units::period / static_cast<double>(cfg.steps);
  if (cfg.dark_state_rate() * dt > 0.1) {
    throw NumericalGuardError(
        "evolve_atom: stiffness guard Omega_c^2/(2 gamma31) * dt = " +
        std::to_string(cfg.dark_state_rate() * dt) + " > 0.1; raise steps");
  }

  const int n_max = p.n_max;
  const int M = p.modes();
  // State layout: [c_{-n_max}..c_{n_max}, C3, C2, loss].
  std::vector<std::complex<double>> y(static_cast<std::size_t>(M) + 3, 0.0);
  for (int n = -n_max; n <= n_max; ++n) {
    y[static_cast<std::size_t>(n + n_max)] = p.amp(n);
  }
  const std::size_t i3 = static_cast<std::size_t>(M);
  const std::size_t i2 = static_cast<std::size_t>(M) + 1;
  const std::size_t il = static_cast<std::size_t>(M) + 2;

  const std::complex<double> i_unit(0.0, 1.0);
  const double w = units::mode_spacing;

  auto rhs = [&](const std::vector<std::complex<double>>& s, double t,
                 std::vector<std::complex<double>>& ds) {
    const std::complex<double> rot = std::polar(1.0, -w * t);
    std::complex<double> phase = std::polar(1.0, w * t * static_cast<double>(n_max));
    std::complex<double> field = 0.0;  // sum_n c_n e^{-i n w t}
    const std::complex<double> c3 = s[i3];
    for (int k = 0; k < M; ++k) {
      field += s[static_cast<std::size_t>(k)] * phase;
      // dc_n/dt = i g13 C3 e^{+i n w t} = i g13 C3 conj(phase_n)
      ds[static_cast<std::size_t>(k)] = i_unit * cfg.g13 * c3 * std::conj(phase);
      phase *= rot;
    }
    ds[i3] = -0.5 * cfg.gamma31 * c3 + i_unit * cfg.g13 * field -
             i_unit * (0.5 * cfg.Omega_c) * s[i2];
    ds[i2] = -i_unit * (0.5 * cfg.Omega_c) * c3;
    ds[il] = cfg.gamma31 * std::norm(c3);
  };

  EitResult res;
  const int stride = std::max(1, cfg.steps / 2048);
  res.c3_traj_times.push_back(0.0);
  res.c3_traj_sq.push_back(0.0);
  auto observe = [&](int step, double t, const std::vector<std::complex<double>>& s) {
    const double c3_sq = std::norm(s[i3]);
    res.c3_max_sq = std::max(res.c3_max_sq, c3_sq);
    if ((step + 1) % stride == 0 || step + 1 == cfg.steps) {
      res.c3_traj_times.push_back(t);
      res.c3_traj_sq.push_back(c3_sq);
    }
  };

  detail::rk4_integrate(y, 0.0, units::period, cfg.steps, rhs, observe);

  res.final_mode_amps.assign(y.begin(), y.begin() + M);
  for (int k = 0; k < M; ++k) res.survival += std::norm(y[static_cast<std::size_t>(k)]);
  res.c3_final_sq = std::norm(y[i3]);
  res.c2_final_sq = std::norm(y[i2]);
  res.loss_numeric = y[il].real();
  res.loss_adiabatic = adiabatic_loss(p, cfg);
  res.regime_ok = eit_regime_ok(p, cfg);
  return res;
}

// Transparency window width for an optically dense medium:
//   Omega_c^2 / sqrt(Gamma31 gamma31) / sqrt(rho sigma_a l).
inline double transparency_width(const EitConfig& cfg, const MediumPhysical& phys) {
  cfg.validate();
  phys.validate();
  if (!(phys.rho_sigma_l > 0.0)) throw ConfigError("transparency_width: optical depth must be > 0");
  if (!(cfg.Gamma31 > 0.0 && cfg.gamma31 > 0.0)) {
    throw ConfigError("transparency_width: Gamma31 and gamma31 must be > 0");
  }
  return cfg.Omega_c * cfg.Omega_c / std::sqrt(cfg.Gamma31 * cfg.gamma31) /
         std::sqrt(phys.rho_sigma_l);
}

// Total absorption probability 8 (delta_omega_pulse / delta_omega_trans)^2.
inline double total_loss_bound(double delta_omega_pulse, double delta_omega_trans) {
  if (!(delta_omega_pulse > 0.0 && delta_omega_trans > 0.0)) {
    throw ConfigError("total_loss_bound: bandwidths must be > 0");
  }
  const double ratio = delta_omega_pulse / delta_omega_trans;
  return 8.0 * ratio * ratio;
}

struct GiantKerrCoupling {
  double epsilon = 0.0;
  bool detuning_regime_ok = true;  // |Delta_b| >> gamma4 validity flag
};

// Effective Kerr coupling of the four-level scheme,
//   epsilon = 4 d13^2 d24^2 rho A / (Delta_b Omega_c^2)   (hbar = 1).
inline GiantKerrCoupling giant_kerr_epsilon(double d13_sq_d24_sq, double Delta_b,
                                            double Omega_c, double rho_A,
                                            double gamma4 = 0.0) {
  if (Delta_b == 0.0) throw ConfigError("giant_kerr_epsilon: detuning must be nonzero");
  if (!(Omega_c > 0.0)) throw ConfigError("giant_kerr_epsilon: Omega_c must be > 0");
  GiantKerrCoupling out;
  out.epsilon = 4.0 * d13_sq_d24_sq * rho_A / (Delta_b * Omega_c * Omega_c);
  out.detuning_regime_ok = std::abs(Delta_b) >= 10.0 * gamma4;
  return out;
}

struct PhysicalConstants {
  double epsilon0 = 1.0;
  double hbar = 1.0;
  double c = 1.0;
};

// Radiative decay rate from the dipole matrix element,
//   Gamma31 = omega0^3 d13^2 / (3 pi epsilon0 hbar c^3).
inline double gamma31_from_dipole(double omega0, double d13,
                                  const PhysicalConstants& k = {}) {
  return std::pow(omega0, 3) * d13 * d13 /
         (3.0 * std::numbers::pi * k.epsilon0 * k.hbar * std::pow(k.c, 3));
}

}  // namespace kerrsim
