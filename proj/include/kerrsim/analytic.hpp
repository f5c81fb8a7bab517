#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "kerrsim/errors.hpp"
#include "kerrsim/medium.hpp"
#include "kerrsim/two_photon.hpp"

namespace kerrsim {

enum class GateSource { analytic, numeric, nonlocal_toy };

// Outcome of one cross-phase gate run: overlap <psi(0)|psi(T)> and the
// derived fidelity F0 = |overlap|^2 and phase phi = -arg(overlap) in
// (-pi, pi], together with the inputs (Phi, r) that produced it.
struct GateResult {
  std::complex<double> overlap{1.0, 0.0};
  double fidelity_F0 = 1.0;
  double phase_phi = 0.0;
  double Phi = 0.0;
  double r = 0.0;
  GateSource source = GateSource::analytic;
};

inline GateResult gate_from_overlap(std::complex<double> overlap, double Phi, double r,
                                    GateSource source) {
  GateResult g;
  g.overlap = overlap;
  g.fidelity_F0 = std::norm(overlap);
  g.phase_phi = -std::arg(overlap);
  if (g.phase_phi <= -std::numbers::pi) g.phase_phi += 2.0 * std::numbers::pi;
  g.Phi = Phi;
  g.r = r;
  g.source = source;
  return g;
}

// Closed-form instantaneous-response gate figures:
//   overlap = 1 + r (e^{-i Phi} - 1)
//   F0      = 1 - 4 sin^2(Phi/2) r (1 - r)
//   phi     = atan2(r sin Phi, 1 - r + r cos Phi)
// The two-argument arctangent keeps phi continuous where the plain ratio
// form would cross a zero denominator.
inline GateResult fidelity_phase(double Phi, double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw ConfigError("fidelity_phase: r must lie in [0, 1]");
  const std::complex<double> overlap =
      1.0 + r * (std::polar(1.0, -Phi) - 1.0);
  GateResult g = gate_from_overlap(overlap, Phi, r, GateSource::analytic);
  g.fidelity_F0 = 1.0 - 4.0 * std::pow(std::sin(0.5 * Phi), 2) * r * (1.0 - r);
  g.phase_phi = std::atan2(r * std::sin(Phi), 1.0 - r + r * std::cos(Phi));
  return g;
}

// Delta-kernel (instantaneous-response) final state:
//   c_{nu,mu}(T) = c_{nu,mu}(0) + (1/M)(e^{-i Phi} - 1) v_mu(0).
// Deliberately not renormalized: the norm deviation measures the quality of
// the delta-kernel approximation.
inline TwoPhotonState analytic_final_state(const TwoPhotonState& state0,
                                           const MediumConfig& medium) {
  medium.validate();
  if (medium.n_max != state0.n_max) throw ConfigError("analytic_final_state: mode grids differ");
  const int n_max = state0.n_max;
  const double M = static_cast<double>(state0.modes());
  const std::complex<double> gain =
      (std::polar(1.0, -medium.phi()) - 1.0) / M;
  const auto v0 = state0.v_mu();

  TwoPhotonState out = state0;
  for (int n = -n_max; n <= n_max; ++n) {
    for (int m = -n_max; m <= n_max; ++m) {
      out.amp(n, m) += gain * v0[static_cast<std::size_t>(n + m + 2 * n_max)];
    }
  }
  return out;
}

// Toy fully-nonlocal gate: (sum a^dag a)(sum b^dag b) is a constant on the
// one-photon-per-field sector, so every amplitude picks up the same phase.
// Norm-preserving with F0 = 1 and phi = Phi_prime exactly; the unphysical
// benchmark a local medium cannot reach.
inline TwoPhotonState nonlocal_toy_gate(const TwoPhotonState& state0, double Phi_prime) {
  TwoPhotonState out = state0;
  const std::complex<double> phase = std::polar(1.0, -Phi_prime);
  for (auto& c : out.amplitudes) c *= phase;
  return out;
}

// Classical local phase profile kappa*l/c * I_b over the retarded coordinate:
// what the propagation-picture solution suggests each point of the pulse
// acquires. Diagnostic only; contrast with the single phase phi above.
inline std::vector<double> heisenberg_phase_profile(std::span<const double> pb_intensity,
                                                    double kappa_l) {
  std::vector<double> out(pb_intensity.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (pb_intensity[i] < 0.0) throw ConfigError("heisenberg_phase_profile: intensity must be >= 0");
    out[i] = kappa_l * pb_intensity[i];
  }
  return out;
}

}  // namespace kerrsim
