#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "kerrsim/analytic.hpp"
#include "kerrsim/detail/rk4.hpp"
#include "kerrsim/errors.hpp"
#include "kerrsim/medium.hpp"
#include "kerrsim/two_photon.hpp"

namespace kerrsim {

enum class EvolutionMethod { full_matrix, reduced_mu };

struct EvolutionConfig {
  int steps = 20000;
  EvolutionMethod method = EvolutionMethod::full_matrix;

  void validate() const {
    if (steps < 1000) throw ConfigError("EvolutionConfig: steps must be >= 1000");
  }
};

// Medium kernel int_{z0}^{z0+l} exp(-2*pi*i*dmu*(t - z)) dz in closed form.
inline std::complex<double> kernel(int delta_mu, double t, const MediumConfig& medium) {
  if (delta_mu == 0) return medium.l;
  const double k = 2.0 * std::numbers::pi * static_cast<double>(delta_mu);
  const std::complex<double> diff =
      std::polar(1.0, k * (medium.z0 + medium.l)) - std::polar(1.0, k * medium.z0);
  return std::polar(1.0, -k * t) * diff / std::complex<double>(0.0, k);
}

namespace detail {

// Time-independent part of the kernel, K(dmu, t) = exp(-2*pi*i*dmu*t) * S(dmu).
inline std::vector<std::complex<double>> kernel_factors(const MediumConfig& medium) {
  const int span = 4 * medium.n_max;
  std::vector<std::complex<double>> s(static_cast<std::size_t>(2 * span + 1));
  for (int d = -span; d <= span; ++d) {
    s[static_cast<std::size_t>(d + span)] = kernel(d, 0.0, medium);
  }
  return s;
}

// Phases exp(-2*pi*i*d*t) for d = -span..span, built incrementally.
inline void fill_phases(std::vector<std::complex<double>>& ph, int span, double t) {
  const std::complex<double> base = std::polar(1.0, -2.0 * std::numbers::pi * t);
  ph[static_cast<std::size_t>(span)] = 1.0;
  for (int d = 1; d <= span; ++d) {
    ph[static_cast<std::size_t>(span + d)] = ph[static_cast<std::size_t>(span + d - 1)] * base;
    ph[static_cast<std::size_t>(span - d)] = std::conj(ph[static_cast<std::size_t>(span + d)]);
  }
}

// Drive terms w_mu(t) = -i*eta * sum_{mu'} v_{mu'} K(mu'-mu, t), shared by
// both representations: the equation of motion couples amplitudes only
// through the pair-sum index mu.
inline void pair_sum_drive(const std::vector<std::complex<double>>& v,
                           const std::vector<std::complex<double>>& s_factors,
                           const std::vector<std::complex<double>>& phases, int n_max,
                           double eta, std::vector<std::complex<double>>& w) {
  const int vspan = 2 * n_max;
  const int kspan = 4 * n_max;
  const std::complex<double> minus_i_eta(0.0, -eta);
  for (int mu = -vspan; mu <= vspan; ++mu) {
    std::complex<double> acc = 0.0;
    for (int mup = -vspan; mup <= vspan; ++mup) {
      const int d = mup - mu;
      acc += v[static_cast<std::size_t>(mup + vspan)] *
             s_factors[static_cast<std::size_t>(d + kspan)] *
             phases[static_cast<std::size_t>(d + kspan)];
    }
    w[static_cast<std::size_t>(mu + vspan)] = minus_i_eta * acc;
  }
}

}  // namespace detail

// Integrates the interaction-picture equation of motion
//   dc_nm/dt = -i*eta * sum_{n'm'} c_{n'm'} K(n'+m'-n-m, t)
// from t = 0 to t = T = 1 with fixed-step RK4.
//
// full_matrix evolves every c_nm, computing the pair sums v_mu each stage;
// reduced_mu evolves only the nu-independent increments d_mu with
// c_{nu,mu}(t) = c_{nu,mu}(0) + d_mu(t) (the change of variables is exact,
// so the two methods agree up to integration error).
inline TwoPhotonState evolve(const TwoPhotonState& state0, const MediumConfig& medium,
                             const EvolutionConfig& cfg = {}) {
  cfg.validate();
  medium.validate();
  if (medium.n_max != state0.n_max) throw ConfigError("evolve: mode grids differ");
  if (std::abs(state0.norm() - 1.0) > 1e-6) {
    throw ConfigError("evolve: initial state is not normalized");
  }

  const int n_max = state0.n_max;
  const int M = state0.modes();
  const int vspan = 2 * n_max;
  const int kspan = 4 * n_max;
  const auto s_factors = detail::kernel_factors(medium);

  std::vector<std::complex<double>> phases(static_cast<std::size_t>(2 * kspan + 1));
  std::vector<std::complex<double>> v(static_cast<std::size_t>(2 * vspan + 1));
  std::vector<std::complex<double>> w(static_cast<std::size_t>(2 * vspan + 1));

  TwoPhotonState out = state0;

  if (cfg.method == EvolutionMethod::full_matrix) {
    auto rhs = [&](const std::vector<std::complex<double>>& y, double t,
                   std::vector<std::complex<double>>& dydt) {
      std::fill(v.begin(), v.end(), std::complex<double>(0.0));
      for (int n = -n_max; n <= n_max; ++n) {
        for (int m = -n_max; m <= n_max; ++m) {
          v[static_cast<std::size_t>(n + m + vspan)] +=
              y[static_cast<std::size_t>((n + n_max) * M + (m + n_max))];
        }
      }
      detail::fill_phases(phases, kspan, t);
      detail::pair_sum_drive(v, s_factors, phases, n_max, medium.eta, w);
      for (int n = -n_max; n <= n_max; ++n) {
        for (int m = -n_max; m <= n_max; ++m) {
          dydt[static_cast<std::size_t>((n + n_max) * M + (m + n_max))] =
              w[static_cast<std::size_t>(n + m + vspan)];
        }
      }
    };
    detail::rk4_integrate(out.amplitudes, 0.0, 1.0, cfg.steps, rhs);
  } else {
    const auto v0 = state0.v_mu();
    std::vector<std::complex<double>> d(static_cast<std::size_t>(2 * vspan + 1), 0.0);
    auto rhs = [&](const std::vector<std::complex<double>>& y, double t,
                   std::vector<std::complex<double>>& dydt) {
      for (int mu = -vspan; mu <= vspan; ++mu) {
        const std::size_t i = static_cast<std::size_t>(mu + vspan);
        v[i] = v0[i] + static_cast<double>(state0.mu_degeneracy(mu)) * y[i];
      }
      detail::fill_phases(phases, kspan, t);
      detail::pair_sum_drive(v, s_factors, phases, n_max, medium.eta, dydt);
    };
    detail::rk4_integrate(d, 0.0, 1.0, cfg.steps, rhs);
    for (int n = -n_max; n <= n_max; ++n) {
      for (int m = -n_max; m <= n_max; ++m) {
        out.amp(n, m) += d[static_cast<std::size_t>(n + m + vspan)];
      }
    }
  }

  const double drift = std::abs(out.norm() - 1.0);
  if (!(drift <= 1e-6)) {  // negated so NaN blow-ups also trip the guard
    throw NumericalGuardError(
        "evolve: norm drift " + std::to_string(drift) + " exceeds 1e-6 at " +
        std::to_string(cfg.steps) + " steps; raise steps (drift scales as steps^-4)");
  }
  return out;
}

// One full gate run: evolve a product state and project back on it.
inline GateResult numeric_gate(const TwoPhotonState& state0, const MediumConfig& medium,
                               const EvolutionConfig& cfg = {}) {
  const TwoPhotonState final_state = evolve(state0, medium, cfg);
  const double r = sum_v_mu_sq(state0) / static_cast<double>(state0.modes());
  return gate_from_overlap(overlap_with(final_state, state0), medium.phi(), r,
                           GateSource::numeric);
}

}  // namespace kerrsim
