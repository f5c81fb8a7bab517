#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "kerrsim/detail/quadrature.hpp"
#include "kerrsim/errors.hpp"
#include "kerrsim/medium.hpp"
#include "kerrsim/pulse.hpp"
#include "kerrsim/units.hpp"

namespace kerrsim {

// Spectral-overlap diagnostics of one pulse against an M-mode medium.
//
//   r                    = (1/M) sum_mu |v_mu|^2, the quantity bounding the
//                          achievable cross-phase shift;
//   v_mu_sq_sum          = sum_mu |v_mu(0)|^2 for the two-photon product state;
//   delta_omega_std      = sqrt(sum_n (n w)^2 |c_n|^2), standard deviation of
//                          the mode frequency (symmetric spectra: mean 0);
//   delta_omega_support  = width of the smallest symmetric frequency interval
//                          containing every intensity Fourier component with
//                          |P_k|^2 >= 1e-3 |P_0|^2;
//   bound_ratio          = delta_omega_support / (M w), the right-hand side of
//                          the r bound.
struct SpectralReport {
  double r = 0.0;
  double v_mu_sq_sum = 0.0;
  double delta_omega_std = 0.0;
  double delta_omega_support = 0.0;
  double bound_ratio = 0.0;
};

// Pair sums v_mu = sum_{n+m=mu} a_n b_m of two single-photon spectra, the
// convolution of the amplitude vectors. mu runs -2*n_max..2*n_max.
inline std::vector<std::complex<double>> pair_mode_sums(const PulseSpectrum& a,
                                                        const PulseSpectrum& b) {
  if (a.n_max != b.n_max) throw ConfigError("pair_mode_sums: mode grids differ");
  const int n_max = a.n_max;
  std::vector<std::complex<double>> v(static_cast<std::size_t>(4 * n_max + 1), 0.0);
  for (int n = -n_max; n <= n_max; ++n) {
    for (int m = -n_max; m <= n_max; ++m) {
      v[static_cast<std::size_t>(n + m + 2 * n_max)] += a.amp(n) * b.amp(m);
    }
  }
  return v;
}

inline SpectralReport spectral_report(const PulseSpectrum& p) {
  const int M = p.modes();
  const double w = units::mode_spacing;

  SpectralReport rep;

  const auto v = pair_mode_sums(p, p);
  for (const auto& vm : v) rep.v_mu_sq_sum += std::norm(vm);
  rep.r = rep.v_mu_sq_sum / static_cast<double>(M);

  double second_moment = 0.0;
  for (int n = -p.n_max; n <= p.n_max; ++n) {
    second_moment += static_cast<double>(n) * static_cast<double>(n) * std::norm(p.amp(n));
  }
  rep.delta_omega_std = w * std::sqrt(second_moment);

  // Fourier components of the intensity are the spectrum autocorrelation
  // P_k = sum_m conj(c_m) c_{m+k}; P_0 = 1 for a normalized spectrum.
  int support = 0;
  for (int k = 1; k <= 2 * p.n_max; ++k) {
    std::complex<double> pk = 0.0;
    for (int m = -p.n_max; m <= p.n_max - k; ++m) {
      pk += std::conj(p.amp(m)) * p.amp(m + k);
    }
    if (std::norm(pk) >= 1e-3) support = k;
  }
  rep.delta_omega_support = 2.0 * w * static_cast<double>(support);
  rep.bound_ratio = rep.delta_omega_support / units::medium_bandwidth(M);
  return rep;
}

// r from a sampled intensity profile on [0, 1): (1/M) * L*int I^2 / (int I)^2
// by trapezoid quadrature on the uniform grid. Agrees with spectral_report().r
// for the same pulse up to discretization of the input samples.
inline double r_from_intensity(std::span<const double> intensity, int M) {
  if (intensity.size() < 1024) {
    throw ConfigError("r_from_intensity: need at least 2^10 samples of one period");
  }
  if (M < 1) throw ConfigError("r_from_intensity: M must be >= 1");
  double s1 = 0.0;
  double s2 = 0.0;
  for (double I : intensity) {
    if (I < 0.0) throw ConfigError("r_from_intensity: intensity must be >= 0");
    s1 += I;
    s2 += I * I;
  }
  if (!(s1 > 0.0)) throw ConfigError("r_from_intensity: intensity integrates to zero");
  const double n = static_cast<double>(intensity.size());
  const double mean = s1 / n;
  const double mean_sq = s2 / n;
  return mean_sq / (mean * mean) / static_cast<double>(M);
}

// eta-scaled interaction energy int_{z0}^{z0+l} I_a(z) I_b(z) dz, the
// locality diagnostic: zero exactly when either pulse is outside the medium.
inline double interaction_energy(const PulseSpectrum& pa, const PulseSpectrum& pb,
                                 const MediumConfig& medium) {
  medium.validate();
  const auto integrand = [&](double z) { return pa.intensity(z) * pb.intensity(z); };
  return medium.eta * detail::simpson(integrand, medium.z0, medium.z0 + medium.l, 16384);
}

}  // namespace kerrsim
