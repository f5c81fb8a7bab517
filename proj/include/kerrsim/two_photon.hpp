#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdlib>
#include <vector>

#include "kerrsim/errors.hpp"
#include "kerrsim/pulse.hpp"

namespace kerrsim {

// Joint state of one "a" photon and one "b" photon: amplitudes c_nm over all
// mode pairs, n, m in [-n_max, n_max], in the interaction picture (free
// phases exp(-2*pi*i*(n+m)*c*t/L) factored out). At t = T = 1 those phases
// are unity, so the stored amplitudes are the physical ones.
struct TwoPhotonState {
  int n_max = 0;
  std::vector<std::complex<double>> amplitudes;  // row-major, index (n+n_max)*M + (m+n_max)

  explicit TwoPhotonState(int n_max_ = 0)
      : n_max(n_max_),
        amplitudes(static_cast<std::size_t>((2 * n_max_ + 1)) * static_cast<std::size_t>(2 * n_max_ + 1), 0.0) {}

  int modes() const { return 2 * n_max + 1; }

  std::complex<double> amp(int n, int m) const {
    return amplitudes[idx(n, m)];
  }
  std::complex<double>& amp(int n, int m) { return amplitudes[idx(n, m)]; }

  // Same amplitude addressed by difference/sum indices nu = n-m, mu = n+m.
  // nu and mu must share parity; mismatched parity is a bookkeeping bug.
  std::complex<double> amp_numu(int nu, int mu) const {
    check_parity(nu, mu);
    return amp((mu + nu) / 2, (mu - nu) / 2);
  }
  std::complex<double>& amp_numu(int nu, int mu) {
    check_parity(nu, mu);
    return amp((mu + nu) / 2, (mu - nu) / 2);
  }

  double norm_sq() const {
    double s = 0.0;
    for (const auto& c : amplitudes) s += std::norm(c);
    return s;
  }
  double norm() const { return std::sqrt(norm_sq()); }

  // Number of valid nu values at fixed mu: 2*n_max - |mu| + 1.
  int mu_degeneracy(int mu) const { return 2 * n_max - std::abs(mu) + 1; }

  // v_mu(t) = sum over nu (same parity as mu, step 2) of c_{nu,mu}.
  std::vector<std::complex<double>> v_mu() const {
    std::vector<std::complex<double>> v(static_cast<std::size_t>(4 * n_max + 1), 0.0);
    for (int n = -n_max; n <= n_max; ++n) {
      for (int m = -n_max; m <= n_max; ++m) {
        v[static_cast<std::size_t>(n + m + 2 * n_max)] += amp(n, m);
      }
    }
    return v;
  }

 private:
  std::size_t idx(int n, int m) const {
    if (std::abs(n) > n_max || std::abs(m) > n_max) {
      throw ConfigError("TwoPhotonState: mode index out of range");
    }
    const std::size_t M = static_cast<std::size_t>(modes());
    return static_cast<std::size_t>(n + n_max) * M + static_cast<std::size_t>(m + n_max);
  }
  void check_parity(int nu, int mu) const {
    if (((nu ^ mu) & 1) != 0) {
      throw std::logic_error("TwoPhotonState: nu and mu must have the same parity");
    }
  }
};

// Product state c_nm = a_n * b_m of two normalized single-photon spectra.
inline TwoPhotonState product_state(const PulseSpectrum& a, const PulseSpectrum& b) {
  if (a.n_max != b.n_max) throw ConfigError("product_state: mode grids differ");
  TwoPhotonState s(a.n_max);
  for (int n = -a.n_max; n <= a.n_max; ++n) {
    for (int m = -a.n_max; m <= a.n_max; ++m) {
      s.amp(n, m) = a.amp(n) * b.amp(m);
    }
  }
  return s;
}

// <reference|state> = sum conj(c_nm(ref)) c_nm(state). At t = T this is the
// physical overlap of the evolved state with the initial one.
inline std::complex<double> overlap_with(const TwoPhotonState& state,
                                         const TwoPhotonState& reference) {
  if (state.n_max != reference.n_max) throw ConfigError("overlap_with: mode grids differ");
  std::complex<double> o = 0.0;
  for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
    o += std::conj(reference.amplitudes[i]) * state.amplitudes[i];
  }
  return o;
}

inline double sum_v_mu_sq(const TwoPhotonState& s) {
  double acc = 0.0;
  for (const auto& vm : s.v_mu()) acc += std::norm(vm);
  return acc;
}

}  // namespace kerrsim
