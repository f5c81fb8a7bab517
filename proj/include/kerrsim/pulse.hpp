#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "kerrsim/detail/quadrature.hpp"
#include "kerrsim/errors.hpp"
#include "kerrsim/units.hpp"

namespace kerrsim {

enum class PulseShape { gaussian, sech, square, custom };

inline const char* to_string(PulseShape s) {
  switch (s) {
    case PulseShape::gaussian: return "gaussian";
    case PulseShape::sech: return "sech";
    case PulseShape::square: return "square";
    case PulseShape::custom: return "custom";
  }
  return "?";
}

// One single-photon wavepacket as normalized complex amplitudes c_n over the
// traveling-wave modes n = -n_max..n_max (M = 2*n_max+1 modes in total).
struct PulseSpectrum {
  int n_max = 0;
  std::vector<std::complex<double>> amplitudes;  // index n + n_max
  PulseShape shape = PulseShape::custom;
  double sigma = 0.0;  // shape length parameter (meaningless for custom)
  double z1 = 0.0;     // center position in [0, 1)

  int modes() const { return 2 * n_max + 1; }

  std::complex<double> amp(int n) const { return amplitudes[static_cast<std::size_t>(n + n_max)]; }
  std::complex<double>& amp(int n) { return amplitudes[static_cast<std::size_t>(n + n_max)]; }

  double norm_sq() const {
    double s = 0.0;
    for (const auto& c : amplitudes) s += std::norm(c);
    return s;
  }

  // Envelope f(z) = sum_n c_n exp(2*pi*i*n*z); the intensity |f(z)|^2
  // integrates to 1 over one period for a normalized spectrum.
  std::complex<double> envelope(double z) const {
    const std::complex<double> rot = std::polar(1.0, 2.0 * std::numbers::pi * z);
    std::complex<double> phase = std::polar(1.0, -2.0 * std::numbers::pi * n_max * z);
    std::complex<double> f = 0.0;
    for (int n = -n_max; n <= n_max; ++n) {
      f += amp(n) * phase;
      phase *= rot;
    }
    return f;
  }

  double intensity(double z) const { return std::norm(envelope(z)); }

  std::vector<double> sample_intensity(std::size_t n_samples) const {
    std::vector<double> out(n_samples);
    for (std::size_t j = 0; j < n_samples; ++j) {
      out[j] = intensity(static_cast<double>(j) / static_cast<double>(n_samples));
    }
    return out;
  }
};

namespace detail {

// Distance to the pulse center reduced to [-1/2, 1/2): the natural
// periodization of an envelope on the unit circle.
inline double wrap_center_distance(double z, double z1) {
  double d = z - z1;
  d -= std::floor(d + 0.5);
  return d;
}

// Amplitude envelope = sqrt of the stated intensity profile.
inline double shape_envelope(PulseShape shape, double d, double sigma) {
  switch (shape) {
    case PulseShape::gaussian:
      return std::exp(-d * d / (2.0 * sigma * sigma));
    case PulseShape::sech:
      return std::sqrt(1.0 / std::cosh(d / sigma));
    case PulseShape::square:
      return std::abs(d) <= 0.5 * sigma ? 1.0 : 0.0;
    case PulseShape::custom:
      break;
  }
  throw ConfigError("shape_envelope: no analytic envelope for custom shape");
}

}  // namespace detail

// Builds a normalized pulse spectrum by quadrature of the amplitude envelope
// against exp(-2*pi*i*n*z) over one period. Rejects spectra that are not
// contained in the available modes: an edge-mode weight above 1e-3 of the
// peak weight means the reconstructed pulse is not localized.
inline PulseSpectrum make_pulse(PulseShape shape, double sigma, double z1, int n_max) {
  if (shape == PulseShape::custom) {
    throw ConfigError("make_pulse: use make_custom_pulse for explicit amplitudes");
  }
  if (!(sigma > 0.0)) throw ConfigError("make_pulse: sigma must be > 0");
  if (!(z1 >= 0.0 && z1 < 1.0)) throw ConfigError("make_pulse: z1 must lie in [0, 1)");
  if (n_max < 1) throw ConfigError("make_pulse: n_max must be >= 1");

  PulseSpectrum p;
  p.n_max = n_max;
  p.shape = shape;
  p.sigma = sigma;
  p.z1 = z1;
  p.amplitudes.assign(static_cast<std::size_t>(2 * n_max + 1), 0.0);

  const std::size_t n_samples = std::max<std::size_t>(4096, 32 * static_cast<std::size_t>(n_max + 1));
  std::vector<double> env(n_samples);
  for (std::size_t j = 0; j < n_samples; ++j) {
    const double z = static_cast<double>(j) / static_cast<double>(n_samples);
    env[j] = detail::shape_envelope(shape, detail::wrap_center_distance(z, z1), sigma);
  }
  for (int n = -n_max; n <= n_max; ++n) {
    std::complex<double> c = 0.0;
    for (std::size_t j = 0; j < n_samples; ++j) {
      const double z = static_cast<double>(j) / static_cast<double>(n_samples);
      c += env[j] * std::polar(1.0, -2.0 * std::numbers::pi * n * z);
    }
    p.amp(n) = c / static_cast<double>(n_samples);
  }

  double total = p.norm_sq();
  if (!(total > 0.0)) throw ConfigError("make_pulse: envelope quadrature produced a null spectrum");
  const double inv = 1.0 / std::sqrt(total);
  for (auto& c : p.amplitudes) c *= inv;

  double peak = 0.0;
  for (const auto& c : p.amplitudes) peak = std::max(peak, std::norm(c));
  const double edge = std::max(std::norm(p.amp(n_max)), std::norm(p.amp(-n_max)));
  if (edge > 1e-3 * peak) {
    throw ConfigError("make_pulse: pulse not spectrally contained (edge-mode weight " +
                      std::to_string(edge / peak) + " of peak); increase n_max or sigma");
  }
  return p;
}

// Wraps explicit amplitudes (odd count, centered on n = 0) into a normalized
// spectrum. No containment check: callers own the mode budget.
inline PulseSpectrum make_custom_pulse(std::vector<std::complex<double>> amplitudes) {
  if (amplitudes.empty() || amplitudes.size() % 2 == 0) {
    throw ConfigError("make_custom_pulse: amplitude count must be odd (modes -n_max..n_max)");
  }
  PulseSpectrum p;
  p.n_max = static_cast<int>(amplitudes.size() / 2);
  p.shape = PulseShape::custom;
  p.amplitudes = std::move(amplitudes);
  const double total = p.norm_sq();
  if (!(total > 0.0)) throw ConfigError("make_custom_pulse: null spectrum");
  const double inv = 1.0 / std::sqrt(total);
  for (auto& c : p.amplitudes) c *= inv;
  return p;
}

// Smallest n_max that both contains the spectrum (edge-mode check above) and
// localizes the pulse, M = 2*n_max+1 >= L/sigma. Fewer modes than L/sigma
// reconstruct a pulse that wraps around the whole quantization volume even
// when the edge-mode test passes.
inline int minimal_containing_n_max(PulseShape shape, double sigma, int n_max_limit = 4096) {
  if (!(sigma > 0.0)) throw ConfigError("minimal_containing_n_max: sigma must be > 0");
  const double min_modes = units::length / sigma;
  int n = std::max(1, static_cast<int>(std::ceil((min_modes - 1.0) / 2.0)));
  for (; n <= n_max_limit; ++n) {
    try {
      (void)make_pulse(shape, sigma, 0.0, n);
      return n;
    } catch (const ConfigError&) {
      continue;
    }
  }
  throw ConfigError("minimal_containing_n_max: no containing mode count below limit");
}

}  // namespace kerrsim
