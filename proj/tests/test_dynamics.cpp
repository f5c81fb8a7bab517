#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "kerrsim/analytic.hpp"
#include "kerrsim/dynamics.hpp"
#include "kerrsim/pulse.hpp"
#include "kerrsim/spectral.hpp"

using namespace kerrsim;
using Catch::Approx;

namespace {

TwoPhotonState gaussian_pair(double sigma, int n_max) {
  const auto p = make_pulse(PulseShape::gaussian, sigma, 0.25, n_max);
  return product_state(p, p);
}

}  // namespace

TEST_CASE("kernel closed form") {
  MediumConfig medium = MediumConfig::from_eta(1.0, 0.5, 0.5, 8);

  CHECK(std::abs(kernel(0, 0.37, medium) - std::complex<double>(0.5)) < 1e-15);

  MediumConfig whole = MediumConfig::from_eta(1.0, 0.0, 1.0, 8);
  CHECK(std::abs(kernel(3, 0.21, whole)) < 1e-13);

  // dmu = 1, t = 0, z0 = 1/2, l = 1/2: (e^{2 pi i} - e^{i pi})/(2 pi i) = -i/pi.
  const std::complex<double> expected(0.0, -1.0 / std::numbers::pi);
  CHECK(std::abs(kernel(1, 0.0, medium) - expected) < 1e-14);

  // Time dependence is the pure phase e^{-2 pi i dmu t}.
  const auto k0 = kernel(2, 0.0, medium);
  const auto kt = kernel(2, 0.3, medium);
  CHECK(std::abs(kt - k0 * std::polar(1.0, -2.0 * std::numbers::pi * 2 * 0.3)) < 1e-14);
}

TEST_CASE("eta = 0 evolution is the exact identity") {
  const auto s0 = gaussian_pair(0.078, 8);
  const auto medium = MediumConfig::from_eta(0.0, 0.5, 0.5, 8);
  EvolutionConfig cfg;
  cfg.steps = 1000;
  const auto sT = evolve(s0, medium, cfg);
  for (std::size_t i = 0; i < s0.amplitudes.size(); ++i) {
    CHECK(sT.amplitudes[i] == s0.amplitudes[i]);
  }
}

TEST_CASE("single-mode oracle: c00(T) = exp(-i eta l) c00(0)") {
  TwoPhotonState s0(0);
  s0.amp(0, 0) = 1.0;
  const auto medium = MediumConfig::from_eta(2.0, 0.5, 0.5, 0);
  EvolutionConfig cfg;
  cfg.steps = 2000;

  for (auto method : {EvolutionMethod::full_matrix, EvolutionMethod::reduced_mu}) {
    cfg.method = method;
    const auto sT = evolve(s0, medium, cfg);
    const auto expected = std::polar(1.0, -medium.eta * medium.l);
    CHECK(std::abs(sT.amp(0, 0) - expected) < 1e-10);
  }

  // Matches the closed-form map, which is exact at M = 1 (r = 1, Phi = eta l).
  const auto analytic = analytic_final_state(s0, medium);
  const auto numeric = evolve(s0, medium, cfg);
  CHECK(std::abs(analytic.amp(0, 0) - numeric.amp(0, 0)) < 1e-10);
}

TEST_CASE("full-matrix and reduced-mu representations agree amplitude by amplitude") {
  const auto s0 = gaussian_pair(0.22, 2);
  const auto medium = MediumConfig::from_phi(1.8, 0.5, 0.5, 2);
  EvolutionConfig cfg;
  cfg.steps = 4000;

  cfg.method = EvolutionMethod::full_matrix;
  const auto full = evolve(s0, medium, cfg);
  cfg.method = EvolutionMethod::reduced_mu;
  const auto reduced = evolve(s0, medium, cfg);

  double max_diff = 0.0;
  for (std::size_t i = 0; i < full.amplitudes.size(); ++i) {
    max_diff = std::max(max_diff, std::abs(full.amplitudes[i] - reduced.amplitudes[i]));
  }
  CHECK(max_diff < 1e-6);
}

TEST_CASE("unitarity and exchange symmetry at modest resolution") {
  const auto s0 = gaussian_pair(0.11, 4);
  const auto medium = MediumConfig::from_phi(2.0, 0.5, 0.5, 4);
  EvolutionConfig cfg;
  cfg.steps = 8000;
  const auto sT = evolve(s0, medium, cfg);

  CHECK(std::abs(sT.norm() - 1.0) < 1e-8);
  for (int n = -4; n <= 4; ++n) {
    for (int m = n + 1; m <= 4; ++m) {
      CHECK(std::abs(sT.amp(n, m) - sT.amp(m, n)) < 1e-10);
    }
  }
}

TEST_CASE("doubling steps moves the gate figures by less than 1e-6") {
  const auto s0 = gaussian_pair(0.11, 4);
  const auto medium = MediumConfig::from_phi(2.5, 0.5, 0.5, 4);
  EvolutionConfig coarse{.steps = 20000};
  EvolutionConfig fine{.steps = 40000};
  const auto g1 = numeric_gate(s0, medium, coarse);
  const auto g2 = numeric_gate(s0, medium, fine);
  CHECK(std::abs(g1.fidelity_F0 - g2.fidelity_F0) < 1e-6);
  CHECK(std::abs(g1.phase_phi - g2.phase_phi) < 1e-6);
}

TEST_CASE("numeric gate approaches the closed form as the pulse broadens") {
  // Same 27-mode grid, two widths: the broader pulse (smaller r) sits deeper
  // inside the medium bandwidth, so the delta-kernel closed form fits better.
  EvolutionConfig cfg{.steps = 8000};
  const auto medium = MediumConfig::from_phi(2.0, 0.5, 0.5, 13);

  double deviation[2];
  int i = 0;
  for (double sigma : {0.30, 0.12}) {
    const auto p = make_pulse(PulseShape::gaussian, sigma, 0.25, 13);
    const auto g_num = numeric_gate(product_state(p, p), medium, cfg);
    const auto g_ana = fidelity_phase(2.0, spectral_report(p).r);
    deviation[i++] = std::abs(g_num.fidelity_F0 - g_ana.fidelity_F0);
    CHECK(g_num.phase_phi >= g_ana.phase_phi - 0.05);
  }
  CHECK(deviation[0] < 0.01);    // r = 0.049
  CHECK(deviation[0] < deviation[1]);
}

TEST_CASE("norm drift aborts with a step-size diagnostic") {
  const auto s0 = gaussian_pair(0.078, 8);
  const auto medium = MediumConfig::from_eta(200.0, 0.5, 0.5, 8);
  EvolutionConfig cfg;
  cfg.steps = 1000;
  CHECK_THROWS_AS(evolve(s0, medium, cfg), NumericalGuardError);
}

TEST_CASE("evolution preconditions") {
  const auto s0 = gaussian_pair(0.078, 8);
  const auto medium = MediumConfig::from_phi(1.0, 0.5, 0.5, 8);

  EvolutionConfig too_few{.steps = 500};
  CHECK_THROWS_AS(evolve(s0, medium, too_few), ConfigError);

  TwoPhotonState unnormalized(8);
  unnormalized.amp(0, 0) = 0.5;
  CHECK_THROWS_AS(evolve(unnormalized, medium, EvolutionConfig{}), ConfigError);

  const auto mismatched = MediumConfig::from_phi(1.0, 0.5, 0.5, 4);
  CHECK_THROWS_AS(evolve(s0, mismatched, EvolutionConfig{}), ConfigError);
}

TEST_CASE("overlap_with basics") {
  const auto s0 = gaussian_pair(0.078, 8);
  CHECK(std::abs(overlap_with(s0, s0) - std::complex<double>(1.0)) < 1e-12);

  TwoPhotonState a(1), b(1);
  a.amp(0, 0) = 1.0;
  b.amp(1, -1) = 1.0;
  CHECK(std::abs(overlap_with(a, b)) < 1e-15);

  TwoPhotonState other(2);
  other.amp(0, 0) = 1.0;
  CHECK_THROWS_AS(overlap_with(a, other), ConfigError);
}

TEST_CASE("scheduling independence: sequential runs are bit-reproducible") {
  const auto s0 = gaussian_pair(0.11, 4);
  const auto medium = MediumConfig::from_phi(1.1, 0.5, 0.5, 4);
  EvolutionConfig cfg{.steps = 2000};
  const auto a = evolve(s0, medium, cfg);
  const auto b = evolve(s0, medium, cfg);
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
    CHECK(a.amplitudes[i] == b.amplitudes[i]);
  }
}
