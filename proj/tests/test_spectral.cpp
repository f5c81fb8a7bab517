#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "kerrsim/detail/quadrature.hpp"
#include "kerrsim/pulse.hpp"
#include "kerrsim/spectral.hpp"

using namespace kerrsim;
using Catch::Approx;

TEST_CASE("uniform three-mode spectrum: pair sums enumerated by hand") {
  // c = (1,1,1)/sqrt(3): v_mu = (1,2,3,2,1)/3, sum |v|^2 = 19/9, r = 19/27.
  const auto p = make_custom_pulse({1.0, 1.0, 1.0});
  const auto v = pair_mode_sums(p, p);
  REQUIRE(v.size() == 5);
  const double third = 1.0 / 3.0;
  CHECK(std::abs(v[0] - std::complex<double>(third)) < 1e-14);
  CHECK(std::abs(v[1] - std::complex<double>(2 * third)) < 1e-14);
  CHECK(std::abs(v[2] - std::complex<double>(1.0)) < 1e-14);
  CHECK(std::abs(v[3] - std::complex<double>(2 * third)) < 1e-14);
  CHECK(std::abs(v[4] - std::complex<double>(third)) < 1e-14);

  const auto rep = spectral_report(p);
  CHECK(rep.v_mu_sq_sum == Approx(19.0 / 9.0).margin(1e-13));
  CHECK(rep.r == Approx(19.0 / 27.0).margin(1e-13));
}

TEST_CASE("single occupied mode in three modes gives r = 1/3") {
  const auto p = make_custom_pulse({0.0, 1.0, 0.0});
  CHECK(spectral_report(p).r == Approx(1.0 / 3.0).margin(1e-14));
}

TEST_CASE("gaussian r matches the closed form 1/(sigma sqrt(2 pi) M)") {
  const double closed_059 = 1.0 / (0.059 * std::sqrt(2.0 * std::numbers::pi) * 17.0);
  const auto p059 = make_pulse(PulseShape::gaussian, 0.059, 0.25, 8);
  CHECK(spectral_report(p059).r == Approx(closed_059).margin(0.01));
  CHECK(closed_059 == Approx(0.398).margin(5e-4));

  const double closed_078 = 1.0 / (0.078 * std::sqrt(2.0 * std::numbers::pi) * 17.0);
  const auto p078 = make_pulse(PulseShape::gaussian, 0.078, 0.25, 8);
  CHECK(spectral_report(p078).r == Approx(closed_078).margin(0.01));
}

TEST_CASE("r_from_intensity: gaussian and sech closed forms") {
  const std::size_t n = 1 << 14;
  std::vector<double> gauss(n), sech(n);
  const double sg = 0.059, ss = 0.05, z1 = 0.5;
  for (std::size_t j = 0; j < n; ++j) {
    const double z = static_cast<double>(j) / static_cast<double>(n);
    const double d = detail::wrap_center_distance(z, z1);
    gauss[j] = std::exp(-d * d / (sg * sg));
    sech[j] = 1.0 / std::cosh(d / ss);
  }
  CHECK(r_from_intensity(gauss, 17) ==
        Approx(1.0 / (sg * std::sqrt(2.0 * std::numbers::pi) * 17.0)).epsilon(1e-3));
  CHECK(r_from_intensity(sech, 17) ==
        Approx(2.0 / (std::numbers::pi * std::numbers::pi * ss * 17.0)).epsilon(1e-3));
  CHECK(r_from_intensity(sech, 17) == Approx(0.238).margin(5e-4));
}

TEST_CASE("constant intensity gives r = 1/M for any M") {
  const std::vector<double> flat(2048, 0.7);
  CHECK(r_from_intensity(flat, 17) == Approx(1.0 / 17.0).margin(1e-14));
  CHECK(r_from_intensity(flat, 5) == Approx(1.0 / 5.0).margin(1e-14));
}

TEST_CASE("r_from_intensity input validation") {
  std::vector<double> too_few(512, 1.0);
  CHECK_THROWS_AS(r_from_intensity(too_few, 17), ConfigError);
  std::vector<double> zero(2048, 0.0);
  CHECK_THROWS_AS(r_from_intensity(zero, 17), ConfigError);
  std::vector<double> negative(2048, 1.0);
  negative[7] = -0.5;
  CHECK_THROWS_AS(r_from_intensity(negative, 17), ConfigError);
}

TEST_CASE("spectral and intensity routes to r agree") {
  for (double sigma : {0.059, 0.078, 0.1}) {
    const auto p = make_pulse(PulseShape::gaussian, sigma, 0.25, 8);
    const double r_spec = spectral_report(p).r;
    // Same discrete pulse, its own reconstructed intensity: near-exact match.
    const double r_int = r_from_intensity(p.sample_intensity(4096), p.modes());
    CHECK(r_int == Approx(r_spec).epsilon(1e-9));
    // Against the analytic continuum profile: within the 2% consistency band.
    std::vector<double> analytic(4096);
    for (std::size_t j = 0; j < analytic.size(); ++j) {
      const double z = static_cast<double>(j) / static_cast<double>(analytic.size());
      const double d = detail::wrap_center_distance(z, 0.25);
      analytic[j] = std::exp(-d * d / (sigma * sigma));
    }
    CHECK(r_from_intensity(analytic, p.modes()) == Approx(r_spec).epsilon(0.02));
  }
}

TEST_CASE("bandwidth measures: std dev within effective support") {
  const auto p = make_pulse(PulseShape::gaussian, 0.059, 0.25, 8);
  const auto rep = spectral_report(p);
  // delta_omega_std for intensity ~ exp(-d^2/sigma^2) is c/(sigma sqrt 2).
  CHECK(rep.delta_omega_std == Approx(1.0 / (0.059 * std::sqrt(2.0))).epsilon(1e-3));
  CHECK(rep.delta_omega_std <= rep.delta_omega_support);
  CHECK(rep.bound_ratio > rep.r);  // the r bound, satisfied with margin
}

TEST_CASE("interaction energy vanishes iff the pulses are outside the medium") {
  MediumConfig medium;
  medium.z0 = 0.5;
  medium.l = 0.25;
  medium.eta = 1.0;
  medium.n_max = 40;

  const auto outside = make_pulse(PulseShape::gaussian, 0.05, 0.15, 40);
  CHECK(std::abs(interaction_energy(outside, outside, medium)) <= 1e-10);

  const auto inside = make_pulse(PulseShape::gaussian, 0.03, 0.625, 40);
  CHECK(interaction_energy(inside, inside, medium) > 1.0);
}

TEST_CASE("interaction energy: half-overlap against an independent quadrature") {
  MediumConfig medium;
  medium.z0 = 0.5;
  medium.l = 0.5;
  medium.eta = 0.8;
  medium.n_max = 8;
  const auto pa = make_pulse(PulseShape::gaussian, 0.059, 0.5, 8);
  const auto pb = make_pulse(PulseShape::gaussian, 0.078, 0.55, 8);

  // Simpson oracle at twice the resolution of the implementation.
  const std::size_t n = 1 << 16;
  const double h = medium.l / static_cast<double>(n);
  double simpson = pa.intensity(medium.z0) * pb.intensity(medium.z0) +
                   pa.intensity(medium.z0 + medium.l) * pb.intensity(medium.z0 + medium.l);
  for (std::size_t j = 1; j < n; ++j) {
    const double z = medium.z0 + h * static_cast<double>(j);
    simpson += (j % 2 == 1 ? 4.0 : 2.0) * pa.intensity(z) * pb.intensity(z);
  }
  simpson *= medium.eta * h / 3.0;

  CHECK(interaction_energy(pa, pb, medium) == Approx(simpson).epsilon(1e-8));
}
