#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace kerrsim::detail {

// Classical fixed-step 4th-order Runge-Kutta on a flat complex state vector.
// Rhs has signature rhs(const State& y, double t, State& dydt) and must fill
// dydt completely. The observer is invoked after every step with
// (step_index, t_end_of_step, y). Deterministic: no adaptivity, no reordering.
template <typename Rhs, typename Observer>
void rk4_integrate(std::vector<std::complex<double>>& y, double t0, double t1,
                   int steps, Rhs&& rhs, Observer&& observe) {
  const std::size_t n = y.size();
  const double dt = (t1 - t0) / static_cast<double>(steps);
  std::vector<std::complex<double>> k1(n), k2(n), k3(n), k4(n), tmp(n);

  for (int step = 0; step < steps; ++step) {
    const double t = t0 + dt * static_cast<double>(step);

    rhs(y, t, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + (0.5 * dt) * k1[i];
    rhs(tmp, t + 0.5 * dt, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + (0.5 * dt) * k2[i];
    rhs(tmp, t + 0.5 * dt, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt * k3[i];
    rhs(tmp, t + dt, k4);

    const double w = dt / 6.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] += w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    observe(step, t + dt, y);
  }
}

template <typename Rhs>
void rk4_integrate(std::vector<std::complex<double>>& y, double t0, double t1,
                   int steps, Rhs&& rhs) {
  rk4_integrate(y, t0, t1, steps, rhs,
                [](int, double, const std::vector<std::complex<double>>&) {});
}

}  // namespace kerrsim::detail
