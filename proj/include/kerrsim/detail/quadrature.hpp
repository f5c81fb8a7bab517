#pragma once

#include <cstddef>
#include <vector>

namespace kerrsim::detail {

// Composite trapezoid over one period of a periodic function sampled at
// z_j = j/n, j = 0..n-1. For periodic integrands the endpoint halves merge,
// so this is the plain mean times the period (and spectrally accurate).
template <typename F>
double periodic_trapezoid(F&& f, std::size_t n) {
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    acc += f(static_cast<double>(j) / static_cast<double>(n));
  }
  return acc / static_cast<double>(n);
}

// Composite trapezoid on [a, b] with n panels.
template <typename F>
double trapezoid(F&& f, double a, double b, std::size_t n) {
  const double h = (b - a) / static_cast<double>(n);
  double acc = 0.5 * (f(a) + f(b));
  for (std::size_t j = 1; j < n; ++j) {
    acc += f(a + h * static_cast<double>(j));
  }
  return acc * h;
}

// Composite Simpson on [a, b] with n panels (n even).
template <typename F>
double simpson(F&& f, double a, double b, std::size_t n) {
  if (n % 2 != 0) ++n;
  const double h = (b - a) / static_cast<double>(n);
  double acc = f(a) + f(b);
  for (std::size_t j = 1; j < n; ++j) {
    acc += (j % 2 == 1 ? 4.0 : 2.0) * f(a + h * static_cast<double>(j));
  }
  return acc * h / 3.0;
}

}  // namespace kerrsim::detail
