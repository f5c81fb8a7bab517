#pragma once

#include <numbers>

namespace kerrsim::units {

// Simulation units: quantization length L = 1 and speed of light c = 1.
// Everything else follows: the round-trip (quantization) time T = L/c = 1
// and the fundamental mode spacing omega = 2*pi*c/L = 2*pi. All quantities
// in the library are dimensionless in these units.
inline constexpr double length = 1.0;
inline constexpr double speed_of_light = 1.0;
inline constexpr double period = length / speed_of_light;
inline constexpr double mode_spacing = 2.0 * std::numbers::pi * speed_of_light / length;

// Bandwidth spanned by M modes spaced by the fundamental.
inline constexpr double medium_bandwidth(int modes) {
  return mode_spacing * static_cast<double>(modes);
}

}  // namespace kerrsim::units
