#pragma once

#include <numbers>

namespace isac {

/// Boltzmann constant, J/K (exact SI value).
inline constexpr double kBoltzmann = 1.380649e-23;

/// Speed of light in vacuum, m/s (exact SI value).
inline constexpr double kSpeedOfLight = 299792458.0;

/// Normalized mean-square bandwidth factor of a flat spectrum, (2*pi)^2 / 12.
inline constexpr double kFlatSpectrumGammaSq =
    (2.0 * std::numbers::pi) * (2.0 * std::numbers::pi) / 12.0;

}  // namespace isac
