#pragma once

#include <numbers>

namespace nanoeit {

/// SI values of the physical constants that enter the model. Kept as a
/// value type so a caller can work in any consistent unit system.
struct PhysicalConstants {
    double vacuum_permeability = 4.0 * std::numbers::pi * 1.0e-7;  // T·m/A
    double bohr_magneton = 9.27401e-24;                             // J/T
    double hbar = 1.054572e-34;                                     // J·s
};

inline constexpr double kDefaultGFactor = 2.0;
inline constexpr double kDefaultOmegaScale = 1.0e6;  // rad/s

}  // namespace nanoeit
