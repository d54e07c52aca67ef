// constants.hpp — CODATA values used by the SI <-> natural unit conversion

#pragma once

namespace dk::constants {

inline constexpr double epsilon0 = 8.8541878128e-12;   // F/m
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double c_light = 2.99792458e8;        // m/s
inline constexpr double bohr_radius = 5.29177210903e-11; // m
inline constexpr double elementary_charge = 1.602176634e-19; // C

}  // namespace dk::constants
