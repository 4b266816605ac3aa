#pragma once

namespace cfs {

// CODATA 2018, SI units throughout the library: frequencies in rad/s,
// lengths in m, pressures in N/m^2, energies per unit area in J/m^2.
struct PhysicalConstants {
    double hbar;  // reduced Planck constant, J s
    double c;     // speed of light, m/s
};

inline constexpr PhysicalConstants codata2018{1.054571817e-34, 299792458.0};

inline constexpr double hbar = codata2018.hbar;
inline constexpr double c_light = codata2018.c;

}  // namespace cfs
