#pragma once

#include <numbers>

namespace conint {

/// Internal lengths are Bohr and energies Hartree. Public builders take Angstrom.
inline constexpr double kBohrPerAngstrom = 1.8897259886;

/// Chemical accuracy, 1 kcal/mol expressed in Hartree (rounded).
inline constexpr double kChemicalAccuracy = 1.6e-3;

inline constexpr double angstrom_to_bohr(double angstrom) {
  return angstrom * kBohrPerAngstrom;
}
inline constexpr double bohr_to_angstrom(double bohr) {
  return bohr / kBohrPerAngstrom;
}
inline constexpr double deg_to_rad(double deg) {
  return deg * std::numbers::pi / 180.0;
}

}  // namespace conint
