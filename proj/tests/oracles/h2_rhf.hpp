#pragma once

#include "conint/chem/integrals.hpp"

namespace oracle {

// Minimal-basis H2: the occupied orbital is fixed by symmetry to
// (phi_1 + phi_2) / sqrt(2 (1 + S)), so the RHF energy is closed form.
inline double h2_symmetric_rhf(const conint::chem::IntegralTensors& t) {
  const double s = t.overlap(0, 1);
  const auto h = t.core_hamiltonian();
  const double hgg = (h(0, 0) + h(0, 1)) / (1.0 + s);
  const auto& e = t.eri;
  const double jgg = (2.0 * e(0, 0, 0, 0) + 2.0 * e(0, 0, 1, 1) + 4.0 * e(0, 1, 0, 1) + 8.0 * e(0, 0, 0, 1)) /
                     (4.0 * (1.0 + s) * (1.0 + s));
  return 2.0 * hgg + jgg + t.nuclear_repulsion;
}

}  // namespace oracle
