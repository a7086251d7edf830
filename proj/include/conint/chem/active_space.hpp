#pragma once

#include <Eigen/Core>

#include "conint/chem/integrals.hpp"
#include "conint/chem/scf.hpp"

namespace conint::chem {

/// Electronic Hamiltonian restricted to an active set of spatial orbitals:
///   H = E_core + sum_pq h_pq E_pq + 1/2 sum_pqrs (pq|rs) (E_pq E_rs - delta_qr E_ps)
/// with two-electron integrals in chemists' notation.
struct ActiveSpaceHamiltonian {
  int n_electrons = 0;
  int n_orbitals = 0;
  int ms2 = 0;  // 2 S_z of the target states
  Eigen::MatrixXd h;
  EriTensor eri;
  double e_core = 0.0;

  int n_alpha() const { return (n_electrons + ms2) / 2; }
  int n_beta() const { return (n_electrons - ms2) / 2; }

  /// Checks the shape, symmetry and electron-count invariants; throws InvalidArgument.
  void validate(double tol = 1e-10) const;
};

/// Freezes the lowest (N - n_e)/2 canonical orbitals and keeps the next n_o
/// as active. Frozen-core Coulomb and exchange are folded into h and the
/// frozen-core energy plus nuclear repulsion into e_core.
ActiveSpaceHamiltonian select_active_space(const SCFResult& scf, const IntegralTensors& tensors,
                                           int n_active_electrons, int n_active_orbitals);

/// Full MO-basis Hamiltonian (nothing frozen).
ActiveSpaceHamiltonian full_space_hamiltonian(const SCFResult& scf, const IntegralTensors& tensors);

/// (pq|rs) over the columns of c (MO coefficients), by four quarter transforms.
EriTensor transform_eri(const EriTensor& ao, const Eigen::MatrixXd& c);

}  // namespace conint::chem
