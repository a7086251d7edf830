#pragma once

#include <Eigen/Core>
#include <optional>

#include "conint/chem/integrals.hpp"

namespace conint::chem {

struct SCFOptions {
  int max_iterations = 200;
  double density_tol = 1e-8;  // max |D_new - D_old|
  double energy_tol = 1e-10;
  int damping_iterations = 5;
  double damping = 0.5;  // weight of the previous density while damping
  /// After the fixed-damping start, a rise in energy (oscillation) switches
  /// the solver to Pulay/DIIS extrapolation of the Fock matrix. Stretched
  /// geometries with a near-degenerate HOMO/LUMO need it.
  bool diis_fallback = true;
  int diis_space = 8;
  /// Starting density (AO basis, closed-shell convention D = 2 C_occ C_occ^T).
  /// When absent the core Hamiltonian guess is used.
  std::optional<Eigen::MatrixXd> initial_density;
};

struct SCFResult {
  Eigen::MatrixXd coefficients;  // n_ao x n_mo, columns are MOs
  Eigen::VectorXd orbital_energies;
  Eigen::MatrixXd density;
  Eigen::MatrixXd fock;
  double energy = 0.0;  // total, including nuclear repulsion
  int n_electrons = 0;
  bool converged = false;
  int iterations = 0;
};

/// Closed-shell restricted Hartree-Fock with symmetric (Loewdin)
/// orthogonalisation. Throws ConvergenceError if the iteration budget runs out.
SCFResult run_rhf(const IntegralTensors& tensors, int n_electrons, const SCFOptions& options = {});

/// Coulomb and exchange matrices J_mn = sum D_ls (mn|ls), K_mn = sum D_ls (ml|ns).
void coulomb_exchange(const EriTensor& eri, const Eigen::MatrixXd& density, Eigen::MatrixXd& j,
                      Eigen::MatrixXd& k);

}  // namespace conint::chem
