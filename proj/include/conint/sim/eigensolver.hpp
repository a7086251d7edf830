#pragma once

#include <cstdint>
#include <vector>

#include "conint/fq/pauli.hpp"
#include "conint/sim/lanczos.hpp"
#include "conint/sim/statevector.hpp"

namespace conint::sim {

/// Restricts diagonalisation to basis states where the diagonal operator
/// `op` takes the value `value` (for example a mapped particle number).
struct SectorConstraint {
  fq::PauliOperator op;
  double value = 0.0;
};

/// Computational-basis indices satisfying every constraint. Each constraint
/// operator must be diagonal (Z strings only); StructuralError otherwise.
std::vector<std::uint64_t> sector_basis(int n_qubits, const std::vector<SectorConstraint>& sector);

struct EigenOptions {
  LanczosOptions lanczos;
  /// Below this many qubits the result is also checked against dense
  /// diagonalisation of the same (sector) matrix.
  int dense_check_qubits = 10;
  double dense_check_tol = 1e-8;
  bool want_vectors = false;
};

struct EigenResult {
  std::vector<double> values;
  std::vector<Statevector> vectors;  // full-register states, if requested
  std::size_t sector_dim = 0;
};

/// k lowest eigenvalues of a Hermitian Pauli operator, optionally within a
/// sector. Uses Lanczos on a sparse sector matrix (or the matrix-free full
/// operator when no sector is given).
EigenResult lowest_eigenpairs(const fq::PauliOperator& op, int k,
                              const std::vector<SectorConstraint>& sector = {},
                              const EigenOptions& options = {});

std::vector<double> lowest_eigenvalues(const fq::PauliOperator& op, int k,
                                       const std::vector<SectorConstraint>& sector = {},
                                       const EigenOptions& options = {});

}  // namespace conint::sim
