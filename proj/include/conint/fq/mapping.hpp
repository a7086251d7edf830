#pragma once

#include <string>

#include "conint/fq/fermion.hpp"
#include "conint/fq/pauli.hpp"

namespace conint::fq {

enum class MappingKind { JordanWigner, Parity, ParityReduced };

std::string to_string(MappingKind kind);
MappingKind parse_mapping(const std::string& text);

struct MappingScheme {
  MappingKind kind = MappingKind::ParityReduced;
  /// Particle counts per spin; needed only by the parity-reduced mapping.
  int n_alpha = -1;
  int n_beta = -1;

  void validate() const;
};

/// a_j -> Z_0 ... Z_{j-1} (X_j + iY_j)/2.
PauliOperator map_jordan_wigner(const FermionOperator& f);

/// Qubit j holds the occupation parity of modes 0..j:
///   a_j -> 1/2 (Z_{j-1} X_j + i Y_j) X_{j+1} ... X_{n-1}, with Z_{-1} = I.
PauliOperator map_parity(const FermionOperator& f);

/// Removes qubit n/2 - 1 (alpha-block parity) and qubit n - 1 (total parity)
/// of a parity-mapped operator, replacing their Z factors by the eigenvalues
/// (-1)^{n_alpha} and (-1)^{n_alpha + n_beta}. Throws StructuralError when a
/// tapered qubit carries X or Y.
PauliOperator taper_two_qubits(const PauliOperator& p, int n_alpha, int n_beta);

/// Applies the mapping (and tapering for the reduced scheme).
PauliOperator map_operator(const FermionOperator& f, const MappingScheme& scheme);

/// Number of qubits the scheme produces for `n_modes` spin orbitals.
int mapped_qubits(int n_modes, MappingKind kind);

/// Computational-basis index of a Fock state (bit j = occupation of mode j)
/// under the scheme. For the reduced scheme the tapered bits are removed.
std::uint64_t encode_occupation(std::uint64_t occupation, int n_modes, MappingKind kind);

/// Inverse of encode_occupation for the reduced scheme needs the particle
/// counts; this version covers all three schemes.
std::uint64_t decode_occupation(std::uint64_t index, int n_modes, const MappingScheme& scheme);

}  // namespace conint::fq
