#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "conint/fq/mapping.hpp"
#include "conint/sim/circuit.hpp"
#include "conint/sim/statevector.hpp"

namespace conint::ansatz {

enum class AnsatzKind { EfficientSU2, UCCSD };
enum class Entanglement { Linear, Full };

std::string to_string(AnsatzKind kind);
AnsatzKind parse_ansatz(const std::string& text);
Entanglement parse_entanglement(const std::string& text);

struct AnsatzSpec {
  AnsatzKind kind = AnsatzKind::EfficientSU2;
  int reps = 2;
  Entanglement entanglement = Entanglement::Linear;
  fq::MappingKind mapping = fq::MappingKind::ParityReduced;
  int n_orbitals = 0;
  int n_alpha = 0;
  int n_beta = 0;

  void validate() const;
  int n_qubits() const { return fq::mapped_qubits(2 * n_orbitals, mapping); }
};

/// Occupation bit mask of the closed-shell reference: alpha modes
/// 0..n_alpha-1 and beta modes n_orbitals..n_orbitals+n_beta-1.
std::uint64_t hf_occupation(int n_orbitals, int n_alpha, int n_beta);

/// The reference determinant as a computational basis state of the mapped register.
sim::Statevector hf_reference_state(fq::MappingKind mapping, int n_alpha, int n_beta,
                                    int n_orbitals);

/// X gates preparing the reference from |0...0>.
sim::Circuit hf_reference_circuit(fq::MappingKind mapping, int n_alpha, int n_beta,
                                  int n_orbitals);

/// Hardware-efficient ansatz: `reps` blocks of [RY layer, RZ layer, CX
/// entangler] followed by a final RY and RZ layer; 2 n (reps + 1) parameters.
sim::Circuit build_efficient_su2(int n_qubits, int reps = 2,
                                 Entanglement entanglement = Entanglement::Linear);

/// An excitation from occupied spin orbitals to virtual ones.
struct Excitation {
  std::vector<int> from;  // annihilated modes, ascending
  std::vector<int> to;    // created modes, ascending

  auto operator<=>(const Excitation&) const = default;
  std::string label() const;
};

/// Spin-conserving singles, then doubles (alpha-alpha, beta-beta and
/// alpha-beta), each group in lexicographic order.
std::vector<Excitation> uccsd_excitations(int n_orbitals, int n_alpha, int n_beta);

/// First-order Trotterised exp(sum_k theta_k (T_k - T_k^dagger)): every
/// excitation generator is mapped, and because its Pauli strings commute the
/// exponential factorises exactly into Pauli-exponential ladders. The circuit
/// acts on the mapped register and expects the reference state as input.
sim::Circuit build_uccsd(int n_orbitals, int n_alpha, int n_beta, fq::MappingKind mapping);

sim::Circuit build_ansatz(const AnsatzSpec& spec);

/// Default starting point: uniform in [-0.1, 0.1] (seeded) for the
/// efficient-SU2 form, zeros (the reference state) for UCCSD.
std::vector<double> initial_parameters(const AnsatzSpec& spec, int n_parameters,
                                       std::uint64_t seed);

}  // namespace conint::ansatz
