#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "conint/fq/pauli.hpp"
#include "conint/sim/circuit.hpp"
#include "conint/sim/statevector.hpp"

namespace conint::sim {

/// Stochastic depolarizing noise (one Pauli-insertion trajectory per run).
struct NoiseModel {
  double p1 = 0.0;  // after every single-qubit gate
  double p2 = 0.0;  // after every two-qubit gate
  std::uint64_t seed = 0;

  bool enabled() const noexcept { return p1 > 0.0 || p2 > 0.0; }
  void validate() const;
};

void apply_gate(Statevector& s, const Gate& g, double angle);

/// U(params)|state>. With a noise model, a random Pauli follows each gate
/// with the configured probability; p1 = p2 = 0 never touches the RNG.
Statevector apply_circuit(const Statevector& state, const Circuit& circuit,
                          const std::vector<double>& params, const NoiseModel* noise = nullptr);

/// P|in> for every term, summed into out (out = op |in>).
void apply_pauli_operator(const fq::PauliOperator& op, const std::vector<cplx>& in,
                          std::vector<cplx>& out);

/// <s|P|s> for a single string.
cplx pauli_expectation(const Statevector& s, const fq::PauliString& p);

/// Real expectation of a Hermitian operator. Throws InvalidArgument when the
/// imaginary part exceeds 1e-10 (operator not Hermitian).
double expectation_exact(const Statevector& s, const fq::PauliOperator& op);

/// Shot-sampled estimate: each non-identity term is rotated to its Z basis
/// and measured `shots` times. Identity terms are added exactly.
double expectation_sampled(const Statevector& s, const fq::PauliOperator& op, int shots,
                           std::mt19937_64& rng);
double expectation_sampled(const Statevector& s, const fq::PauliOperator& op, int shots,
                           std::uint64_t seed);

/// Analytic gradient dE/dtheta by the two-term shift rule applied to every
/// gate occurrence of each parameter.
std::vector<double> parameter_shift_gradient(const Statevector& initial, const Circuit& circuit,
                                             const std::vector<double>& params,
                                             const fq::PauliOperator& op);

}  // namespace conint::sim
