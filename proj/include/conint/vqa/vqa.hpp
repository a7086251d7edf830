#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conint/chem/active_space.hpp"
#include "conint/fq/mapping.hpp"
#include "conint/fq/pauli.hpp"
#include "conint/opt/optimizer.hpp"
#include "conint/sim/circuit.hpp"
#include "conint/sim/eigensolver.hpp"
#include "conint/sim/simulator.hpp"
#include "conint/sim/statevector.hpp"

namespace conint::vqa {

enum class OptimizerKind { SPSA, COBYLA, NelderMead };

std::string to_string(OptimizerKind kind);
OptimizerKind parse_optimizer(const std::string& text);

/// Exact statevector expectations, or shot-sampled ones with a seeded stream.
struct Measurement {
  bool sampled = false;
  int shots = 2000;
  std::uint64_t seed = 1;
};

struct VQEProblem {
  fq::PauliOperator hamiltonian;
  sim::Circuit reference;  // prepares the initial state from |0...0>
  sim::Circuit ansatz;
  std::vector<double> initial_parameters;  // empty: all zeros

  OptimizerKind optimizer = OptimizerKind::SPSA;
  opt::SPSAConfig spsa;
  opt::COBYLAConfig cobyla;
  opt::NelderMeadConfig nelder_mead;

  Measurement measurement;
  std::optional<sim::NoiseModel> noise;

  /// Independent optimizer runs per state; the lowest final objective wins.
  /// Run r > 0 perturbs the start by U(-restart_spread, restart_spread) and
  /// reseeds the stochastic optimizer.
  int restarts = 1;
  double restart_spread = 0.1;
  std::uint64_t restart_seed = 97;

  int n_qubits() const { return ansatz.n_qubits(); }
  /// InvalidArgument / DimensionMismatch on inconsistent registers or sizes.
  void validate() const;
};

/// Noiseless |psi(theta)> = U(theta) R |0>.
sim::Statevector prepare_state(const VQEProblem& problem, const std::vector<double>& params);

struct VQEResult {
  double energy = 0.0;            // optimizer's best objective value
  double noiseless_energy = 0.0;  // exact <H> at the returned parameters
  std::vector<double> parameters;
  opt::OptResult optimization;
  sim::Statevector state;         // noiseless state at the returned parameters
};

VQEResult run_vqe(const VQEProblem& problem);

struct DeflationConfig {
  int k = 2;
  std::vector<double> betas;  // k - 1 penalty weights

  /// Constant weight for every lower state.
  static DeflationConfig uniform(int k, double beta);
  void validate() const;
};

struct ConstraintConfig {
  int k = 2;
  double threshold = 1e-4;       // |<psi|psi_i>|^2 <= threshold
  double perturbation = 0.1;     // start = lower-state parameters + U(-p, p)
  int max_retries = 3;
  std::uint64_t seed = 11;
  void validate() const;
};

struct StateRecord {
  double energy = 0.0;
  double noiseless_energy = 0.0;
  std::vector<double> parameters;
  std::vector<double> overlaps;  // |<psi_k|psi_i>|^2 for every i < k
  bool feasible = true;
  int attempts = 1;
  opt::OptResult optimization;
  sim::Statevector state;
};

struct SpectrumResult {
  std::string method;
  std::vector<StateRecord> states;  // in computation order
  std::map<std::string, std::string> metadata;

  std::vector<double> energies() const;
  /// True when every state is flagged feasible.
  bool all_feasible() const;
};

/// Deflation: state k minimises <H> + sum_i beta_i |<psi|psi_i>|^2. Every
/// state starts from problem.initial_parameters unless `starts` provides a
/// per-state vector.
SpectrumResult run_vqd(const VQEProblem& problem, const DeflationConfig& config,
                       const std::vector<std::vector<double>>& starts = {});

/// Constrained search: state 0 by the problem's optimizer; each further
/// state minimises the bare energy with COBYLA under
///   threshold - |<psi|psi_i>|^2 >= 0 for all lower states i.
/// Starts from the previous state's parameters (or `starts`) plus seeded
/// noise; retried when COBYLA ends infeasible, and flagged if it never succeeds.
SpectrumResult run_vqe_ac(const VQEProblem& problem, const ConstraintConfig& config,
                          const std::vector<std::vector<double>>& starts = {});

/// Structured text: one `state` record per line block.
void write_spectrum(const SpectrumResult& result, std::ostream& out);
void write_spectrum(const SpectrumResult& result, const std::string& path);

/// Mapped electron-number operators for the alpha and beta halves, fixed at
/// the Hamiltonian's n_alpha and n_beta.
std::vector<sim::SectorConstraint> particle_sector(int n_orbitals, int n_alpha, int n_beta,
                                                   fq::MappingKind mapping);

fq::PauliOperator qubit_hamiltonian(const chem::ActiveSpaceHamiltonian& h,
                                    fq::MappingKind mapping);

/// k lowest energies in the (n_alpha, n_beta) sector, E_core included.
std::vector<double> exact_spectrum(const chem::ActiveSpaceHamiltonian& h, int k,
                                   fq::MappingKind mapping = fq::MappingKind::ParityReduced,
                                   const sim::EigenOptions& options = {});

/// Same for an already mapped operator; an empty sector means the full register.
std::vector<double> exact_spectrum(const fq::PauliOperator& h, int k,
                                   const std::vector<sim::SectorConstraint>& sector = {},
                                   const sim::EigenOptions& options = {});

struct SACASCIResult {
  std::vector<double> energies;
  double averaged_energy = 0.0;
  std::size_t n_determinants = 0;
};

/// Determinant-basis CI limit for sa_casci.
inline constexpr std::size_t kMaxDeterminants = 1'000'000;

/// State-averaged CASCI in fixed orbitals: Slater-Condon CI in the
/// (n_alpha, n_beta) determinant space, k lowest roots and sum_i w_i E_i.
SACASCIResult sa_casci(const chem::ActiveSpaceHamiltonian& h, const std::vector<double>& weights,
                       int k);

}  // namespace conint::vqa
