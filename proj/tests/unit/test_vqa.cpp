#include <doctest.h>

#include <sstream>

#include "conint/ansatz/ansatz.hpp"
#include "conint/chem/fcidump.hpp"
#include "conint/error.hpp"
#include "conint/scan/scan.hpp"
#include "conint/vqa/vqa.hpp"

using namespace conint;
using namespace conint::vqa;
using fq::MappingKind;
using fq::PauliOperator;

namespace {

// One qubit, H = Z, ansatz RY(t) RZ(u).
VQEProblem z_problem() {
  VQEProblem p;
  p.hamiltonian = PauliOperator::from_string("Z");
  p.reference = sim::Circuit(1);
  sim::Circuit c(1);
  c.ry(0, c.add_parameter("t"));
  c.rz(0, c.add_parameter("u"));
  p.ansatz = c;
  p.initial_parameters = {0.3, 0.1};
  p.optimizer = OptimizerKind::COBYLA;
  p.cobyla.rhoend = 1e-7;
  return p;
}

// diag(0, 1, 2, 3) on two qubits.
VQEProblem ladder_problem() {
  VQEProblem p;
  p.hamiltonian = PauliOperator::identity(2, 1.5) + PauliOperator::from_string("ZI", -0.5) +
                  PauliOperator::from_string("IZ", -1.0);
  p.reference = sim::Circuit(2);
  p.ansatz = ansatz::build_efficient_su2(2, 2);
  p.initial_parameters.assign(static_cast<std::size_t>(p.ansatz.n_parameters()), 0.2);
  p.optimizer = OptimizerKind::COBYLA;
  p.cobyla.rhoend = 1e-7;
  p.cobyla.max_evaluations = 4000;
  return p;
}

chem::ActiveSpaceHamiltonian h2() {
  return chem::read_fcidump(std::string(CONINT_TEST_DATA) + "/h2_sto3g.fcidump");
}

VQEProblem uccsd_problem(const chem::ActiveSpaceHamiltonian& h, MappingKind kind) {
  VQEProblem p;
  p.hamiltonian = qubit_hamiltonian(h, kind);
  p.reference = ansatz::hf_reference_circuit(kind, h.n_alpha(), h.n_beta(), h.n_orbitals);
  p.ansatz = ansatz::build_uccsd(h.n_orbitals, h.n_alpha(), h.n_beta(), kind);
  p.optimizer = OptimizerKind::COBYLA;
  p.cobyla.rhoend = 1e-7;
  return p;
}

}  // namespace

TEST_CASE("VQE, VQD and VQE-AC on H = Z") {
  const auto p = z_problem();
  const auto g = run_vqe(p);
  CHECK(g.energy == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(g.noiseless_energy == doctest::Approx(-1.0).epsilon(1e-9));

  const auto d = run_vqd(p, DeflationConfig::uniform(2, 3.0));
  REQUIRE(d.states.size() == 2);
  CHECK(d.states[0].noiseless_energy == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(d.states[1].noiseless_energy == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(d.states[1].overlaps[0] < 1e-6);

  ConstraintConfig cc;
  cc.k = 2;
  const auto a = run_vqe_ac(p, cc);
  REQUIRE(a.states.size() == 2);
  CHECK(a.all_feasible());
  CHECK(a.states[1].overlaps[0] <= cc.threshold);
  // |<psi|1>|^2 <= 1e-4 forces <Z> >= 1 - 2e-4, up to the ground state's own error
  CHECK(a.states[1].noiseless_energy >= 1.0 - 2e-4 - 1e-8);
  CHECK(a.states[1].noiseless_energy == doctest::Approx(1.0 - 2e-4).epsilon(1e-6));
}

TEST_CASE("UCCSD VQE reaches full CI for H2") {
  const auto h = h2();
  for (auto kind : {MappingKind::JordanWigner, MappingKind::ParityReduced}) {
    const auto r = run_vqe(uccsd_problem(h, kind));
    CHECK(std::abs(r.noiseless_energy - (-1.137275943617)) < 1e-6);
    CHECK(r.noiseless_energy >= exact_spectrum(h, 1, kind)[0] - 1e-9);
  }
}

TEST_CASE("deflation orders the ladder spectrum") {
  const auto p = ladder_problem();
  const auto r = run_vqd(p, DeflationConfig::uniform(3, 5.0));
  const auto e = r.energies();
  REQUIRE(e.size() == 3);
  CHECK(e[0] <= e[1]);
  CHECK(e[1] <= e[2]);
  CHECK(std::abs(e[0] - 0.0) < 1e-5);
  CHECK(std::abs(e[1] - 1.0) < 1e-3);
  CHECK(std::abs(e[2] - 2.0) < 1e-3);
}

TEST_CASE("variational bound in exact mode") {
  const auto s = [] {
    scan::ScanSpec sp;
    sp.molecule = scan::Molecule::H2OScaled;
    return sp;
  }();
  const auto h = scan::point_hamiltonian(s, 1.0);
  VQEProblem p;
  p.hamiltonian = qubit_hamiltonian(h, MappingKind::ParityReduced);
  p.reference = ansatz::hf_reference_circuit(MappingKind::ParityReduced, 2, 2, 3);
  p.ansatz = ansatz::build_efficient_su2(4, 2);
  p.optimizer = OptimizerKind::COBYLA;
  p.cobyla.max_evaluations = 300;
  const double e0 = exact_spectrum(h, 1)[0];
  CHECK(run_vqe(p).noiseless_energy >= e0 - 1e-9);
  CHECK(run_vqd(p, DeflationConfig::uniform(2, 0.5)).states[0].noiseless_energy >= e0 - 1e-9);
  ConstraintConfig cc;
  CHECK(run_vqe_ac(p, cc).states[0].noiseless_energy >= e0 - 1e-9);
}

TEST_CASE("impossible orthogonality is flagged, not hidden") {
  auto p = z_problem();
  ConstraintConfig cc;
  cc.k = 3;  // a third state orthogonal to two others does not exist on one qubit
  cc.max_retries = 1;
  const auto r = run_vqe_ac(p, cc);
  REQUIRE(r.states.size() == 3);
  CHECK(r.states[1].feasible);
  CHECK_FALSE(r.states[2].feasible);
  CHECK_FALSE(r.all_feasible());
  CHECK(r.states[2].attempts == 2);
}

TEST_CASE("spectra are reproducible under fixed seeds") {
  auto p = ladder_problem();
  p.optimizer = OptimizerKind::SPSA;
  p.spsa.max_iterations = 200;
  p.restarts = 2;
  p.measurement.sampled = true;
  p.measurement.shots = 200;
  const auto a = run_vqd(p, DeflationConfig::uniform(2, 5.0));
  const auto b = run_vqd(p, DeflationConfig::uniform(2, 5.0));
  std::ostringstream ta, tb;
  write_spectrum(a, ta);
  write_spectrum(b, tb);
  CHECK(ta.str() == tb.str());
  CHECK(ta.str().find("state 1") != std::string::npos);
  // Sampled and exact estimates differ at the same parameters.
  CHECK(a.states[0].energy != a.states[0].noiseless_energy);
  p.measurement.seed = 2;
  CHECK(run_vqd(p, DeflationConfig::uniform(2, 5.0)).states[0].parameters != a.states[0].parameters);
}

TEST_CASE("noisy trajectories are seeded") {
  auto p = ladder_problem();
  p.optimizer = OptimizerKind::SPSA;
  p.spsa.max_iterations = 50;
  p.noise = sim::NoiseModel{0.01, 0.02, 3};
  const auto a = run_vqe(p), b = run_vqe(p);
  CHECK(a.parameters == b.parameters);
  CHECK(a.noiseless_energy >= -1e-9);
}

TEST_CASE("configuration errors") {
  auto p = z_problem();
  CHECK_THROWS_AS(run_vqd(p, DeflationConfig{3, {0.5}}), InvalidArgument);
  CHECK_THROWS_AS(run_vqd(p, DeflationConfig{2, {-1.0}}), InvalidArgument);
  ConstraintConfig cc;
  cc.threshold = 0.0;
  CHECK_THROWS_AS(run_vqe_ac(p, cc), InvalidArgument);
  p.hamiltonian = PauliOperator::from_string("ZZ");
  CHECK_THROWS(run_vqe(p));
  auto q = z_problem();
  q.initial_parameters = {1.0};
  CHECK_THROWS(run_vqe(q));
  CHECK(parse_optimizer("nelder-mead") == OptimizerKind::NelderMead);
  CHECK_THROWS_AS(parse_optimizer("slsqp"), InvalidArgument);
}

TEST_CASE("exact spectra agree across mappings and with reference CASCI") {
  scan::ScanSpec s;
  s.molecule = scan::Molecule::H2OScaled;
  const auto h = scan::point_hamiltonian(s, 1.0);
  const double ref[] = {-74.96753241, -74.56338931, -74.4853207};
  for (auto kind : {MappingKind::JordanWigner, MappingKind::Parity, MappingKind::ParityReduced}) {
    const auto e = exact_spectrum(h, 3, kind);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(e[i] - ref[i]) < 1e-7);
  }
}
