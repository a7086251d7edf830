#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "conint/ansatz/ansatz.hpp"
#include "conint/chem/active_space.hpp"
#include "conint/chem/basis.hpp"
#include "conint/chem/integrals.hpp"
#include "conint/chem/scf.hpp"
#include "conint/error.hpp"
#include "conint/fq/fermion.hpp"
#include "conint/sim/simulator.hpp"
#include "conint/vqa/vqa.hpp"

using namespace conint;
using namespace conint::ansatz;
using fq::MappingKind;

namespace {

struct Water43 {
  chem::ActiveSpaceHamiltonian h;
  double e_rhf;
};

const Water43& water() {
  static const Water43 w = [] {
    const auto g = chem::build_h2o_scaled(1.0);
    const auto t = chem::compute_integrals(g, chem::BasisSet(g, chem::BasisLibrary::builtin("sto-3g")));
    const auto r = chem::run_rhf(t, 10);
    return Water43{chem::select_active_space(r, t, 4, 3), r.energy};
  }();
  return w;
}

std::vector<double> random_params(int n, std::uint64_t seed, double range = M_PI) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-range, range);
  std::vector<double> p(static_cast<std::size_t>(n));
  for (auto& x : p) x = u(rng);
  return p;
}

fq::PauliOperator random_operator(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  fq::PauliOperator op(n);
  for (int t = 0; t < 10; ++t) {
    std::string s(static_cast<std::size_t>(n), 'I');
    for (auto& ch : s) ch = "IXYZ"[pick(rng)];
    op += fq::PauliOperator::from_string(s, c(rng));
  }
  return op.simplify();
}

void check_shift_rule(const sim::Statevector& init, const sim::Circuit& c, const fq::PauliOperator& op,
                      std::uint64_t seed) {
  const auto th = random_params(c.n_parameters(), seed, 1.0);
  const auto g = sim::parameter_shift_gradient(init, c, th, op);
  REQUIRE(static_cast<int>(g.size()) == c.n_parameters());
  const double h = 1e-4;
  for (int i = 0; i < c.n_parameters(); ++i) {
    auto p = th, m = th;
    p[i] += h;
    m[i] -= h;
    const double fd = (sim::expectation_exact(sim::apply_circuit(init, c, p), op) -
                       sim::expectation_exact(sim::apply_circuit(init, c, m), op)) /
                      (2.0 * h);
    CHECK(std::abs(g[i] - fd) < 1e-6);
  }
}

}  // namespace

TEST_CASE("efficient SU2 layout") {
  for (int n : {1, 3, 4}) {
    for (int reps : {1, 2, 3}) {
      const auto c = build_efficient_su2(n, reps);
      CHECK(c.n_parameters() == 2 * n * (reps + 1));
      int cx = 0;
      for (const auto& g : c.gates()) cx += g.kind == sim::GateKind::CX;
      CHECK(cx == reps * (n - 1));
    }
  }
  CHECK(build_efficient_su2(4, 1, Entanglement::Full).n_parameters() == 16);
  CHECK_THROWS_AS(build_efficient_su2(0, 1), InvalidArgument);
  CHECK_THROWS_AS(build_efficient_su2(3, 0), InvalidArgument);
}

TEST_CASE("reference state carries the RHF energy in every mapping") {
  const auto& w = water();
  for (auto kind : {MappingKind::JordanWigner, MappingKind::Parity, MappingKind::ParityReduced}) {
    const auto op = vqa::qubit_hamiltonian(w.h, kind);
    const auto ref = hf_reference_state(kind, 2, 2, 3);
    CHECK(std::abs(sim::expectation_exact(ref, op) - w.e_rhf) < 1e-9);
    const auto viac = sim::apply_circuit(sim::Statevector(op.n_qubits()), hf_reference_circuit(kind, 2, 2, 3), {});
    CHECK(viac.amplitudes() == ref.amplitudes());
  }
  CHECK(hf_occupation(3, 2, 1) == 0b001011);
}

TEST_CASE("UCCSD excitation list") {
  const auto ex = uccsd_excitations(3, 2, 2);
  CHECK(ex.size() == 8);  // 2 + 2 singles, 4 alpha-beta doubles
  CHECK(ex.front().from == std::vector<int>{0});
  CHECK(ex.front().to == std::vector<int>{2});
  // 4 orbitals, 2 + 2 electrons: 4 + 4 singles, 1 + 1 same-spin doubles, 16 mixed
  CHECK(uccsd_excitations(4, 2, 2).size() == 26);
}

TEST_CASE("UCCSD conserves particle number and spin projection") {
  for (auto kind : {MappingKind::ParityReduced, MappingKind::JordanWigner, MappingKind::Parity}) {
    const int no = 3, na = 2, nb = 1;
    const fq::MappingScheme scheme{kind, na, nb};
    const auto num_a = fq::map_operator(fq::number_operator(6, {0, 1, 2}), scheme);
    const auto num_b = fq::map_operator(fq::number_operator(6, {3, 4, 5}), scheme);
    const auto c = build_uccsd(no, na, nb, kind);
    const auto ref = hf_reference_state(kind, na, nb, no);
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const auto s = sim::apply_circuit(ref, c, random_params(c.n_parameters(), seed));
      const double a = sim::expectation_exact(s, num_a), b = sim::expectation_exact(s, num_b);
      CHECK(std::abs(a + b - 3.0) < 1e-10);
      CHECK(std::abs(0.5 * (a - b) - 0.5) < 1e-10);
    }
  }
}

TEST_CASE("UCCSD at zero amplitudes is the reference") {
  const auto c = build_uccsd(3, 2, 2, MappingKind::ParityReduced);
  const auto ref = hf_reference_state(MappingKind::ParityReduced, 2, 2, 3);
  const auto s = sim::apply_circuit(ref, c, std::vector<double>(static_cast<std::size_t>(c.n_parameters()), 0.0));
  CHECK(sim::overlap(s, ref) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("parameter-shift gradients match finite differences") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    check_shift_rule(sim::Statevector(4), build_efficient_su2(4, 2), random_operator(4, seed), seed);
    // 2 orbitals, 1 + 1 electrons under JW: 4 qubits
    check_shift_rule(hf_reference_state(MappingKind::JordanWigner, 1, 1, 2),
                     build_uccsd(2, 1, 1, MappingKind::JordanWigner), random_operator(4, 10 + seed), seed);
  }
}

TEST_CASE("circuits are deterministic") {
  AnsatzSpec spec;
  spec.n_orbitals = 3;
  spec.n_alpha = spec.n_beta = 2;
  const auto a = build_ansatz(spec), b = build_ansatz(spec);
  CHECK(a.to_text() == b.to_text());
  const auto p = initial_parameters(spec, a.n_parameters(), 4);
  CHECK(p == initial_parameters(spec, a.n_parameters(), 4));
  CHECK(std::all_of(p.begin(), p.end(), [](double x) { return std::abs(x) <= 0.1; }));
  const auto s1 = sim::apply_circuit(sim::Statevector(4), a, p);
  const auto s2 = sim::apply_circuit(sim::Statevector(4), b, p);
  CHECK(s1.amplitudes() == s2.amplitudes());
  spec.kind = AnsatzKind::UCCSD;
  const auto z = initial_parameters(spec, build_ansatz(spec).n_parameters(), 4);
  CHECK(std::all_of(z.begin(), z.end(), [](double x) { return x == 0.0; }));
}
