#include "conint/ansatz/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "conint/error.hpp"
#include "conint/fq/fermion.hpp"

namespace conint::ansatz {

std::string to_string(AnsatzKind kind) {
  return kind == AnsatzKind::EfficientSU2 ? "efficient-su2" : "uccsd";
}

AnsatzKind parse_ansatz(const std::string& text) {
  if (text == "efficient-su2" || text == "efficientsu2" || text == "su2") return AnsatzKind::EfficientSU2;
  if (text == "uccsd") return AnsatzKind::UCCSD;
  throw InvalidArgument("unknown ansatz '" + text + "'");
}

Entanglement parse_entanglement(const std::string& text) {
  if (text == "linear") return Entanglement::Linear;
  if (text == "full") return Entanglement::Full;
  throw InvalidArgument("unknown entanglement pattern '" + text + "'");
}

void AnsatzSpec::validate() const {
  if (reps < 1) throw InvalidArgument("ansatz reps must be >= 1");
  if (n_orbitals < 1) throw InvalidArgument("ansatz needs at least one orbital");
  if (n_alpha < 0 || n_beta < 0 || n_alpha > n_orbitals || n_beta > n_orbitals) {
    throw InvalidArgument("particle counts exceed the orbital count");
  }
}

std::uint64_t hf_occupation(int n_orbitals, int n_alpha, int n_beta) {
  if (n_alpha < 0 || n_beta < 0 || n_alpha > n_orbitals || n_beta > n_orbitals) {
    throw InvalidArgument("reference occupation: " + std::to_string(n_alpha) + " alpha and " +
                          std::to_string(n_beta) + " beta electrons do not fit in " +
                          std::to_string(n_orbitals) + " orbitals");
  }
  std::uint64_t occ = 0;
  for (int i = 0; i < n_alpha; ++i) occ |= std::uint64_t{1} << i;
  for (int i = 0; i < n_beta; ++i) occ |= std::uint64_t{1} << (i + n_orbitals);
  return occ;
}

sim::Statevector hf_reference_state(fq::MappingKind mapping, int n_alpha, int n_beta,
                                    int n_orbitals) {
  const std::uint64_t occ = hf_occupation(n_orbitals, n_alpha, n_beta);
  const int n_modes = 2 * n_orbitals;
  return sim::Statevector::basis_state(fq::mapped_qubits(n_modes, mapping),
                                       fq::encode_occupation(occ, n_modes, mapping));
}

sim::Circuit hf_reference_circuit(fq::MappingKind mapping, int n_alpha, int n_beta,
                                  int n_orbitals) {
  const std::uint64_t occ = hf_occupation(n_orbitals, n_alpha, n_beta);
  const int n_modes = 2 * n_orbitals;
  const int n = fq::mapped_qubits(n_modes, mapping);
  const std::uint64_t bits = fq::encode_occupation(occ, n_modes, mapping);
  sim::Circuit c(n);
  for (int q = 0; q < n; ++q)
    if ((bits >> q) & 1U) c.x(q);
  return c;
}

sim::Circuit build_efficient_su2(int n, int reps, Entanglement ent) {
  if (n < 1) throw InvalidArgument("efficient-su2 needs at least one qubit");
  if (reps < 1) throw InvalidArgument("efficient-su2 needs reps >= 1");
  sim::Circuit c(n);
  auto rotation_layer = [&]() {
    for (int q = 0; q < n; ++q) c.ry(q, c.add_parameter("t" + std::to_string(c.n_parameters())));
    for (int q = 0; q < n; ++q) c.rz(q, c.add_parameter("t" + std::to_string(c.n_parameters())));
  };
  for (int r = 0; r < reps; ++r) {
    rotation_layer();
    if (ent == Entanglement::Linear) {
      for (int q = 0; q + 1 < n; ++q) c.cx(q, q + 1);
    } else {
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) c.cx(a, b);
    }
  }
  rotation_layer();
  return c;
}

std::string Excitation::label() const {
  std::ostringstream s;
  for (std::size_t i = 0; i < from.size(); ++i) s << (i ? "," : "") << from[i];
  s << "->";
  for (std::size_t i = 0; i < to.size(); ++i) s << (i ? "," : "") << to[i];
  return s.str();
}

std::vector<Excitation> uccsd_excitations(int n_o, int n_a, int n_b) {
  hf_occupation(n_o, n_a, n_b);  // validates the counts
  std::vector<int> occ_a, vir_a, occ_b, vir_b;
  for (int i = 0; i < n_o; ++i) (i < n_a ? occ_a : vir_a).push_back(i);
  for (int i = 0; i < n_o; ++i) (i < n_b ? occ_b : vir_b).push_back(i + n_o);

  std::vector<Excitation> singles, doubles;
  for (const auto& [occ, vir] : {std::pair{occ_a, vir_a}, std::pair{occ_b, vir_b}})
    for (int i : occ)
      for (int a : vir) singles.push_back({{i}, {a}});
  for (const auto& [occ, vir] : {std::pair{occ_a, vir_a}, std::pair{occ_b, vir_b}})
    for (std::size_t i = 0; i < occ.size(); ++i)
      for (std::size_t j = i + 1; j < occ.size(); ++j)
        for (std::size_t a = 0; a < vir.size(); ++a)
          for (std::size_t b = a + 1; b < vir.size(); ++b)
            doubles.push_back({{occ[i], occ[j]}, {vir[a], vir[b]}});
  for (int i : occ_a)
    for (int j : occ_b)
      for (int a : vir_a)
        for (int b : vir_b) doubles.push_back({{i, j}, {a, b}});
  std::sort(singles.begin(), singles.end());
  std::sort(doubles.begin(), doubles.end());
  singles.insert(singles.end(), doubles.begin(), doubles.end());
  return singles;
}

sim::Circuit build_uccsd(int n_o, int n_a, int n_b, fq::MappingKind mapping) {
  const int n_modes = 2 * n_o;
  const fq::MappingScheme scheme{mapping, n_a, n_b};
  sim::Circuit c(fq::mapped_qubits(n_modes, mapping));
  for (const auto& ex : uccsd_excitations(n_o, n_a, n_b)) {
    fq::FermionOperator t(n_modes);
    fq::LadderString ops;
    for (auto it = ex.to.rbegin(); it != ex.to.rend(); ++it) ops.push_back({*it, true});
    for (int m : ex.from) ops.push_back({m, false});
    // T = a+_b a+_a a_i a_j for doubles (a+_a a_i for singles)
    t.add_term(1.0, ops);
    fq::FermionOperator gen = t + (-1.0) * t.adjoint();
    const fq::PauliOperator g = fq::map_operator(gen, scheme);
    std::vector<fq::PauliString> strings;
    for (const auto& [p, coeff] : g.terms()) {
      if (std::abs(coeff.real()) > 1e-12) {
        throw StructuralError("excitation generator " + ex.label() + " is not anti-Hermitian");
      }
      strings.push_back(p);
    }
    for (std::size_t i = 0; i < strings.size(); ++i)
      for (std::size_t j = i + 1; j < strings.size(); ++j)
        if (!fq::commutes(strings[i], strings[j])) {
          throw StructuralError("Pauli strings of excitation " + ex.label() + " do not commute");
        }
    const int param = c.add_parameter(ex.label());
    // theta * G = sum_k i (theta g_k) P_k  ->  prod_k exp(i theta g_k P_k)
    for (const auto& [p, coeff] : g.terms()) c.append_pauli_exponential(p, param, coeff.imag());
  }
  return c;
}

sim::Circuit build_ansatz(const AnsatzSpec& spec) {
  spec.validate();
  if (spec.kind == AnsatzKind::UCCSD) {
    return build_uccsd(spec.n_orbitals, spec.n_alpha, spec.n_beta, spec.mapping);
  }
  return build_efficient_su2(spec.n_qubits(), spec.reps, spec.entanglement);
}

std::vector<double> initial_parameters(const AnsatzSpec& spec, int n_parameters,
                                       std::uint64_t seed) {
  std::vector<double> x(static_cast<std::size_t>(n_parameters), 0.0);
  if (spec.kind == AnsatzKind::EfficientSU2) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-0.1, 0.1);
    for (auto& v : x) v = u(rng);
  }
  return x;
}

}  // namespace conint::ansatz
